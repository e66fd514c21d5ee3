//! Dense matrices over a Galois ring: companion matrices, sigma-twists,
//! twisted companion chains, determinants and the MDS test.

use std::fmt;
use std::time::Instant;

use crate::algebra::{determinant_of, Scalar};
use crate::error::{Error, Result};
use crate::report::{VerificationReport, Witness};
use crate::ring::{same_ring, ResidueElement, Ring, RingElement};
use crate::skew::{right_divides, SkewPoly};

/// Largest order accepted by [`determinant`].
pub const MAX_DET_ORDER: usize = 12;

/// Row-major matrix whose entries share one ring.
#[derive(Clone, PartialEq, Eq)]
pub struct GRMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<RingElement>,
}

impl GRMatrix {
    pub fn new(ring: &Ring, rows: usize, cols: usize, entries: Vec<RingElement>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|e| !same_ring(e.ring(), ring)) {
            return Err(Error::MixedRings);
        }
        Ok(GRMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries,
        })
    }

    /// Matrix from nested element literals, `literals[r][c]`.
    pub fn from_literals(ring: &Ring, literals: &[Vec<Vec<i64>>]) -> Result<Self> {
        let rows = literals.len();
        let cols = literals.first().map_or(0, Vec::len);
        if literals.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let entries = literals
            .iter()
            .flatten()
            .map(|c| RingElement::new(ring, c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, rows, cols, entries)
    }

    /// Matrix with integer entries.
    pub fn from_ints(ring: &Ring, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let entries = rows
            .iter()
            .flatten()
            .map(|&c| RingElement::from_int(ring, c))
            .collect();
        Self::new(ring, rows.len(), cols, entries)
    }

    pub fn zero(ring: &Ring, rows: usize, cols: usize) -> Self {
        GRMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![RingElement::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: &Ring, k: usize) -> Self {
        let mut m = Self::zero(ring, k, k);
        for i in 0..k {
            m.entries[i * k + i] = RingElement::one(ring);
        }
        m
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[RingElement] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &RingElement {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[RingElement] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_literals(&self) -> Vec<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(RingElement::to_literal).collect())
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::MixedRings);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zero(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.entries[idx] = &out.entries[idx] + &(a * other.get(l, j));
                }
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.map(|e| -e)
    }

    /// Entrywise `sigma^i`.
    pub fn sigma_twist(&self, i: usize) -> Self {
        self.map(|e| e.apply_sigma(i))
    }

    pub fn transpose(&self) -> Self {
        let entries = (0..self.cols)
            .flat_map(|c| (0..self.rows).map(move |r| (r, c)))
            .map(|(r, c)| self.get(r, c).clone())
            .collect();
        GRMatrix {
            ring: self.ring.clone(),
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let entries = rows
            .iter()
            .flat_map(|&r| cols.iter().map(move |&c| (r, c)))
            .map(|(r, c)| self.get(r, c).clone())
            .collect();
        GRMatrix {
            ring: self.ring.clone(),
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }

    /// Entrywise image in the residue field, row-major.
    pub fn project_residue(&self) -> Vec<ResidueElement> {
        self.entries.iter().map(RingElement::project_residue).collect()
    }

    fn map(&self, f: impl Fn(&RingElement) -> RingElement) -> Self {
        GRMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

impl fmt::Debug for GRMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GRMatrix{self}")
    }
}

/// Renders `[[a,b],[c,d]]` with entries in element-literal form.
impl fmt::Display for GRMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (c, e) in self.row(r).iter().enumerate() {
                if c > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

fn check_chain_poly(g: &SkewPoly) -> Result<usize> {
    let k = g.degree().unwrap_or(0);
    if !g.is_monic() {
        return Err(Error::NotMonic);
    }
    if k < 2 {
        return Err(Error::DegreeTooSmall(k));
    }
    Ok(k)
}

/// Companion matrix: ones on the superdiagonal, last row `(-g_0, ..., -g_{k-1})`.
pub fn companion(g: &SkewPoly) -> Result<GRMatrix> {
    let k = check_chain_poly(g)?;
    let ring = g.ring();
    let mut m = GRMatrix::zero(ring, k, k);
    for i in 0..k - 1 {
        m.entries[i * k + i + 1] = RingElement::one(ring);
    }
    for j in 0..k {
        m.entries[(k - 1) * k + j] = -&g.coeff(j);
    }
    Ok(m)
}

/// `C^{[t-1]} ... C^{[1]} C` for the companion matrix `C` of `g`.
pub fn twisted_chain(g: &SkewPoly, t: usize) -> Result<GRMatrix> {
    if t == 0 {
        return Err(Error::InvalidParameter("chain length t must be at least 1".into()));
    }
    let c = companion(g)?;
    let mut acc = c.clone();
    for i in 1..t {
        acc = c.sigma_twist(i).mul(&acc)?;
    }
    debug_assert_eq!(acc, chain_by_remainders(g, t)?);
    Ok(acc)
}

/// The same chain read off remainders: row `r` holds the coefficients of
/// `X^{t+r}` modulo `g` on the right.
pub fn chain_by_remainders(g: &SkewPoly, t: usize) -> Result<GRMatrix> {
    let k = check_chain_poly(g)?;
    let ring = g.ring();
    let zero = RingElement::zero(ring);
    // v holds X^j mod g as k coefficients.
    let mut v = vec![zero.clone(); k];
    v[0] = RingElement::one(ring);
    let step = |v: &[RingElement]| -> Vec<RingElement> {
        // X * v, then subtract top * g to clear the X^k term.
        let mut shifted = vec![zero.clone(); k + 1];
        for (i, c) in v.iter().enumerate() {
            shifted[i + 1] = c.apply_sigma(1);
        }
        let top = shifted[k].clone();
        (0..k).map(|i| &shifted[i] - &(&top * &g.coeff(i))).collect()
    };
    for _ in 0..t {
        v = step(&v);
    }
    let mut entries = Vec::with_capacity(k * k);
    for _ in 0..k {
        entries.extend(v.iter().cloned());
        v = step(&v);
    }
    GRMatrix::new(ring, k, k, entries)
}

pub fn determinant(a: &GRMatrix) -> Result<RingElement> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    if a.rows > MAX_DET_ORDER {
        return Err(Error::TooLarge(format!(
            "determinant of order {} exceeds {MAX_DET_ORDER}",
            a.rows
        )));
    }
    Ok(determinant_of(&a.entries, a.rows))
}

/// Subsets of `0..n` of size `j`, in lexicographic order.
pub fn combinations(n: usize, j: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if j > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..j).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..j).rev().find(|&i| cur[i] < n - j + i) else {
            return out;
        };
        cur[i] += 1;
        for l in i + 1..j {
            cur[l] = cur[l - 1] + 1;
        }
    }
}

fn mask_of(set: &[usize]) -> u32 {
    set.iter().fold(0, |m, &i| m | (1 << i))
}

/// First square submatrix, in order of increasing size and then
/// lexicographic (rows, cols), whose determinant is not a unit. Minors of
/// size `j` are expanded along their last row from the minors of size `j - 1`.
pub fn first_singular_minor<T: Scalar>(entries: &[T], k: usize) -> Option<Witness> {
    let mut prev_index: std::collections::HashMap<u32, usize> = [(0u32, 0usize)].into();
    let mut prev: Vec<T> = vec![entries[0].one_like()];
    for j in 1..=k {
        let combos = combinations(k, j);
        let index: std::collections::HashMap<u32, usize> = combos
            .iter()
            .enumerate()
            .map(|(i, c)| (mask_of(c), i))
            .collect();
        let width = prev_index.len();
        let mut level = Vec::with_capacity(combos.len() * combos.len());
        for rows in &combos {
            let last = rows[j - 1];
            let rest = prev_index[&(mask_of(rows) & !(1 << last))];
            for cols in &combos {
                let cmask = mask_of(cols);
                let mut acc = entries[0].zero_like();
                for (pos, &c) in cols.iter().enumerate() {
                    let a = &entries[last * k + c];
                    if a.is_zero() {
                        continue;
                    }
                    let minor = &prev[rest * width + prev_index[&(cmask & !(1 << c))]];
                    let term = a.mul(minor);
                    acc = if (j - 1 + pos) % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
                }
                if !acc.is_unit() {
                    return Some(Witness {
                        rows: rows.clone(),
                        cols: cols.clone(),
                    });
                }
                level.push(acc);
            }
        }
        prev = level;
        prev_index = index;
    }
    None
}

/// All-minors MDS test, evaluated in the residue field: a minor is a unit
/// exactly when its residue is nonzero.
pub fn is_mds(a: &GRMatrix) -> Result<VerificationReport> {
    let start = Instant::now();
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    if a.rows > 31 {
        return Err(Error::TooLarge(format!("MDS test of order {}", a.rows)));
    }
    let witness = first_singular_minor(&a.project_residue(), a.rows);
    Ok(VerificationReport::new(
        witness.is_none(),
        witness,
        start.elapsed().as_millis() as u64,
    ))
}

/// Ring-side MDS check: every square submatrix determinant, computed in the
/// ring itself, is a unit. Independent of [`is_mds`].
pub fn is_mds_ring_side(a: &GRMatrix) -> Result<bool> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    for j in 1..=a.rows {
        let combos = combinations(a.rows, j);
        for rows in &combos {
            for cols in &combos {
                if !determinant(&a.submatrix(rows, cols))?.is_unit() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Does `N^{[k]} N = I_k` hold for `N = twisted_chain(g, k)`?
pub fn check_quasi_involutory(g: &SkewPoly) -> Result<bool> {
    let k = check_chain_poly(g)?;
    if !right_divides(g, &SkewPoly::x_pow_minus_one(g.ring(), 2 * k))? {
        return Err(Error::PreconditionViolated(format!(
            "g does not right-divide X^{} - 1",
            2 * k
        )));
    }
    let n = twisted_chain(g, k)?;
    Ok(n.sigma_twist(k).mul(&n)? == GRMatrix::identity(g.ring(), k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{make_ring, RingConfig};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gr25() -> Ring {
        make_ring(&RingConfig::new(5, 2, 3, Some(vec![3, 3, 0, 1]), 2)).unwrap()
    }

    fn random_matrix(ring: &Ring, k: usize, rng: &mut ChaCha8Rng) -> GRMatrix {
        let entries = (0..k * k)
            .map(|_| RingElement::from_index(ring, rng.gen_range(0..ring.size())))
            .collect();
        GRMatrix::new(ring, k, k, entries).unwrap()
    }

    /// Leibniz formula over all permutations.
    fn leibniz(a: &GRMatrix) -> RingElement {
        let k = a.rows();
        let mut perm: Vec<usize> = (0..k).collect();
        let mut acc = RingElement::zero(a.ring());
        permute(&mut perm, 0, &mut |p| {
            let inversions = (0..k)
                .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let mut term = RingElement::one(a.ring());
            for (i, &c) in p.iter().enumerate() {
                term = &term * a.get(i, c);
            }
            acc = if inversions % 2 == 0 { &acc + &term } else { &acc - &term };
        });
        acc
    }

    fn permute(p: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize])) {
        if i == p.len() {
            f(p);
            return;
        }
        for j in i..p.len() {
            p.swap(i, j);
            permute(p, i + 1, f);
            p.swap(i, j);
        }
    }

    #[test]
    fn companion_examples() {
        let r = gr25();
        let g = SkewPoly::from_ints(&r, &[1, 2, 2, 1]);
        let c = companion(&g).unwrap();
        assert_eq!(
            c,
            GRMatrix::from_ints(&r, &[vec![0, 1, 0], vec![0, 0, 1], vec![24, 23, 23]]).unwrap()
        );
        let g2 = SkewPoly::from_ints(&r, &[1, 0, 1]);
        assert_eq!(
            companion(&g2).unwrap(),
            GRMatrix::from_ints(&r, &[vec![0, 1], vec![-1, 0]]).unwrap()
        );
        let id = r.with_sigma_exponent(0).unwrap();
        assert_eq!(
            companion(&SkewPoly::from_ints(&id, &[1, 2, 2, 1])).unwrap().to_literals(),
            c.to_literals()
        );
        assert_eq!(
            companion(&SkewPoly::from_ints(&r, &[1, 2, 2])).unwrap_err(),
            Error::NotMonic
        );
        assert_eq!(
            companion(&SkewPoly::from_ints(&r, &[1, 1])).unwrap_err(),
            Error::DegreeTooSmall(1)
        );
    }

    #[test]
    fn chain_example() {
        let r = gr25();
        let g = SkewPoly::from_ints(&r, &[1, 2, 2, 1]);
        assert_eq!(twisted_chain(&g, 1).unwrap(), companion(&g).unwrap());
        let n = twisted_chain(&g, 3).unwrap();
        assert_eq!(
            n,
            GRMatrix::from_ints(&r, &[vec![24, 23, 23], vec![2, 3, 2], vec![23, 23, 24]]).unwrap()
        );
        assert_eq!(n.mul(&n).unwrap(), GRMatrix::identity(&r, 3));
        assert!(is_mds(&n).unwrap().mds);
        assert!(check_quasi_involutory(&g).unwrap());
    }

    #[test]
    fn chain_matches_remainders_and_powers() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let r = gr25();
        let id = r.with_sigma_exponent(0).unwrap();
        for _ in 0..30 {
            let k = rng.gen_range(2..=5);
            let mut coeffs: Vec<RingElement> = (0..k)
                .map(|_| RingElement::from_index(&r, rng.gen_range(0..r.size())))
                .collect();
            coeffs.push(RingElement::one(&r));
            let g = SkewPoly::new(&r, coeffs).unwrap();
            for t in 1..=2 * k {
                assert_eq!(twisted_chain(&g, t).unwrap(), chain_by_remainders(&g, t).unwrap());
            }
            let lits: Vec<Vec<i64>> = g.coeffs().iter().map(|c| c.to_literal()).collect();
            let gid = SkewPoly::from_literals(&id, &lits).unwrap();
            let c = companion(&gid).unwrap();
            let mut power = c.clone();
            for _ in 1..k {
                power = power.mul(&c).unwrap();
            }
            assert_eq!(twisted_chain(&gid, k).unwrap(), power);
        }
    }

    #[test]
    fn determinant_examples() {
        let r = gr25();
        assert!(determinant(&GRMatrix::identity(&r, 5)).unwrap().is_one());
        let a = GRMatrix::from_ints(&r, &[vec![0, 1], vec![-1, 0]]).unwrap();
        assert!(determinant(&a).unwrap().is_one());
        let rect = GRMatrix::zero(&r, 2, 3);
        assert_eq!(
            determinant(&rect).unwrap_err(),
            Error::NotSquare { rows: 2, cols: 3 }
        );
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..100 {
            let m = random_matrix(&r, 4, &mut rng);
            assert_eq!(determinant(&m).unwrap(), leibniz(&m));
        }
    }

    #[test]
    fn mds_examples() {
        let r = gr25();
        let report = is_mds(&GRMatrix::identity(&r, 3)).unwrap();
        assert!(!report.mds);
        assert_eq!(
            report.witness,
            Some(Witness {
                rows: vec![0],
                cols: vec![1]
            })
        );
        let nil = GRMatrix::from_ints(&r, &[vec![1, 1], vec![1, 5]]).unwrap();
        assert!(!is_mds(&nil).unwrap().mds);
    }

    #[test]
    fn residue_and_ring_side_agree() {
        let r4 = make_ring(&RingConfig::new(2, 2, 2, None, 1)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mut seen = [0usize; 2];
        for _ in 0..500 {
            let k = rng.gen_range(1..=3);
            let m = random_matrix(&r4, k, &mut rng);
            let verdict = is_mds(&m).unwrap().mds;
            assert_eq!(verdict, is_mds_ring_side(&m).unwrap());
            assert_eq!(verdict, is_mds(&m.neg()).unwrap().mds);
            seen[verdict as usize] += 1;
        }
        assert!(seen[0] > 0 && seen[1] > 0);
    }

    #[test]
    fn twist_is_multiplicative() {
        let r = gr25();
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for _ in 0..100 {
            let a = random_matrix(&r, 3, &mut rng);
            let b = random_matrix(&r, 3, &mut rng);
            let i = rng.gen_range(0..6);
            assert_eq!(
                a.mul(&b).unwrap().sigma_twist(i),
                a.sigma_twist(i).mul(&b.sigma_twist(i)).unwrap()
            );
        }
        let a = random_matrix(&r, 3, &mut rng);
        assert_eq!(a.sigma_twist(0), a);
        assert_eq!(a.sigma_twist(r.sigma_order()), a);
    }

    #[test]
    fn quasi_involutory_precondition() {
        let r = gr25();
        let g = SkewPoly::from_ints(&r, &[2, 0, 1]);
        assert!(matches!(
            check_quasi_involutory(&g),
            Err(Error::PreconditionViolated(_))
        ));
        let id = r.with_sigma_exponent(0).unwrap();
        let g = SkewPoly::from_ints(&id, &[-1, 0, 1]);
        assert!(check_quasi_involutory(&g).unwrap());
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(
            combinations(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }
}
