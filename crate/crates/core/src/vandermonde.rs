//! Generalized Vandermonde matrices `V(a_1..a_k; E)` with entries `N_i(a_j)`,
//! closed-form determinants for a few exponent shapes, and the linearized
//! (Moore) matrix `U(h)`.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{combinations, determinant, GRMatrix};
use crate::report::VerificationReport;
use crate::ring::{same_ring, Ring, RingElement};
use crate::skew::SigmaNormTable;

/// Strictly increasing exponents indexing the columns of a Vandermonde matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct ExponentSet(Vec<usize>);

impl ExponentSet {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(format!(
                "exponents {entries:?} are not strictly increasing"
            )));
        }
        Ok(ExponentSet(entries))
    }

    /// `{0, ..., k-1} ∪ {t, ..., t+k-1}`.
    pub fn canonical(k: usize, t: usize) -> Result<Self> {
        if t < k {
            return Err(Error::InvalidParameter(format!("t = {t} is smaller than k = {k}")));
        }
        Self::new((0..k).chain(t..t + k).collect())
    }

    /// `{0, ..., k-1}`.
    pub fn contiguous(k: usize) -> Self {
        ExponentSet((0..k).collect())
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All `j`-element subsets, lexicographic.
    pub fn subsets(&self, j: usize) -> Vec<Vec<usize>> {
        combinations(self.0.len(), j)
            .into_iter()
            .map(|idx| idx.into_iter().map(|i| self.0[i]).collect())
            .collect()
    }
}

impl TryFrom<Vec<usize>> for ExponentSet {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<ExponentSet> for Vec<usize> {
    fn from(e: ExponentSet) -> Self {
        e.0
    }
}

/// `V(a_1, ..., a_k; E)`: rows are roots, columns are exponents, entry
/// `(j, l) = N_{i_l}(a_j)`.
#[derive(Clone, Debug)]
pub struct GenVandermonde {
    pub roots: Vec<RingElement>,
    pub columns: ExponentSet,
    pub matrix: GRMatrix,
}

fn common_ring(values: &[RingElement]) -> Result<Ring> {
    let first = values
        .first()
        .ok_or_else(|| Error::InvalidParameter("at least one value is required".into()))?;
    if values.iter().any(|v| !same_ring(v.ring(), first.ring())) {
        return Err(Error::MixedRings);
    }
    Ok(first.ring().clone())
}

pub fn gen_vandermonde(roots: &[RingElement], columns: &ExponentSet) -> Result<GenVandermonde> {
    let ring = common_ring(roots)?;
    if columns.is_empty() {
        return Err(Error::InvalidParameter("no columns".into()));
    }
    let top = *columns.entries().last().expect("nonempty");
    let mut entries = Vec::with_capacity(roots.len() * columns.len());
    for a in roots {
        let table = SigmaNormTable::new(a, top + 1);
        entries.extend(columns.entries().iter().map(|&i| table.values()[i].clone()));
    }
    Ok(GenVandermonde {
        roots: roots.to_vec(),
        columns: columns.clone(),
        matrix: GRMatrix::new(&ring, roots.len(), columns.len(), entries)?,
    })
}

/// `prod_{i<j} (a_j - a_i)`, the determinant of `(a_j^l)` with rows `j`.
pub fn classical_vdm_det(values: &[RingElement]) -> Result<RingElement> {
    let ring = common_ring(values)?;
    let mut acc = RingElement::one(&ring);
    for j in 0..values.len() {
        for i in 0..j {
            acc = &acc * &(&values[j] - &values[i]);
        }
    }
    Ok(acc)
}

/// Determinant of `(a_j^{t_l})` for the supported exponent shapes:
/// `{0..k-1}`, `{0..k-2, k}` and `{0, 2..k-1, k+1}`.
pub fn indexed_vdm_det(values: &[RingElement], exponents: &ExponentSet) -> Result<RingElement> {
    let ring = common_ring(values)?;
    let k = values.len();
    let t = exponents.entries();
    if t.len() != k {
        return Err(Error::DimensionMismatch(format!(
            "{} exponents for {k} values",
            t.len()
        )));
    }
    let base = classical_vdm_det(values)?;
    let sum = values.iter().fold(RingElement::zero(&ring), |acc, a| &acc + a);
    if t.iter().copied().eq(0..k) {
        return Ok(base);
    }
    if k >= 2 && t.iter().copied().eq((0..k - 1).chain([k])) {
        return Ok(&base * &sum);
    }
    if k >= 2 && t.iter().copied().eq([0].into_iter().chain(2..k).chain([k + 1])) {
        let mut product = RingElement::one(&ring);
        let mut inverse_sum = RingElement::zero(&ring);
        for a in values {
            product = &product * a;
            inverse_sum = &inverse_sum + &a.inverse()?;
        }
        let bracket = &(&sum * &inverse_sum) - &RingElement::one(&ring);
        return Ok(&(&base * &product) * &bracket);
    }
    Err(Error::UnsupportedShape(t.to_vec()))
}

/// `U(h)` with entry `(i, j) = h_i^{p^j}`.
pub fn linearized_matrix(h: &[RingElement]) -> Result<GRMatrix> {
    let ring = common_ring(h)?;
    let k = h.len();
    let p = ring.p();
    let mut entries = Vec::with_capacity(k * k);
    for x in h {
        let mut cur = x.clone();
        for _ in 0..k {
            entries.push(cur.clone());
            cur = cur.pow(p);
        }
    }
    GRMatrix::new(&ring, k, k, entries)
}

/// Moore determinant
/// `det U(h) = prod_{j<k} prod_{c in Z_p^j} (h_j - sum_{i<j} c_i h_i)`,
/// valid in characteristic `p`.
pub fn linearized_det(h: &[RingElement], p: u64) -> Result<RingElement> {
    let ring = common_ring(h)?;
    if ring.characteristic() != p {
        return Err(Error::CharacteristicMismatch(p));
    }
    let mut acc = RingElement::one(&ring);
    for j in 0..h.len() {
        // Every F_p-combination of h_0..h_{j-1}, enumerated as a running sum.
        let mut combos = vec![RingElement::zero(&ring)];
        for hi in &h[..j] {
            let mut next = Vec::with_capacity(combos.len() * p as usize);
            for c in &combos {
                let mut cur = c.clone();
                for _ in 0..p {
                    next.push(cur.clone());
                    cur = &cur + hi;
                }
            }
            combos = next;
        }
        for c in &combos {
            acc = &acc * &(&h[j] - c);
        }
    }
    Ok(acc)
}

/// The column-subset criterion: every `k x k` minor of `V(roots; E)` taken
/// on `k` columns, with `E = {0..k-1} ∪ {t..t+k-1}`, must be a unit. The first
/// failing subset (lexicographic, as exponents) is reported.
pub fn mds_via_vandermonde(roots: &[RingElement], k: usize, t: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    if roots.len() != k {
        return Err(Error::DimensionMismatch(format!(
            "{} roots for k = {k}",
            roots.len()
        )));
    }
    let columns = ExponentSet::canonical(k, t)?;
    let v = gen_vandermonde(roots, &columns)?;
    let all_rows: Vec<usize> = (0..k).collect();
    let mut failing = None;
    for cols in combinations(columns.len(), k) {
        if !determinant(&v.matrix.submatrix(&all_rows, &cols))?.is_unit() {
            failing = Some(cols.iter().map(|&c| columns.entries()[c]).collect());
            break;
        }
    }
    let mut report = VerificationReport::new(
        failing.is_none(),
        None,
        start.elapsed().as_millis() as u64,
    );
    report.failing_column_subset = failing;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{is_mds, twisted_chain};
    use crate::ring::{make_ring, RingConfig};
    use crate::skew::{build_w_poly, sigma_norm};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_unit(ring: &Ring, rng: &mut ChaCha8Rng) -> RingElement {
        loop {
            let x = RingElement::from_index(ring, rng.gen_range(0..ring.size()));
            if x.is_unit() {
                return x;
            }
        }
    }

    fn power_matrix(values: &[RingElement], exps: &[usize]) -> GRMatrix {
        let ring = values[0].ring();
        let entries = values
            .iter()
            .flat_map(|a| exps.iter().map(move |&e| a.pow(e as u64)))
            .collect();
        GRMatrix::new(ring, values.len(), exps.len(), entries).unwrap()
    }

    #[test]
    fn exponent_sets() {
        assert_eq!(ExponentSet::canonical(2, 3).unwrap().entries(), &[0, 1, 3, 4]);
        assert!(ExponentSet::new(vec![0, 2, 2]).is_err());
        assert!(ExponentSet::canonical(3, 2).is_err());
        let json = serde_json::to_string(&ExponentSet::contiguous(3)).unwrap();
        assert_eq!(json, "[0,1,2]");
        assert!(serde_json::from_str::<ExponentSet>("[2,1]").is_err());
    }

    #[test]
    fn vandermonde_examples() {
        let r = make_ring(&RingConfig::new(5, 2, 3, Some(vec![3, 3, 0, 1]), 2)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let roots: Vec<RingElement> = (0..3).map(|_| random_unit(&r, &mut rng)).collect();
        let v = gen_vandermonde(&roots, &ExponentSet::new(vec![0]).unwrap()).unwrap();
        assert!(v.matrix.entries().iter().all(RingElement::is_one));

        let id = r.with_sigma_exponent(0).unwrap();
        let lits: Vec<RingElement> = roots
            .iter()
            .map(|a| RingElement::new(&id, &a.to_literal()).unwrap())
            .collect();
        let v = gen_vandermonde(&lits, &ExponentSet::contiguous(3)).unwrap();
        assert_eq!(v.matrix, power_matrix(&lits, &[0, 1, 2]));
        assert_eq!(
            determinant(&v.matrix).unwrap(),
            classical_vdm_det(&lits).unwrap()
        );
    }

    #[test]
    fn teichmuller_rows_are_powers_of_norms() {
        let r = make_ring(&RingConfig::new(2, 2, 4, Some(vec![1, 1, 0, 0, 1]), 1)).unwrap();
        let xi = RingElement::teichmuller_generator(&r);
        let (k, b, t) = (3, 4u64, 3);
        let roots: Vec<RingElement> = (0..k as u64).map(|j| xi.pow(b + j)).collect();
        let cols = ExponentSet::canonical(k, t).unwrap();
        let v = gen_vandermonde(&roots, &cols).unwrap();
        for (j, _) in roots.iter().enumerate() {
            for (l, &i) in cols.entries().iter().enumerate() {
                assert_eq!(
                    v.matrix.get(j, l),
                    &sigma_norm(&xi, i).pow(b + j as u64)
                );
            }
        }
        // Each k-column minor factors as a Vandermonde in N_i(xi) times (prod N_i(xi))^b.
        for subset in cols.subsets(k) {
            let x: Vec<RingElement> = subset.iter().map(|&i| sigma_norm(&xi, i)).collect();
            let idx: Vec<usize> = subset
                .iter()
                .map(|i| cols.entries().iter().position(|e| e == i).unwrap())
                .collect();
            let minor = determinant(&v.matrix.submatrix(&[0, 1, 2], &idx)).unwrap();
            let scale = x.iter().fold(RingElement::one(&r), |acc, a| &acc * &a.pow(b));
            assert_eq!(minor, &classical_vdm_det(&x).unwrap() * &scale);
        }
    }

    #[test]
    fn classical_examples() {
        let r = make_ring(&RingConfig::new(3, 2, 2, None, 1)).unwrap();
        let a = RingElement::new(&r, &[1, 2]).unwrap();
        let b = RingElement::new(&r, &[4, 7]).unwrap();
        assert_eq!(classical_vdm_det(&[a.clone(), b.clone()]).unwrap(), &b - &a);
        assert!(classical_vdm_det(&[a.clone(), b, a]).unwrap().is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..50 {
            let vals: Vec<RingElement> = (0..4).map(|_| random_unit(&r, &mut rng)).collect();
            assert_eq!(
                classical_vdm_det(&vals).unwrap(),
                determinant(&power_matrix(&vals, &[0, 1, 2, 3])).unwrap()
            );
        }
    }

    #[test]
    fn indexed_shapes() {
        let r = make_ring(&RingConfig::new(5, 2, 2, None, 0)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for k in 2..=4 {
            let cor3 = ExponentSet::new((0..k - 1).chain([k]).collect()).unwrap();
            let cor5 = ExponentSet::new([0].into_iter().chain(2..k).chain([k + 1]).collect()).unwrap();
            for _ in 0..50 {
                let vals: Vec<RingElement> = (0..k).map(|_| random_unit(&r, &mut rng)).collect();
                for shape in [&cor3, &cor5, &ExponentSet::contiguous(k)] {
                    assert_eq!(
                        indexed_vdm_det(&vals, shape).unwrap(),
                        determinant(&power_matrix(&vals, shape.entries())).unwrap()
                    );
                }
            }
        }
        let one = RingElement::one(&r);
        let vals = [one.clone(), -&one];
        assert!(indexed_vdm_det(&vals, &ExponentSet::new(vec![0, 2]).unwrap())
            .unwrap()
            .is_zero());
        let with_nilpotent = [one, RingElement::from_int(&r, 5)];
        assert_eq!(
            indexed_vdm_det(&with_nilpotent, &ExponentSet::new(vec![0, 3]).unwrap()).unwrap_err(),
            Error::NotAUnit
        );
        assert_eq!(
            indexed_vdm_det(&vals, &ExponentSet::new(vec![1, 5]).unwrap()).unwrap_err(),
            Error::UnsupportedShape(vec![1, 5])
        );
    }

    #[test]
    fn linearized_examples() {
        let f8 = make_ring(&RingConfig::new(2, 1, 3, None, 0)).unwrap();
        let one = RingElement::one(&f8);
        let zero = RingElement::zero(&f8);
        assert!(linearized_det(&[one.clone(), zero], 2).unwrap().is_zero());
        let x = RingElement::zeta(&f8);
        assert_eq!(linearized_det(&[x.clone()], 2).unwrap(), x);
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        for _ in 0..100 {
            let h: Vec<RingElement> = (0..3)
                .map(|_| RingElement::from_index(&f8, rng.gen_range(0..8)))
                .collect();
            assert_eq!(
                linearized_det(&h, 2).unwrap(),
                determinant(&linearized_matrix(&h).unwrap()).unwrap()
            );
        }
        let gr = make_ring(&RingConfig::new(2, 2, 3, None, 0)).unwrap();
        assert_eq!(
            linearized_det(&[RingElement::one(&gr)], 2).unwrap_err(),
            Error::CharacteristicMismatch(2)
        );
    }

    #[test]
    fn criterion_matches_matrix_side() {
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        let mut outcomes = [0usize; 2];
        for e in 0..2 {
            let r = make_ring(&RingConfig::new(2, 1, 4, None, e)).unwrap();
            for _ in 0..150 {
                let k = rng.gen_range(2..=3);
                let t = rng.gen_range(k..=k + 2);
                let roots: Vec<RingElement> =
                    (0..k).map(|_| RingElement::from_index(&r, rng.gen_range(0..16))).collect();
                let Ok(g) = build_w_poly(&roots) else { continue };
                let by_roots = mds_via_vandermonde(&roots, k, t).unwrap().mds;
                let by_matrix = is_mds(&twisted_chain(&g, t).unwrap()).unwrap().mds;
                assert_eq!(by_roots, by_matrix, "roots {roots:?}, t = {t}");
                outcomes[by_roots as usize] += 1;
            }
        }
        assert!(outcomes[0] > 0 && outcomes[1] > 0);
    }

    #[test]
    fn zero_root_fails() {
        let r = make_ring(&RingConfig::new(2, 1, 4, None, 0)).unwrap();
        let roots = [RingElement::zero(&r), RingElement::one(&r)];
        let report = mds_via_vandermonde(&roots, 2, 2).unwrap();
        assert!(!report.mds);
        assert!(report.failing_column_subset.is_some());
    }
}
