//! Brute-force coding-theory checks: exhaustive minimum distance of the code
//! generated by `[I_k | M]` and the two weight criteria on left multiples of `g`.

use crate::error::{Error, Result};
use crate::matrix::GRMatrix;
use crate::ring::{Ring, RingElement};
use crate::skew::{right_divides, right_divmod, smul, SkewPoly};

/// Largest number of messages an enumeration may visit.
pub const ENUMERATION_BUDGET: u128 = 1 << 24;

/// Alphabet an enumeration runs over: the ring itself, or its residue field
/// through the projection `x -> x mod p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symbols {
    Ring,
    Residue,
}

/// The code generated by `[I_k | M]`.
#[derive(Clone, Debug)]
pub struct CodeInstance {
    pub matrix: GRMatrix,
    pub generator: GRMatrix,
}

impl CodeInstance {
    pub fn new(matrix: GRMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let k = matrix.rows();
        let ring = matrix.ring().clone();
        let mut entries = Vec::with_capacity(2 * k * k);
        for r in 0..k {
            for c in 0..k {
                entries.push(if r == c {
                    RingElement::one(&ring)
                } else {
                    RingElement::zero(&ring)
                });
            }
            entries.extend_from_slice(matrix.row(r));
        }
        let generator = GRMatrix::new(&ring, k, 2 * k, entries)?;
        Ok(CodeInstance { matrix, generator })
    }

    pub fn k(&self) -> usize {
        self.matrix.rows()
    }

    pub fn ring(&self) -> &Ring {
        self.matrix.ring()
    }

    /// `u * [I | M]`.
    pub fn encode(&self, u: &[RingElement]) -> Result<Vec<RingElement>> {
        if u.len() != self.k() {
            return Err(Error::DimensionMismatch(format!(
                "message of length {} for k = {}",
                u.len(),
                self.k()
            )));
        }
        Ok((0..2 * self.k())
            .map(|c| {
                u.iter()
                    .enumerate()
                    .fold(RingElement::zero(self.ring()), |acc, (r, x)| {
                        &acc + &(x * self.generator.get(r, c))
                    })
            })
            .collect())
    }
}

/// Number of nonzero symbols.
pub fn weight(word: &[RingElement]) -> usize {
    word.iter().filter(|x| !x.is_zero()).count()
}

/// Exact minimum distance over the ring; `BudgetExceeded` past
/// [`ENUMERATION_BUDGET`] messages.
pub fn min_distance(code: &CodeInstance) -> Result<usize> {
    min_distance_in(code, Symbols::Ring)
}

pub fn min_distance_in(code: &CodeInstance, symbols: Symbols) -> Result<usize> {
    let rows: Vec<Vec<RingElement>> = (0..code.k()).map(|r| code.generator.row(r).to_vec()).collect();
    Ok(MinWeight::new(code.ring(), &rows, symbols)?
        .run()
        .expect("nonzero message space"))
}

/// Every nonzero left multiple `c * g` with `deg c < k` has weight at least
/// `k + 1`. Requires `g` to right-divide `X^n - 1` with `n >= 2k`.
pub fn weight_criterion_full(g: &SkewPoly, n: usize) -> Result<bool> {
    weight_criterion_full_in(g, n, Symbols::Ring)
}

pub fn weight_criterion_full_in(g: &SkewPoly, n: usize, symbols: Symbols) -> Result<bool> {
    let k = monic_degree(g)?;
    if n < 2 * k {
        return Err(Error::InvalidParameter(format!("n = {n} is smaller than 2k = {}", 2 * k)));
    }
    if !right_divides(g, &SkewPoly::x_pow_minus_one(g.ring(), n))? {
        return Err(Error::NotRightDivisor(n));
    }
    let rows = (0..k)
        .map(|i| Ok(padded(&smul(&SkewPoly::x_pow(g.ring(), i), g)?, 2 * k)))
        .collect::<Result<Vec<_>>>()?;
    Ok(MinWeight::new(g.ring(), &rows, symbols)?
        .run()
        .is_some_and(|w| w > k))
}

/// Every nonzero left combination of
/// `b_r = X^{t+r} - (X^{t+r} mod g)`, `r < k`, has weight at least `k + 1`.
pub fn weight_criterion_support(g: &SkewPoly, t: usize) -> Result<bool> {
    weight_criterion_support_in(g, t, Symbols::Ring)
}

pub fn weight_criterion_support_in(g: &SkewPoly, t: usize, symbols: Symbols) -> Result<bool> {
    let k = monic_degree(g)?;
    if t < k {
        return Err(Error::InvalidParameter(format!("t = {t} is smaller than k = {k}")));
    }
    let rows = support_basis(g, t)?
        .iter()
        .map(|b| padded(b, t + k))
        .collect::<Vec<_>>();
    Ok(MinWeight::new(g.ring(), &rows, symbols)?
        .run()
        .is_some_and(|w| w > k))
}

/// `b_r = X^{t+r} - (X^{t+r} mod g)` for `r < k`.
pub fn support_basis(g: &SkewPoly, t: usize) -> Result<Vec<SkewPoly>> {
    let k = monic_degree(g)?;
    (0..k)
        .map(|r| {
            let x = SkewPoly::x_pow(g.ring(), t + r);
            let rem = right_divmod(&x, g)?.1;
            Ok(&x - &rem)
        })
        .collect()
}

fn monic_degree(g: &SkewPoly) -> Result<usize> {
    if !g.is_monic() {
        return Err(Error::NotMonic);
    }
    g.degree()
        .filter(|&d| d >= 1)
        .ok_or(Error::DegreeTooSmall(0))
}

fn padded(f: &SkewPoly, len: usize) -> Vec<RingElement> {
    (0..len).map(|i| f.coeff(i)).collect()
}

/// Minimum weight over the nonzero combinations of a set of row vectors,
/// enumerated as a `Z_N`-module with generators `zeta^j * row` so that each
/// step is one vector addition.
struct MinWeight {
    modulus: u64,
    width: usize,
    symbols: usize,
    generators: Vec<Vec<u64>>,
}

impl MinWeight {
    fn new(ring: &Ring, rows: &[Vec<RingElement>], symbols: Symbols) -> Result<Self> {
        let modulus = match symbols {
            Symbols::Ring => ring.characteristic(),
            Symbols::Residue => ring.p(),
        };
        let width = ring.m();
        let rank = width * rows.len();
        let size = (modulus as u128).checked_pow(rank as u32);
        match size {
            Some(s) if s <= ENUMERATION_BUDGET => {}
            _ => {
                return Err(Error::BudgetExceeded {
                    size: size.unwrap_or(u128::MAX),
                    budget: ENUMERATION_BUDGET,
                })
            }
        }
        let zeta = RingElement::zeta(ring);
        let mut generators = Vec::with_capacity(rank);
        let len = rows.first().map_or(0, Vec::len);
        for row in rows {
            let mut scaled = row.clone();
            for _ in 0..width {
                generators.push(
                    scaled
                        .iter()
                        .flat_map(|x| x.coeffs().iter().map(|c| c % modulus))
                        .collect(),
                );
                scaled = scaled.iter().map(|x| &zeta * x).collect();
            }
        }
        Ok(MinWeight {
            modulus,
            width,
            symbols: len,
            generators,
        })
    }

    fn weight(&self, word: &[u64]) -> usize {
        word.chunks(self.width)
            .filter(|s| s.iter().any(|&c| c != 0))
            .count()
    }

    fn run(&self) -> Option<usize> {
        let n = self.modulus;
        let mut word = vec![0u64; self.symbols * self.width];
        let mut digits = vec![0u64; self.generators.len()];
        let mut best: Option<usize> = None;
        loop {
            let mut d = 0;
            loop {
                if d == digits.len() {
                    return best;
                }
                for (w, g) in word.iter_mut().zip(&self.generators[d]) {
                    *w = (*w + g) % n;
                }
                digits[d] += 1;
                if digits[d] < n {
                    break;
                }
                digits[d] = 0;
                d += 1;
            }
            let w = self.weight(&word);
            best = Some(best.map_or(w, |b| b.min(w)));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{companion, is_mds, twisted_chain};
    use crate::ring::{make_ring, RingConfig};
    use crate::skew::build_w_poly;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ring(p: u64, s: u32, m: usize, modulus: Option<Vec<u64>>, e: usize) -> Ring {
        make_ring(&RingConfig::new(p, s, m, modulus, e)).unwrap()
    }

    /// Plain enumeration of every message, for comparison with the module walk.
    fn naive_min_distance(code: &CodeInstance) -> usize {
        let r = code.ring();
        let k = code.k();
        let size = r.size();
        let mut best = usize::MAX;
        for idx in 1..size.pow(k as u32) {
            let mut rest = idx;
            let u: Vec<RingElement> = (0..k)
                .map(|_| {
                    let x = RingElement::from_index(r, rest % size);
                    rest /= size;
                    x
                })
                .collect();
            best = best.min(weight(&code.encode(&u).unwrap()));
        }
        best
    }

    #[test]
    fn identity_has_distance_two() {
        for k in 1..=3 {
            let r = ring(2, 1, 2, None, 0);
            let code = CodeInstance::new(GRMatrix::identity(&r, k)).unwrap();
            assert_eq!(min_distance(&code).unwrap(), 2);
        }
    }

    #[test]
    fn enumeration_matches_naive() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for r in [ring(2, 1, 2, None, 0), ring(2, 2, 2, None, 1), ring(3, 1, 2, None, 1)] {
            for _ in 0..20 {
                let entries = (0..4)
                    .map(|_| RingElement::from_index(&r, rng.gen_range(0..r.size())))
                    .collect();
                let m = GRMatrix::new(&r, 2, 2, entries).unwrap();
                let code = CodeInstance::new(m.clone()).unwrap();
                let d = min_distance(&code).unwrap();
                assert_eq!(d, naive_min_distance(&code));
                assert!(d <= 3);
                assert_eq!(d == 3, is_mds(&m).unwrap().mds);
                assert_eq!(d == 3, min_distance_in(&code, Symbols::Residue).unwrap() == 3);
            }
        }
    }

    #[test]
    fn encoding_splits_into_blocks() {
        let r = ring(2, 2, 2, None, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let entries = (0..9)
            .map(|_| RingElement::from_index(&r, rng.gen_range(0..16)))
            .collect();
        let code = CodeInstance::new(GRMatrix::new(&r, 3, 3, entries).unwrap()).unwrap();
        for _ in 0..100 {
            let u: Vec<RingElement> = (0..3)
                .map(|_| RingElement::from_index(&r, rng.gen_range(0..16)))
                .collect();
            let word = code.encode(&u).unwrap();
            assert_eq!(word[..3], u[..]);
            let um: Vec<RingElement> = (0..3)
                .map(|c| {
                    (0..3).fold(RingElement::zero(&r), |acc, i| &acc + &(&u[i] * code.matrix.get(i, c)))
                })
                .collect();
            assert_eq!(weight(&word), weight(&u) + weight(&um));
        }
    }

    #[test]
    fn mds_over_f4() {
        let r = ring(2, 1, 2, None, 0);
        let m = GRMatrix::from_literals(&r, &[vec![vec![1], vec![1]], vec![vec![1], vec![0, 1]]]).unwrap();
        assert!(is_mds(&m).unwrap().mds);
        assert_eq!(min_distance(&CodeInstance::new(m).unwrap()).unwrap(), 3);
    }

    #[test]
    fn paper_n_g_in_residue_field() {
        let r = ring(5, 2, 3, Some(vec![3, 3, 0, 1]), 2);
        let g = SkewPoly::from_ints(&r, &[1, 2, 2, 1]);
        let code = CodeInstance::new(twisted_chain(&g, 3).unwrap()).unwrap();
        assert!(matches!(min_distance(&code), Err(Error::BudgetExceeded { .. })));
        assert_eq!(min_distance_in(&code, Symbols::Residue).unwrap(), 4);
        assert!(weight_criterion_full_in(&g, 6, Symbols::Residue).unwrap());
        assert!(weight_criterion_support_in(&g, 3, Symbols::Residue).unwrap());
    }

    #[test]
    fn paper_gr4_example_support() {
        let r = ring(2, 2, 4, Some(vec![1, 1, 0, 0, 1]), 1);
        let g = SkewPoly::from_literals(
            &r,
            &[vec![1], vec![1], vec![0, 0, 0, 1], vec![3, 3, 1, 2], vec![1]],
        )
        .unwrap();
        assert!(weight_criterion_support_in(&g, 4, Symbols::Residue).unwrap());
    }

    #[test]
    fn x_k_minus_one_fails() {
        let r = ring(2, 1, 4, None, 0);
        for k in 2..=3 {
            let g = SkewPoly::x_pow_minus_one(&r, k);
            assert!(!weight_criterion_full(&g, 2 * k).unwrap());
        }
        let g = SkewPoly::from_ints(&r, &[1, 1, 1]);
        assert_eq!(weight_criterion_full(&g, 4).unwrap_err(), Error::NotRightDivisor(4));
    }

    #[test]
    fn single_row_combinations() {
        let r = ring(2, 1, 4, None, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..30 {
            let roots: Vec<RingElement> =
                (0..2).map(|_| RingElement::from_index(&r, rng.gen_range(1..16))).collect();
            let Ok(g) = build_w_poly(&roots) else { continue };
            let t = rng.gen_range(2..=4);
            let m = twisted_chain(&g, t).unwrap();
            for (row, b) in support_basis(&g, t).unwrap().iter().enumerate() {
                let zeros = m.row(row).iter().filter(|x| x.is_zero()).count();
                assert_eq!(b.weight(), 1 + 2 - zeros);
            }
        }
    }

    #[test]
    fn criteria_agree_with_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        let mut seen = [0usize; 2];
        for e in 0..2 {
            let r = ring(2, 1, 4, None, e);
            for _ in 0..60 {
                let coeffs: Vec<RingElement> = (0..2)
                    .map(|_| RingElement::from_index(&r, rng.gen_range(0..16)))
                    .chain([RingElement::one(&r)])
                    .collect();
                let g = SkewPoly::new(&r, coeffs).unwrap();
                for t in 2..=3 {
                    let mds = is_mds(&twisted_chain(&g, t).unwrap()).unwrap().mds;
                    assert_eq!(weight_criterion_support(&g, t).unwrap(), mds);
                    seen[mds as usize] += 1;
                }
                let c = companion(&g).unwrap();
                let d = min_distance(&CodeInstance::new(twisted_chain(&g, 2).unwrap()).unwrap()).unwrap();
                assert_eq!(d == 3, is_mds(&c.sigma_twist(1).mul(&c).unwrap()).unwrap().mds);
            }
        }
        assert!(seen[0] > 0 && seen[1] > 0);
    }

    #[test]
    fn full_criterion_on_divisors() {
        // Right divisors of X^n - 1 over F16 from W-polynomials of its right roots.
        let r = ring(2, 1, 4, None, 0);
        let roots = crate::skew::right_roots_of_unity(&r, 5).unwrap().roots().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(45);
        let mut checked = 0;
        for _ in 0..50 {
            let i = rng.gen_range(0..roots.len());
            let j = rng.gen_range(0..roots.len());
            if i == j {
                continue;
            }
            let g = build_w_poly(&[roots[i].clone(), roots[j].clone()]).unwrap();
            let n = 5;
            let full = weight_criterion_full(&g, n).unwrap();
            assert_eq!(full, is_mds(&twisted_chain(&g, 2).unwrap()).unwrap().mds);
            assert_eq!(full, weight_criterion_support(&g, 2).unwrap());
            checked += 1;
        }
        assert!(checked > 30);
    }
}
