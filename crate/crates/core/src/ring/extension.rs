//! Galois extensions `GR(p^s, p^{sN})` of a base ring and the embedding of the base.

use super::{make_ring, newton_root, same_ring, Ring, RingConfig, RingElement};
use crate::arith::inv_mod;
use crate::error::{Error, Result};

/// Ring monomorphism `GR(p^s, p^{sm}) -> GR(p^s, p^{sN})`, determined by the
/// image of the base generator `zeta`.
#[derive(Clone, Debug)]
pub struct Embedding {
    base: Ring,
    target: Ring,
    /// Images of `zeta^i` for `i < m`.
    images: Vec<RingElement>,
}

/// An extension ring together with the embedding of its base.
#[derive(Clone, Debug)]
pub struct Extension {
    pub ring: Ring,
    pub embedding: Embedding,
}

impl Embedding {
    pub fn identity(ring: &Ring) -> Self {
        let zeta = RingElement::zeta(ring);
        Embedding {
            base: ring.clone(),
            target: ring.clone(),
            images: powers(&zeta, ring.m()),
        }
    }

    pub fn base(&self) -> &Ring {
        &self.base
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn is_identity(&self) -> bool {
        same_ring(&self.base, &self.target)
    }

    pub fn image_of_zeta(&self) -> &RingElement {
        &self.images[1.min(self.images.len() - 1)]
    }

    pub fn map(&self, x: &RingElement) -> Result<RingElement> {
        if !same_ring(x.ring(), &self.base) {
            return Err(Error::MixedRings);
        }
        if self.is_identity() {
            return Ok(RingElement::from_raw(&self.target, x.coeffs().to_vec()));
        }
        let mut acc = RingElement::zero(&self.target);
        for (c, img) in x.coeffs().iter().zip(&self.images) {
            if *c != 0 {
                acc = &acc + &img.scale(*c as i64);
            }
        }
        Ok(acc)
    }

    /// Base coordinates of an element of the fixed subring, by Gaussian
    /// elimination over `Z_{p^s}` with unit pivots.
    pub fn retract(&self, x: &RingElement) -> Result<RingElement> {
        if !same_ring(x.ring(), &self.target) {
            return Err(Error::MixedRings);
        }
        if self.is_identity() {
            return Ok(RingElement::from_raw(&self.base, x.coeffs().to_vec()));
        }
        let n = self.target.characteristic();
        let p = self.target.p();
        let m = self.base.m();
        let big = self.target.m();
        // Augmented rows: [images[0][r], ..., images[m-1][r] | x[r]].
        let mut rows: Vec<Vec<u64>> = (0..big)
            .map(|r| {
                let mut row: Vec<u64> = self.images.iter().map(|img| img.coeffs()[r]).collect();
                row.push(x.coeffs()[r]);
                row
            })
            .collect();
        let mut pivot_row = 0;
        for col in 0..m {
            let found = (pivot_row..big).find(|&r| rows[r][col] % p != 0).ok_or_else(|| {
                Error::InternalInconsistency("embedding images are not independent mod p".into())
            })?;
            rows.swap(pivot_row, found);
            let inv = inv_mod(rows[pivot_row][col], n).expect("unit pivot");
            for v in rows[pivot_row].iter_mut() {
                *v = *v * inv % n;
            }
            let pivot = rows[pivot_row].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == pivot_row || row[col] == 0 {
                    continue;
                }
                let factor = row[col];
                for (v, pv) in row.iter_mut().zip(&pivot) {
                    *v = (*v + n - factor * pv % n) % n;
                }
            }
            pivot_row += 1;
        }
        if rows[m..].iter().any(|row| row[m] != 0) {
            return Err(Error::NotInSubring);
        }
        let coeffs = (0..m).map(|c| rows[c][m]).collect();
        Ok(RingElement::from_raw(&self.base, coeffs))
    }
}

fn powers(x: &RingElement, count: usize) -> Vec<RingElement> {
    let mut out = Vec::with_capacity(count);
    let mut acc = RingElement::one(x.ring());
    for _ in 0..count {
        out.push(acc.clone());
        acc = &acc * x;
    }
    out
}

/// Extension of residue degree `m * l`, with default modulus and the same
/// Frobenius exponent `e`. The base generator is sent to the root of the base
/// modulus whose residue is the smallest power of
/// `xi^{(p^N - 1)/(p^m - 1)}`.
pub fn extend_ring(base: &Ring, l: usize) -> Result<Extension> {
    if l == 0 {
        return Err(Error::InvalidParameter("extension degree must be positive".into()));
    }
    if l == 1 {
        return Ok(Extension {
            ring: base.clone(),
            embedding: Embedding::identity(base),
        });
    }
    let big = base.m() * l;
    let target = make_ring(&RingConfig::new(
        base.p(),
        base.s(),
        big,
        None,
        base.sigma_exponent(),
    ))?;
    let small_order = base.teichmuller_order();
    let big_order = target.teichmuller_order();
    let step = big_order / small_order;
    let omega = RingElement::teichmuller_generator(&target).pow(step);

    let fbar: Vec<u64> = base.modulus().iter().map(|c| c % base.p()).collect();
    let res_field = target.residue_field().clone();
    let omega_bar = omega.project_residue();
    let mut cur = omega_bar.clone();
    let mut exponent = 1u64;
    let root_bar_exp = loop {
        if exponent > small_order {
            return Err(Error::InternalInconsistency(
                "base modulus has no root in the extension".into(),
            ));
        }
        let value = res_field.quot.eval_int_poly(&fbar, cur.coeffs());
        if res_field.quot.is_zero(&value) {
            break exponent;
        }
        cur = &cur * &omega_bar;
        exponent += 1;
    };
    let approx = omega.pow(root_bar_exp);
    let root = newton_root(
        &target.quot,
        target.residue_field(),
        base.modulus(),
        approx.coeffs().to_vec(),
    )?;
    let root = RingElement::from_raw(&target, root);
    Ok(Extension {
        embedding: Embedding {
            base: base.clone(),
            target: target.clone(),
            images: powers(&root, base.m()),
        },
        ring: target,
    })
}

/// Is `x` fixed by `theta^m`, i.e. in the copy of `GR(p^s, p^{sm})` inside its ring?
pub fn in_base_subring(x: &RingElement, m: usize) -> Result<bool> {
    let big = x.ring().m();
    if m == 0 || big % m != 0 {
        return Err(Error::DegreeMismatch { sub: m, ext: big });
    }
    Ok(x.frobenius(m) == *x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_element(ring: &Ring, rng: &mut ChaCha8Rng) -> RingElement {
        let n = ring.characteristic() as i64;
        let c: Vec<i64> = (0..ring.m()).map(|_| rng.gen_range(0..n)).collect();
        RingElement::new(ring, &c).unwrap()
    }

    fn gr25() -> Ring {
        make_ring(&RingConfig::new(5, 2, 3, Some(vec![3, 3, 0, 1]), 2)).unwrap()
    }

    #[test]
    fn degree_one_is_identity() {
        let base = gr25();
        let ext = extend_ring(&base, 1).unwrap();
        assert!(ext.embedding.is_identity());
        let x = RingElement::new(&base, &[1, 2, 3]).unwrap();
        assert_eq!(ext.embedding.map(&x).unwrap(), x);
    }

    #[test]
    fn embedded_zeta_is_root_of_base_modulus() {
        let base = gr25();
        let ext = extend_ring(&base, 2).unwrap();
        let r = ext.embedding.image_of_zeta().clone();
        let f = base.modulus();
        let mut acc = RingElement::zero(&ext.ring);
        for &c in f.iter().rev() {
            acc = &(&acc * &r) + &RingElement::from_int(&ext.ring, c as i64);
        }
        assert!(acc.is_zero());
    }

    #[test]
    fn embedding_is_a_homomorphism_commuting_with_sigma() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (base, l) in [
            (gr25(), 2),
            (make_ring(&RingConfig::new(2, 2, 4, Some(vec![1, 1, 0, 0, 1]), 1)).unwrap(), 2),
            (make_ring(&RingConfig::new(3, 1, 2, None, 1)).unwrap(), 3),
        ] {
            let ext = extend_ring(&base, l).unwrap();
            let emb = &ext.embedding;
            for _ in 0..100 {
                let x = random_element(&base, &mut rng);
                let y = random_element(&base, &mut rng);
                let ex = emb.map(&x).unwrap();
                let ey = emb.map(&y).unwrap();
                assert_eq!(emb.map(&(&x * &y)).unwrap(), &ex * &ey);
                assert_eq!(emb.map(&(&x + &y)).unwrap(), &ex + &ey);
                assert_eq!(emb.map(&x.apply_sigma(1)).unwrap(), ex.apply_sigma(1));
                assert!(in_base_subring(&ex, base.m()).unwrap());
                assert_eq!(emb.retract(&ex).unwrap(), x);
            }
        }
    }

    #[test]
    fn subring_membership() {
        let base = gr25();
        let ext = extend_ring(&base, 2).unwrap();
        let xi = RingElement::teichmuller_generator(&ext.ring);
        assert!(!in_base_subring(&xi, 3).unwrap());
        let y = &xi.scale(5) + &RingElement::one(&ext.ring);
        assert!(!in_base_subring(&y, 3).unwrap());
        assert_eq!(ext.embedding.retract(&xi).unwrap_err(), Error::NotInSubring);
        assert_eq!(
            in_base_subring(&xi, 4).unwrap_err(),
            Error::DegreeMismatch { sub: 4, ext: 6 }
        );
    }
}
