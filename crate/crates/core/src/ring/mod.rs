//! Galois rings `GR(p^s, p^{sm}) = Z_{p^s}[Y] / (f)`, their Frobenius powers and
//! residue fields.

mod element;
mod extension;
pub(crate) mod quotient;
mod residue;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{checked_pow, gcd_usize, is_prime};
use crate::error::{Error, Result};
use quotient::{hensel_lift, is_primitive_mod_p, smallest_primitive, Quotient};

pub use element::{ArithOp, RingElement};
pub use extension::{extend_ring, in_base_subring, Embedding, Extension};
pub use residue::{ResidueElement, ResidueField};

/// Shared handle to an immutable ring.
pub type Ring = Arc<RingContext>;

/// Interchange form of a ring, e.g.
/// `{"p":5,"s":2,"m":3,"modulus":[3,3,0,1],"sigma_exponent":2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingConfig {
    pub p: u64,
    pub s: u32,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
    #[serde(default)]
    pub sigma_exponent: usize,
}

impl RingConfig {
    pub fn new(p: u64, s: u32, m: usize, modulus: Option<Vec<u64>>, e: usize) -> Self {
        RingConfig {
            p,
            s,
            m,
            modulus,
            sigma_exponent: e,
        }
    }
}

/// Largest admissible `p^s`; products of two coefficients must fit in `u64`.
const MAX_CHARACTERISTIC: u64 = 1 << 32;
/// Largest admissible residue-field order `p^m`.
const MAX_FIELD_ORDER: u64 = 1 << 62;

/// The ambient ring together with the automorphism `sigma = theta^e`.
#[derive(Debug)]
pub struct RingContext {
    p: u64,
    s: u32,
    m: usize,
    e: usize,
    pub(crate) quot: Quotient,
    residue: Arc<ResidueField>,
    /// `frobenius[j][i]` is `theta^j(zeta^i)`.
    frobenius: Vec<Vec<Vec<u64>>>,
    teichmuller: Vec<u64>,
}

impl PartialEq for RingContext {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.s == other.s
            && self.m == other.m
            && self.e == other.e
            && self.quot.modulus == other.quot.modulus
    }
}

impl Eq for RingContext {}

/// Validate parameters and build the ring. When `modulus` is omitted the
/// Teichmüller lift of the smallest primitive polynomial over `F_p` is used,
/// so that the class of `Y` is itself a root of unity.
pub fn make_ring(config: &RingConfig) -> Result<Ring> {
    let RingConfig {
        p,
        s,
        m,
        ref modulus,
        sigma_exponent: e,
    } = *config;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if s == 0 || m == 0 {
        return Err(Error::InvalidRing("s and m must be positive".into()));
    }
    if e >= m {
        return Err(Error::BadAutomorphismExponent { e, m });
    }
    let q = checked_pow(p, s)
        .filter(|&q| q <= MAX_CHARACTERISTIC)
        .ok_or_else(|| Error::TooLarge(format!("p^s = {p}^{s} exceeds 2^32")))?;
    checked_pow(p, m as u32)
        .filter(|&v| v <= MAX_FIELD_ORDER)
        .ok_or_else(|| Error::TooLarge(format!("p^m = {p}^{m} exceeds 2^62")))?;

    let modulus = match modulus {
        Some(f) => {
            if f.len() != m + 1 {
                return Err(Error::InvalidRing(format!(
                    "modulus has degree {}, expected {m}",
                    f.len().saturating_sub(1)
                )));
            }
            let f: Vec<u64> = f.iter().map(|c| c % q).collect();
            if f[m] != 1 % q {
                return Err(Error::InvalidRing("modulus is not monic".into()));
            }
            if !is_primitive_mod_p(&f, p) {
                return Err(Error::ModulusNotBasicPrimitive(format!(
                    "{f:?} is not primitive modulo {p}"
                )));
            }
            f
        }
        None => {
            let fbar = smallest_primitive(p, m).ok_or_else(|| {
                Error::ModulusNotBasicPrimitive(format!("no primitive polynomial of degree {m}"))
            })?;
            hensel_lift(&fbar, p, s)
        }
    };
    build_context(p, s, m, e, q, modulus)
}

fn build_context(p: u64, s: u32, m: usize, e: usize, q: u64, modulus: Vec<u64>) -> Result<Ring> {
    let quot = Quotient::new(q, modulus.clone());
    let residue = Arc::new(ResidueField::new(p, &modulus));
    let zeta = quot.gen();
    let field_order = p.pow(m as u32);

    let mut frobenius = Vec::with_capacity(m);
    let mut p_pow = 1u64;
    for _ in 0..m {
        let approx = quot.pow(&zeta, p_pow);
        let image = newton_root(&quot, &residue, &modulus, approx)?;
        let mut powers = Vec::with_capacity(m);
        let mut acc = quot.one();
        for _ in 0..m {
            powers.push(acc.clone());
            acc = quot.mul(&acc, &image);
        }
        frobenius.push(powers);
        p_pow = p_pow.saturating_mul(p);
    }

    let mut teichmuller = zeta;
    for _ in 1..s {
        teichmuller = quot.pow(&teichmuller, field_order);
    }

    Ok(Arc::new(RingContext {
        p,
        s,
        m,
        e,
        quot,
        residue,
        frobenius,
        teichmuller,
    }))
}

/// Inverse of a unit through its residue inverse and Newton iteration.
pub(crate) fn unit_inverse(quot: &Quotient, residue: &ResidueField, x: &[u64]) -> Option<Vec<u64>> {
    let rq = &residue.quot;
    let xbar: Vec<u64> = x.iter().map(|c| c % rq.n).collect();
    if rq.is_zero(&xbar) {
        return None;
    }
    let mut y = rq.pow(&xbar, residue.order() - 2);
    let two = quot.constant(2);
    let one = quot.one();
    for _ in 0..64 {
        let xy = quot.mul(x, &y);
        if xy == one {
            return Some(y);
        }
        y = quot.mul(&y, &quot.sub(&two, &xy));
    }
    None
}

/// Lift `approx`, a root of `f` modulo `p`, to the unique root of `f` over `Z_{p^s}`.
pub(crate) fn newton_root(
    quot: &Quotient,
    residue: &ResidueField,
    f: &[u64],
    mut approx: Vec<u64>,
) -> Result<Vec<u64>> {
    let derivative: Vec<u64> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * i as u64 % quot.n)
        .collect();
    for _ in 0..64 {
        let value = quot.eval_int_poly(f, &approx);
        if quot.is_zero(&value) {
            return Ok(approx);
        }
        let slope = quot.eval_int_poly(&derivative, &approx);
        let inv = unit_inverse(quot, residue, &slope).ok_or_else(|| {
            Error::InternalInconsistency("modulus has a repeated root modulo p".into())
        })?;
        approx = quot.sub(&approx, &quot.mul(&value, &inv));
    }
    Err(Error::InternalInconsistency("Newton lifting did not converge".into()))
}

impl RingContext {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// The characteristic `p^s`.
    pub fn characteristic(&self) -> u64 {
        self.quot.n
    }

    pub fn sigma_exponent(&self) -> usize {
        self.e
    }

    /// Order of `sigma = theta^e` in the automorphism group: `m / gcd(m, e)`.
    pub fn sigma_order(&self) -> usize {
        self.m / gcd_usize(self.m, self.e)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.quot.modulus
    }

    pub fn residue_field(&self) -> &Arc<ResidueField> {
        &self.residue
    }

    /// Order of the Teichmüller group, `p^m - 1`.
    pub fn teichmuller_order(&self) -> u64 {
        self.residue.order() - 1
    }

    /// Number of elements `p^{sm}`, saturating at `u128::MAX`.
    pub fn size(&self) -> u128 {
        (self.quot.n as u128)
            .checked_pow(self.m as u32)
            .unwrap_or(u128::MAX)
    }

    /// Is the class of `Y` a Teichmüller element (the modulus is the Hensel lift)?
    pub fn zeta_is_teichmuller(&self) -> bool {
        self.teichmuller == self.quot.gen()
    }

    pub fn config(&self) -> RingConfig {
        RingConfig {
            p: self.p,
            s: self.s,
            m: self.m,
            modulus: Some(self.quot.modulus.clone()),
            sigma_exponent: self.e,
        }
    }

    /// Same ring with another automorphism exponent.
    pub fn with_sigma_exponent(&self, e: usize) -> Result<Ring> {
        if e >= self.m {
            return Err(Error::BadAutomorphismExponent { e, m: self.m });
        }
        Ok(Arc::new(RingContext {
            p: self.p,
            s: self.s,
            m: self.m,
            e,
            quot: self.quot.clone(),
            residue: self.residue.clone(),
            frobenius: self.frobenius.clone(),
            teichmuller: self.teichmuller.clone(),
        }))
    }

    pub(crate) fn frobenius_raw(&self, x: &[u64], j: usize) -> Vec<u64> {
        let j = j % self.m;
        if j == 0 {
            return x.to_vec();
        }
        let n = self.quot.n;
        let mut out = vec![0u64; self.m];
        for (i, &c) in x.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, b) in out.iter_mut().zip(&self.frobenius[j][i]) {
                *o = (*o + c * b % n) % n;
            }
        }
        out
    }

    pub(crate) fn teichmuller_raw(&self) -> &[u64] {
        &self.teichmuller
    }
}

/// Two handles denote the same ring.
pub fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
