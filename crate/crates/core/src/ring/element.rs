use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use super::{same_ring, unit_inverse, ResidueElement, Ring};
use crate::error::{Error, Result};

/// An element `c_0 + c_1 zeta + ... + c_{m-1} zeta^{m-1}` of a Galois ring.
///
/// The arithmetic operators panic when the operands live in different rings;
/// [`RingElement::arith`] is the checked form.
#[derive(Clone)]
pub struct RingElement {
    ring: Ring,
    coeffs: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

impl RingElement {
    pub(crate) fn from_raw(ring: &Ring, coeffs: Vec<u64>) -> Self {
        debug_assert_eq!(coeffs.len(), ring.m());
        RingElement {
            ring: ring.clone(),
            coeffs,
        }
    }

    /// Element from a coefficient literal, low-to-high. Shorter literals are
    /// zero-padded; negative entries are reduced modulo `p^s`.
    pub fn new(ring: &Ring, coeffs: &[i64]) -> Result<Self> {
        if coeffs.len() > ring.m() {
            return Err(Error::ElementLength {
                expected: ring.m(),
                got: coeffs.len(),
            });
        }
        let n = ring.characteristic() as i128;
        let mut v: Vec<u64> = coeffs
            .iter()
            .map(|&c| (c as i128).rem_euclid(n) as u64)
            .collect();
        v.resize(ring.m(), 0);
        Ok(Self::from_raw(ring, v))
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::from_raw(ring, ring.quot.zero())
    }

    pub fn one(ring: &Ring) -> Self {
        Self::from_raw(ring, ring.quot.one())
    }

    pub fn from_int(ring: &Ring, c: i64) -> Self {
        let n = ring.characteristic() as i128;
        Self::from_raw(ring, ring.quot.constant((c as i128).rem_euclid(n) as u64))
    }

    /// The class of `Y`.
    pub fn zeta(ring: &Ring) -> Self {
        Self::from_raw(ring, ring.quot.gen())
    }

    /// Generator of the Teichmüller group: the root of unity of order
    /// `p^m - 1` congruent to `zeta` modulo `p`.
    pub fn teichmuller_generator(ring: &Ring) -> Self {
        Self::from_raw(ring, ring.teichmuller_raw().to_vec())
    }

    /// Element with the given index in the base-`p^s` enumeration of the ring.
    pub fn from_index(ring: &Ring, mut index: u128) -> Self {
        let n = ring.characteristic() as u128;
        let coeffs = (0..ring.m())
            .map(|_| {
                let c = (index % n) as u64;
                index /= n;
                c
            })
            .collect();
        Self::from_raw(ring, coeffs)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient literal as signed integers.
    pub fn to_literal(&self) -> Vec<i64> {
        self.coeffs.iter().map(|&c| c as i64).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == self.ring.quot.one()
    }

    /// Units are exactly the elements with nonzero residue.
    pub fn is_unit(&self) -> bool {
        let p = self.ring.p();
        self.coeffs.iter().any(|&c| c % p != 0)
    }

    /// Nilpotent (including zero): every coefficient divisible by `p`.
    pub fn is_nilpotent(&self) -> bool {
        !self.is_unit()
    }

    /// Is this an integer `c * 1`?
    pub fn is_constant(&self) -> bool {
        self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn arith(&self, other: &Self, op: ArithOp) -> Result<Self> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::MixedRings);
        }
        let q = &self.ring.quot;
        let coeffs = match op {
            ArithOp::Add => q.add(&self.coeffs, &other.coeffs),
            ArithOp::Sub => q.sub(&self.coeffs, &other.coeffs),
            ArithOp::Mul => q.mul(&self.coeffs, &other.coeffs),
            ArithOp::Neg => q.neg(&self.coeffs),
        };
        Ok(Self::from_raw(&self.ring, coeffs))
    }

    pub fn inverse(&self) -> Result<Self> {
        unit_inverse(&self.ring.quot, self.ring.residue_field(), &self.coeffs)
            .map(|c| Self::from_raw(&self.ring, c))
            .ok_or(Error::NotAUnit)
    }

    pub fn pow(&self, exp: u64) -> Self {
        Self::from_raw(&self.ring, self.ring.quot.pow(&self.coeffs, exp))
    }

    /// `theta^j(x)` for the Frobenius `theta`.
    pub fn frobenius(&self, j: usize) -> Self {
        Self::from_raw(&self.ring, self.ring.frobenius_raw(&self.coeffs, j))
    }

    /// `sigma^i(x)` with `sigma = theta^e`.
    pub fn apply_sigma(&self, i: usize) -> Self {
        let m = self.ring.m();
        let j = (self.ring.sigma_exponent() % m) * (i % m) % m;
        self.frobenius(j)
    }

    /// Image in the residue field.
    pub fn project_residue(&self) -> ResidueElement {
        ResidueElement::from_coeffs(self.ring.residue_field(), &self.coeffs)
    }

    /// Multiply by an integer.
    pub fn scale(&self, c: i64) -> Self {
        let n = self.ring.characteristic() as i128;
        let c = (c as i128).rem_euclid(n) as u64;
        Self::from_raw(&self.ring, self.ring.quot.scale(&self.coeffs, c))
    }

    fn binop(&self, other: &Self, op: ArithOp) -> Self {
        match self.arith(other, op) {
            Ok(v) => v,
            Err(_) => panic!("ring elements from different rings"),
        }
    }
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && same_ring(&self.ring, &other.ring)
    }
}

impl Eq for RingElement {}

impl Hash for RingElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl PartialOrd for RingElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RingElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coeffs.cmp(&other.coeffs)
    }
}

pub(crate) fn fmt_coeffs(coeffs: &[u64], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if coeffs[1..].iter().all(|&c| c == 0) {
        return write!(f, "{}", coeffs[0]);
    }
    write!(f, "[")?;
    for (i, c) in coeffs.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{c}")?;
    }
    write!(f, "]")
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_coeffs(&self.coeffs, f)
    }
}

macro_rules! ring_binop {
    ($trait:ident, $method:ident, $op:expr) => {
        impl $trait<&RingElement> for &RingElement {
            type Output = RingElement;
            fn $method(self, rhs: &RingElement) -> RingElement {
                self.binop(rhs, $op)
            }
        }
        impl $trait<RingElement> for RingElement {
            type Output = RingElement;
            fn $method(self, rhs: RingElement) -> RingElement {
                self.binop(&rhs, $op)
            }
        }
        impl $trait<&RingElement> for RingElement {
            type Output = RingElement;
            fn $method(self, rhs: &RingElement) -> RingElement {
                self.binop(rhs, $op)
            }
        }
    };
}

ring_binop!(Add, add, ArithOp::Add);
ring_binop!(Sub, sub, ArithOp::Sub);
ring_binop!(Mul, mul, ArithOp::Mul);

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement::from_raw(&self.ring, self.ring.quot.neg(&self.coeffs))
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        -&self
    }
}
