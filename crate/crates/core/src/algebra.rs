//! Minimal commutative-ring interface shared by ring and residue-field elements,
//! so that determinants and minor enumeration are written once.

use crate::ring::{ResidueElement, RingElement};

pub trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
}

impl Scalar for RingElement {
    fn zero_like(&self) -> Self {
        RingElement::zero(self.ring())
    }
    fn one_like(&self) -> Self {
        RingElement::one(self.ring())
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        RingElement::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        RingElement::is_unit(self)
    }
}

impl Scalar for ResidueElement {
    fn zero_like(&self) -> Self {
        ResidueElement::zero(self.field())
    }
    fn one_like(&self) -> Self {
        ResidueElement::one(self.field())
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        ResidueElement::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        !ResidueElement::is_zero(self)
    }
}

/// Determinant of a `k x k` row-major matrix by cofactor expansion along the
/// last row, memoized over column subsets: `D[mask]` is the determinant of the
/// first `|mask|` rows restricted to the columns in `mask`.
pub fn determinant_of<T: Scalar>(entries: &[T], k: usize) -> T {
    assert_eq!(entries.len(), k * k);
    assert!(k > 0 && k <= 20, "determinant order out of range");
    let one = entries[0].one_like();
    let zero = entries[0].zero_like();
    let mut table: Vec<Option<T>> = vec![None; 1 << k];
    table[0] = Some(one);
    for mask in 1usize..(1 << k) {
        let j = mask.count_ones() as usize;
        let row = j - 1;
        let mut acc = zero.clone();
        let mut pos = 0;
        for c in 0..k {
            if mask & (1 << c) == 0 {
                continue;
            }
            let a = &entries[row * k + c];
            if !a.is_zero() {
                let minor = table[mask & !(1 << c)].as_ref().expect("smaller masks first");
                let term = a.mul(minor);
                acc = if (row + pos) % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            pos += 1;
        }
        table[mask] = Some(acc);
    }
    table[(1 << k) - 1].take().expect("full mask computed")
}
