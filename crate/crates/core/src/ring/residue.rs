use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::quotient::Quotient;

/// The residue field `F_{p^m} = F_p[Y] / (f mod p)`.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct ResidueField {
    pub(crate) quot: Quotient,
}

impl ResidueField {
    pub(crate) fn new(p: u64, modulus: &[u64]) -> Self {
        ResidueField {
            quot: Quotient::new(p, modulus.iter().map(|c| c % p).collect()),
        }
    }

    pub fn p(&self) -> u64 {
        self.quot.n
    }

    pub fn degree(&self) -> usize {
        self.quot.m()
    }

    /// `p^m`, the number of elements.
    pub fn order(&self) -> u64 {
        self.p().pow(self.degree() as u32)
    }
}

/// An element of a [`ResidueField`].
#[derive(Clone)]
pub struct ResidueElement {
    pub(crate) field: Arc<ResidueField>,
    pub(crate) coeffs: Vec<u64>,
}

impl ResidueElement {
    pub fn zero(field: &Arc<ResidueField>) -> Self {
        ResidueElement {
            field: field.clone(),
            coeffs: field.quot.zero(),
        }
    }

    pub fn one(field: &Arc<ResidueField>) -> Self {
        ResidueElement {
            field: field.clone(),
            coeffs: field.quot.one(),
        }
    }

    pub fn from_coeffs(field: &Arc<ResidueField>, coeffs: &[u64]) -> Self {
        let mut v: Vec<u64> = coeffs.iter().map(|c| c % field.p()).collect();
        v.resize(field.degree(), 0);
        ResidueElement {
            field: field.clone(),
            coeffs: v,
        }
    }

    pub fn field(&self) -> &Arc<ResidueField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.field.quot.is_zero(&self.coeffs)
    }

    pub fn pow(&self, exp: u64) -> Self {
        self.with(self.field.quot.pow(&self.coeffs, exp))
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(self.pow(self.field.order() - 2))
    }

    fn with(&self, coeffs: Vec<u64>) -> Self {
        ResidueElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    fn check(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || self.field == other.field,
            "residue elements from different fields"
        );
    }
}

impl PartialEq for ResidueElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
            && (Arc::ptr_eq(&self.field, &other.field) || self.field == other.field)
    }
}

impl Eq for ResidueElement {}

impl fmt::Debug for ResidueElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

impl fmt::Display for ResidueElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::element::fmt_coeffs(&self.coeffs, f)
    }
}

macro_rules! residue_binop {
    ($trait:ident, $method:ident, $op:ident) => {
        impl $trait<&ResidueElement> for &ResidueElement {
            type Output = ResidueElement;
            fn $method(self, rhs: &ResidueElement) -> ResidueElement {
                self.check(rhs);
                self.with(self.field.quot.$op(&self.coeffs, &rhs.coeffs))
            }
        }
        impl $trait for ResidueElement {
            type Output = ResidueElement;
            fn $method(self, rhs: ResidueElement) -> ResidueElement {
                (&self).$method(&rhs)
            }
        }
    };
}

residue_binop!(Add, add, add);
residue_binop!(Sub, sub, sub);
residue_binop!(Mul, mul, mul);

impl Neg for &ResidueElement {
    type Output = ResidueElement;
    fn neg(self) -> ResidueElement {
        self.with(self.field.quot.neg(&self.coeffs))
    }
}

impl Neg for ResidueElement {
    type Output = ResidueElement;
    fn neg(self) -> ResidueElement {
        -&self
    }
}
