//! The skew polynomial ring `R[X; sigma]` over a Galois ring `R`, with
//! multiplication `a X^i * b X^j = a sigma^i(b) X^{i+j}`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::{checked_pow, gcd_usize, lcm};
use crate::error::{Error, Result};
use crate::ring::{extend_ring, same_ring, Extension, Ring, RingElement};

/// A skew polynomial, coefficients low-to-high with no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct SkewPoly {
    ring: Ring,
    coeffs: Vec<RingElement>,
}

impl SkewPoly {
    pub fn new(ring: &Ring, coeffs: Vec<RingElement>) -> Result<Self> {
        if coeffs.iter().any(|c| !same_ring(c.ring(), ring)) {
            return Err(Error::MixedRings);
        }
        Ok(Self::from_trusted(ring, coeffs))
    }

    fn from_trusted(ring: &Ring, mut coeffs: Vec<RingElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        SkewPoly {
            ring: ring.clone(),
            coeffs,
        }
    }

    /// Polynomial from element literals, low-to-high.
    pub fn from_literals(ring: &Ring, literals: &[Vec<i64>]) -> Result<Self> {
        let coeffs = literals
            .iter()
            .map(|c| RingElement::new(ring, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_trusted(ring, coeffs))
    }

    /// Polynomial with integer coefficients, low-to-high.
    pub fn from_ints(ring: &Ring, ints: &[i64]) -> Self {
        let coeffs = ints.iter().map(|&c| RingElement::from_int(ring, c)).collect();
        Self::from_trusted(ring, coeffs)
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::from_trusted(ring, Vec::new())
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(&RingElement::one(ring))
    }

    pub fn constant(c: &RingElement) -> Self {
        Self::from_trusted(c.ring(), vec![c.clone()])
    }

    /// `c X^i`.
    pub fn monomial(c: &RingElement, i: usize) -> Self {
        let mut coeffs = vec![RingElement::zero(c.ring()); i];
        coeffs.push(c.clone());
        Self::from_trusted(c.ring(), coeffs)
    }

    pub fn x_pow(ring: &Ring, i: usize) -> Self {
        Self::monomial(&RingElement::one(ring), i)
    }

    /// `X^n - 1`.
    pub fn x_pow_minus_one(ring: &Ring, n: usize) -> Self {
        &Self::x_pow(ring, n) - &Self::one(ring)
    }

    /// `X - beta`.
    pub fn linear(beta: &RingElement) -> Self {
        let ring = beta.ring();
        Self::from_trusted(ring, vec![-beta, RingElement::one(ring)])
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coeffs(&self) -> &[RingElement] {
        &self.coeffs
    }

    /// Coefficient of `X^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> RingElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| RingElement::zero(&self.ring))
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&RingElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Hamming weight: number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Coefficient-wise `sigma^i`.
    pub fn apply_sigma(&self, i: usize) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c.apply_sigma(i)).collect();
        Self::from_trusted(&self.ring, coeffs)
    }

    /// `c * f`, i.e. left multiplication by a constant.
    pub fn scale_left(&self, c: &RingElement) -> Self {
        let coeffs = self.coeffs.iter().map(|a| c * a).collect();
        Self::from_trusted(&self.ring, coeffs)
    }

    fn combine(&self, other: &Self, f: impl Fn(&RingElement, &RingElement) -> RingElement) -> Self {
        assert!(same_ring(&self.ring, &other.ring), "skew polynomials from different rings");
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| f(&self.coeff(i), &other.coeff(i))).collect();
        Self::from_trusted(&self.ring, coeffs)
    }
}

impl Add for &SkewPoly {
    type Output = SkewPoly;
    fn add(self, rhs: &SkewPoly) -> SkewPoly {
        self.combine(rhs, |a, b| a + b)
    }
}

impl Sub for &SkewPoly {
    type Output = SkewPoly;
    fn sub(self, rhs: &SkewPoly) -> SkewPoly {
        self.combine(rhs, |a, b| a - b)
    }
}

impl Neg for &SkewPoly {
    type Output = SkewPoly;
    fn neg(self) -> SkewPoly {
        SkewPoly::from_trusted(&self.ring, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &SkewPoly {
    type Output = SkewPoly;
    fn mul(self, rhs: &SkewPoly) -> SkewPoly {
        smul(self, rhs).expect("skew polynomials from different rings")
    }
}

impl fmt::Debug for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewPoly({self})")
    }
}

/// Renders e.g. `1 + 2X + X^3`; non-constant coefficients print as
/// bracketed literals, `[0,1,0]X^2`.
impl fmt::Display for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let power = match i {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{i}"),
            };
            if c.is_one() && i > 0 {
                write!(f, "{power}")?;
            } else {
                write!(f, "{c}{power}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Skew product `f * g`.
pub fn smul(f: &SkewPoly, g: &SkewPoly) -> Result<SkewPoly> {
    if !same_ring(&f.ring, &g.ring) {
        return Err(Error::MixedRings);
    }
    if f.is_zero() || g.is_zero() {
        return Ok(SkewPoly::zero(&f.ring));
    }
    let mut out = vec![RingElement::zero(&f.ring); f.coeffs.len() + g.coeffs.len() - 1];
    for (i, a) in f.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let twisted = g.apply_sigma(i);
        for (j, b) in twisted.coeffs.iter().enumerate() {
            out[i + j] = &out[i + j] + &(a * b);
        }
    }
    Ok(SkewPoly::from_trusted(&f.ring, out))
}

/// Right Euclidean division: `f = q * g + r` with `r = 0` or `deg r < deg g`.
pub fn right_divmod(f: &SkewPoly, g: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
    if !same_ring(&f.ring, &g.ring) {
        return Err(Error::MixedRings);
    }
    let dg = g.degree().ok_or(Error::DivisionByZero)?;
    let lead_inv = g
        .leading()
        .expect("nonzero divisor")
        .inverse()
        .map_err(|_| Error::NonUnitLeadingCoefficient)?;
    let ring = &f.ring;
    let mut r = f.coeffs.clone();
    let qlen = r.len().saturating_sub(dg);
    let mut q = vec![RingElement::zero(ring); qlen];
    for d in (0..qlen).rev() {
        let top = &r[d + dg];
        if top.is_zero() {
            continue;
        }
        // a X^d * g has leading coefficient a sigma^d(lead g).
        let a = top * &lead_inv.apply_sigma(d);
        for (j, b) in g.coeffs.iter().enumerate() {
            r[d + j] = &r[d + j] - &(&a * &b.apply_sigma(d));
        }
        q[d] = a;
    }
    r.truncate(dg.min(r.len()));
    Ok((
        SkewPoly::from_trusted(ring, q),
        SkewPoly::from_trusted(ring, r),
    ))
}

/// `N_i(beta) = beta sigma(beta) ... sigma^{i-1}(beta)`, with `N_0 = 1`.
pub fn sigma_norm(beta: &RingElement, i: usize) -> RingElement {
    let mut acc = RingElement::one(beta.ring());
    for _ in 0..i {
        acc = &acc.apply_sigma(1) * beta;
    }
    acc
}

/// The sequence `N_0(beta), N_1(beta), ...` built by the recurrence
/// `N_{i+1} = sigma(N_i) beta`.
#[derive(Clone, Debug)]
pub struct SigmaNormTable {
    base: RingElement,
    values: Vec<RingElement>,
}

impl SigmaNormTable {
    pub fn new(beta: &RingElement, len: usize) -> Self {
        let mut table = SigmaNormTable {
            base: beta.clone(),
            values: vec![RingElement::one(beta.ring())],
        };
        table.extend_to(len);
        table
    }

    pub fn base(&self) -> &RingElement {
        &self.base
    }

    pub fn values(&self) -> &[RingElement] {
        &self.values
    }

    pub fn extend_to(&mut self, len: usize) {
        while self.values.len() < len {
            let next = &self.values.last().expect("N_0 present").apply_sigma(1) * &self.base;
            self.values.push(next);
        }
    }

    pub fn get(&mut self, i: usize) -> &RingElement {
        self.extend_to(i + 1);
        &self.values[i]
    }
}

/// Right evaluation `sum_i a_i N_i(beta)`.
pub fn right_eval(f: &SkewPoly, beta: &RingElement) -> Result<RingElement> {
    if !same_ring(&f.ring, beta.ring()) {
        return Err(Error::MixedRings);
    }
    let table = SigmaNormTable::new(beta, f.coeffs.len());
    let mut acc = RingElement::zero(&f.ring);
    for (a, n) in f.coeffs.iter().zip(table.values()) {
        acc = &acc + &(a * n);
    }
    Ok(acc)
}

/// Right evaluation as the remainder of right division by `X - beta`.
pub fn right_eval_by_division(f: &SkewPoly, beta: &RingElement) -> Result<RingElement> {
    let (_, r) = right_divmod(f, &SkewPoly::linear(beta))?;
    Ok(r.coeff(0))
}

pub fn is_right_root(f: &SkewPoly, beta: &RingElement) -> Result<bool> {
    Ok(right_eval(f, beta)?.is_zero())
}

/// Monic polynomial of degree `roots.len()` having every root as a right root,
/// by the iterative least common left multiple
/// `g_{i+1} = (X - sigma(c) a c^{-1}) * g_i` with `c = g_i(a)`.
///
/// `c = 0` is reported as [`Error::DuplicateRoot`] when `a` repeats an earlier
/// root and [`Error::DependentRoots`] otherwise; a nonzero non-unit `c` is
/// [`Error::DependentRoots`].
pub fn build_w_poly(roots: &[RingElement]) -> Result<SkewPoly> {
    let first = roots
        .first()
        .ok_or_else(|| Error::InvalidParameter("at least one root is required".into()))?;
    let ring = first.ring().clone();
    if roots.iter().any(|a| !same_ring(a.ring(), &ring)) {
        return Err(Error::MixedRings);
    }
    let mut g = SkewPoly::linear(first);
    for (index, a) in roots.iter().enumerate().skip(1) {
        let c = right_eval(&g, a)?;
        if c.is_zero() {
            if roots[..index].contains(a) {
                return Err(Error::DuplicateRoot { index });
            }
            return Err(Error::DependentRoots { index });
        }
        let c_inv = c.inverse().map_err(|_| Error::DependentRoots { index })?;
        let conjugate = &(&c.apply_sigma(1) * a) * &c_inv;
        g = smul(&SkewPoly::linear(&conjugate), &g)?;
    }
    Ok(g)
}

/// Does `g` divide `f` from the right?
pub fn right_divides(g: &SkewPoly, f: &SkewPoly) -> Result<bool> {
    Ok(right_divmod(f, g)?.1.is_zero())
}

/// Membership in the centre `R^sigma[X^t]`, `t` the order of `sigma`.
pub fn is_central(f: &SkewPoly) -> bool {
    let t = f.ring.sigma_order();
    f.coeffs
        .iter()
        .enumerate()
        .all(|(i, c)| c.is_zero() || (i % t == 0 && c.apply_sigma(1) == *c))
}

/// Right roots of `X^n - 1` of the form `sigma(beta) / beta`, realized in a
/// splitting extension. For `e > 0` the extension has degree `lcm(m, e n)` and
/// `beta` runs over the Teichmüller elements of `F_{p^{en}}`; for `e = 0` the
/// degree is the least multiple of `m` with `n | p^N - 1` and the roots are the
/// Teichmüller `n`-th roots of unity.
#[derive(Clone, Debug)]
pub struct RightRoots {
    pub extension: Extension,
    pub n: usize,
    generator: RingElement,
    count: u64,
}

/// Largest root set [`RightRoots::roots`] will materialize.
pub const MAX_ROOT_SET: u64 = 1 << 16;

impl RightRoots {
    pub fn ring(&self) -> &Ring {
        &self.extension.ring
    }

    /// Number of distinct roots.
    pub fn count(&self) -> u64 {
        self.count
    }

    /// The `j`-th root, `omega^j` for the cyclic generator `omega` of the set.
    pub fn root(&self, j: u64) -> RingElement {
        self.generator.pow(j % self.count)
    }

    /// All roots in generator-exponent order, each checked by right evaluation.
    pub fn roots(&self) -> Result<Vec<RingElement>> {
        if self.count > MAX_ROOT_SET {
            return Err(Error::BudgetExceeded {
                size: self.count as u128,
                budget: MAX_ROOT_SET as u128,
            });
        }
        let target = SkewPoly::x_pow_minus_one(self.ring(), self.n);
        let mut out = Vec::with_capacity(self.count as usize);
        let mut acc = RingElement::one(self.ring());
        for _ in 0..self.count {
            if !is_right_root(&target, &acc)? {
                return Err(Error::InternalInconsistency(format!(
                    "{acc} is not a right root of X^{} - 1",
                    self.n
                )));
            }
            out.push(acc.clone());
            acc = &acc * &self.generator;
        }
        Ok(out)
    }
}

/// Residue degree of the splitting extension used by [`right_roots_of_unity`].
pub fn splitting_degree(p: u64, m: usize, e: usize, n: usize) -> Result<usize> {
    if e > 0 {
        return Ok(lcm(m, e * n));
    }
    let mut big = m;
    loop {
        let order = checked_pow(p, big as u32)
            .filter(|&v| v <= 1 << 62)
            .ok_or_else(|| Error::TooLarge(format!("no splitting degree for n = {n} below 2^62")))?;
        if (order - 1) % n as u64 == 0 {
            return Ok(big);
        }
        big += m;
    }
}

pub fn right_roots_of_unity(ring: &Ring, n: usize) -> Result<RightRoots> {
    let p = ring.p();
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    if gcd_usize(n, p as usize) != 1 {
        return Err(Error::CharacteristicDividesLength { n, p });
    }
    let m = ring.m();
    let e = ring.sigma_exponent();
    let big = splitting_degree(p, m, e, n)?;
    let extension = extend_ring(ring, big / m)?;
    let xi = RingElement::teichmuller_generator(&extension.ring);
    let order = extension.ring.teichmuller_order();
    let (generator, count) = if e == 0 {
        (xi.pow(order / n as u64), n as u64)
    } else {
        let q0 = p.pow(e as u32);
        let sub = q0.pow(n as u32) - 1;
        let step = order / sub;
        (xi.pow((q0 - 1) * step), sub / (q0 - 1))
    };
    Ok(RightRoots {
        extension,
        n,
        generator,
        count,
    })
}
