//! Root-family constructions of skew polynomials `g` whose twisted companion
//! chains are MDS, with the side conditions of the conditional families and
//! nilpotent perturbations of roots and coefficients.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::arith::gcd_usize;
use crate::error::{Error, Result};
use crate::matrix::{is_mds, twisted_chain, GRMatrix};
use crate::report::VerificationReport;
use crate::ring::{
    extend_ring, in_base_subring, make_ring, Embedding, Extension, Ring, RingConfig, RingElement,
};
use crate::skew::{build_w_poly, sigma_norm, SkewPoly};
use crate::vandermonde::ExponentSet;

/// Largest residue-field order a working ring may have.
const MAX_WORKING_ORDER: u64 = 1 << 62;
/// Largest number of `Z_p` combinations a Frobenius-family condition may enumerate.
const MAX_COMBINATIONS: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    ConsecutivePowers,
    ScaledConsecutive,
    RootPerturbed,
    GapAtK,
    InverseGap,
    #[serde(rename = "gap_k_plus_1")]
    GapKPlus1,
    FrobeniusOrbit,
    FrobeniusOrbitWithOne,
    CoeffPerturbed,
    FromPoly,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::ConsecutivePowers,
        Family::ScaledConsecutive,
        Family::RootPerturbed,
        Family::GapAtK,
        Family::InverseGap,
        Family::GapKPlus1,
        Family::FrobeniusOrbit,
        Family::FrobeniusOrbitWithOne,
        Family::CoeffPerturbed,
        Family::FromPoly,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::ConsecutivePowers => "consecutive_powers",
            Family::ScaledConsecutive => "scaled_consecutive",
            Family::RootPerturbed => "root_perturbed",
            Family::GapAtK => "gap_at_k",
            Family::InverseGap => "inverse_gap",
            Family::GapKPlus1 => "gap_k_plus_1",
            Family::FrobeniusOrbit => "frobenius_orbit",
            Family::FrobeniusOrbitWithOne => "frobenius_orbit_with_one",
            Family::CoeffPerturbed => "coeff_perturbed",
            Family::FromPoly => "from_poly",
        }
    }

    /// Families whose MDS property holds unconditionally.
    pub fn is_guaranteed(self) -> bool {
        matches!(
            self,
            Family::ConsecutivePowers
                | Family::ScaledConsecutive
                | Family::RootPerturbed
                | Family::CoeffPerturbed
        )
    }

    /// Families whose MDS property is equivalent to a checkable side condition.
    pub fn is_conditional(self) -> bool {
        matches!(
            self,
            Family::GapAtK
                | Family::InverseGap
                | Family::GapKPlus1
                | Family::FrobeniusOrbit
                | Family::FrobeniusOrbitWithOne
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let normalized = s.replace('-', "_");
        Family::ALL
            .into_iter()
            .find(|f| f.name() == normalized)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown family '{s}'")))
    }
}

/// Parameters of one construction. Element-valued fields (`c`, `eta`, `g`)
/// are literals over the base ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionSpec {
    pub family: Family,
    pub ring: RingConfig,
    /// Degree of `g`; ignored by `from_poly`, which takes it from `g`.
    #[serde(default)]
    pub k: usize,
    /// Chain length, `k` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(default)]
    pub b: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub eta: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_spec: Option<Box<ConstructionSpec>>,
    /// `xi` is this power of the Teichmüller generator of the working ring.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi_power: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<Vec<Vec<i64>>>,
}

impl ConstructionSpec {
    pub fn new(family: Family, ring: RingConfig, k: usize) -> Self {
        ConstructionSpec {
            family,
            ring,
            k,
            t: None,
            b: 0,
            c: None,
            eta: Vec::new(),
            base_spec: None,
            xi_power: None,
            g: None,
        }
    }

    pub fn with_t(mut self, t: usize) -> Self {
        self.t = Some(t);
        self
    }

    pub fn with_b(mut self, b: u64) -> Self {
        self.b = b;
        self
    }

    pub fn with_c(mut self, c: Vec<i64>) -> Self {
        self.c = Some(c);
        self
    }

    pub fn with_eta(mut self, eta: Vec<Vec<i64>>) -> Self {
        self.eta = eta;
        self
    }

    pub fn with_xi_power(mut self, xi_power: u64) -> Self {
        self.xi_power = Some(xi_power);
        self
    }

    pub fn chain_length(&self) -> usize {
        self.t.unwrap_or(self.k)
    }
}

#[derive(Clone, Debug)]
pub struct ConstructionResult {
    pub family: Family,
    pub base_ring: Ring,
    /// Embedding of the base ring into the ring `g` lives over.
    pub embedding: Embedding,
    pub g: SkewPoly,
    /// Known right roots of `g`; empty for coefficient-level constructions.
    pub roots: Vec<RingElement>,
    pub t: usize,
    pub matrix: GRMatrix,
    pub report: VerificationReport,
    pub coeffs_in_base: Vec<bool>,
    /// Side condition of a conditional family.
    pub condition_holds: Option<bool>,
}

impl ConstructionResult {
    pub fn working_ring(&self) -> &Ring {
        self.embedding.target()
    }

    pub fn all_coeffs_in_base(&self) -> bool {
        self.coeffs_in_base.iter().all(|&b| b)
    }

    /// `g` over the base ring, when every coefficient lies in it.
    pub fn retract_g(&self) -> Result<Option<SkewPoly>> {
        if !self.all_coeffs_in_base() {
            return Ok(None);
        }
        let coeffs = self
            .g
            .coeffs()
            .iter()
            .map(|c| self.embedding.retract(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Some(SkewPoly::new(&self.base_ring, coeffs)?))
    }
}

/// `false` when the constant term of `g` is not a unit: then no chain built
/// from `g` can be MDS.
pub fn guard_constant_term(g: &SkewPoly) -> bool {
    g.coeff(0).is_unit()
}

/// Builds constructions, sharing extension rings across calls.
#[derive(Default)]
pub struct Constructor {
    extensions: Mutex<HashMap<(RingConfig, usize), Extension>>,
}

impl Constructor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn extension(&self, base: &Ring, l: usize) -> Result<Extension> {
        let key = (base.config(), l);
        if let Some(ext) = self.extensions.lock().expect("cache lock").get(&key) {
            return Ok(ext.clone());
        }
        let ext = extend_ring(base, l)?;
        self.extensions
            .lock()
            .expect("cache lock")
            .insert(key, ext.clone());
        Ok(ext)
    }

    pub fn construct(&self, spec: &ConstructionSpec) -> Result<ConstructionResult> {
        match spec.family {
            Family::ConsecutivePowers | Family::ScaledConsecutive => self.consecutive_powers(spec),
            Family::RootPerturbed => self.perturb_roots(spec),
            Family::GapAtK | Family::InverseGap | Family::GapKPlus1 => self.gap_family(spec),
            Family::FrobeniusOrbit | Family::FrobeniusOrbitWithOne => self.frobenius_orbit(spec),
            Family::CoeffPerturbed => self.coeff_perturbed(spec),
            Family::FromPoly => self.from_poly(spec),
        }
    }

    /// Roots `c * xi^{j+b-1}`, `j = 1..k`.
    pub fn consecutive_powers(&self, spec: &ConstructionSpec) -> Result<ConstructionResult> {
        expect_family(spec, &[Family::ConsecutivePowers, Family::ScaledConsecutive])?;
        let setup = self.setup(spec)?;
        let c = match spec.family {
            Family::ScaledConsecutive => setup.scale(spec)?,
            _ => RingElement::one(&setup.ring),
        };
        let roots = setup.consecutive_roots(spec.b, &c);
        let result = finish(spec.family, &setup, roots, None)?;
        require_mds(result)
    }

    /// Roots `c * xi^{j+b-1} + eta_j` with nilpotent `eta_j`.
    pub fn perturb_roots(&self, spec: &ConstructionSpec) -> Result<ConstructionResult> {
        expect_family(spec, &[Family::RootPerturbed])?;
        let setup = self.setup(spec)?;
        let c = match spec.c {
            Some(_) => setup.scale(spec)?,
            None => RingElement::one(&setup.ring),
        };
        let eta = setup.nilpotents(&spec.eta, spec.k)?;
        let roots = setup
            .consecutive_roots(spec.b, &c)
            .iter()
            .zip(&eta)
            .map(|(a, n)| a + n)
            .collect::<Vec<_>>();
        for (index, a) in roots.iter().enumerate() {
            if roots[..index].contains(a) {
                return Err(Error::DuplicateRoot { index });
            }
        }
        let result = finish(spec.family, &setup, roots, None)?;
        require_mds(result)
    }

    /// The three gap families, with the unit condition evaluated over every
    /// `k`-subset of the support set.
    pub fn gap_family(&self, spec: &ConstructionSpec) -> Result<ConstructionResult> {
        expect_family(spec, &[Family::GapAtK, Family::InverseGap, Family::GapKPlus1])?;
        let setup = self.setup(spec)?;
        let k = spec.k;
        let exps: Vec<u64> = match spec.family {
            Family::GapAtK => (0..k as u64 - 1).chain([k as u64]).collect(),
            Family::InverseGap => [0].into_iter().chain(2..=k as u64).collect(),
            _ => [0]
                .into_iter()
                .chain(2..k as u64)
                .chain([k as u64 + 1])
                .collect(),
        };
        let roots: Vec<RingElement> = exps.iter().map(|&j| setup.xi.pow(j)).collect();

        let support = ExponentSet::canonical(k, setup.t)?;
        let norms: HashMap<usize, RingElement> = support
            .entries()
            .iter()
            .map(|&i| (i, sigma_norm(&setup.xi, i)))
            .collect();
        let zero = RingElement::zero(&setup.ring);
        let one = RingElement::one(&setup.ring);
        let mut holds = true;
        for subset in support.subsets(k) {
            let x: Vec<&RingElement> = subset.iter().map(|i| &norms[i]).collect();
            let sum = x.iter().fold(zero.clone(), |acc, v| &acc + *v);
            let inv_sum = x
                .iter()
                .map(|v| v.inverse())
                .collect::<Result<Vec<_>>>()?
                .iter()
                .fold(zero.clone(), |acc, v| &acc + v);
            let value = match spec.family {
                Family::GapAtK => sum,
                Family::InverseGap => inv_sum,
                _ => &(&sum * &inv_sum) - &one,
            };
            if !value.is_unit() {
                holds = false;
                break;
            }
        }
        let result = finish(spec.family, &setup, roots, Some(holds))?;
        require_agreement(result)
    }

    /// Roots `xi^{p^j}` (or `1, xi^p, ..., xi^{p^{k-1}}`) over a field, with the
    /// `Z_p`-independence condition over every `k`-subset of the support set.
    pub fn frobenius_orbit(&self, spec: &ConstructionSpec) -> Result<ConstructionResult> {
        expect_family(spec, &[Family::FrobeniusOrbit, Family::FrobeniusOrbitWithOne])?;
        if spec.ring.s != 1 {
            return Err(Error::RequiresFieldCase);
        }
        let setup = self.setup(spec)?;
        let k = spec.k;
        let p = setup.ring.p();
        let with_one = spec.family == Family::FrobeniusOrbitWithOne;
        let mut roots = Vec::with_capacity(k);
        let mut cur = setup.xi.clone();
        for j in 0..k {
            roots.push(if with_one && j == 0 {
                RingElement::one(&setup.ring)
            } else {
                cur.clone()
            });
            cur = cur.pow(p);
        }
        for (index, a) in roots.iter().enumerate() {
            if roots[..index].contains(a) {
                return Err(Error::DuplicateRoot { index });
            }
        }

        let free = if with_one { k - 1 } else { k };
        let combos = p
            .checked_pow(free as u32)
            .filter(|&c| c <= MAX_COMBINATIONS)
            .ok_or(Error::BudgetExceeded {
                size: (p as u128).saturating_pow(free as u32),
                budget: MAX_COMBINATIONS as u128,
            })?;
        let support = ExponentSet::canonical(k, setup.t)?;
        let norms: HashMap<usize, RingElement> = support
            .entries()
            .iter()
            .map(|&i| (i, sigma_norm(&setup.xi, i)))
            .collect();
        let mut holds = true;
        'subsets: for subset in support.subsets(k) {
            let x: Vec<&RingElement> = subset.iter().map(|i| &norms[i]).collect();
            for code in 1..combos {
                let mut digits = vec![0u64; k];
                let mut rest = code;
                for d in digits.iter_mut().skip(k - free) {
                    *d = rest % p;
                    rest /= p;
                }
                if with_one {
                    let tail: u64 = digits[1..].iter().sum();
                    digits[0] = (p - tail % p) % p;
                }
                let combination = x
                    .iter()
                    .zip(&digits)
                    .fold(RingElement::zero(&setup.ring), |acc, (v, &d)| {
                        &acc + &v.scale(d as i64)
                    });
                if combination.is_zero() {
                    holds = false;
                    break 'subsets;
                }
            }
        }
        let result = finish(spec.family, &setup, roots, Some(holds))?;
        require_agreement(result)
    }

    /// Adds nilpotent `eta_i X^i` to the `g` of `base_spec`.
    pub fn coeff_perturbed(&self, spec: &ConstructionSpec) -> Result<ConstructionResult> {
        expect_family(spec, &[Family::CoeffPerturbed])?;
        let base_spec = spec
            .base_spec
            .as_deref()
            .ok_or_else(|| Error::InvalidParameter("coeff_perturbed needs base_spec".into()))?;
        if base_spec.ring != spec.ring {
            return Err(Error::InvalidParameter(
                "base_spec must use the same ring".into(),
            ));
        }
        let base = self.construct(base_spec)?;
        let k = base.g.degree().unwrap_or(0);
        let eta = embed_nilpotents(&base.embedding, &spec.eta, k)?;
        let mut result = perturb_coefficients(&base.g, &eta, spec.t.unwrap_or(base.t))?;
        result.base_ring = base.base_ring;
        result.embedding = base.embedding;
        result.coeffs_in_base = base_flags(&result.g, result.base_ring.m())?;
        Ok(result)
    }

    /// A caller-supplied monic `g` over the base ring.
    pub fn from_poly(&self, spec: &ConstructionSpec) -> Result<ConstructionResult> {
        expect_family(spec, &[Family::FromPoly])?;
        let ring = make_ring(&spec.ring)?;
        let literals = spec
            .g
            .as_ref()
            .ok_or_else(|| Error::InvalidParameter("from_poly needs g".into()))?;
        let g = SkewPoly::from_literals(&ring, literals)?;
        let k = g.degree().unwrap_or(0);
        let t = spec.t.unwrap_or(k);
        if t < k {
            return Err(Error::InvalidParameter(format!("t = {t} is smaller than k = {k}")));
        }
        let matrix = twisted_chain(&g, t)?;
        let report = is_mds(&matrix)?;
        Ok(ConstructionResult {
            family: Family::FromPoly,
            base_ring: ring.clone(),
            embedding: Embedding::identity(&ring),
            coeffs_in_base: vec![true; g.coeffs().len()],
            g,
            roots: Vec::new(),
            t,
            matrix,
            report,
            condition_holds: None,
        })
    }

    fn setup(&self, spec: &ConstructionSpec) -> Result<Setup> {
        let k = spec.k;
        let t = spec.chain_length();
        if k < 2 {
            return Err(Error::InvalidParameter(format!("k = {k} must be at least 2")));
        }
        if t < k {
            return Err(Error::InvalidParameter(format!("t = {t} is smaller than k = {k}")));
        }
        let base = make_ring(&spec.ring)?;
        let l = working_degree(&base, t + k)? / base.m();
        let ext = self.extension(&base, l)?;
        let ring = ext.ring.clone();
        let order = ring.teichmuller_order();
        let power = spec.xi_power.unwrap_or(1);
        let frobenius_family = matches!(
            spec.family,
            Family::FrobeniusOrbit | Family::FrobeniusOrbitWithOne
        );
        if power % order == 0 || (!frobenius_family && gcd_usize(power as usize, order as usize) != 1)
        {
            return Err(Error::InvalidParameter(format!(
                "xi_power = {power} does not give a generator of the Teichmüller group of order {order}"
            )));
        }
        let xi = RingElement::teichmuller_generator(&ring).pow(power % order);
        Ok(Setup {
            base,
            ext,
            ring,
            xi,
            t,
            k,
        })
    }
}

/// Least multiple `N` of `m` for which `N_i(xi)`, `i < len`, are pairwise
/// distinct Teichmüller elements of `GR(p^s, p^{sN})` for any generator `xi`.
pub fn working_degree(ring: &Ring, len: usize) -> Result<usize> {
    let p = ring.p();
    let m = ring.m();
    let e = ring.sigma_exponent();
    let mut big = m;
    loop {
        let order = p
            .checked_pow(big as u32)
            .filter(|&v| v <= MAX_WORKING_ORDER)
            .ok_or_else(|| {
                Error::TooLarge(format!("no working ring of residue order below 2^62 for {len} norms"))
            })?
            - 1;
        if norm_exponents_distinct(p, big, e, len, order) {
            return Ok(big);
        }
        big += m;
    }
}

/// `N_i(xi) = xi^{eps_i}` with `eps_i = 1 + q + ... + q^{i-1}`, `q = p^e` the
/// action of `sigma` on Teichmüller elements.
fn norm_exponents_distinct(p: u64, big: usize, e: usize, len: usize, order: u64) -> bool {
    let q = p.pow(e as u32 % big as u32) as u128;
    let mut seen = std::collections::HashSet::with_capacity(len);
    let mut eps: u128 = 0;
    for _ in 0..len {
        if !seen.insert(eps as u64) {
            return false;
        }
        eps = (eps * q + 1) % order as u128;
    }
    true
}

/// `g + sum eta_i X^i`; MDS is inherited from `g` since the residues agree.
pub fn perturb_coefficients(
    g: &SkewPoly,
    eta: &[RingElement],
    t: usize,
) -> Result<ConstructionResult> {
    let k = g
        .degree()
        .filter(|&d| d >= 1)
        .ok_or(Error::DegreeTooSmall(0))?;
    if eta.len() != k {
        return Err(Error::InvalidParameter(format!(
            "{} perturbations for degree {k}",
            eta.len()
        )));
    }
    if let Some(index) = eta.iter().position(|x| !x.is_nilpotent()) {
        return Err(Error::NotNilpotent { index });
    }
    let base_matrix = twisted_chain(g, t)?;
    if !is_mds(&base_matrix)?.mds {
        return Err(Error::BaseNotMds);
    }
    let ring = g.ring().clone();
    let mut coeffs = g.coeffs().to_vec();
    for (c, n) in coeffs.iter_mut().zip(eta) {
        *c = &*c + n;
    }
    let h = SkewPoly::new(&ring, coeffs)?;
    let matrix = twisted_chain(&h, t)?;
    let report = is_mds(&matrix)?;
    let result = ConstructionResult {
        family: Family::CoeffPerturbed,
        base_ring: ring.clone(),
        embedding: Embedding::identity(&ring),
        coeffs_in_base: vec![true; h.coeffs().len()],
        g: h,
        roots: Vec::new(),
        t,
        matrix,
        report,
        condition_holds: None,
    };
    require_mds(result)
}

struct Setup {
    base: Ring,
    ext: Extension,
    ring: Ring,
    xi: RingElement,
    t: usize,
    k: usize,
}

impl Setup {
    fn consecutive_roots(&self, b: u64, c: &RingElement) -> Vec<RingElement> {
        let order = self.ring.teichmuller_order();
        (0..self.k as u64)
            .map(|j| c * &self.xi.pow((b % order + j + order - 1) % order))
            .collect()
    }

    fn scale(&self, spec: &ConstructionSpec) -> Result<RingElement> {
        let literal = spec
            .c
            .as_ref()
            .ok_or_else(|| Error::InvalidParameter(format!("{} needs c", spec.family)))?;
        let c = RingElement::new(&self.base, literal)?;
        if !c.is_unit() {
            return Err(Error::NotAUnit);
        }
        self.ext.embedding.map(&c)
    }

    fn nilpotents(&self, literals: &[Vec<i64>], k: usize) -> Result<Vec<RingElement>> {
        embed_nilpotents(&self.ext.embedding, literals, k)
    }
}

fn embed_nilpotents(
    embedding: &Embedding,
    literals: &[Vec<i64>],
    k: usize,
) -> Result<Vec<RingElement>> {
    if literals.len() != k {
        return Err(Error::InvalidParameter(format!(
            "eta has {} entries, expected {k}",
            literals.len()
        )));
    }
    literals
        .iter()
        .enumerate()
        .map(|(index, lit)| {
            let x = RingElement::new(embedding.base(), lit)?;
            if !x.is_nilpotent() {
                return Err(Error::NotNilpotent { index });
            }
            embedding.map(&x)
        })
        .collect()
}

fn expect_family(spec: &ConstructionSpec, allowed: &[Family]) -> Result<()> {
    if allowed.contains(&spec.family) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "family {} is not handled here",
            spec.family
        )))
    }
}

fn base_flags(g: &SkewPoly, m: usize) -> Result<Vec<bool>> {
    g.coeffs().iter().map(|c| in_base_subring(c, m)).collect()
}

fn finish(
    family: Family,
    setup: &Setup,
    roots: Vec<RingElement>,
    condition_holds: Option<bool>,
) -> Result<ConstructionResult> {
    let g = build_w_poly(&roots)?;
    let matrix = twisted_chain(&g, setup.t)?;
    let report = is_mds(&matrix)?;
    Ok(ConstructionResult {
        family,
        base_ring: setup.base.clone(),
        embedding: setup.ext.embedding.clone(),
        coeffs_in_base: base_flags(&g, setup.base.m())?,
        g,
        roots,
        t: setup.t,
        matrix,
        report,
        condition_holds,
    })
}

fn require_mds(result: ConstructionResult) -> Result<ConstructionResult> {
    if result.report.mds {
        Ok(result)
    } else {
        Err(Error::InternalInconsistency(format!(
            "{} construction produced a non-MDS chain for g = {}",
            result.family, result.g
        )))
    }
}

fn require_agreement(result: ConstructionResult) -> Result<ConstructionResult> {
    if result.condition_holds == Some(result.report.mds) {
        Ok(result)
    } else {
        Err(Error::InternalInconsistency(format!(
            "{} condition {:?} disagrees with MDS verdict {} for g = {}",
            result.family, result.condition_holds, result.report.mds, result.g
        )))
    }
}
