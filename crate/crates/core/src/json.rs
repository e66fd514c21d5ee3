//! Interchange documents for rings, skew polynomials, matrices and
//! construction results.

use serde::{Deserialize, Serialize};

use crate::construct::{ConstructionResult, Family};
use crate::error::{Error, Result};
use crate::matrix::GRMatrix;
use crate::report::VerificationReport;
use crate::ring::{make_ring, same_ring, Ring, RingConfig, RingElement};
use crate::skew::SkewPoly;

/// `{"ring": <config>, "coeffs": [[...], ...]}`, low to high.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyDoc {
    pub ring: RingConfig,
    pub coeffs: Vec<Vec<i64>>,
}

impl PolyDoc {
    pub fn from_poly(f: &SkewPoly) -> Self {
        PolyDoc {
            ring: f.ring().config(),
            coeffs: f.coeffs().iter().map(RingElement::to_literal).collect(),
        }
    }

    pub fn to_poly(&self) -> Result<SkewPoly> {
        SkewPoly::from_literals(&make_ring(&self.ring)?, &self.coeffs)
    }

    /// Reads the coefficients over an existing ring with the same configuration.
    pub fn to_poly_over(&self, ring: &Ring) -> Result<SkewPoly> {
        check_config(ring, &self.ring)?;
        SkewPoly::from_literals(ring, &self.coeffs)
    }
}

/// `{"ring": <config>, "rows": r, "cols": c, "entries": [[[...], ...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub ring: RingConfig,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Vec<i64>>>,
}

impl MatrixDoc {
    pub fn from_matrix(a: &GRMatrix) -> Self {
        MatrixDoc {
            ring: a.ring().config(),
            rows: a.rows(),
            cols: a.cols(),
            entries: a.to_literals(),
        }
    }

    pub fn to_matrix(&self) -> Result<GRMatrix> {
        self.to_matrix_over(&make_ring(&self.ring)?)
    }

    pub fn to_matrix_over(&self, ring: &Ring) -> Result<GRMatrix> {
        check_config(ring, &self.ring)?;
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(Error::DimensionMismatch(format!(
                "entries do not form a {}x{} array",
                self.rows, self.cols
            )));
        }
        GRMatrix::from_literals(ring, &self.entries)
    }
}

/// Serialized [`ConstructionResult`]; `g`, `roots` and `matrix` live over
/// `working_ring`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDoc {
    pub family: Family,
    pub ring: RingConfig,
    pub working_ring: RingConfig,
    pub t: usize,
    pub g: PolyDoc,
    pub g_display: String,
    pub roots: Vec<Vec<i64>>,
    pub matrix: MatrixDoc,
    pub coeffs_in_base: Vec<bool>,
    /// Coefficients of `g` over the base ring, when all lie in it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_base: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub condition_holds: Option<bool>,
    pub report: VerificationReport,
}

impl ResultDoc {
    pub fn from_result(result: &ConstructionResult) -> Result<Self> {
        Ok(ResultDoc {
            family: result.family,
            ring: result.base_ring.config(),
            working_ring: result.working_ring().config(),
            t: result.t,
            g: PolyDoc::from_poly(&result.g),
            g_display: result.g.to_string(),
            roots: result.roots.iter().map(RingElement::to_literal).collect(),
            matrix: MatrixDoc::from_matrix(&result.matrix),
            coeffs_in_base: result.coeffs_in_base.clone(),
            g_base: result
                .retract_g()?
                .map(|g| g.coeffs().iter().map(RingElement::to_literal).collect()),
            condition_holds: result.condition_holds,
            report: result.report.clone(),
        })
    }
}

/// Parses an element literal such as `[24,0,0]`, or a bare integer for a constant.
pub fn parse_element(ring: &Ring, text: &str) -> Result<RingElement> {
    let value: serde_json::Value =
        serde_json::from_str(text.trim()).map_err(|e| Error::Parse(format!("{text}: {e}")))?;
    element_from_value(ring, &value)
}

/// Parses a comma-separated list of element literals, low to high, e.g.
/// `1,2,2,1` or `[1,0,0],[2,0,0]`.
pub fn parse_element_list(ring: &Ring, text: &str) -> Result<Vec<RingElement>> {
    literal_list(text)?
        .iter()
        .map(|lit| RingElement::new(ring, lit))
        .collect()
}

/// Literal form of [`parse_element_list`], without a ring.
pub fn literal_list(text: &str) -> Result<Vec<Vec<i64>>> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    let value: serde_json::Value = serde_json::from_str(&format!("[{trimmed}]"))
        .map_err(|e| Error::Parse(format!("{text}: {e}")))?;
    let items = value.as_array().expect("bracketed list");
    items.iter().map(literal_from_value).collect()
}

fn literal_from_value(value: &serde_json::Value) -> Result<Vec<i64>> {
    match value {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(|c| vec![c])
            .ok_or_else(|| Error::Parse(format!("{n} is not an integer"))),
        serde_json::Value::Array(items) => items
            .iter()
            .map(|c| {
                c.as_i64()
                    .ok_or_else(|| Error::Parse(format!("{c} is not an integer")))
            })
            .collect(),
        other => Err(Error::Parse(format!("{other} is not an element literal"))),
    }
}

fn element_from_value(ring: &Ring, value: &serde_json::Value) -> Result<RingElement> {
    RingElement::new(ring, &literal_from_value(value)?)
}

fn check_config(ring: &Ring, config: &RingConfig) -> Result<()> {
    if ring.config() == *config || same_ring(ring, &make_ring(config)?) {
        Ok(())
    } else {
        Err(Error::MixedRings)
    }
}
