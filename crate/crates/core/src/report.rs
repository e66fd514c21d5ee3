//! Structured verdicts shared by the matrix, criterion and oracle checks.

use serde::{Deserialize, Serialize};

/// A failing square submatrix, by 0-based row and column indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub mds: bool,
    pub witness: Option<Witness>,
    pub quasi_involutory: Option<bool>,
    pub elapsed_ms: u64,
    /// Exponents of the first singular column subset in a Vandermonde check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failing_column_subset: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_distance: Option<usize>,
}

impl VerificationReport {
    pub fn new(mds: bool, witness: Option<Witness>, elapsed_ms: u64) -> Self {
        VerificationReport {
            mds,
            witness,
            quasi_involutory: None,
            elapsed_ms,
            failing_column_subset: None,
            min_distance: None,
        }
    }
}
