use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use grmds::{ConstructionResult, ConstructionSpec, RingConfig, RingElement};
use serde::{Deserialize, Serialize};

/// One line of the catalog.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRecord {
    /// Seconds since the Unix epoch; `SOURCE_DATE_EPOCH` when set.
    pub timestamp: u64,
    pub ring: RingConfig,
    pub spec: ConstructionSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub working_ring: Option<RingConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<Vec<i64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mds: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quasi_involutory: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs_in_base: Option<Vec<bool>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub condition_holds: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_distance: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CatalogRecord {
    pub fn from_result(spec: &ConstructionSpec, result: &ConstructionResult) -> Self {
        CatalogRecord {
            timestamp: timestamp(),
            ring: spec.ring.clone(),
            spec: spec.clone(),
            working_ring: Some(result.working_ring().config()),
            g: Some(result.g.coeffs().iter().map(RingElement::to_literal).collect()),
            t: Some(result.t),
            matrix: Some(result.matrix.to_literals()),
            mds: Some(result.report.mds),
            quasi_involutory: result.report.quasi_involutory,
            coeffs_in_base: Some(result.coeffs_in_base.clone()),
            condition_holds: result.condition_holds,
            min_distance: result.report.min_distance,
            error: None,
        }
    }

    pub fn from_error(spec: &ConstructionSpec, error: &grmds::Error) -> Self {
        CatalogRecord {
            timestamp: timestamp(),
            ring: spec.ring.clone(),
            spec: spec.clone(),
            working_ring: None,
            g: None,
            t: None,
            matrix: None,
            mds: None,
            quasi_involutory: None,
            coeffs_in_base: None,
            condition_holds: None,
            min_distance: None,
            error: Some(error.to_string()),
        }
    }
}

fn timestamp() -> u64 {
    std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or_else(|| {
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0)
        })
}

/// Appends records, one JSON object per line.
pub fn append(path: &Path, records: &[CatalogRecord]) -> Result<()> {
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .with_context(|| format!("opening catalog {}", path.display()))?;
    let mut buf = String::new();
    for record in records {
        buf.push_str(&serde_json::to_string(record)?);
        buf.push('\n');
    }
    file.write_all(buf.as_bytes())
        .with_context(|| format!("writing catalog {}", path.display()))
}
