//! Line-delimited corpus of rational integrands.
//!
//! One JSON object per line:
//!
//! ```text
//! {"name": "lorentzian", "numerator": [1.0], "roots": [[0.0, 1.0, 1]],
//!  "omega": 0.0, "expected": 3.141592653589793, "provenance": "closed-form"}
//! ```
//!
//! `numerator` lists ascending coefficients, `roots` lists upper half-plane
//! roots as `(re, im, multiplicity)`, `expected` (optional) is the real part
//! of `∫ P(x) e^{iωx} / Q(x) dx`. Blank lines and lines starting with `#`
//! are skipped.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::residue::RationalIntegrand;
use crate::error::{Error, Result};

const BUILTIN: &str = include_str!("../../data/corpus.jsonl");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusRecord {
    pub name: String,
    pub numerator: Vec<f64>,
    pub roots: Vec<(f64, f64, u32)>,
    #[serde(default)]
    pub omega: f64,
    #[serde(default)]
    pub expected: Option<f64>,
    #[serde(default)]
    pub provenance: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorpusEntry {
    pub line: usize,
    pub record: CorpusRecord,
    pub integrand: RationalIntegrand,
}

pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>> {
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let record: CorpusRecord =
            serde_json::from_str(trimmed).map_err(|e| Error::CorpusParse {
                line,
                message: e.to_string(),
            })?;
        let roots = record
            .roots
            .iter()
            .map(|&(re, im, m)| (Complex64::new(re, im), m))
            .collect();
        let integrand = RationalIntegrand::new(record.numerator.clone(), roots, record.omega)
            .map_err(|e| Error::CorpusParse {
                line,
                message: format!("entry `{}`: {e}", record.name),
            })?;
        entries.push(CorpusEntry {
            line,
            record,
            integrand,
        });
    }
    Ok(entries)
}

/// The corpus shipped with the crate.
pub fn builtin_corpus() -> Vec<CorpusEntry> {
    parse_corpus(BUILTIN).expect("built-in corpus is valid")
}

pub fn builtin_corpus_text() -> &'static str {
    BUILTIN
}
