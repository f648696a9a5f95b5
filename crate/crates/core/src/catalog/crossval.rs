use serde::Serialize;

use crate::error::{CkfError, Result};
use crate::lie::PairKind;

use super::load::Catalog;
use super::params::{format_params, Params};
use super::schema::CatalogEntry;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CrossOutcome {
    Match,
    /// Every field that disagrees, roots named where possible.
    Mismatch(Vec<String>),
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossValidation {
    pub entry: String,
    pub params: Params,
    pub outcome: CrossOutcome,
}

impl std::fmt::Display for CrossValidation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} ({}): ", self.entry, format_params(&self.params))?;
        match &self.outcome {
            CrossOutcome::Match => write!(f, "MATCH"),
            CrossOutcome::Mismatch(d) => write!(f, "MISMATCH {}", d.join("; ")),
            CrossOutcome::Skipped(why) => write!(f, "SKIPPED {why}"),
        }
    }
}

/// Recomputes the restricted root data of the realization at `params` and
/// compares it with the catalog descriptor.
pub fn cross_validate(entry: &CatalogEntry, params: &Params) -> Result<CrossValidation> {
    let missing = |what: &str| CkfError::Validation {
        entry: entry.id.clone(),
        invariant: format!("cross-validation needs {what}"),
    };
    let spec = entry
        .root_data_at(params)
        .ok_or_else(|| missing(&format!("root_data at ({})", format_params(params))))?;
    let inst = entry.instantiate(params)?;
    let label = inst.label.ok_or_else(|| missing("a realization"))?;
    let done = |outcome| CrossValidation {
        entry: entry.id.clone(),
        params: params.clone(),
        outcome,
    };
    let kind = PairKind::parse(&label).ok_or_else(|| CkfError::UnresolvedSelector(label.clone()))?;
    let computed = match kind.realize().and_then(|r| r.restricted_root_decomposition()) {
        Ok(dec) => dec.data,
        Err(CkfError::IrrationalSpectrum(why)) => return Ok(done(CrossOutcome::Skipped(format!("irrational spectrum: {why}")))),
        Err(e) => return Err(e),
    };
    let diffs = computed.compare(&spec.build()?);
    Ok(done(if diffs.is_empty() {
        CrossOutcome::Match
    } else {
        CrossOutcome::Mismatch(diffs)
    }))
}

/// Every `(entry, params)` pair with both a realization and root data.
pub fn eligible(catalog: &Catalog) -> Vec<(&CatalogEntry, Params)> {
    let mut out = Vec::new();
    for e in catalog.entries.iter().filter(|e| e.realization.is_some()) {
        for rd in &e.root_data {
            match &rd.at {
                Some(at) => out.push((e, at.clone())),
                None if e.params.is_empty() => out.push((e, Params::new())),
                None => {}
            }
        }
    }
    out
}

pub fn cross_validate_all(catalog: &Catalog) -> Result<Vec<CrossValidation>> {
    eligible(catalog).into_iter().map(|(e, p)| cross_validate(e, &p)).collect()
}
