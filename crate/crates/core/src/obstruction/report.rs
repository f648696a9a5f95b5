use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::exact::{rational_to_string, Rational};

/// Bumped whenever the JSON layout of a report changes.
pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Obstructed,
    NoConclusion,
}

/// Whether a verdict was computed here or taken from catalog data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Provenance {
    Computed,
    Catalog,
}

/// Criterion names as they appear in reports, in decision order.
pub mod criterion {
    pub const TYPE_CR: &str = "type_CR";
    pub const HYPERBOLIC: &str = "hyperbolic";
    pub const DIAGRAM: &str = "invariant_polynomial_diagram";
    pub const DIAGRAM_COMPACT_FIBER: &str = "invariant_polynomial_diagram+compact_fiber";
    pub const ENLARGED: &str = "enlarged_diagram";
    pub const EPSILON: &str = "epsilon_family";
    pub const CATALOG: &str = "catalog";
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionRecord {
    pub criterion: String,
    pub witness: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub version: u32,
    pub pair: String,
    pub verdict: Verdict,
    pub provenance: Provenance,
    pub criteria_fired: Vec<CriterionRecord>,
    /// Why checkers that ran did not fire.
    pub diagnostics: Vec<String>,
    /// Catalog remarks attached to the pair.
    pub annotations: Vec<String>,
}

impl ObstructionReport {
    pub fn no_conclusion(pair: impl Into<String>) -> Self {
        Self {
            version: REPORT_VERSION,
            pair: pair.into(),
            verdict: Verdict::NoConclusion,
            provenance: Provenance::Computed,
            criteria_fired: Vec::new(),
            diagnostics: Vec::new(),
            annotations: Vec::new(),
        }
    }

    pub fn obstructed(pair: impl Into<String>, criterion: &str, witness: Value) -> Self {
        let mut r = Self::no_conclusion(pair);
        r.fire(criterion, witness);
        r
    }

    pub fn with_diagnostic(mut self, d: impl Into<String>) -> Self {
        self.diagnostics.push(d.into());
        self
    }

    pub fn fire(&mut self, criterion: &str, witness: Value) {
        self.criteria_fired.push(CriterionRecord {
            criterion: criterion.to_string(),
            witness,
        });
        self.verdict = Verdict::Obstructed;
    }

    pub fn is_obstructed(&self) -> bool {
        self.verdict == Verdict::Obstructed
    }

    pub fn fired(&self, criterion: &str) -> Option<&CriterionRecord> {
        self.criteria_fired.iter().find(|c| c.criterion == criterion)
    }

    /// Appends the fired criteria and diagnostics of `other`.
    pub fn merge(&mut self, other: ObstructionReport) {
        for c in other.criteria_fired {
            self.fire(&c.criterion, c.witness);
        }
        self.diagnostics.extend(other.diagnostics);
    }

    /// `verdict = OBSTRUCTED` exactly when some criterion fired.
    pub fn is_consistent(&self) -> bool {
        self.is_obstructed() == !self.criteria_fired.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub(crate) fn rationals_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|r| Value::String(rational_to_string(r))).collect())
}

pub(crate) fn rationals_from_json(v: &Value) -> Option<Vec<Rational>> {
    v.as_array()?
        .iter()
        .map(|x| x.as_str().and_then(crate::exact::parse_rational))
        .collect()
}
