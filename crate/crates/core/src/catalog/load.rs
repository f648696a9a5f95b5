use std::collections::BTreeSet;
use std::path::Path;

use serde_json::json;

use crate::error::{CkfError, Result};
use crate::obstruction::{criterion, ObstructionReport, Provenance};

use super::params::{admissible_tuples, check_constraints, expand, ParamConstraint, Params};
use super::schema::{CatalogEntry, CatalogFile, Table, SCHEMA_VERSION};

const SHIPPED: &str = include_str!("../../data/catalog.toml");

/// A validated catalog. Loaded once and shared read-only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    pub schema_version: u32,
    pub entries: Vec<CatalogEntry>,
}

/// An entry at concrete parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub entry_id: String,
    pub params: Params,
    /// Resolved pair label, when the entry has a realization.
    pub label: Option<String>,
    pub candidates: Vec<String>,
    /// Whether the engine is expected to decide this instance itself.
    pub computed: bool,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

fn parse_error(text: &str, e: toml::de::Error) -> CkfError {
    let msg = e.message().to_string();
    let field = msg
        .split('`')
        .nth(1)
        .map(str::to_string)
        .unwrap_or_else(|| "<document>".into());
    CkfError::Parse {
        line: e.span().map_or(0, |s| line_of(text, s.start)),
        field,
        message: msg,
    }
}

fn is_blank(text: &str) -> bool {
    text.lines().all(|l| {
        let l = l.trim();
        l.is_empty() || l.starts_with('#')
    })
}

impl Catalog {
    pub fn empty() -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            entries: Vec::new(),
        }
    }

    /// The catalog compiled into the binary.
    pub fn shipped() -> Result<Self> {
        Self::parse(SHIPPED)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CkfError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        if is_blank(text) {
            return Ok(Self::empty());
        }
        let file: CatalogFile = toml::from_str(text).map_err(|e| parse_error(text, e))?;
        let cat = Self {
            schema_version: file.schema_version,
            entries: file.entries,
        };
        cat.validate()?;
        Ok(cat)
    }

    pub fn to_toml(&self) -> String {
        let file = CatalogFile {
            schema_version: self.schema_version,
            entries: self.entries.clone(),
        };
        toml::to_string(&file).expect("catalog serializes")
    }

    pub fn get(&self, id: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn table(&self, t: Table) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.iter().filter(move |e| e.in_table(t))
    }

    fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(CkfError::Validation {
                entry: "<catalog>".into(),
                invariant: format!("schema_version {} (expected {SCHEMA_VERSION})", self.schema_version),
            });
        }
        let mut ids = BTreeSet::new();
        for e in &self.entries {
            if !ids.insert(e.id.as_str()) {
                return Err(CkfError::Validation {
                    entry: e.id.clone(),
                    invariant: "ids are unique".into(),
                });
            }
            validate_entry(e)?;
        }
        Ok(())
    }
}

fn validate_entry(e: &CatalogEntry) -> Result<()> {
    let fail = |invariant: String| CkfError::Validation {
        entry: e.id.clone(),
        invariant,
    };
    if e.realization.is_none() && e.root_data.is_empty() {
        return Err(fail("at least one of realization / root_data is present".into()));
    }
    let names: BTreeSet<&String> = e.params.iter().collect();
    if names.len() != e.params.len() {
        return Err(fail("parameter names are distinct".into()));
    }
    if let Some(t) = e.starred.iter().find(|t| !e.tables.contains(t)) {
        return Err(fail(format!("starred table {t} is one of the entry's tables")));
    }
    if e.admits_compact_form() && (!e.tables.is_empty() || e.expect_obstructed == Some(true)) {
        return Err(fail("entries admitting compact forms carry no obstruction expectation".into()));
    }
    // every predicate and template must evaluate on some assignment
    let probe: Params = e.params.iter().map(|n| (n.clone(), 1)).collect();
    for c in e.constraints.iter().chain(&e.computed_when) {
        ParamConstraint::new(c.clone())
            .holds(&probe)
            .map_err(|err| fail(format!("constraint is a boolean predicate over the parameters: {err}")))?;
    }
    if let Some(r) = &e.rank {
        expand(&format!("{{{r}}}"), &probe).map_err(|err| fail(format!("rank is an integer expression: {err}")))?;
    }
    for t in e.realization.iter().chain(&e.candidates) {
        expand(t, &probe).map_err(|err| fail(format!("template resolves: {err}")))?;
    }
    for rd in &e.root_data {
        match &rd.at {
            Some(at) => {
                if at.keys().collect::<BTreeSet<_>>() != names {
                    return Err(fail(format!("root_data.at names exactly the parameters {:?}", e.params)));
                }
                check_constraints(&constraints(e), at).map_err(|err| fail(format!("root_data.at is admissible: {err}")))?;
            }
            None if !e.params.is_empty() && e.root_data.len() > 1 => {
                return Err(fail("a parameterized entry lists root data per parameter tuple".into()));
            }
            None => {}
        }
        let data = rd
            .build()
            .map_err(|err| fail(format!("root_data satisfies the root-system axioms: {err}")))?;
        if let Some(d) = rd.dim_k_cap_h {
            if data.dim_k_cap_h() != d {
                return Err(fail(format!(
                    "root_data gives dim k∩h = {d} (computed {})",
                    data.dim_k_cap_h()
                )));
            }
        }
    }
    Ok(())
}

pub(crate) fn constraints(e: &CatalogEntry) -> Vec<ParamConstraint> {
    e.constraints.iter().cloned().map(ParamConstraint::new).collect()
}

impl CatalogEntry {
    /// Checks the constraints and resolves the templates at `params`.
    pub fn instantiate(&self, params: &Params) -> Result<Instance> {
        let given: BTreeSet<&String> = params.keys().collect();
        if given != self.params.iter().collect() {
            return Err(CkfError::ParameterViolation(format!(
                "{}: expected parameters {:?}",
                self.id, self.params
            )));
        }
        check_constraints(&constraints(self), params)
            .map_err(|e| CkfError::ParameterViolation(format!("{}: {e}", self.id)))?;
        let computed = match (&self.realization, &self.computed_when) {
            (None, _) => false,
            (Some(_), None) => true,
            (Some(_), Some(c)) => ParamConstraint::new(c.clone()).holds(params)?,
        };
        Ok(Instance {
            entry_id: self.id.clone(),
            params: params.clone(),
            label: self.realization.as_ref().map(|t| expand(t, params)).transpose()?,
            candidates: self
                .candidates
                .iter()
                .map(|t| expand(t, params))
                .collect::<Result<_>>()?,
            computed,
        })
    }

    /// Admissible tuples whose rank is at most `bound`, smallest first.
    /// Without a rank expression every parameter is bounded instead.
    pub fn tuples_up_to(&self, bound: i64) -> Result<Vec<Params>> {
        let mut cs = constraints(self);
        let cap = match &self.rank {
            Some(r) => {
                cs.push(ParamConstraint::new(format!("({r}) <= {bound}")));
                2 * bound + 2
            }
            None => bound,
        };
        admissible_tuples(&self.params, &cs, cap)
    }

    pub fn rank_at(&self, params: &Params) -> Result<Option<i64>> {
        self.rank
            .as_ref()
            .map(|r| Ok(expand(&format!("{{{r}}}"), params)?.parse().expect("integer")))
            .transpose()
    }

    /// A report carrying the table verdict, for rows the engine does not
    /// recompute.
    pub fn catalog_report(&self, label: &str, tables: &[Table]) -> ObstructionReport {
        let basic = self
            .root_data
            .iter()
            .find(|r| r.at.is_none())
            .and_then(|r| r.build().ok())
            .map(|d| d.is_basic());
        let mut r = ObstructionReport::obstructed(
            label,
            criterion::CATALOG,
            json!({ "entry": self.id, "tables": tables, "root_data_basic": basic }),
        );
        r.provenance = Provenance::Catalog;
        r.annotations = self.notes.clone();
        if self.realization.is_none() {
            r.annotations.push("no matrix realization; verdict taken from the catalog".into());
        }
        r
    }
}
