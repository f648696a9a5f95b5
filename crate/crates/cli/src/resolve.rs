use ckf_core::catalog::{Catalog, CatalogEntry, Params};
use ckf_core::obstruction::{CandidateRecipe, Subject};
use ckf_core::roots::RestrictedRootData;
use ckf_core::{CkfError, Result};

pub enum Resolved<'a> {
    Computed {
        subject: Subject,
        candidates: Vec<CandidateRecipe>,
        notes: Vec<String>,
    },
    CatalogOnly {
        entry: &'a CatalogEntry,
        label: String,
    },
}

/// `id`, `id(p=1,q=2)` or `id(1,2)` (positional in declaration order).
fn catalog_selector<'a>(sel: &str, cat: &'a Catalog) -> Result<Option<(&'a CatalogEntry, Params)>> {
    let (id, args) = match sel.split_once('(') {
        Some((id, rest)) => (id.trim(), Some(rest.strip_suffix(')').unwrap_or(rest))),
        None => (sel.trim(), None),
    };
    let Some(entry) = cat.get(id) else { return Ok(None) };
    let bad = || CkfError::UnresolvedSelector(sel.to_string());
    let mut params = Params::new();
    for (i, a) in args.into_iter().flat_map(|s| s.split(',')).filter(|a| !a.trim().is_empty()).enumerate() {
        let (name, value) = match a.split_once('=') {
            Some((n, v)) => (n.trim().to_string(), v),
            None => (entry.params.get(i).ok_or_else(bad)?.clone(), a),
        };
        params.insert(name, value.trim().parse().map_err(|_| bad())?);
    }
    Ok(Some((entry, params)))
}

pub fn resolve<'a>(sel: &str, cat: &'a Catalog) -> Result<Resolved<'a>> {
    let Some((entry, params)) = catalog_selector(sel, cat)? else {
        return Ok(Resolved::Computed {
            subject: Subject::parse(sel)?,
            candidates: Vec::new(),
            notes: Vec::new(),
        });
    };
    let inst = entry.instantiate(&params)?;
    match inst.label {
        Some(label) if inst.computed => Ok(Resolved::Computed {
            subject: Subject::parse(&label)?,
            candidates: inst.candidates.iter().filter_map(|c| CandidateRecipe::parse(c)).collect(),
            notes: entry.notes.clone(),
        }),
        label => Ok(Resolved::CatalogOnly {
            entry,
            label: label.unwrap_or_else(|| entry.pair_label()),
        }),
    }
}

/// Matrix-mode root data when a realization exists, else the catalog's.
pub fn root_data(sel: &str, cat: &Catalog) -> Result<RestrictedRootData> {
    if let Some((entry, params)) = catalog_selector(sel, cat)? {
        let inst = entry.instantiate(&params)?;
        if let Some(label) = inst.label {
            return symmetric_data(&label);
        }
        return entry
            .root_data_at(&params)
            .ok_or_else(|| CkfError::UnresolvedSelector(format!("{sel}: no root data")))?
            .build();
    }
    symmetric_data(sel)
}

fn symmetric_data(label: &str) -> Result<RestrictedRootData> {
    match Subject::parse(label)? {
        Subject::Symmetric { real, .. } => Ok(real.restricted_root_decomposition()?.data),
        Subject::Homogeneous(_) => Err(CkfError::UnresolvedSelector(format!("{label}: not a symmetric pair"))),
    }
}
