use serde::Serialize;

use crate::error::Result;
use crate::obstruction::{decide, CandidateRecipe, DecideOptions, ObstructionReport, Subject};

use super::load::Catalog;
use super::params::{format_params, Params};
use super::schema::{CatalogEntry, Table};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RowStatus {
    /// Every computed instance came out obstructed.
    Confirmed,
    /// Some computed instance did not.
    Unconfirmed,
    /// No matrix realization; the verdict is the catalog's.
    CatalogOnly,
    /// No admissible tuple within the bound.
    NotInstantiated,
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceRun {
    pub params: Params,
    pub report: ObstructionReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct RowRun {
    pub entry: String,
    pub g: String,
    pub h: String,
    pub conditions: Vec<String>,
    pub starred: bool,
    pub status: RowStatus,
    pub instances: Vec<InstanceRun>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRun {
    pub table: Table,
    pub bound: i64,
    pub rows: Vec<RowRun>,
}

impl TableRun {
    fn count(&self, s: RowStatus) -> usize {
        self.rows.iter().filter(|r| r.status == s).count()
    }

    pub fn confirmed(&self) -> usize {
        self.count(RowStatus::Confirmed)
    }

    /// Rows with a realization that were instantiated at least once.
    pub fn classical(&self) -> usize {
        self.confirmed() + self.count(RowStatus::Unconfirmed)
    }

    pub fn catalog_only(&self) -> usize {
        self.count(RowStatus::CatalogOnly)
    }

    pub fn all_confirmed(&self) -> bool {
        self.count(RowStatus::Unconfirmed) == 0
    }

    pub fn summary(&self) -> String {
        format!(
            "rows confirmed {}/{}, catalog-only {}",
            self.confirmed(),
            self.classical(),
            self.catalog_only()
        )
    }
}

/// `decide` on one instance, or the catalog verdict when the engine is not
/// expected to compute it.
pub fn run_instance(entry: &CatalogEntry, params: &Params, table: Table, opts: &DecideOptions) -> Result<ObstructionReport> {
    let inst = entry.instantiate(params)?;
    let Some(label) = inst.label.filter(|_| inst.computed) else {
        let label = format!("{} ({})", entry.pair_label(), format_params(params));
        return Ok(entry.catalog_report(label.trim_end_matches(" ()"), &[table]));
    };
    let subject = Subject::parse(&label)?;
    let mut opts = opts.clone();
    for c in &inst.candidates {
        if let Some(r) = CandidateRecipe::parse(c) {
            opts.candidates.push(r);
        }
    }
    let mut report = decide(&subject, &opts);
    report.annotations.extend(entry.notes.iter().cloned());
    Ok(report)
}

pub fn run_row(entry: &CatalogEntry, table: Table, bound: i64, opts: &DecideOptions) -> Result<RowRun> {
    let tuples = if entry.realization.is_some() {
        entry.tuples_up_to(bound)?
    } else {
        vec![Params::new()]
    };
    let instances: Vec<InstanceRun> = std::thread::scope(|s| {
        let handles: Vec<_> = tuples
            .iter()
            .map(|p| s.spawn(move || run_instance(entry, p, table, opts)))
            .collect();
        handles
            .into_iter()
            .zip(&tuples)
            .map(|(h, p)| {
                Ok(InstanceRun {
                    params: p.clone(),
                    report: h.join().expect("instance thread")?,
                })
            })
            .collect::<Result<_>>()
    })?;
    let status = if entry.realization.is_none() {
        RowStatus::CatalogOnly
    } else if instances.is_empty() {
        RowStatus::NotInstantiated
    } else if instances.iter().all(|i| i.report.is_obstructed()) {
        RowStatus::Confirmed
    } else {
        RowStatus::Unconfirmed
    };
    Ok(RowRun {
        entry: entry.id.clone(),
        g: entry.g.clone(),
        h: entry.h.clone(),
        conditions: entry.constraints.clone(),
        starred: entry.is_starred(table),
        status,
        instances,
    })
}

/// Every row of `table`, instances decided concurrently and reported in
/// catalog order.
pub fn run_table(catalog: &Catalog, table: Table, bound: i64, opts: &DecideOptions) -> Result<TableRun> {
    let rows = catalog
        .table(table)
        .map(|e| run_row(e, table, bound, opts))
        .collect::<Result<_>>()?;
    Ok(TableRun { table, bound, rows })
}
