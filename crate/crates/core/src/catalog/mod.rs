//! Shipped classification tables: loader, validation and cross-checks
//! against the matrix engine.

mod crossval;
mod load;
mod params;
mod schema;
mod table;

pub use crossval::{cross_validate, cross_validate_all, eligible, CrossOutcome, CrossValidation};
pub use load::{Catalog, Instance};
pub use params::{admissible_tuples, check_constraints, expand, format_params, ParamConstraint, Params};
pub use table::{run_instance, run_row, run_table, InstanceRun, RowRun, RowStatus, TableRun};
pub use schema::{CatalogEntry, RootDataSpec, Table, SCHEMA_VERSION};

#[cfg(test)]
mod tests;
