mod render;
mod resolve;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ckf_core::catalog::{cross_validate_all, run_table, Catalog, CrossOutcome, Table};
use ckf_core::lie::Sampling;
use ckf_core::obstruction::{decide, DecideOptions};
use ckf_core::roots::DEFAULT_FAMILY_RANK_BOUND;
use ckf_core::CkfError;

use resolve::{resolve, Resolved};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Markdown,
    Plain,
}

/// Obstructions to compact Clifford–Klein forms of reductive homogeneous spaces.
#[derive(Debug, Parser)]
#[command(name = "ckf", version)]
struct Cli {
    /// Catalog file; the built-in catalog when unset.
    #[arg(long, global = true, env = "CKF_CATALOG")]
    catalog: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "plain")]
    format: Format,
    /// Seed for generic-element sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Sampled elements per rank computation (at least 5 are used).
    #[arg(long, global = true, default_value_t = 5)]
    samples: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every applicable criterion on a pair.
    Check {
        /// `g/h` label, catalog id, or `id(p=..,q=..)`.
        selector: String,
    },
    /// Reproduce a classification table.
    Table {
        /// 1, 2 or 3.
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        id: u8,
        /// Rows are instantiated at every admissible tuple of rank at most this.
        #[arg(long, default_value_t = 4)]
        max_param: i64,
    },
    /// List the ε-family of a pair.
    Family {
        selector: String,
        #[arg(long, default_value_t = DEFAULT_FAMILY_RANK_BOUND)]
        rank_bound: usize,
    },
    /// Cross-validate catalog root data against the matrix engine.
    VerifyCatalog,
}

/// Input problems exit with 2, failed confirmations with 1.
enum Failure {
    Input(String),
    Check(String),
}

impl From<CkfError> for Failure {
    fn from(e: CkfError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn load_catalog(cli: &Cli) -> Result<Catalog, Failure> {
    Ok(match &cli.catalog {
        Some(p) => Catalog::load(p)?,
        None => Catalog::shipped()?,
    })
}

fn options(cli: &Cli) -> DecideOptions {
    DecideOptions {
        sampling: Sampling {
            seed: cli.seed,
            samples: cli.samples,
        },
        ..DecideOptions::default()
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let catalog = load_catalog(cli)?;
    let opts = options(cli);
    match &cli.command {
        Command::Check { selector } => {
            let report = match resolve(selector, &catalog)? {
                Resolved::Computed { subject, candidates, notes } => {
                    let mut o = opts.clone();
                    o.candidates.extend(candidates);
                    let mut r = decide(&subject, &o);
                    r.annotations.extend(notes);
                    r
                }
                Resolved::CatalogOnly { entry, label } => entry.catalog_report(&label, &entry.tables),
            };
            print!("{}", render::report(&report, cli.format));
            Ok(())
        }
        Command::Table { id, max_param } => {
            let t = Table::from_number(*id).expect("clap restricts the range");
            let run = run_table(&catalog, t, *max_param, &opts)?;
            print!("{}", render::table(&run, cli.format));
            if run.all_confirmed() {
                Ok(())
            } else {
                Err(Failure::Check(format!("table {id}: {}", run.summary())))
            }
        }
        Command::Family { selector, rank_bound } => {
            let data = resolve::root_data(selector, &catalog)?;
            let members = data.enumerate_family(*rank_bound)?;
            let max = members.iter().map(|m| m.dim_k_cap_h).max().unwrap_or(0);
            // basic members are exactly those of maximal dim(k∩h)
            if let Some(m) = members.iter().find(|m| m.basic != (m.dim_k_cap_h == max)) {
                return Err(Failure::Check(format!(
                    "family of {selector}: member {} breaks the basic/maximal-dimension correspondence",
                    m.signature
                )));
            }
            print!("{}", render::family(selector, &members, cli.format));
            Ok(())
        }
        Command::VerifyCatalog => {
            let results = cross_validate_all(&catalog)?;
            print!("{}", render::cross(&results, cli.format));
            let bad: Vec<&str> = results
                .iter()
                .filter(|r| matches!(r.outcome, CrossOutcome::Mismatch(_)))
                .map(|r| r.entry.as_str())
                .collect();
            if bad.is_empty() {
                Ok(())
            } else {
                Err(Failure::Check(format!("MISMATCH in {}", bad.join(", "))))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(m)) => {
            eprintln!("ckf: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("ckf: {m}");
            ExitCode::from(2)
        }
    }
}
