use std::fmt::Write;

use serde_json::json;

use ckf_core::catalog::{format_params, CrossOutcome, CrossValidation, RowRun, RowStatus, TableRun};
use ckf_core::obstruction::{ObstructionReport, Provenance, Verdict, REPORT_VERSION};
use ckf_core::roots::FamilyMember;

use crate::Format;

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::Obstructed => "OBSTRUCTED",
        Verdict::NoConclusion => "NO_CONCLUSION",
    }
}

fn provenance(p: Provenance) -> &'static str {
    match p {
        Provenance::Computed => "COMPUTED",
        Provenance::Catalog => "CATALOG",
    }
}

fn fired(r: &ObstructionReport) -> String {
    r.criteria_fired.iter().map(|c| c.criterion.as_str()).collect::<Vec<_>>().join(", ")
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json") + "\n"
}

pub fn report(r: &ObstructionReport, f: Format) -> String {
    let mut s = String::new();
    match f {
        Format::Json => return r.to_json() + "\n",
        Format::Plain => {
            writeln!(s, "pair: {}", r.pair).unwrap();
            writeln!(s, "verdict: {} ({})", verdict(r.verdict), provenance(r.provenance)).unwrap();
            for c in &r.criteria_fired {
                writeln!(s, "fired: {} {}", c.criterion, c.witness).unwrap();
            }
            for d in &r.diagnostics {
                writeln!(s, "diagnostic: {d}").unwrap();
            }
            for a in &r.annotations {
                writeln!(s, "note: {a}").unwrap();
            }
        }
        Format::Markdown => {
            writeln!(s, "### `{}`\n", r.pair).unwrap();
            writeln!(s, "**{}** ({})\n", verdict(r.verdict), provenance(r.provenance)).unwrap();
            if !r.criteria_fired.is_empty() {
                writeln!(s, "| criterion | witness |\n|---|---|").unwrap();
                for c in &r.criteria_fired {
                    writeln!(s, "| {} | `{}` |", c.criterion, c.witness).unwrap();
                }
                s.push('\n');
            }
            for d in &r.diagnostics {
                writeln!(s, "- {d}").unwrap();
            }
            for a in &r.annotations {
                writeln!(s, "- note: {a}").unwrap();
            }
        }
    }
    s
}

fn status(s: RowStatus) -> &'static str {
    match s {
        RowStatus::Confirmed => "confirmed",
        RowStatus::Unconfirmed => "NOT CONFIRMED",
        RowStatus::CatalogOnly => "catalog",
        RowStatus::NotInstantiated => "no tuple within bound",
    }
}

fn instances(row: &RowRun) -> Vec<String> {
    row.instances
        .iter()
        .map(|i| {
            let r = &i.report;
            let tag = if r.provenance == Provenance::Catalog { " CATALOG" } else { "" };
            format!("{}: {}{tag} [{}]", r.pair, verdict(r.verdict), fired(r))
        })
        .collect()
}

pub fn table(run: &TableRun, f: Format) -> String {
    let mut s = String::new();
    match f {
        Format::Json => {
            return pretty(&json!({
                "version": REPORT_VERSION,
                "table": run.table,
                "bound": run.bound,
                "rows": run.rows,
                "summary": run.summary(),
            }))
        }
        Format::Plain => {
            writeln!(s, "Table {} (rank bound {})", &run.table.to_string()[1..], run.bound).unwrap();
            for row in &run.rows {
                let star = if row.starred { " *" } else { "" };
                writeln!(s, "{} | {}{star} | {} | {}", row.g, row.h, row.conditions.join(", "), status(row.status)).unwrap();
                for i in instances(row) {
                    writeln!(s, "    {i}").unwrap();
                }
            }
        }
        Format::Markdown => {
            writeln!(s, "## Table {} (rank bound {})\n", &run.table.to_string()[1..], run.bound).unwrap();
            writeln!(s, "| g | h | conditions | ⋆ | status | instances |\n|---|---|---|---|---|---|").unwrap();
            for row in &run.rows {
                writeln!(
                    s,
                    "| {} | {} | {} | {} | {} | {} |",
                    row.g,
                    row.h,
                    row.conditions.join(", "),
                    if row.starred { "⋆" } else { "" },
                    status(row.status),
                    instances(row).join("<br>")
                )
                .unwrap();
            }
            s.push('\n');
        }
    }
    writeln!(s, "{}", run.summary()).unwrap();
    s
}

/// Positive-root classes `len² m=(m+,m-) ×count`.
fn profile(m: &FamilyMember) -> Vec<String> {
    m.data
        .profile()
        .classes
        .iter()
        .map(|(k, n)| format!("{k} ×{}", n / 2))
        .collect()
}

pub fn family(selector: &str, members: &[FamilyMember], f: Format) -> String {
    let mut s = String::new();
    match f {
        Format::Json => {
            let rows: Vec<_> = members
                .iter()
                .map(|m| {
                    json!({
                        "signature": m.signature.to_string(),
                        "profile": profile(m),
                        "basic": m.basic,
                        "dim_k_cap_h": m.dim_k_cap_h,
                    })
                })
                .collect();
            return pretty(&json!({ "version": REPORT_VERSION, "pair": selector, "members": rows }));
        }
        Format::Plain => {
            writeln!(s, "family of {selector}: {} members", members.len()).unwrap();
            for m in members {
                writeln!(
                    s,
                    "{}  basic={}  dim_k_cap_h={}  {}",
                    m.signature,
                    m.basic,
                    m.dim_k_cap_h,
                    profile(m).join("; ")
                )
                .unwrap();
            }
        }
        Format::Markdown => {
            writeln!(s, "| ε | basic | dim k∩h | multiplicities |\n|---|---|---|---|").unwrap();
            for m in members {
                writeln!(s, "| `{}` | {} | {} | {} |", m.signature, m.basic, m.dim_k_cap_h, profile(m).join("; ")).unwrap();
            }
        }
    }
    s
}

pub fn cross(results: &[CrossValidation], f: Format) -> String {
    let mut s = String::new();
    match f {
        Format::Json => return pretty(&json!({ "version": REPORT_VERSION, "results": results })),
        Format::Plain => {
            for r in results {
                writeln!(s, "{r}").unwrap();
            }
        }
        Format::Markdown => {
            writeln!(s, "| entry | parameters | outcome |\n|---|---|---|").unwrap();
            for r in results {
                let o = match &r.outcome {
                    CrossOutcome::Match => "MATCH".to_string(),
                    CrossOutcome::Mismatch(d) => format!("MISMATCH {}", d.join("; ")),
                    CrossOutcome::Skipped(w) => format!("SKIPPED {w}"),
                };
                writeln!(s, "| {} | {} | {o} |", r.entry, format_params(&r.params)).unwrap();
            }
        }
    }
    let bad = results.iter().filter(|r| matches!(r.outcome, CrossOutcome::Mismatch(_))).count();
    writeln!(s, "cross-validated {}, mismatches {bad}", results.len()).unwrap();
    s
}
