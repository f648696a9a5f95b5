use serde_json::Value;

use crate::error::{CkfError, Result};
use crate::lie::{PairKind, Sampling, SymmetricPairRealization};
use crate::roots::{HalfSignature, Signature, DEFAULT_FAMILY_RANK_BOUND};

use super::candidates::CandidateRecipe;
use super::checks::{
    check_enlarged, check_ep_criterion, check_hyperbolic, check_invariant_diagram, check_type_cr, is_compact_extension,
    diagram_conditions,
};
use super::report::{criterion, rationals_from_json, ObstructionReport, Provenance};

/// What [`decide`] runs on.
#[derive(Clone, Debug)]
pub enum Subject {
    Symmetric {
        kind: Option<PairKind>,
        real: SymmetricPairRealization,
    },
    Homogeneous(CandidateRecipe),
}

impl Subject {
    /// Symmetric pairs first, then the shipped non-symmetric families.
    pub fn parse(label: &str) -> Result<Self> {
        if let Some(kind) = PairKind::parse(label) {
            return Ok(Subject::Symmetric {
                kind: Some(kind),
                real: kind.realize()?,
            });
        }
        CandidateRecipe::parse(label)
            .map(Subject::Homogeneous)
            .ok_or_else(|| CkfError::UnresolvedSelector(label.to_string()))
    }

    pub fn label(&self) -> String {
        match self {
            Subject::Symmetric { real, .. } => real.label().to_string(),
            Subject::Homogeneous(r) => r.to_string(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DecideOptions {
    pub sampling: Sampling,
    /// Extra non-symmetric candidates whose obstruction may pass to the
    /// subject through a compact fiber.
    pub candidates: Vec<CandidateRecipe>,
    pub family_rank_bound: usize,
}

impl Default for DecideOptions {
    fn default() -> Self {
        Self {
            sampling: Sampling::default(),
            candidates: Vec::new(),
            family_rank_bound: DEFAULT_FAMILY_RANK_BOUND,
        }
    }
}

/// Shipped candidates `G/H'` with `H/H'` compact for a symmetric pair.
pub fn fiber_candidates(kind: &PairKind) -> Vec<CandidateRecipe> {
    match *kind {
        PairKind::SoSplit { p, q, r } if p % 2 == 0 && q % 2 == 1 && r >= 1 => {
            vec![CandidateRecipe::SoFamily { p, q, r, s: 0 }]
        }
        _ => Vec::new(),
    }
}

fn absorb(report: &mut ObstructionReport, step: &str, result: Result<ObstructionReport>) {
    match result {
        Ok(r) => report.merge(r),
        Err(e) => report.diagnostics.push(format!("{step}: {e}")),
    }
}

/// Runs every applicable checker in a fixed order and merges the results.
/// Errors become diagnostics; the verdict is never stronger than what fired.
pub fn decide(subject: &Subject, opts: &DecideOptions) -> ObstructionReport {
    let mut report = ObstructionReport::no_conclusion(subject.label());
    match subject {
        Subject::Symmetric { kind, real } => {
            if real.is_type_cr() {
                absorb(&mut report, criterion::TYPE_CR, check_type_cr(real));
            } else {
                report.diagnostics.push("type_CR: not a complexification of a real form".into());
            }
            absorb(&mut report, criterion::HYPERBOLIC, check_hyperbolic(real, &opts.sampling));
            let mut cands: Vec<CandidateRecipe> = kind.as_ref().map(fiber_candidates).unwrap_or_default();
            for c in &opts.candidates {
                if !cands.contains(c) {
                    cands.push(c.clone());
                }
            }
            for c in &cands {
                absorb(&mut report, criterion::DIAGRAM, fiber_step(real, c, &opts.sampling));
            }
            absorb(&mut report, criterion::EPSILON, epsilon_step(real, opts));
        }
        Subject::Homogeneous(recipe) => {
            absorb(&mut report, criterion::DIAGRAM, homogeneous_step(recipe, &opts.sampling));
        }
    }
    report
}

fn fiber_step(real: &SymmetricPairRealization, recipe: &CandidateRecipe, sampling: &Sampling) -> Result<ObstructionReport> {
    let cand = recipe.build()?;
    let base = check_invariant_diagram(&cand, sampling)?;
    let mut out = ObstructionReport::no_conclusion(real.label());
    let Some(fired) = base.fired(criterion::DIAGRAM) else {
        out.diagnostics = base.diagnostics.iter().map(|d| format!("{recipe}: {d}")).collect();
        return Ok(out);
    };
    let big = real.homogeneous();
    if !is_compact_extension(&cand.pair, &big) {
        return Ok(out.with_diagnostic(format!("{recipe}: h is not a compact extension of the candidate's h")));
    }
    let same = cand.pair.h().dim() == big.h().dim();
    let name = if same { criterion::DIAGRAM } else { criterion::DIAGRAM_COMPACT_FIBER };
    out.fire(name, fired.witness.clone());
    Ok(out)
}

fn homogeneous_step(recipe: &CandidateRecipe, sampling: &Sampling) -> Result<ObstructionReport> {
    let mut out = ObstructionReport::no_conclusion(recipe.to_string());
    let r = match recipe.base() {
        Some((base, l)) => {
            let br = check_invariant_diagram(&base.build()?, sampling)?;
            if br.is_obstructed() {
                check_enlarged(&br, &base, &l, sampling)?
            } else {
                check_invariant_diagram(&recipe.build()?, sampling)?
            }
        }
        None => check_invariant_diagram(&recipe.build()?, sampling)?,
    };
    out.merge(r);
    Ok(out)
}

/// The basic member of the pair's own ε-family used as ancestor, with the
/// realization it induces on the same `g`, `θ`, `a`.
fn basic_ancestor(real: &SymmetricPairRealization, bound: usize) -> Result<Option<(Signature, SymmetricPairRealization)>> {
    let dec = real.restricted_root_decomposition()?;
    let Some(member) = dec.data.enumerate_family(bound)?.into_iter().find(|m| m.basic) else {
        return Ok(None);
    };
    let eps = member.signature;
    let sigma = real.sigma_eps_involution(&dec, &eps)?;
    let basic = SymmetricPairRealization::new(
        format!("{} [basic ancestor]", real.label()),
        sigma,
        real.theta().clone(),
        real.a_basis().to_vec(),
    )?;
    // twisting back must land on the pair itself in the same root ordering
    let back = basic.restricted_root_decomposition()?.data.twist(&eps)?;
    if back.multiplicities() != dec.data.multiplicities() {
        return Err(CkfError::InvalidPair(format!(
            "{}: basic ancestor does not twist back to the pair",
            real.label()
        )));
    }
    Ok(Some((eps, basic)))
}

fn epsilon_step(real: &SymmetricPairRealization, opts: &DecideOptions) -> Result<ObstructionReport> {
    let out = ObstructionReport::no_conclusion(real.label());
    let dec = real.restricted_root_decomposition()?;
    if dec.data.is_basic() {
        return Ok(out.with_diagnostic("epsilon_family: pair is basic"));
    }
    let Some((eps, basic)) = basic_ancestor(real, opts.family_rank_bound)? else {
        return Ok(out.with_diagnostic("epsilon_family: no basic member in the family"));
    };
    let r = check_ep_criterion(&basic, &eps, None, &opts.sampling)?;
    let mut out = out;
    out.merge(r);
    Ok(out)
}

/// Re-validates every computed witness in `report` from scratch. Catalog
/// records carry no witness and are skipped.
pub fn replay(subject: &Subject, report: &ObstructionReport, opts: &DecideOptions) -> Result<bool> {
    if !report.is_consistent() {
        return Ok(false);
    }
    if report.provenance == Provenance::Catalog {
        return Ok(true);
    }
    for rec in &report.criteria_fired {
        if !replay_one(subject, &rec.criterion, &rec.witness, opts)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn witness_recipe(w: &Value) -> Option<CandidateRecipe> {
    CandidateRecipe::parse(w.get("candidate")?.as_str()?)
}

fn replay_one(subject: &Subject, name: &str, w: &Value, opts: &DecideOptions) -> Result<bool> {
    let sampling = &opts.sampling;
    match (name, subject) {
        (criterion::TYPE_CR, Subject::Symmetric { real, .. }) => {
            let r = check_type_cr(real)?;
            Ok(r.fired(criterion::TYPE_CR).is_some_and(|f| f.witness == *w))
        }
        (criterion::HYPERBOLIC, Subject::Symmetric { real, .. }) => {
            let Some(x) = w.get("x0").and_then(rationals_from_json) else {
                return Ok(false);
            };
            Ok(x.len() == real.g().dim() && real.is_hyperbolic_witness(&x))
        }
        (criterion::DIAGRAM | criterion::DIAGRAM_COMPACT_FIBER | criterion::ENLARGED, _) => {
            let Some(recipe) = witness_recipe(w) else {
                return Ok(false);
            };
            let cand = recipe.build()?;
            if !diagram_conditions(&cand, sampling)?.holds() {
                return Ok(false);
            }
            Ok(match subject {
                Subject::Symmetric { real, .. } => is_compact_extension(&cand.pair, &real.homogeneous()),
                Subject::Homogeneous(r) => r.same_space(&recipe),
            })
        }
        (criterion::EPSILON, Subject::Symmetric { real, .. }) => {
            let parse = || -> Option<(Signature, HalfSignature)> {
                Some((
                    serde_json::from_value(w.get("eps")?.clone()).ok()?,
                    serde_json::from_value(w.get("heps")?.clone()).ok()?,
                ))
            };
            let Some((eps, heps)) = parse() else {
                return Ok(false);
            };
            let Some((eps0, basic)) = basic_ancestor(real, opts.family_rank_bound)? else {
                return Ok(false);
            };
            if eps0 != eps {
                return Ok(false);
            }
            Ok(check_ep_criterion(&basic, &eps, Some(&heps), sampling)?.is_obstructed())
        }
        _ => Ok(false),
    }
}
