use num_traits::Zero;
use serde_json::json;

use crate::error::{CkfError, Result};
use crate::exact::{Rational, Subspace};
use crate::lie::{rank_of_compact_subalgebra, HomogeneousPair, MatrixLieAlgebra, Sampling, SymmetricPairRealization};
use crate::roots::{HalfSignature, Signature};

use super::candidates::{CandidateRecipe, DiagramCandidate};
use super::report::{criterion, rationals_json, ObstructionReport};

/// Exhaustive lift search is skipped above this rank.
pub const MAX_LIFT_RANK: usize = 8;

/// Complexification of a real form: obstructed exactly when the restricted
/// root data is not basic.
pub fn check_type_cr(real: &SymmetricPairRealization) -> Result<ObstructionReport> {
    if !real.is_type_cr() {
        return Err(CkfError::NotTypeCR(real.label().to_string()));
    }
    let dec = real.restricted_root_decomposition()?;
    let data = &dec.data;
    Ok(match data.first_non_basic_root() {
        Some(i) => {
            let m = data.multiplicity(i);
            ObstructionReport::obstructed(
                real.label(),
                criterion::TYPE_CR,
                json!({
                    "rank": data.rank(),
                    "root": data.simple_coefficients(i),
                    "multiplicity": [m.plus, m.minus],
                }),
            )
        }
        None => ObstructionReport::no_conclusion(real.label()).with_diagnostic("type_CR: root data is basic"),
    })
}

pub fn check_hyperbolic(real: &SymmetricPairRealization, sampling: &Sampling) -> Result<ObstructionReport> {
    let search = real.find_hyperbolic_witness(sampling);
    Ok(match search.witness {
        Some(x) => ObstructionReport::obstructed(
            real.label(),
            criterion::HYPERBOLIC,
            json!({
                "x0": rationals_json(&x),
                "dim_associated": search.associated.dim(),
                "dim_center_in_p": search.center_in_p.dim(),
            }),
        ),
        None => {
            let why = search
                .diagnostic
                .unwrap_or_else(|| "center of h^a meets p trivially".to_string());
            ObstructionReport::no_conclusion(real.label()).with_diagnostic(format!("hyperbolic: {why}"))
        }
    })
}

pub(crate) fn twisted_label(label: &str, eps: &Signature) -> String {
    format!("{label} [eps={eps}]")
}

/// The ε-family criterion for `(g, h_ε)`, starting from a basic pair.
/// With `heps = None` every lift of `eps` is tried.
pub fn check_ep_criterion(
    basic: &SymmetricPairRealization,
    eps: &Signature,
    heps: Option<&HalfSignature>,
    sampling: &Sampling,
) -> Result<ObstructionReport> {
    let dec = basic.restricted_root_decomposition()?;
    if !dec.data.is_basic() {
        return Err(CkfError::NotBasicInput);
    }
    let twisted = dec.data.twist(eps)?;
    let label = twisted_label(basic.label(), eps);
    if let Some(h) = heps {
        if h.square() != *eps {
            return Err(CkfError::LiftMismatch);
        }
    }
    let Some(bad_root) = twisted.first_non_basic_root() else {
        return Ok(ObstructionReport::no_conclusion(label).with_diagnostic("epsilon_family: h_eps is basic"));
    };
    let g = basic.g();
    let h_eps = basic.sigma_eps_involution(&dec, eps)?.eigenspace(1);
    let kh = basic.k().intersect(&h_eps);
    let rank_kh = rank_of_compact_subalgebra(g, &kh, sampling)?;
    let lifts = match heps {
        Some(h) => vec![h.clone()],
        None => {
            if eps.rank() > MAX_LIFT_RANK {
                return Err(CkfError::RankTooLarge {
                    rank: eps.rank(),
                    bound: MAX_LIFT_RANK,
                });
            }
            dec.data.halfsig_lifts(eps)?
        }
    };
    let mut tried = Vec::new();
    for lift in &lifts {
        let s = kh.intersect(&basic.g_halfeps_subalgebra(&dec, lift)?);
        let rank_s = rank_of_compact_subalgebra(g, &s, sampling)?;
        if rank_s == rank_kh {
            let m = twisted.multiplicity(bad_root);
            return Ok(ObstructionReport::obstructed(
                label,
                criterion::EPSILON,
                json!({
                    "basic_pair": basic.label(),
                    "eps": eps,
                    "heps": lift,
                    "non_basic_root": twisted.simple_coefficients(bad_root),
                    "multiplicity": [m.plus, m.minus],
                    "rank_k_cap_h_eps": rank_kh,
                    "rank_k_cap_h_eps_cap_g_heps": rank_s,
                }),
            ));
        }
        tried.push(format!("{lift}: {rank_s}"));
    }
    Ok(ObstructionReport::no_conclusion(label).with_diagnostic(format!(
        "epsilon_family: rank(k∩h_eps) = {rank_kh} but rank(k∩h_eps∩g_heps) is {}",
        tried.join(", ")
    )))
}

fn brackets_vanish(g: &MatrixLieAlgebra, vs: &[Vec<Rational>]) -> bool {
    vs.iter()
        .enumerate()
        .all(|(i, x)| vs[i + 1..].iter().all(|y| g.bracket(x, y).iter().all(Zero::is_zero)))
}

/// Numbers gathered by [`check_invariant_diagram`]; kept for replay and reporting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramConditions {
    pub dim_c: usize,
    pub dim_k_cap_h: usize,
    pub rank_k_cap_h: usize,
    pub torus_dim: usize,
    pub torus_ok: bool,
    pub diagram_failures: Vec<String>,
    pub unimodular: bool,
}

impl DiagramConditions {
    pub fn dimension_ok(&self) -> bool {
        self.dim_c > self.dim_k_cap_h
    }

    pub fn holds(&self) -> bool {
        self.dimension_ok() && self.torus_ok && self.diagram_failures.is_empty() && self.unimodular
    }

    fn diagnostics(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.dimension_ok() {
            out.push(format!(
                "condition (i) failed: dim c = {} is not > dim k∩h = {}",
                self.dim_c, self.dim_k_cap_h
            ));
        }
        if !self.torus_ok {
            out.push(format!(
                "condition (ii) failed: shipped torus of dimension {} is not a maximal torus of k∩h (rank {}) inside c",
                self.torus_dim, self.rank_k_cap_h
            ));
        }
        if !self.diagram_failures.is_empty() {
            out.push(format!(
                "condition (iii) failed: diagram does not commute on {}",
                self.diagram_failures.join(", ")
            ));
        }
        if !self.unimodular {
            out.push("top cohomology hypothesis failed: g/h is not unimodular".into());
        }
        out
    }
}

pub fn diagram_conditions(cand: &DiagramCandidate, sampling: &Sampling) -> Result<DiagramConditions> {
    let pair = &cand.pair;
    let g = pair.g();
    let ill = |m: &str| CkfError::CandidateIllFormed(format!("{}: {m}", pair.label()));
    if !g.is_subalgebra(&cand.c) {
        return Err(ill("c is not a subalgebra"));
    }
    if !cand.c.is_subspace_of(pair.k()) {
        return Err(ill("c is not compact (not inside k)"));
    }
    if cand.torus.len() != cand.diagram.t.torus_vars().len() {
        return Err(ill("torus basis does not match the diagram's torus variables"));
    }
    let kh = pair.k_cap_h();
    let rank_k_cap_h = rank_of_compact_subalgebra(g, &kh, sampling)?;
    let t = Subspace::from_spanning(g.dim(), cand.torus.clone());
    let torus_ok = t.dim() == cand.torus.len()
        && t.is_subspace_of(&cand.c)
        && t.is_subspace_of(&kh)
        && brackets_vanish(g, &cand.torus)
        && t.dim() == rank_k_cap_h;
    let check = cand.diagram.check()?;
    Ok(DiagramConditions {
        dim_c: cand.c.dim(),
        dim_k_cap_h: kh.dim(),
        rank_k_cap_h,
        torus_dim: t.dim(),
        torus_ok,
        diagram_failures: check.failures,
        unimodular: pair.check_top_cohomology_nonzero(),
    })
}

/// Conditions (i)-(iii) for a shipped candidate, plus unimodularity of g/h.
pub fn check_invariant_diagram(cand: &DiagramCandidate, sampling: &Sampling) -> Result<ObstructionReport> {
    let cond = diagram_conditions(cand, sampling)?;
    let label = cand.recipe.to_string();
    if cond.holds() {
        return Ok(ObstructionReport::obstructed(
            label,
            criterion::DIAGRAM,
            diagram_witness(cand, &cond),
        ));
    }
    let mut r = ObstructionReport::no_conclusion(label);
    r.diagnostics = cond.diagnostics();
    Ok(r)
}

fn diagram_witness(cand: &DiagramCandidate, cond: &DiagramConditions) -> serde_json::Value {
    json!({
        "candidate": cand.recipe.to_string(),
        "c": cand.c_label,
        "phi": cand.phi_label,
        "dim_c": cond.dim_c,
        "dim_k_cap_h": cond.dim_k_cap_h,
        "rank_k_cap_h": cond.rank_k_cap_h,
    })
}

/// Re-runs the full check on `base` enlarged by `L`; `"0"` returns the
/// base report unchanged.
pub fn check_enlarged(
    base_report: &ObstructionReport,
    base: &CandidateRecipe,
    l_label: &str,
    sampling: &Sampling,
) -> Result<ObstructionReport> {
    if base_report.fired(criterion::DIAGRAM).is_none() && base_report.fired(criterion::ENLARGED).is_none() {
        return Err(CkfError::CandidateIllFormed(format!(
            "{}: base report is not an obstructed invariant-polynomial check",
            base_report.pair
        )));
    }
    let recipe = base.enlarged_by(l_label)?;
    if &recipe == base {
        return Ok(base_report.clone());
    }
    let cand = recipe.build()?;
    let cond = diagram_conditions(&cand, sampling)?;
    if cond.holds() {
        let mut w = diagram_witness(&cand, &cond);
        w["base"] = json!(base.to_string());
        w["l"] = json!(l_label);
        return Ok(ObstructionReport::obstructed(recipe.to_string(), criterion::ENLARGED, w));
    }
    let mut r = ObstructionReport::no_conclusion(recipe.to_string());
    r.diagnostics = cond.diagnostics();
    Ok(r)
}

/// `h_small ⊂ h_big` with `h_big = h_small + (k ∩ h_big)`, both inside the
/// same matrix algebra; then `H_big/H_small` is compact and an obstruction
/// for `G/H_small` passes to `G/H_big`.
pub fn is_compact_extension(small: &HomogeneousPair, big: &HomogeneousPair) -> bool {
    let (gs, gb) = (small.g(), big.g());
    if gs.ambient_size() != gb.ambient_size() || gs.dim() != gb.dim() {
        return false;
    }
    let moved: Option<Vec<Vec<Rational>>> = small
        .h()
        .basis()
        .iter()
        .map(|x| gb.coordinates(&gs.matrix(x)))
        .collect();
    let Some(moved) = moved else { return false };
    let hs = Subspace::from_spanning(gb.dim(), moved);
    hs.is_subspace_of(big.h()) && hs.sum(&big.k_cap_h()) == *big.h()
}
