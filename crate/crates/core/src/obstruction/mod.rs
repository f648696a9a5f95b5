//! Checkers for the sufficient conditions and the aggregate decision.

mod candidates;
mod checks;
mod decide;
mod report;

pub use candidates::{CandidateRecipe, DiagramCandidate};
pub use checks::{
    check_enlarged, check_ep_criterion, check_hyperbolic, check_invariant_diagram, check_type_cr, is_compact_extension,
    diagram_conditions, DiagramConditions, MAX_LIFT_RANK,
};
pub use decide::{decide, fiber_candidates, replay, DecideOptions, Subject};
pub use report::{criterion, CriterionRecord, ObstructionReport, Provenance, Verdict, REPORT_VERSION};

#[cfg(test)]
mod tests;
