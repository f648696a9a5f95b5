use super::*;
use crate::error::CkfError;
use crate::lie::{PairKind, Sampling};
use crate::roots::{HalfSignature, Signature, Unit4};

fn real(label: &str) -> crate::lie::SymmetricPairRealization {
    PairKind::parse(label).unwrap().realize().unwrap()
}

fn sampling() -> Sampling {
    Sampling::default()
}

#[test]
fn type_cr_verdicts_in_rank_one() {
    let r = check_type_cr(&real("sl(2,C)/su(1,1)")).unwrap();
    assert!(r.is_obstructed() && r.is_consistent());
    assert_eq!(r.criteria_fired[0].criterion, criterion::TYPE_CR);
    assert!(check_type_cr(&real("sl(2,C)/sl(2,R)")).unwrap().is_obstructed());
    let compact = check_type_cr(&real("sl(2,C)/su(2)")).unwrap();
    assert_eq!(compact.verdict, Verdict::NoConclusion);
    assert!(compact.criteria_fired.is_empty());
}

#[test]
fn type_cr_rejects_real_pairs() {
    assert!(matches!(check_type_cr(&real("sl(3,R)/so(2,1)")), Err(CkfError::NotTypeCR(_))));
}

#[test]
fn hyperbolic_examples() {
    let r = check_hyperbolic(&real("sl(3,R)/so(2,1)"), &sampling()).unwrap();
    assert!(r.is_obstructed());
    let r = check_hyperbolic(&real("su(2,2)/sl(2,C)+R"), &sampling()).unwrap();
    assert!(r.is_obstructed());
    let r = check_hyperbolic(&real("sl(3,R)/so(3)"), &sampling()).unwrap();
    assert_eq!(r.verdict, Verdict::NoConclusion);
    assert!(!r.diagnostics.is_empty());
}

#[test]
fn type_cr_and_hyperbolic_agree_on_complex_su() {
    for (p, q) in [(1, 1), (1, 2), (2, 2)] {
        let rl = real(&format!("sl({},C)/su({p},{q})", p + q));
        assert!(check_type_cr(&rl).unwrap().is_obstructed(), "type_CR ({p},{q})");
        assert!(check_hyperbolic(&rl, &sampling()).unwrap().is_obstructed(), "hyperbolic ({p},{q})");
    }
}

#[test]
fn trivial_signature_gives_no_conclusion() {
    for label in ["sl(2,C)/su(2)", "sl(3,R)/so(3)", "so(3,C)/so(3)"] {
        let rl = real(label);
        let r = rl.restricted_root_decomposition().unwrap().data.rank();
        let rep = check_ep_criterion(&rl, &Signature::trivial(r), None, &sampling()).unwrap();
        assert_eq!(rep.verdict, Verdict::NoConclusion, "{label}");
    }
}

#[test]
fn epsilon_from_compact_form_matches_type_cr() {
    let basic = real("sl(2,C)/su(2)");
    let eps = Signature::from_bits(1, 1);
    let lifts = [Unit4::I, Unit4::MinusI];
    for u in lifts {
        let heps = HalfSignature {
            values_on_simple: vec![u],
        };
        let rep = check_ep_criterion(&basic, &eps, Some(&heps), &sampling()).unwrap();
        assert!(rep.is_obstructed(), "lift {u:?}");
        assert_eq!(rep.criteria_fired[0].criterion, criterion::EPSILON);
    }
}

#[test]
fn epsilon_input_errors() {
    let nonbasic = real("sl(2,C)/su(1,1)");
    let eps = Signature::from_bits(1, 1);
    assert!(matches!(
        check_ep_criterion(&nonbasic, &eps, None, &sampling()),
        Err(CkfError::NotBasicInput)
    ));
    let basic = real("sl(2,C)/su(2)");
    let wrong = HalfSignature {
        values_on_simple: vec![Unit4::One],
    };
    assert!(matches!(
        check_ep_criterion(&basic, &eps, Some(&wrong), &sampling()),
        Err(CkfError::LiftMismatch)
    ));
}

#[test]
fn so_family_candidate_obstructs() {
    let cand = CandidateRecipe::SoFamily { p: 2, q: 1, r: 1, s: 0 }.build().unwrap();
    let r = check_invariant_diagram(&cand, &sampling()).unwrap();
    assert!(r.is_obstructed(), "{:?}", r.diagnostics);
    let cond = diagram_conditions(&cand, &sampling()).unwrap();
    assert_eq!((cond.dim_c, cond.dim_k_cap_h, cond.rank_k_cap_h), (3, 1, 1));
}

#[test]
fn sl_family_candidate_obstructs() {
    let cand = CandidateRecipe::SlChain { blocks: vec![2], q: 2 }.build().unwrap();
    let r = check_invariant_diagram(&cand, &sampling()).unwrap();
    assert!(r.is_obstructed(), "{:?}", r.diagnostics);
    assert_eq!(cand.c_label, "so(3)");
}

#[test]
fn equal_dimensions_fail_condition_one() {
    let cand = CandidateRecipe::SoFamily { p: 0, q: 3, r: 1, s: 0 }.build().unwrap();
    let r = check_invariant_diagram(&cand, &sampling()).unwrap();
    assert_eq!(r.verdict, Verdict::NoConclusion);
    assert!(r.diagnostics.iter().any(|d| d.starts_with("condition (i) failed")), "{:?}", r.diagnostics);
}

#[test]
fn enlarging_by_nothing_keeps_the_verdict() {
    let base = CandidateRecipe::SlChain { blocks: vec![2], q: 1 };
    let br = check_invariant_diagram(&base.build().unwrap(), &sampling()).unwrap();
    assert_eq!(check_enlarged(&br, &base, "0", &sampling()).unwrap(), br);
}

#[test]
fn enlarged_sl_chain() {
    let base = CandidateRecipe::SlChain { blocks: vec![2], q: 1 };
    let br = check_invariant_diagram(&base.build().unwrap(), &sampling()).unwrap();
    let r = check_enlarged(&br, &base, "sl(2,R)", &sampling()).unwrap();
    assert!(r.is_obstructed(), "{:?}", r.diagnostics);
    assert_eq!(r.pair, "sl(5,R)/sl(2,R)+sl(2,R)");
    assert!(r.fired(criterion::ENLARGED).is_some());
}

#[test]
fn enlarged_by_compact_factor() {
    let base = CandidateRecipe::SoFamily { p: 2, q: 1, r: 1, s: 0 };
    let br = check_invariant_diagram(&base.build().unwrap(), &sampling()).unwrap();
    let r = check_enlarged(&br, &base, "so(2)", &sampling()).unwrap();
    assert!(r.is_obstructed(), "{:?}", r.diagnostics);
}

#[test]
fn enlarging_requires_an_obstructed_base() {
    let base = CandidateRecipe::SoFamily { p: 0, q: 3, r: 1, s: 0 };
    let br = check_invariant_diagram(&base.build().unwrap(), &sampling()).unwrap();
    assert!(check_enlarged(&br, &base, "so(2)", &sampling()).is_err());
}

#[test]
fn recipe_labels_round_trip() {
    for r in [
        CandidateRecipe::SoFamily { p: 2, q: 1, r: 1, s: 0 },
        CandidateRecipe::SoFamily { p: 4, q: 3, r: 2, s: 2 },
        CandidateRecipe::SlChain { blocks: vec![2], q: 2 },
        CandidateRecipe::SlChain { blocks: vec![3, 2], q: 1 },
    ] {
        assert_eq!(CandidateRecipe::parse(&r.to_string()), Some(r.clone()), "{r}");
    }
    assert_eq!(CandidateRecipe::parse("so(3,1)/so(3,1)"), None);
    assert_eq!(CandidateRecipe::parse("sl(3,R)/sl(3,R)"), None);
}

#[test]
fn decide_table_one_so_row() {
    let s = Subject::parse("so(3,1)/so(2,1)").unwrap();
    let opts = DecideOptions::default();
    let r = decide(&s, &opts);
    assert!(r.is_obstructed(), "{:?}", r.diagnostics);
    assert!(r.fired(criterion::DIAGRAM).is_some());
    assert!(replay(&s, &r, &opts).unwrap());
}

#[test]
fn decide_compact_fiber() {
    let s = Subject::parse("so(4,1)/so(2,1)+so(2)").unwrap();
    let opts = DecideOptions::default();
    let r = decide(&s, &opts);
    assert!(r.fired(criterion::DIAGRAM_COMPACT_FIBER).is_some(), "{:?}", r.diagnostics);
    assert!(replay(&s, &r, &opts).unwrap());
}

#[test]
fn decide_homogeneous_chain() {
    let s = Subject::parse("sl(5,R)/sl(2,R)+sl(2,R)").unwrap();
    let opts = DecideOptions::default();
    let r = decide(&s, &opts);
    assert!(r.is_obstructed(), "{:?}", r.diagnostics);
    assert!(replay(&s, &r, &opts).unwrap());
}

#[test]
fn decide_epsilon_route_replays() {
    let s = Subject::parse("sl(2,C)/sl(2,R)").unwrap();
    let opts = DecideOptions::default();
    let r = decide(&s, &opts);
    assert!(r.fired(criterion::TYPE_CR).is_some());
    assert!(r.fired(criterion::EPSILON).is_some(), "{:?}", r.diagnostics);
    assert!(replay(&s, &r, &opts).unwrap());
}

#[test]
fn decide_riemannian_is_no_conclusion() {
    for label in ["sl(3,R)/so(3)", "so(3,1)/so(3)", "sl(2,C)/su(2)"] {
        let r = decide(&Subject::parse(label).unwrap(), &DecideOptions::default());
        assert_eq!(r.verdict, Verdict::NoConclusion, "{label}");
        assert!(r.is_consistent());
    }
}

#[test]
fn decide_never_obstructs_known_compact_forms() {
    for label in [
        "so(8,C)/so(7,1)",
        "so(2,2)/so(1,2)",
        "so(4,4)/so(3,4)+so(1)",
        "so(3,4)/so(1,4)+so(2)",
    ] {
        let r = decide(&Subject::parse(label).unwrap(), &DecideOptions::default());
        assert_eq!(r.verdict, Verdict::NoConclusion, "{label}: {:?}", r.criteria_fired);
    }
}

#[test]
fn tampered_witness_fails_replay() {
    let s = Subject::parse("sl(3,R)/so(2,1)").unwrap();
    let opts = DecideOptions::default();
    let mut r = decide(&s, &opts);
    let rec = r
        .criteria_fired
        .iter_mut()
        .find(|c| c.criterion == criterion::HYPERBOLIC)
        .unwrap();
    let x0 = rec.witness["x0"].as_array_mut().unwrap();
    x0.iter_mut().for_each(|v| *v = serde_json::json!("0"));
    x0[0] = serde_json::json!("1");
    assert!(!replay(&s, &r, &opts).unwrap());
}

#[test]
fn report_json_is_versioned() {
    let r = ObstructionReport::obstructed("x", criterion::TYPE_CR, serde_json::json!({}));
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(v["version"], REPORT_VERSION);
    assert_eq!(v["verdict"], "OBSTRUCTED");
    assert_eq!(v["provenance"], "COMPUTED");
}
