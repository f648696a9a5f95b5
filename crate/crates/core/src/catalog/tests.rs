use super::*;
use crate::error::CkfError;
use crate::obstruction::Provenance;

fn params(v: &[(&str, i64)]) -> Params {
    v.iter().map(|(k, x)| (k.to_string(), *x)).collect()
}

const SMALL: &str = r#"
schema_version = 1

[[entry]]
id = "sl-complex-su"
g = "sl(p+q,C)"
h = "su(p,q)"
params = ["p", "q"]
constraints = ["p >= 1", "q >= 1"]
tables = ["T2"]
realization = "sl({p+q},C)/su({p},{q})"

[[entry.root_data]]
at = { p = 1, q = 1 }
system = "A1"
mult = [[2, 0]]
twist = [1]
dim_z_k_h = 1
dim_z_g_a = 2
"#;

#[test]
fn shipped_catalog_row_counts() {
    let cat = Catalog::shipped().unwrap();
    assert!(cat.table(Table::T1).count() >= 14);
    assert!(cat.table(Table::T2).count() >= 18);
    assert!(cat.table(Table::T3).count() >= 18);
}

#[test]
fn empty_file_is_an_empty_catalog() {
    assert_eq!(Catalog::parse("").unwrap(), Catalog::empty());
    assert_eq!(Catalog::parse("# nothing\n\n").unwrap().entries.len(), 0);
}

#[test]
fn excluded_parameters_are_rejected_at_instantiation() {
    let cat = Catalog::shipped().unwrap();
    let e = cat.get("so-complex-so").unwrap();
    assert!(matches!(
        e.instantiate(&params(&[("p", 2), ("q", 2)])),
        Err(CkfError::ParameterViolation(_))
    ));
    let ok = e.instantiate(&params(&[("p", 2), ("q", 3)])).unwrap();
    assert_eq!(ok.label.as_deref(), Some("so(5,C)/so(2,3)"));
    assert!(e.instantiate(&params(&[("p", 2)])).is_err());
}

#[test]
fn computed_when_splits_the_so_row() {
    let cat = Catalog::shipped().unwrap();
    let e = cat.get("so-split-compact").unwrap();
    let even = e.instantiate(&params(&[("p", 2), ("q", 1), ("r", 1)])).unwrap();
    assert!(even.computed);
    assert_eq!(even.candidates, vec!["so(3,1)/so(2,1)".to_string()]);
    assert!(!e.instantiate(&params(&[("p", 1), ("q", 1), ("r", 1)])).unwrap().computed);
}

#[test]
fn unknown_fields_are_rejected_with_a_line() {
    let bad = SMALL.replace("tables = [\"T2\"]", "tables = [\"T2\"]\ncolour = \"red\"");
    match Catalog::parse(&bad) {
        Err(CkfError::Parse { line, field, .. }) => {
            assert_eq!(field, "colour");
            assert!(line >= 4, "line {line}");
        }
        other => panic!("{other:?}"),
    }
    let bad = SMALL.replace("system = \"A1\"", "system = \"A1\"\nweight = 3");
    assert!(matches!(Catalog::parse(&bad), Err(CkfError::Parse { .. })));
}

#[test]
fn validation_names_the_invariant() {
    let cases = [
        (SMALL.replace("tables = [\"T2\"]", "tables = [\"T2\"]\nstarred = [\"T3\"]"), "starred"),
        (SMALL.replace("q >= 1\"", "q >=\""), "constraint"),
        (SMALL.replace("at = { p = 1, q = 1 }", "at = { p = 1, q = 0 }"), "admissible"),
        (SMALL.replace("twist = [1]", "twist = [2]"), "axioms"),
        (SMALL.replace("dim_z_g_a = 2", "dim_z_g_a = 2\ndim_k_cap_h = 5"), "dim k∩h"),
        (SMALL.replace("schema_version = 1", "schema_version = 9"), "schema_version"),
        (format!("{SMALL}\n[[entry]]\nid = \"x\"\ng = \"a\"\nh = \"b\"\n"), "realization / root_data"),
        (format!("{SMALL}\n[[entry]]\nid = \"x\"\ng = \"a\"\nh = \"b\"\nrealization = \"a/b\"\ntables = [\"T1\"]\nadmits_compact_form = true\n"), "compact"),
    ];
    for (text, needle) in cases {
        match Catalog::parse(&text) {
            Err(CkfError::Validation { invariant, .. }) => assert!(invariant.contains(needle), "{needle}: {invariant}"),
            other => panic!("{needle}: {other:?}"),
        }
    }
}

#[test]
fn catalog_round_trips() {
    let cat = Catalog::shipped().unwrap();
    let again = Catalog::parse(&cat.to_toml()).unwrap();
    assert_eq!(cat, again);
    assert_eq!(again.to_toml(), cat.to_toml());
}

#[test]
fn cross_validation_examples() {
    let cat = Catalog::shipped().unwrap();
    let r = cross_validate(cat.get("sl-complex-su").unwrap(), &params(&[("p", 1), ("q", 1)])).unwrap();
    assert_eq!(r.outcome, CrossOutcome::Match);
    let r = cross_validate(cat.get("so-split-compact").unwrap(), &params(&[("p", 2), ("q", 1), ("r", 1)])).unwrap();
    assert_eq!(r.outcome, CrossOutcome::Match);
}

#[test]
fn corrupted_multiplicity_names_the_root() {
    let cat = Catalog::parse(&SMALL.replace("mult = [[2, 0]]", "mult = [[1, 1]]")).unwrap();
    let r = cross_validate(&cat.entries[0], &params(&[("p", 1), ("q", 1)])).unwrap();
    match r.outcome {
        CrossOutcome::Mismatch(d) => assert!(d[0].starts_with("root [1]"), "{d:?}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn every_classical_row_has_root_data_at_its_two_smallest_tuples() {
    let cat = Catalog::shipped().unwrap();
    for e in cat.entries.iter().filter(|e| e.realization.is_some() && !e.tables.is_empty()) {
        let cs: Vec<ParamConstraint> = e.constraints.iter().cloned().map(ParamConstraint::new).collect();
        let tuples = admissible_tuples(&e.params, &cs, 4).unwrap();
        for t in &tuples[..2] {
            let spec = e.root_data.iter().find(|r| r.at.as_ref() == Some(t));
            assert!(spec.is_some(), "{} lacks root data at ({})", e.id, format_params(t));
        }
    }
}

#[test]
fn all_eligible_entries_match() {
    let cat = Catalog::shipped().unwrap();
    let all = cross_validate_all(&cat).unwrap();
    assert!(all.len() >= 30);
    for r in &all {
        assert_eq!(r.outcome, CrossOutcome::Match, "{r}");
    }
}

#[test]
fn exceptional_rows_are_catalog_only() {
    let cat = Catalog::shipped().unwrap();
    let ex: Vec<&CatalogEntry> = cat
        .entries
        .iter()
        .filter(|e| ["e6", "e7", "e8", "f4", "g2"].iter().any(|p| e.g.starts_with(p)))
        .collect();
    assert_eq!(ex.len(), 15);
    for e in ex {
        assert!(e.realization.is_none(), "{}", e.id);
        let inst = e.instantiate(&Params::new()).unwrap();
        assert!(!inst.computed);
        let r = e.catalog_report(&e.pair_label(), &e.tables);
        assert_eq!(r.provenance, Provenance::Catalog);
        assert!(r.is_consistent());
        assert_eq!(r.criteria_fired[0].witness["root_data_basic"], false);
    }
}

#[test]
fn compact_form_entries_carry_no_tables() {
    let cat = Catalog::shipped().unwrap();
    let e = cat.get("so-split-compact-forms").unwrap();
    let cs: Vec<ParamConstraint> = e.constraints.iter().cloned().map(ParamConstraint::new).collect();
    let t = admissible_tuples(&e.params, &cs, 8).unwrap();
    let labels: Vec<String> = t.iter().map(|p| e.instantiate(p).unwrap().label.unwrap()).collect();
    assert!(labels.contains(&"so(2,2)/so(1,2)+so(1)".to_string()));
    assert!(labels.contains(&"so(4,4)/so(3,4)+so(1)".to_string()));
    assert!(labels.contains(&"so(3,4)/so(1,4)+so(2)".to_string()));
    assert!(labels.contains(&"so(8,8)/so(7,8)+so(1)".to_string()));
    assert!(e.tables.is_empty());
}

#[test]
fn rank_bound_selects_tuples() {
    let cat = Catalog::shipped().unwrap();
    let labels = |id: &str, b: i64| -> Vec<String> {
        let e = cat.get(id).unwrap();
        e.tuples_up_to(b)
            .unwrap()
            .iter()
            .map(|p| e.instantiate(p).unwrap().label.unwrap())
            .collect()
    };
    assert_eq!(labels("sl-complex-su", 2), ["sl(2,C)/su(1,1)", "sl(3,C)/su(1,2)", "sl(3,C)/su(2,1)"]);
    assert_eq!(labels("sl-quat-sp", 4), ["sl(2,H)/sp(1,1)"]);
    assert_eq!(labels("so-complex-so", 2), ["so(5,C)/so(2,3)", "so(5,C)/so(3,2)"]);
    assert_eq!(labels("so-complex-so-star", 4), ["so(6,C)/so*(6)", "so(8,C)/so*(8)"]);
}
