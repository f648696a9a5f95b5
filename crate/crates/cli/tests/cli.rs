use std::path::PathBuf;
use std::process::{Command, Output};

fn ckf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ckf"))
        .args(args)
        .env_remove("CKF_CATALOG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

#[test]
fn check_verdicts_and_exit_codes() {
    let o = ckf(&["check", "so(3,1)/so(2,1)", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["verdict"], "OBSTRUCTED");
    assert_eq!(v["provenance"], "COMPUTED");
    assert_eq!(v["version"], 1);

    let o = ckf(&["check", "sl(2,C)/su(2)", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["verdict"], "NO_CONCLUSION");

    let o = ckf(&["check", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bogus"));
}

#[test]
fn check_accepts_catalog_selectors() {
    let o = ckf(&["check", "so-complex-so(p=2,q=3)", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["pair"], "so(5,C)/so(2,3)");
    let o = ckf(&["check", "so-complex-so(2,2)"]);
    assert_eq!(o.status.code(), Some(2));
    let o = ckf(&["check", "e8-complex-e8-24", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["verdict"], "OBSTRUCTED");
    assert_eq!(v["provenance"], "CATALOG");
}

#[test]
fn json_output_is_deterministic() {
    let args = ["check", "sl(3,C)/su(1,2)", "--format", "json", "--seed", "7"];
    assert_eq!(ckf(&args).stdout, ckf(&args).stdout);
}

#[test]
fn unknown_flags_are_rejected() {
    assert_eq!(ckf(&["check", "bogus", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(ckf(&["table", "4"]).status.code(), Some(2));
}

fn table(id: &str) -> Output {
    ckf(&["table", id, "--max-param", "4"])
}

#[test]
fn table_two_confirms_every_classical_row() {
    let o = table("2");
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("rows confirmed 7/7, catalog-only 11\n"), "{}", stdout(&o));
}

#[test]
fn table_three_confirms_via_hyperbolic_witnesses() {
    let o = ckf(&["table", "3", "--max-param", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["summary"], "rows confirmed 12/12, catalog-only 6");
    for row in v["rows"].as_array().unwrap() {
        for inst in row["instances"].as_array().unwrap() {
            let r = &inst["report"];
            if r["provenance"] == "COMPUTED" {
                let fired: Vec<&str> = r["criteria_fired"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|c| c["criterion"].as_str().unwrap())
                    .collect();
                assert!(fired.contains(&"hyperbolic"), "{}: {fired:?}", r["pair"]);
            }
        }
    }
}

#[test]
fn table_one_reports_exceptional_rows_from_the_catalog() {
    let o = table("1");
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.ends_with("rows confirmed 8/8, catalog-only 6\n"), "{out}");
    assert!(out.contains("e8(C)/e8(-24): OBSTRUCTED CATALOG"));
}

#[test]
fn family_rows() {
    let o = ckf(&["family", "sl(2,C)/su(2)", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let m = json(&o)["members"].as_array().unwrap().clone();
    assert_eq!(m.len(), 2);
    // basic input: exactly the basic rows attain the maximum
    let max = m.iter().map(|r| r["dim_k_cap_h"].as_u64().unwrap()).max().unwrap();
    for r in &m {
        assert_eq!(r["basic"].as_bool().unwrap(), r["dim_k_cap_h"].as_u64().unwrap() == max);
    }
    assert!(m[0]["basic"].as_bool().unwrap());

    let o = ckf(&["family", "sl(4,R)/so(2,2)"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 9);
    assert_eq!(out, stdout(&ckf(&["family", "sl(4,R)/so(2,2)"])));

    let o = ckf(&["family", "e8-complex-e8-24", "--rank-bound", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("rank 8"));
}

#[test]
fn verify_catalog_exit_codes() {
    let o = ckf(&["verify-catalog"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("mismatches 0"));

    let o = ckf(&["verify-catalog", "--catalog", &fixture("corrupted.toml")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("sl-complex-su"));
    assert!(stdout(&o).contains("MISMATCH root [1]"));

    let o = ckf(&["verify-catalog", "--catalog", "/no/such/catalog.toml"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn catalog_path_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_ckf"))
        .arg("verify-catalog")
        .env("CKF_CATALOG", fixture("corrupted.toml"))
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}
