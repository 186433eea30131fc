mod common;

use common::{fixture, run};
use poisson_forge_core::formal::ad_exp;
use poisson_forge_core::liealg::{linear_poisson, preset, LieJson};
use poisson_forge_core::multivector::MvfJson;
use poisson_forge_core::PolyMVF;
use serde_json::Value;

fn path(name: &str) -> String {
    fixture(name).to_str().unwrap().to_owned()
}

fn json(out: &std::process::Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn read_field(name: &str) -> PolyMVF {
    PolyMVF::from_json_str(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

#[test]
fn so3_fixture_is_the_linear_structure() {
    assert_eq!(read_field("so3.json"), linear_poisson(&preset("so3").unwrap()));
    let out = run(&["check", &path("so3.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["is_poisson"], true);
}

#[test]
fn perturbed_fixture_is_a_pullback_of_so3() {
    let x0 = read_field("perturbation_x0.json");
    let so3 = linear_poisson(&preset("so3").unwrap());
    assert_eq!(ad_exp(&x0, &so3, 4).unwrap(), read_field("perturbed_so3.json"));
    let out = run(&["linearize", &path("perturbed_so3.json"), "--truncate", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["status"], "equivalent");
    let x: MvfJson = serde_json::from_value(v["X"].clone()).unwrap();
    let x = PolyMVF::from_json(&x).unwrap();
    assert_eq!(ad_exp(&x, &so3, 4).unwrap(), read_field("perturbed_so3.json").truncate_jet(4));
}

#[test]
fn jet_example_is_obstructed() {
    let out = run(&["prolong", &path("jet_example.json"), "--weights", "0,0,1"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["status"], "obstructed");
    assert!(!v["cochain"]["terms"].as_array().unwrap().is_empty());
}

#[test]
fn lie_tables() {
    let out = run(&["check", &path("so3_lie.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["killing"]["compact_type"], true);
    let out = run(&["check", &path("not_jacobi.json")]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["jacobi_violation"]["i"], 1);
    assert!(!v["witness"]["terms"].as_array().unwrap().is_empty());
}

#[test]
fn fixtures_round_trip() {
    for name in ["so3.json", "perturbed_so3.json", "perturbation_x0.json", "jet_example.json", "empty.json"] {
        let field = read_field(name);
        assert_eq!(PolyMVF::from_json_str(&field.to_json_string()).unwrap(), field, "{name}");
    }
    for name in ["so3_lie.json", "not_jacobi.json"] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let table: LieJson = serde_json::from_str(&text).unwrap();
        let again: LieJson = serde_json::from_str(&serde_json::to_string(&table).unwrap()).unwrap();
        assert_eq!(table, again, "{name}");
    }
}

#[test]
fn empty_terms_give_the_zero_bivector() {
    let field = read_field("empty.json");
    assert!(field.is_zero() && field.grade() == 2);
    assert_eq!(run(&["check", &path("empty.json")]).status.code(), Some(0));
}

#[test]
fn usage_and_input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"nvars": 2, "grade": 2, "terms": [{"indices": [1, 2], "poly": "x0"}]}"#).unwrap();
    let out = run(&["check", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());

    let repeated = dir.path().join("repeated.json");
    std::fs::write(
        &repeated,
        r#"{"nvars": 2, "grade": 2, "terms": [{"indices": [1, 2], "poly": "1"}, {"indices": [1, 2], "poly": "x1"}]}"#,
    )
    .unwrap();
    assert_eq!(run(&["check", repeated.to_str().unwrap()]).status.code(), Some(2));

    assert_eq!(run(&["check", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(run(&["check", "--bogus", &path("so3.json")]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["check"]).status.code(), Some(2));
    assert_eq!(run(&["check", &path("so3.json"), "--preset", "so3"]).status.code(), Some(2));
    assert_eq!(run(&["check", "--preset", "e8"]).status.code(), Some(2));
}

#[test]
fn json_reports_are_deterministic() {
    let args = ["realize", "--preset", "so3", "--samples", "6", "--steps", "100", "--seed", "7"];
    let a = run(&args);
    let b = common::bin().args(args).env("POISSON_FORGE_THREADS", "1").output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["verdict"], true);
    for args in [
        vec!["su3", "--samples", "50", "--seed", "3"],
        vec!["cohomology", "--preset", "so3", "--grade", "3"],
        vec!["casimirs", "--preset", "su3", "--max-degree", "3"],
    ] {
        assert_eq!(run(&args).stdout, run(&args).stdout, "{args:?}");
    }
}

#[test]
fn verbs_report_expected_values() {
    let v = json(&run(&["cohomology", "--preset", "so3", "--grade", "2"]));
    let betti: Vec<u64> = v["rows"].as_array().unwrap().iter().map(|r| r["betti"].as_u64().unwrap()).collect();
    assert_eq!(betti, [1, 0, 0, 1]);

    let v = json(&run(&["casimirs", "--preset", "so3"]));
    assert_eq!(v["casimirs"].as_array().unwrap().len(), 2);

    let v = json(&run(&["area", "--radius", "0.5"]));
    assert!(v["relative_error"].as_f64().unwrap() < 1e-6);

    let out = run(&["su3", "--point", "1,0,0,0,0,0,0,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!((json(&out)["p1"].as_f64().unwrap() - 2.0).abs() < 1e-12);

    let out = run(&["--format", "text", "check", "--preset", "sl2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("compact type: false"));
}

#[test]
fn bad_thread_count_is_a_usage_error() {
    let out = common::bin().args(["check", "--preset", "so3"]).env("POISSON_FORGE_THREADS", "zero").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
