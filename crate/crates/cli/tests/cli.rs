use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_malcev")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

#[test]
fn free_dims() {
    assert_eq!(json(&["free-dims", "--generators", "2", "--class", "4"])["dims"], serde_json::json!([2, 1, 2, 3]));
    assert_eq!(json(&["free-dims", "--generators", "1", "--class", "3"])["dims"], serde_json::json!([1, 0, 0]));
    assert_eq!(code(&["free-dims", "--generators", "0", "--class", "3"]), 2);
    assert_eq!(code(&["free-dims", "--generators", "2"]), 2);
    assert_eq!(code(&["free-dims", "--generators", "2", "--class", "0"]), 2);
    assert_eq!(code(&["free-dims", "--generators", "two", "--class", "3"]), 2);
}

#[test]
fn bch_default_and_files() {
    let z = json(&["bch", "--class", "3"]);
    let coeff = |w: &str| z["terms"].as_array().unwrap().iter().find(|t| t["word"] == w).map(|t| t["coeff"].clone());
    assert_eq!(coeff("xy"), Some("1/2".into()));
    assert_eq!(coeff("xxy"), Some("1/12".into()));
    let dir = std::env::temp_dir().join(format!("malcev-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let x = dir.join("x.json");
    let y = dir.join("y.json");
    std::fs::write(&x, r#"{"class": 3, "generators": ["a", "b"], "terms": [{"word": "a", "coeff": "2"}]}"#).unwrap();
    std::fs::write(&y, r#"{"class": 3, "terms": [{"word": "b", "coeff": "1/3"}]}"#).unwrap();
    let z = json(&["bch", "--class", "3", "--lie", x.to_str().unwrap(), y.to_str().unwrap()]);
    let ab = z["terms"].as_array().unwrap().iter().find(|t| t["word"] == "ab").unwrap();
    assert_eq!(ab["coeff"], "1/3");
    std::fs::write(&y, "{not json").unwrap();
    assert_eq!(code(&["bch", "--class", "3", "--lie", x.to_str().unwrap(), y.to_str().unwrap()]), 3);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn malcev_examples() {
    let t = json(&["malcev", "--space", &data("torus.json"), "--class", "4"]);
    assert_eq!(t["quotient_dims"], serde_json::json!([2, 0, 0, 0]));
    assert_eq!(t["quadratic_part_is_half_cup"], true);
    let w = json(&["malcev", "--space", &data("wedge2.json"), "--class", "3"]);
    assert_eq!(w["relations"], serde_json::json!([]));
    assert_eq!(w["quotient_dims"], serde_json::json!([2, 1, 2]));
    let g = json(&["malcev", "--space", &data("genus2.json"), "--class", "3", "--weights", &data("weights_genus2.json")]);
    assert_eq!(g["relations"].as_array().unwrap().len(), 1);
    assert_eq!(g["is_ideal_quadratic"], true);
    assert_eq!(g["weight_report"]["verdict"], "quadratic");
    assert_eq!(g["quotient_dims"], serde_json::json!([4, 5, 16]));
    assert_eq!(code(&["malcev", "--space", &data("disconnected.json"), "--class", "3"]), 3);
    assert_eq!(code(&["malcev", "--space", &data("torus.json"), "--class", "9"]), 2);
    assert_eq!(code(&["malcev", "--space", &data("missing.json"), "--class", "3"]), 2);
    assert_eq!(code(&["malcev", "--class", "3"]), 2);
}

#[test]
fn malcev_output_round_trips() {
    let t = json(&["malcev", "--space", &data("genus2.json"), "--class", "3"]);
    let h = malcev_core::json::hull_from_json(&t).unwrap();
    assert_eq!(h.quotient_dims(), vec![4, 5, 16]);
    let again = malcev_core::json::hull_to_json(&h);
    for key in ["generators", "relations", "f", "cup", "weights", "quotient_dims", "class"] {
        assert_eq!(again[key], t[key], "{key}");
    }
}

#[test]
fn ce_heisenberg() {
    let c = json(&["ce", "--algebra", &data("heisenberg.json"), "--massey", "x", "x", "y"]);
    assert_eq!(c["dims"], serde_json::json!({"h0": 1, "h1": 2, "h2": 2}));
    assert_eq!(c["cup_vanishes"], true);
    assert_eq!(c["massey"]["vanishes"], false);
    assert_eq!(c["massey"]["indeterminacy"], serde_json::json!([]));
    assert_eq!(c["massey"]["representative"]["cochain"], "x∨∧z∨");
    assert_eq!(c["quadratic_obstruction"]["verdict"], "not quadratically presentable");
    assert_eq!(c["quadratic_obstruction"]["witness"]["triple"], serde_json::json!(["x∨", "x∨", "y∨"]));
    let a = json(&["ce", "--algebra", &data("abelian2.json")]);
    assert_eq!(a["dims"], serde_json::json!({"h0": 1, "h1": 2, "h2": 1}));
    assert_eq!(a["quadratic_obstruction"]["verdict"], "no obstruction found");
    assert_eq!(code(&["ce", "--algebra", &data("abelian2.json"), "--massey", "x", "y", "x"]), 3);
    assert_eq!(code(&["ce", "--algebra", &data("abelian2.json"), "--massey", "x", "y"]), 2);
    let n = malcev_core::json::nilpotent_from_json(&c["algebra"]).unwrap();
    assert_eq!(n.dim(), 3);
}

#[test]
fn weights_and_pairing() {
    let r = json(&["weights-report", "--h1", "1,1,1", "--h2", "2,2"]);
    assert_eq!(r["lengths"], serde_json::json!([2]));
    assert_eq!(r["verdict"], "quadratic");
    let r = json(&["weights-report", "--h1", "1,2", "--h2", "2,3,4"]);
    assert_eq!(r["lengths"], serde_json::json!([2, 3, 4]));
    assert_eq!(code(&["weights-report", "--h1", "1,x", "--h2", "2"]), 2);
    let p = json(&["pairing-check", "--cup", &data("cup_genus2.json")]);
    assert_eq!(p["nondegenerate"], true);
    assert_eq!(p["quotient_dims"], serde_json::json!([4, 5, 16]));
    assert_eq!(p["free_dims"], serde_json::json!([4, 6, 20]));
    assert_eq!(p["verdict"], "class-3 quotient not free");
}

#[test]
fn deterministic_output() {
    let args = ["malcev", "--space", &data("genus2.json"), "--class", "3"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let s = run(&["--format", "summary", "weights-report", "--h1", "1", "--h2", "2"]);
    assert!(String::from_utf8(s.stdout).unwrap().contains("quadratic"));
}
