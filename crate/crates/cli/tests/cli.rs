use std::process::{Command, Output};

use serde_json::Value;

use planar_poisson::arnold::{instantiate, parse_selector, SingularityType};
use planar_poisson::polyring::{parse_poly, rat};
use planar_poisson::polyvector::{delta1, VectorField};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_poisson-hp")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    });
    (out.status.code().unwrap(), v)
}

fn text(args: &[&str]) -> (i32, String) {
    let out = run(args);
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn q_coeffs(v: &Value) -> Vec<String> {
    v["class"]["q"].as_array().unwrap().iter().map(|e| e["coeff"].as_str().unwrap().to_string()).collect()
}

fn lambda_coeffs(v: &Value) -> Vec<String> {
    v["class"]["lambda"].as_array().unwrap().iter().map(|e| e["coeff"].as_str().unwrap().to_string()).collect()
}

#[test]
fn e7_basis_degrees() {
    let (code, v) = json(&["cohomology", "--f", "x^3+x*y^3", "--h", "y^2", "--weights", "3,2"]);
    assert_eq!(code, 0);
    let degrees: Vec<i64> = v["milnor_basis"].as_array().unwrap().iter().map(|e| e["degree"].as_i64().unwrap()).collect();
    assert_eq!(degrees, [0, 2, 3, 4, 5, 6, 8]);
    let monomials: Vec<&str> = v["milnor_basis"].as_array().unwrap().iter().map(|e| e["monomial"].as_str().unwrap()).collect();
    assert_eq!(monomials, ["1", "y", "x", "y^2", "x*y", "y^3", "y^4"]);
    assert_eq!(v["dims"], serde_json::json!([1, 2, 8, 0]));
}

#[test]
fn e8_dims_and_hamiltonian() {
    let (code, v) = json(&["cohomology", "--type", "E8"]);
    assert_eq!(code, 0);
    assert_eq!(v["dims"], serde_json::json!([1, 1, 8, 0]));
    assert_eq!(v["u"]["dx"], "5*y^4");
    assert_eq!(v["u"]["dy"], "-3*x^2");
}

#[test]
fn invalid_inputs_exit_2() {
    assert_eq!(run(&["cohomology", "--f", "x^2", "--weights", "1,1"]).status.code(), Some(2));
    assert_eq!(run(&["cohomology", "--f", "x^3+y", "--weights", "1,1"]).status.code(), Some(2));
    assert_eq!(run(&["cohomology", "--f", "x^3+y^4", "--weights", "4"]).status.code(), Some(2));
    assert_eq!(run(&["cohomology", "--type", "A3"]).status.code(), Some(2));
    assert_eq!(run(&["cohomology", "--type", "A2p"]).status.code(), Some(2));
    assert_eq!(run(&["cohomology", "--type", "E6", "--lambda", "1"]).status.code(), Some(2));
    assert_eq!(run(&["cohomology", "--type", "A3+", "--jet-order", "7"]).status.code(), Some(2));
    assert_eq!(run(&["cohomology", "--type", "E6", "--f", "x^3+y^4"]).status.code(), Some(2));
    let (code, v) = json(&["cohomology", "--f", "x^2", "--weights", "1,1"]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().contains("finite codimension"));
}

#[test]
fn normalize_chain_example() {
    for (sign, q) in [("A3+", "-3"), ("A3-", "3")] {
        let (code, v) = json(&["normalize", "--type", sign, "--lambda", "1", "-2*y^3"]);
        assert_eq!(code, 0);
        assert_eq!(q_coeffs(&v), [q]);
        let trace = &v["trace"][0];
        assert_eq!(trace["rule"], "chain");
        assert_eq!(trace["chain"].as_array().unwrap().len(), 2);
    }
}

#[test]
fn normalize_basis_element_is_fixed() {
    let (code, v) = json(&["normalize", "--type", "E7", "--lambda", "1", r#"{"dxdy": "y"}"#]);
    assert_eq!(code, 0);
    assert_eq!(lambda_coeffs(&v), ["0", "1", "0", "0", "0", "0", "0"]);
    assert_eq!(q_coeffs(&v), ["0"]);
}

#[test]
fn normalize_coboundary_is_zero() {
    let family = parse_selector("D5", 1).unwrap()[0];
    let p = instantiate(&SingularityType::new(family, Some(rat(1)), None).unwrap()).unwrap();
    let y = VectorField::new(parse_poly("x*y - 2*y^2 + 3").unwrap(), parse_poly("x^2 + 1/2*y").unwrap());
    let b = delta1(&p.pi(), &y).render();
    let (code, v) = json(&["normalize", "--type", "D5", "--lambda", "1", &b]);
    assert_eq!(code, 0);
    assert!(lambda_coeffs(&v).iter().chain(&q_coeffs(&v)).all(|c| c == "0"), "{v}");
}

#[test]
fn normalize_degree_one() {
    let (code, v) = json(&["normalize", "--type", "A3+", "--lambda", "1", r#"{"dx": "4*y^4 + 4*y^3", "dy": "-2*x*y - 2*x"}"#]);
    assert_eq!(code, 0);
    assert_eq!(v["class"]["alpha"], "1");
    let (code, _) = json(&["normalize", "--type", "A3+", "--lambda", "1", r#"{"dx": "x", "dy": "0"}"#]);
    assert_eq!(code, 3);
    let (code, v) = json(&["normalize", "--type", "E6", r#""7""#]);
    assert_eq!(code, 0);
    assert_eq!(v["class"]["one"], "7");
    assert_eq!(run(&["normalize", "--type", "E6", r#""x""#]).status.code(), Some(3));
}

#[test]
fn e7_bracket_table() {
    let (code, out) = text(&["brackets", "--type", "E7", "--lambda", "1"]);
    assert_eq!(code, 0);
    let nonzero: Vec<&str> = out.lines().filter(|l| l.starts_with("[v") && !l.ends_with("= 0")).collect();
    assert_eq!(nonzero, ["[v1, w1] = -9*w4 - 13*w7", "[v1, w2] = -7*w6", "[v1, w4] = -5*w7"]);
}

#[test]
fn e6_brackets_vanish() {
    let (code, v) = json(&["brackets", "--type", "E6"]);
    assert_eq!(code, 0);
    let entries = v["bracket"].as_array().unwrap();
    assert!(!entries.is_empty());
    assert!(entries.iter().all(|e| e["result"].as_object().is_none_or(|m| m.is_empty())), "{v}");
    assert_eq!(v["presentation"]["degree2"].as_array().unwrap().len(), 6);
}

#[test]
fn d4_wedge_table() {
    let (code, out) = text(&["wedge", "--type", "D4+", "--lambda", "0", "--mu", "0"]);
    assert_eq!(code, 0);
    let nonzero: Vec<&str> = out
        .lines()
        .filter(|l| l.contains(" ^ ") && !l.ends_with("= 0") && !l.starts_with("1 ^") && !l.contains("^ 1 ="))
        .collect();
    assert_eq!(nonzero, ["u ^ v1 = 3*t1", "u ^ v2 = 3*t2", "v1 ^ u = -3*t1", "v2 ^ u = -3*t2"]);
}

#[test]
fn verify_and_oracle() {
    assert_eq!(run(&["verify", "--type", "A3+", "--lambda", "1/2"]).status.code(), Some(0));
    let (code, v) = json(&["oracle", "--type", "E6", "--mode", "graded", "--max-degree", "24"]);
    assert_eq!(code, 0);
    assert_eq!(v["oracle"]["totals"], serde_json::json!([1, 1, 6]));
    let (code, v) = json(&["oracle", "--type", "D5", "--lambda", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["oracle"]["mode"], "jet");
    assert_eq!(v["oracle"]["jet"]["stabilized"], true);
}

#[test]
fn verify_a2p_known_discrepancy() {
    let (code, v) = json(&["verify", "--type", "A2p", "--p-max", "2"]);
    assert_eq!(code, 0);
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 2);
    for rep in reports {
        assert_eq!(rep["computed_r"], 0);
        assert_eq!(rep["layers"]["dims"][0]["status"], "known-discrepancy");
        assert_eq!(rep["layers"]["dims"][1]["status"], "pass");
    }
}

#[test]
fn sweep_runs() {
    let (code, v) = json(&["verify", "--sweep", "--p-max", "1", "--skip-oracle-brackets"]);
    assert_eq!(code, 0);
    assert_eq!(v["fail"], 0);
    assert!(v["rows"].as_array().unwrap().len() >= 8);
}

#[test]
fn basis_override() {
    let dir = std::env::temp_dir().join(format!("poisson-hp-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.txt");
    std::fs::write(&good, "1, x, y, x^2").unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"["1", "x", "y", "x*y"]"#).unwrap();
    let args = |path: &std::path::Path| {
        vec!["cohomology".to_string(), "--f".into(), "x^2*y+y^3".into(), "--weights".into(), "1,1".into(),
             "--basis-override".into(), path.display().to_string(), "--json".into()]
    };
    let out = Command::new(env!("CARGO_BIN_EXE_poisson-hp")).args(args(&good)).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["milnor_basis"][3]["monomial"], "x^2");
    let out = Command::new(env!("CARGO_BIN_EXE_poisson-hp")).args(args(&bad)).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["brackets", "--type", "D6+", "--lambda", "1", "--mu", "-1", "--json"],
        vec!["normalize", "--type", "E7", "--lambda", "1/2", "x*y^3 + y^4 - 3*x^2"],
    ] {
        assert_eq!(run(&args).stdout, run(&args).stdout);
    }
}
