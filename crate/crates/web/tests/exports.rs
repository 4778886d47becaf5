use serde_json::Value;

use poisson_web::{bracket_table, cohomology, normalize};

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn cohomology_of_e7() {
    let v = parse(cohomology("x^3+x*y^3", "y^2", "3,2"));
    assert_eq!(v["dims"], serde_json::json!([1, 2, 8, 0]));
    assert_eq!(v["p_space"], serde_json::json!(["y^2"]));
}

#[test]
fn errors_are_reported_as_json() {
    assert!(parse(cohomology("x^2", "", "1,1"))["error"].as_str().unwrap().contains("codimension"));
    assert!(parse(cohomology("x^3+y^4", "", "4"))["error"].is_string());
    assert!(parse(bracket_table("A2p", "", ""))["error"].is_string());
    assert!(parse(bracket_table("E6", "1", ""))["error"].is_string());
    assert!(parse(normalize("E6", "", "", "x^"))["error"].is_string());
}

#[test]
fn e7_bracket_block() {
    let v = parse(bracket_table("E7", "1", ""));
    let row = &v["rows"][0]["brackets"];
    assert_eq!(row[0], "-9*w4 - 13*w7");
    assert_eq!(row[1], "-7*w6");
    assert_eq!(row[3], "-5*w7");
    assert_eq!(v["wedge_u_v"], "u^v_j = 9 t_j");
}

#[test]
fn d4_parameters_change_the_table() {
    let flat = parse(bracket_table("D4-", "", ""));
    let bent = parse(bracket_table("D4-", "1", "1/2"));
    assert_eq!(flat["rows"].as_array().unwrap().len(), 2);
    assert_ne!(flat["rows"], bent["rows"]);
    assert_eq!(flat["presentation"], bent["presentation"]);
}

#[test]
fn normalize_chain() {
    let v = parse(normalize("A3+", "1", "", "-2*y^3"));
    assert_eq!(v["class"]["q"][0]["coeff"], "-3");
    assert_eq!(v["trace"][0]["rule"], "chain");
}
