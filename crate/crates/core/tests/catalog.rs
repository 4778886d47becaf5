use planar_poisson::arnold::{
    catalog_entries, catalog_sweep, fixture, instantiate, parse_selector, verify, Family, Sign, SingularityType,
    Status, VerificationReport, VerifyOptions,
};
use planar_poisson::cohomology::hp_dimensions;
use planar_poisson::polyring::{frac, rat, Rational};
use planar_poisson::Error;

fn entry(name: &str, lambda: Option<Rational>, mu: Option<Rational>) -> SingularityType {
    let family = parse_selector(name, 4).unwrap()[0];
    SingularityType::new(family, lambda, mu).unwrap()
}

fn statuses(rep: &VerificationReport) -> Vec<Status> {
    rep.layers
        .dims
        .iter()
        .chain(&rep.layers.raw_brackets)
        .chain(&rep.layers.presentation)
        .map(|e| e.status)
        .collect()
}

#[test]
fn selectors() {
    assert_eq!(parse_selector("A4", 4).unwrap(), vec![Family::AEven { p: 2 }]);
    assert_eq!(parse_selector("A3-", 4).unwrap(), vec![Family::AOdd { p: 2, sign: Sign::Minus }]);
    assert_eq!(parse_selector("D4+", 4).unwrap(), vec![Family::DEven { p: 2, sign: Sign::Plus }]);
    assert_eq!(parse_selector("D7", 4).unwrap(), vec![Family::DOdd { p: 3 }]);
    assert_eq!(parse_selector("A2p", 3).unwrap().len(), 3);
    assert_eq!(parse_selector("D2p-", 4).unwrap().len(), 3);
    assert_eq!(parse_selector("D2p+1", 4).unwrap().len(), 3);
    for bad in ["A3", "D6", "A2p-1", "D2p", "D3", "F4", "A4+", "", "E9"] {
        assert!(matches!(parse_selector(bad, 4), Err(Error::Catalog(_))), "{bad}");
    }
}

#[test]
fn parameter_arity() {
    let e6 = parse_selector("E6", 1).unwrap()[0];
    assert!(SingularityType::new(e6, Some(rat(1)), None).is_err());
    let d5 = parse_selector("D5", 1).unwrap()[0];
    assert!(SingularityType::new(d5, None, Some(rat(1))).is_err());
    let a1 = parse_selector("A1+", 1).unwrap()[0];
    assert!(SingularityType::new(a1, Some(rat(1)), None).is_err());
    let d4 = SingularityType::new(parse_selector("D4-", 1).unwrap()[0], None, Some(frac(1, 2))).unwrap();
    assert_eq!(d4.lambda, rat(0));
    assert_eq!(d4.mu, frac(1, 2));
}

#[test]
fn catalog_grid_size() {
    let entries = catalog_entries(4);
    assert_eq!(entries.len(), 144);
    assert!(entries.iter().all(|t| instantiate(t).is_ok()));
}

#[test]
fn e7_all_layers_pass() {
    for l in [rat(0), rat(1), frac(1, 2)] {
        let rep = verify(&entry("E7", Some(l), None), &VerifyOptions::default()).unwrap();
        assert!(statuses(&rep).iter().all(|s| *s == Status::Pass), "{}", rep.render());
        assert!(rep.discrepancy_notes.is_empty());
    }
}

#[test]
fn a3_at_lambda_zero_matches_reference() {
    for sign in ["A3+", "A3-"] {
        let rep = verify(&entry(sign, None, None), &VerifyOptions::default()).unwrap();
        assert!(statuses(&rep).iter().all(|s| *s == Status::Pass), "{}", rep.render());
    }
}

#[test]
fn a3_with_lambda_is_a_known_discrepancy() {
    let rep = verify(&entry("A3+", Some(rat(1)), None), &VerifyOptions::default()).unwrap();
    assert!(rep.passed());
    let raw = VerificationReport::layer_status(&rep.layers.raw_brackets);
    assert_eq!(raw, Status::KnownDiscrepancy);
    let v1w3 = rep.layers.raw_brackets.iter().find(|e| e.item == "[v1, w3]").unwrap();
    assert_eq!(v1w3.computed, "0");
    assert_eq!(v1w3.expected, "6*t1");
}

#[test]
fn a2p_reports_r_zero() {
    for name in ["A2", "A4"] {
        let rep = verify(&entry(name, None, None), &VerifyOptions::default()).unwrap();
        assert_eq!(rep.computed_r, 0);
        assert_eq!(rep.layers.dims[0].status, Status::KnownDiscrepancy);
        assert_eq!(rep.layers.dims[1].status, Status::Pass, "oracle agrees");
        assert!(rep.passed());
    }
}

#[test]
fn d4_grid_has_no_failures() {
    for name in ["D4+", "D4-"] {
        for (l, m) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            let rep = verify(&entry(name, Some(rat(l)), Some(rat(m))), &VerifyOptions::default()).unwrap();
            assert!(rep.passed(), "{}", rep.render());
        }
    }
}

#[test]
fn e6_e8_tables_vanish() {
    for (name, c) in [("E6", 6), ("E8", 8)] {
        let t = entry(name, None, None);
        let rep = verify(&t, &VerifyOptions::default()).unwrap();
        assert!(statuses(&rep).iter().all(|s| *s == Status::Pass));
        assert_eq!(rep.computed_c, c);
        assert_eq!(hp_dimensions(&instantiate(&t).unwrap()), [1, 1, c, 0]);
    }
}

#[test]
fn fixture_reference_rows() {
    let t = entry("E6", None, None);
    let fx = fixture(&t, 12);
    assert!(fx.reference_presentation().starts_with("K[u]/(u^2) x_K K[w1]/(w1^2)"));
    let t = entry("D4+", Some(rat(1)), Some(rat(0)));
    let fx = fixture(&t, 3);
    assert!(fx.reference_presentation().starts_with("K<u', v1, v2>/"));
    assert_eq!(fx.reference_rc, (2, 4));
}

#[test]
fn report_json_layers() {
    let rep = verify(&entry("D5", Some(rat(1)), None), &VerifyOptions::default()).unwrap();
    let json = rep.to_json();
    for layer in ["dims", "raw_brackets", "presentation"] {
        let entries = json["layers"][layer].as_array().unwrap();
        assert!(!entries.is_empty());
        for e in entries {
            assert!(e["expected"].is_string() && e["computed"].is_string());
            let status = e["status"].as_str().unwrap();
            assert!(["pass", "fail", "known-discrepancy"].contains(&status));
        }
    }
}

#[test]
fn small_sweep_has_no_failures() {
    let summary = catalog_sweep(2, &VerifyOptions { jet_order: None, oracle_brackets: false }).unwrap();
    assert!(summary.passed(), "{}", summary.render());
    assert_eq!(summary.rows.len(), catalog_entries(2).len());
}
