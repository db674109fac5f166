use eja_demo::{classical_stein, pinch_spin, renyi_curve};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn pinching_identity_holds() {
    let v = parse(pinch_spin(0.8, 0.0, 0.0, 0.8));
    let d = v["D"].as_f64().unwrap();
    let dp = v["D_pinched"].as_f64().unwrap();
    assert!(dp <= d + 1e-12);
    let p: f64 = v["outcomes"].as_array().unwrap().iter().map(|o| o["p"].as_f64().unwrap()).sum();
    assert!((p - 1.0).abs() < 1e-12);
    // σ has Bloch vector along e₂, so κ_σ(ρ) keeps only that component (zero here).
    let b = v["pinched_bloch"].as_array().unwrap();
    assert!(b[0].as_f64().unwrap().abs() < 1e-12 && b[1].as_f64().unwrap().abs() < 1e-12);
}

#[test]
fn bad_inputs_report_errors() {
    assert!(parse(pinch_spin(1.5, 0.0, 0.0, 0.0))["error"].is_string());
    assert!(parse(renyi_curve(0.1, 0.0, 0.0, 0.0, -1.0, 10))["error"].is_string());
    assert!(parse(classical_stein(0.7, 0.5, 0.05, 0))["error"].is_string());
}

#[test]
fn renyi_curve_is_ordered() {
    let v = parse(renyi_curve(0.6, 0.2, -0.3, 0.4, 2.0, 20));
    let d = v["D"].as_f64().unwrap();
    let petz: Vec<f64> = v["petz"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    let sand: Vec<f64> = v["sandwiched"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    assert!(sand.windows(2).all(|w| w[0] <= w[1] + 1e-12));
    assert!(sand.iter().zip(&petz).all(|(s, p)| s <= &(p + 1e-12)));
    assert!(d <= sand[0] + 1e-12);
}

#[test]
fn stein_curve_matches_library() {
    let v = parse(classical_stein(0.75, 0.5, 0.05, 200));
    let e = v["exponent"].as_array().unwrap();
    assert_eq!(e.len(), 200);
    assert!((e[199].as_f64().unwrap() - 0.0943720).abs() < 1e-6);
    assert!((v["D"].as_f64().unwrap() - 0.130812035941137).abs() < 1e-12);
}
