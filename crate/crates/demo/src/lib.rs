//! Browser bindings for the `eja` crate. Every export returns a JSON string:
//! the payload on success, `{"error": "..."}` otherwise.

use eja::algebra::AlgebraDescriptor;
use eja::entropy::{self, State};
use eja::hypothesis::{self, NpMethod};
use eja::{spectral, Element, DEFAULT_BUDGET, DEFAULT_TOL};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn respond(r: Result<Value, String>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

/// Qubit-like Spin(2) state ½(e₀ + a e₁ + b e₂), |(a, b)| ≤ 1.
fn bloch(a: f64, b: f64) -> Result<State, String> {
    let alg = AlgebraDescriptor::spin(2).map_err(|e| e.to_string())?;
    let x = Element::new(&alg, vec![0.5, 0.5 * a, 0.5 * b]).map_err(|e| e.to_string())?;
    State::new(x, 1e-9).map_err(|_| format!("Bloch vector ({a}, {b}) lies outside the unit disc"))
}

fn nats(v: entropy::ExtReal) -> Value {
    match v.finite() {
        Some(x) => json!(x),
        None => json!(if v.is_pos_inf() { "+inf" } else { "-inf" }),
    }
}

pub fn pinch_spin_value(ra: f64, rb: f64, sa: f64, sb: f64) -> Result<Value, String> {
    let rho = bloch(ra, rb)?;
    let sigma = bloch(sa, sb)?;
    let err = |e: eja::EjaError| e.to_string();
    let rs = spectral(rho.element(), DEFAULT_TOL).map_err(err)?;
    let ss = spectral(sigma.element(), DEFAULT_TOL).map_err(err)?;
    let data = entropy::pinched_data(&rho, &sigma).map_err(err)?;
    let k = data.pinched.element().coeffs();
    let outcomes: Vec<Value> = (0..data.measurement.len())
        .map(|i| {
            let c = data.measurement.effects[i].coeffs();
            json!({
                "label": data.measurement.labels[i],
                "direction": [c[1] / c[0].max(1e-300), c[2] / c[0].max(1e-300)],
                "p": data.p_raw[i],
                "q": data.q_raw[i],
            })
        })
        .collect();
    Ok(json!({
        "rho_eigenvalues": rs.eigenvalues,
        "sigma_eigenvalues": ss.eigenvalues,
        "pinched_bloch": [2.0 * k[1], 2.0 * k[2]],
        "outcomes": outcomes,
        "D": nats(entropy::relative_entropy(&rho, &sigma).map_err(err)?),
        "D_pinched": nats(entropy::pinched_relative_entropy(&rho, &sigma).map_err(err)?),
    }))
}

/// Spectra of ρ and σ, the pinched state κ_σ(ρ) and the pinched
/// measurement, for Spin(2) states given by Bloch coordinates.
#[wasm_bindgen]
pub fn pinch_spin(ra: f64, rb: f64, sa: f64, sb: f64) -> String {
    respond(pinch_spin_value(ra, rb, sa, sb))
}

pub fn renyi_curve_value(ra: f64, rb: f64, sa: f64, sb: f64, s_max: f64, points: usize) -> Result<Value, String> {
    let rho = bloch(ra, rb)?;
    let sigma = bloch(sa, sb)?;
    if !(s_max > 0.0) || points < 2 || points > 2000 {
        return Err("need s_max > 0 and 2..=2000 points".into());
    }
    let err = |e: eja::EjaError| e.to_string();
    let mut s = Vec::with_capacity(points);
    let mut petz = Vec::with_capacity(points);
    let mut sand = Vec::with_capacity(points);
    for i in 0..points {
        let v = s_max * (i as f64 + 1.0) / points as f64;
        s.push(v);
        petz.push(nats(entropy::prr(&rho, &sigma, v).map_err(err)?));
        sand.push(nats(entropy::srr(&rho, &sigma, v).map_err(err)?));
    }
    Ok(json!({
        "s": s,
        "petz": petz,
        "sandwiched": sand,
        "D": nats(entropy::relative_entropy(&rho, &sigma).map_err(err)?),
    }))
}

/// Petz and sandwiched Rényi divergences of order 1 + s on (0, s_max].
#[wasm_bindgen]
pub fn renyi_curve(ra: f64, rb: f64, sa: f64, sb: f64, s_max: f64, points: usize) -> String {
    respond(renyi_curve_value(ra, rb, sa, sb, s_max, points))
}

pub fn classical_stein_value(p0: f64, q0: f64, eps: f64, n_max: usize) -> Result<Value, String> {
    if !(0.0..=1.0).contains(&p0) || !(0.0..=1.0).contains(&q0) {
        return Err("probabilities must lie in [0, 1]".into());
    }
    if n_max == 0 || n_max > 2000 {
        return Err("n_max must be in 1..=2000".into());
    }
    let p = [p0, 1.0 - p0];
    let q = [q0, 1.0 - q0];
    let d = entropy::classical_relative(&entropy::Distribution::new(p.to_vec()), &entropy::Distribution::new(q.to_vec()))
        .map_err(|e| e.to_string())?;
    let mut ns = Vec::new();
    let mut exps = Vec::new();
    for n in 1..=n_max {
        let r = hypothesis::classical_np_iid(&p, &q, n, eps, NpMethod::TypeClasses, DEFAULT_BUDGET)
            .map_err(|e| e.to_string())?;
        ns.push(n);
        exps.push(-r.log_beta_randomized / n as f64);
    }
    Ok(json!({ "n": ns, "exponent": exps, "D": nats(d) }))
}

/// Exact −(1/n) log β for Bernoulli(p0) against Bernoulli(q0), n = 1..n_max.
#[wasm_bindgen]
pub fn classical_stein(p0: f64, q0: f64, eps: f64, n_max: usize) -> String {
    respond(classical_stein_value(p0, q0, eps, n_max))
}
