use std::f64::consts::LN_2;

use eja::algebra::AlgebraKind;
use eja::embed;
use eja::entropy::{self, ExtReal, State};
use eja::hypothesis::{self, CompositeMode, PinchOptions, SteinOptions, SteinRecord};
use eja::spectral::{self, check_axioms};
use eja::DEFAULT_TOL;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::ExperimentConfig;
use crate::error::CliError;
use crate::output::{key_value_csv, Metadata, Report};

pub const DEFAULT_S_GRID: [f64; 4] = [0.25, 0.5, 1.0, 2.0];

/// A finished command: report, metadata and the invariant verdict.
pub struct Run {
    pub report: Report,
    pub meta: Metadata,
    pub failure: Option<String>,
}

fn unit_scale(cfg: &ExperimentConfig) -> f64 {
    if cfg.bits() {
        1.0 / LN_2
    } else {
        1.0
    }
}

pub fn axioms(cfg: &ExperimentConfig) -> Result<Run, CliError> {
    let alg = cfg.algebra()?;
    let trials = cfg.axioms.trials.unwrap_or(100);
    let tol = cfg.tol.unwrap_or(1e-9);
    let rep = check_axioms(&alg, trials, DEFAULT_TOL, cfg.seed());
    let composite = matches!(alg.kind, AlgebraKind::Tensor(_));
    let pass = rep.passes(tol);
    let mut v = serde_json::to_value(&rep).expect("report serializes");
    v["tolerance"] = json!(tol);
    v["composite"] = json!(composite);
    v["pass"] = json!(pass);
    // Composites are probed and reported, never failed.
    let failure = (!composite && !pass).then(|| format!("axiom residuals of {alg} exceed {tol:e}"));
    Ok(Run {
        report: Report { csv: key_value_csv(&v), json: v },
        meta: Metadata::new("axioms", cfg, json!({ "tol": tol, "spectral": DEFAULT_TOL })),
        failure,
    })
}

#[derive(Serialize)]
struct EntropyRow {
    pair: String,
    quantity: &'static str,
    s: Option<f64>,
    value: ExtReal,
}

pub fn entropy(cfg: &ExperimentConfig) -> Result<Run, CliError> {
    let alg = cfg.algebra()?;
    let pairs = cfg
        .entropy
        .pairs
        .clone()
        .unwrap_or_else(|| vec![("rho".into(), "sigma".into())]);
    let grid = cfg.entropy.s_grid.clone().unwrap_or(DEFAULT_S_GRID.to_vec());
    let k = unit_scale(cfg);
    let tol = cfg.tol.unwrap_or(1e-9);
    let mut rows = Vec::new();
    let mut failure = None;
    for (a, b) in &pairs {
        let rho = cfg.state(&alg, a)?;
        let sigma = cfg.state(&alg, b)?;
        let pair = format!("{a}|{b}");
        let mut push = |quantity, s, value: ExtReal| {
            rows.push(EntropyRow {
                pair: pair.clone(),
                quantity,
                s,
                value: value.scale(k),
            })
        };
        push("H_rho", None, ExtReal::Finite(entropy::vn_entropy(&rho)?));
        push("H_sigma", None, ExtReal::Finite(entropy::vn_entropy(&sigma)?));
        push("D", None, entropy::relative_entropy(&rho, &sigma)?);
        push("D_pinched", None, entropy::pinched_relative_entropy(&rho, &sigma)?);
        let mut prev = f64::NEG_INFINITY;
        let mut sorted = grid.clone();
        sorted.sort_by(f64::total_cmp);
        for &s in &sorted {
            push("PRR", Some(s), entropy::prr(&rho, &sigma, s)?);
            let v = entropy::srr(&rho, &sigma, s)?;
            if v.to_f64() < prev - tol {
                failure = Some(format!("sandwiched Rényi for {pair} decreases at s={s}"));
            }
            prev = v.to_f64();
            push("SRR", Some(s), v);
        }
    }
    let mut csv = String::from("pair,quantity,s,value\n");
    for r in &rows {
        let s = r.s.map(|v| v.to_string()).unwrap_or_default();
        let v = match r.value {
            ExtReal::Finite(x) => x.to_string(),
            ExtReal::PosInf => "+inf".into(),
            ExtReal::NegInf => "-inf".into(),
        };
        csv.push_str(&format!("{},{},{s},{v}\n", r.pair, r.quantity));
    }
    Ok(Run {
        report: Report {
            json: json!({ "algebra": alg.to_string(), "records": rows }),
            csv,
        },
        meta: Metadata::new("entropy", cfg, json!({ "tol": tol, "spectral": DEFAULT_TOL })),
        failure,
    })
}

fn composite_mode(s: Option<&str>) -> Result<CompositeMode, CliError> {
    match s.unwrap_or("auto") {
        "auto" => Ok(CompositeMode::Auto),
        "literal" => Ok(CompositeMode::Literal),
        "quantum" => Ok(CompositeMode::Quantum),
        other => Err(CliError::Parse(format!("unknown composite mode `{other}`"))),
    }
}

pub fn stein(cfg: &ExperimentConfig) -> Result<Run, CliError> {
    let alg = cfg.algebra()?;
    let st = &cfg.stein;
    let rho = cfg.state(&alg, st.rho.as_deref().unwrap_or("rho"))?;
    let sigma = cfg.state(&alg, st.sigma.as_deref().unwrap_or("sigma"))?;
    let eps = st.epsilon.unwrap_or(0.05);
    if !(eps > 0.0 && eps < 1.0) {
        return Err(CliError::Parse(format!("epsilon {eps} outside (0,1)")));
    }
    let ns = st.n.clone().unwrap_or_else(|| (1..=6).collect());
    if ns.is_empty() || ns.contains(&0) {
        return Err(CliError::Parse("n list must be nonempty and positive".into()));
    }
    let tol = cfg.tol.unwrap_or(1e-7);
    let opts = SteinOptions {
        pinch: PinchOptions {
            mode: composite_mode(st.mode.as_deref())?,
            budget: cfg.budget(),
            keep_measurement: false,
        },
        t_grid: st.t_grid.clone().unwrap_or_else(hypothesis::default_converse_grid),
        tol,
    };
    let scan = hypothesis::stein_scan(&rho, &sigma, eps, &ns, &opts)?;
    for w in &scan.warnings {
        eprintln!("warning: {w}");
    }
    let k = unit_scale(cfg);
    let scaled: Vec<SteinRecord> = scan
        .records
        .iter()
        .map(|r| SteinRecord {
            n: r.n,
            pinched_rate: r.pinched_rate * k,
            achievable_exponent: r.achievable_exponent * k,
            converse_bound: r.converse_bound * k,
            target: r.target * k,
            gap_bound: r.gap_bound * k,
        })
        .collect();
    let failure = (!scan.violations.is_empty()).then(|| scan.violations.join("; "));
    Ok(Run {
        report: Report {
            csv: hypothesis::stein_csv(&scaled, 1.0),
            json: json!({
                "algebra": alg.to_string(),
                "epsilon": eps,
                "records": scaled,
                "deterministic_betas": scan.deterministic_betas,
                "eigen_counts": scan.eigen_counts,
                "violations": scan.violations,
                "warnings": scan.warnings,
            }),
        },
        meta: Metadata::new("stein", cfg, json!({ "tol": tol, "spectral": DEFAULT_TOL })),
        failure,
    })
}

pub fn embed_check(cfg: &ExperimentConfig) -> Result<Run, CliError> {
    let alg = cfg.algebra()?;
    let emb = embed::canonical_embedding(&alg)?;
    let trials = cfg.embed.trials.unwrap_or(50);
    let grid = cfg.embed.s_grid.clone().unwrap_or(DEFAULT_S_GRID.to_vec());
    let tol = cfg.tol.unwrap_or(1e-8);
    let rep = embed::verify_embedding(&emb, trials, &grid, cfg.seed())?;
    if let Some(path) = &cfg.embed.export_images {
        let mut s = serde_json::to_string_pretty(&emb.export_json()).expect("images serialize");
        s.push('\n');
        std::fs::write(path, s).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
    }
    let pass = rep.d_preservation_max_err <= tol && rep.srr_preservation_max_err <= tol;
    let mut v = serde_json::to_value(&rep).expect("report serializes");
    v["tolerance"] = json!(tol);
    v["pass"] = json!(pass);
    let failure = (!pass).then(|| format!("entropy preservation error above {tol:e}"));
    let flat = flat_scalars(&v);
    Ok(Run {
        report: Report { csv: key_value_csv(&flat), json: v },
        meta: Metadata::new("embed-check", cfg, json!({ "tol": tol, "beta": 1e-6 })),
        failure,
    })
}

fn flat_scalars(v: &Value) -> Value {
    match v {
        Value::Object(m) => Value::Object(m.iter().filter(|(_, x)| !x.is_array()).map(|(k, x)| (k.clone(), x.clone())).collect()),
        other => other.clone(),
    }
}

pub fn pinch_demo(cfg: &ExperimentConfig) -> Result<Run, CliError> {
    let alg = cfg.algebra()?;
    let rho = cfg.state(&alg, cfg.pinch.rho.as_deref().unwrap_or("rho"))?;
    let sigma = cfg.state(&alg, cfg.pinch.sigma.as_deref().unwrap_or("sigma"))?;
    let tol = cfg.tol.unwrap_or(1e-8);
    let k = unit_scale(cfg);
    let data = entropy::pinched_data(&rho, &sigma)?;
    let kappa = spectral::spectral(data.pinched.element(), DEFAULT_TOL)?;
    let p = entropy::measure(&data.measurement, &rho, 1e-8)?;
    let q = entropy::measure(&data.measurement, &sigma, 1e-8)?;
    let d_pinched = entropy::relative_entropy(&data.pinched, &sigma)?;
    let d_measured = entropy::classical_relative(&p, &q)?;
    let residual = match (d_pinched, d_measured) {
        (ExtReal::Finite(a), ExtReal::Finite(b)) => (a - b).abs(),
        (a, b) if a == b => 0.0,
        _ => f64::INFINITY,
    };
    let d = entropy::relative_entropy(&rho, &sigma)?;
    let d_rho_kappa = entropy::relative_entropy(&rho, &State::new_unchecked(data.pinched.element().clone()))?;
    let outcomes: Vec<Value> = (0..data.measurement.len())
        .map(|i| {
            json!({
                "label": data.measurement.labels[i],
                "lambda": data.lambda[i],
                "mu": data.mu[i],
                "p": p.probs[i],
                "q": q.probs[i],
            })
        })
        .collect();
    let mut csv = String::from("label,lambda,mu,p,q\n");
    for i in 0..data.measurement.len() {
        csv.push_str(&format!(
            "\"{}\",{},{},{},{}\n",
            data.measurement.labels[i], data.lambda[i], data.mu[i], p.probs[i], q.probs[i]
        ));
    }
    let failure = (residual > tol).then(|| format!("pinched representation residual {residual:e} above {tol:e}"));
    Ok(Run {
        report: Report {
            json: json!({
                "algebra": alg.to_string(),
                "sigma_classes": data.sigma_classes,
                "pinched_state": data.pinched.element().coeffs(),
                "pinched_eigenvalues": kappa.eigenvalues,
                "pinched_multiplicities": kappa.multiplicities,
                "outcomes": outcomes,
                "D": d.scale(k),
                "D_rho_pinched": d_rho_kappa.scale(k),
                "D_pinched_sigma": d_pinched.scale(k),
                "D_measured": d_measured.scale(k),
                "representation_residual": residual * k,
            }),
            csv,
        },
        meta: Metadata::new("pinch-demo", cfg, json!({ "tol": tol, "spectral": DEFAULT_TOL })),
        failure,
    })
}
