use eja::hypothesis::{classical_np, classical_np_iid, NpMethod};
use eja::DEFAULT_BUDGET;
use proptest::prelude::*;

/// Randomized NP optimum from the LP dual:
/// β = max_{λ≥0} λ(1−ε) − Σ_i max(0, λ p_i − q_i), attained at a breakpoint.
fn lp_dual_beta(p: &[f64], q: &[f64], eps: f64) -> f64 {
    let mut cands = vec![0.0];
    for i in 0..p.len() {
        if p[i] > 0.0 {
            cands.push(q[i] / p[i]);
        }
    }
    cands
        .iter()
        .map(|&l| l * (1.0 - eps) - p.iter().zip(q).map(|(a, b)| (l * a - b).max(0.0)).sum::<f64>())
        .fold(f64::NEG_INFINITY, f64::max)
}

/// min q(S) over all subsets with p(S) ≥ 1−ε.
fn best_subset(p: &[f64], q: &[f64], eps: f64) -> f64 {
    let k = p.len();
    let mut best = f64::INFINITY;
    for mask in 0u32..(1 << k) {
        let (mut ps, mut qs) = (0.0, 0.0);
        for i in 0..k {
            if mask >> i & 1 == 1 {
                ps += p[i];
                qs += q[i];
            }
        }
        if ps >= 1.0 - eps - 1e-12 {
            best = best.min(qs);
        }
    }
    best
}

fn normalized(v: Vec<f64>) -> Vec<f64> {
    let s: f64 = v.iter().sum();
    v.into_iter().map(|x| x / s).collect()
}

fn log_binom(n: u64, k: u64) -> f64 {
    (1..=k).map(|i| ((n - k + i) as f64 / i as f64).ln()).sum()
}

/// Two-letter i.i.d. problem solved over the binomial classes directly.
fn binomial_beta(p0: f64, q0: f64, n: u64, eps: f64) -> f64 {
    // p0 > q0, so the likelihood ratio increases with the count of symbol 0.
    let need = 1.0 - eps;
    let (mut pm, mut qm) = (0.0, 0.0);
    for k in (0..=n).rev() {
        let lb = log_binom(n, k);
        let pk = (lb + k as f64 * p0.ln() + (n - k) as f64 * (1.0 - p0).ln()).exp();
        let qk = (lb + k as f64 * q0.ln() + (n - k) as f64 * (1.0 - q0).ln()).exp();
        if pm + pk >= need {
            return qm + qk * (need - pm) / pk;
        }
        pm += pk;
        qm += qk;
    }
    qm
}

#[test]
fn frozen_small_examples() {
    let r = classical_np(&[0.75, 0.25], &[0.5, 0.5], 0.25).unwrap();
    assert_eq!((r.beta_randomized, r.beta_deterministic), (0.5, 0.5));
    assert_eq!(best_subset(&[0.75, 0.25], &[0.5, 0.5], 0.25), 0.5);
    let r = classical_np(&[1.0, 0.0], &[0.0, 1.0], 0.1).unwrap();
    assert_eq!(r.beta_randomized, 0.0);
}

#[test]
fn iid_n10_frozen() {
    // Oracle values from the binomial class computation, frozen.
    let p = [0.75, 0.25];
    let q = [0.5, 0.5];
    let oracle = binomial_beta(0.75, 0.5, 10, 0.05);
    assert!((oracle - 0.495479681069959).abs() < 1e-12);
    let r = classical_np_iid(&p, &q, 10, 0.05, NpMethod::Auto, DEFAULT_BUDGET).unwrap();
    assert!((r.beta_randomized - 0.495479681069959).abs() < 1e-12);
    // Outcome-level prefix: the boundary class is entered partially.
    assert!((r.beta_deterministic - 127.0 / 256.0).abs() < 1e-12);
    let t = classical_np_iid(&p, &q, 10, 0.05, NpMethod::TypeClasses, DEFAULT_BUDGET).unwrap();
    assert!((t.beta_deterministic - r.beta_deterministic).abs() < 1e-12);
}

#[test]
fn iid_n200_matches_binomial_oracle() {
    let oracle = binomial_beta(0.75, 0.5, 200, 0.05);
    let r = classical_np_iid(&[0.75, 0.25], &[0.5, 0.5], 200, 0.05, NpMethod::TypeClasses, DEFAULT_BUDGET).unwrap();
    assert!((r.beta_randomized / oracle - 1.0).abs() < 1e-9);
    let expo = -r.log_beta_randomized / 200.0;
    assert!((expo - 0.0943720).abs() < 1e-6, "{expo}");
}

#[test]
fn budget_is_enforced() {
    let e = classical_np_iid(&[0.5, 0.5], &[0.5, 0.5], 30, 0.1, NpMethod::Enumerate, 1000).unwrap_err();
    assert!(matches!(e, eja::EjaError::Budget { .. }));
}

proptest! {
    #[test]
    fn randomized_matches_lp_dual(
        raw in prop::collection::vec((0.0f64..1.0, 0.0f64..1.0), 1..7),
        eps in 0.01f64..0.99,
    ) {
        let p = normalized(raw.iter().map(|t| t.0 + 1e-3).collect());
        let q = normalized(raw.iter().map(|t| t.1 + 1e-3).collect());
        let r = classical_np(&p, &q, eps).unwrap();
        prop_assert!((r.beta_randomized - lp_dual_beta(&p, &q, eps)).abs() < 1e-12);
        prop_assert!(r.beta_randomized <= r.beta_deterministic + 1e-15);
        prop_assert!(r.beta_deterministic <= 1.0);
        prop_assert!(best_subset(&p, &q, eps) <= r.beta_deterministic + 1e-12);
        prop_assert!(r.type1_randomized <= eps + 1e-12);
        prop_assert!(r.type1_deterministic <= eps + 1e-12);
    }

    #[test]
    fn type_classes_match_enumeration(
        raw in prop::collection::vec((0.05f64..1.0, 0.05f64..1.0), 2..4),
        n in 1usize..7,
        eps in 0.02f64..0.5,
    ) {
        let p = normalized(raw.iter().map(|t| t.0).collect());
        let q = normalized(raw.iter().map(|t| t.1).collect());
        let a = classical_np_iid(&p, &q, n, eps, NpMethod::Enumerate, DEFAULT_BUDGET).unwrap();
        let b = classical_np_iid(&p, &q, n, eps, NpMethod::TypeClasses, DEFAULT_BUDGET).unwrap();
        prop_assert!((a.beta_randomized - b.beta_randomized).abs() < 1e-12);
        prop_assert!((a.beta_deterministic - b.beta_deterministic).abs() < 1e-12);
    }
}
