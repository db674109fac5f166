//! Neyman–Pearson tests, the pinched-measurement pipeline, sandwiched
//! Rényi converse bounds and finite-n Stein scans.
//!
//! Composites of non-classical algebras are realized as Kronecker powers of
//! the canonical matrix embedding (see [`CompositeMode`]); the literal
//! bilinear composite is available behind the J2 probe.

use serde::Serialize;

use crate::algebra::{Algebra, AlgebraDescriptor};
use crate::element::{Element, DEFAULT_BUDGET};
use crate::embed;
use crate::entropy::{self, Distribution, ExtReal, Measurement, State};
use crate::error::{EjaError, Result};
use crate::qmat;
use crate::spectral::{self, check_axioms, DEFAULT_TOL};

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct NpResult {
    pub beta_randomized: f64,
    pub beta_deterministic: f64,
    /// log of the randomized β, exact even when β underflows.
    pub log_beta_randomized: f64,
    /// Likelihood ratio p/q at the boundary atom.
    pub threshold: f64,
    pub epsilon: f64,
    pub type1_randomized: f64,
    pub type1_deterministic: f64,
}

/// A group of `count` equiprobable outcomes sharing one likelihood ratio.
#[derive(Clone, Debug)]
struct Atom {
    /// Per-outcome log masses.
    log_p: f64,
    log_q: f64,
    count: f64,
    log_count: f64,
}

impl Atom {
    fn single(p: f64, q: f64) -> Self {
        Atom {
            log_p: p.ln(),
            log_q: q.ln(),
            count: 1.0,
            log_count: 0.0,
        }
    }

    fn mass_p(&self) -> f64 {
        (self.log_count + self.log_p).exp()
    }

    fn log_mass_q(&self) -> f64 {
        self.log_count + self.log_q
    }

    fn log_ratio(&self) -> f64 {
        if self.log_q == f64::NEG_INFINITY {
            f64::INFINITY
        } else {
            self.log_p - self.log_q
        }
    }
}

fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let m = a.max(b);
    m + ((a - m).exp() + (b - m).exp()).ln()
}

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(EjaError::InvalidArgument(format!("epsilon {eps} outside (0,1)")));
    }
    Ok(())
}

/// Atoms must already be sorted by decreasing likelihood ratio.
fn np_sorted(atoms: &[Atom], eps: f64) -> NpResult {
    let target = 1.0 - eps;
    let slack = 1e-12;

    // Randomized: fill p-mass to exactly 1−ε.
    let mut cum_p = 0.0;
    let mut log_beta = f64::NEG_INFINITY;
    let mut threshold = f64::INFINITY;
    for a in atoms {
        if cum_p >= target {
            break;
        }
        let mp = a.mass_p();
        threshold = a.log_ratio().exp();
        if cum_p + mp <= target {
            cum_p += mp;
            log_beta = log_add(log_beta, a.log_mass_q());
        } else {
            let f = (target - cum_p) / mp;
            cum_p = target;
            log_beta = log_add(log_beta, f.ln() + a.log_mass_q());
        }
    }
    let type1_r = 1.0 - cum_p;

    // Deterministic: smallest prefix of outcomes with p-mass ≥ 1−ε; the
    // boundary group may be entered partially.
    let mut cum_p = 0.0;
    let mut log_beta_det = f64::NEG_INFINITY;
    for a in atoms {
        if cum_p >= target - slack {
            break;
        }
        let mp = a.mass_p();
        if cum_p + mp >= target - slack || a.count <= 1.0 {
            if cum_p + mp >= target - slack && a.count > 1.0 {
                let per = a.log_p.exp();
                let need = (((target - slack - cum_p) / per).ceil()).clamp(1.0, a.count);
                cum_p += need * per;
                log_beta_det = log_add(log_beta_det, need.ln() + a.log_q);
            } else {
                cum_p += mp;
                log_beta_det = log_add(log_beta_det, a.log_mass_q());
            }
        } else {
            cum_p += mp;
            log_beta_det = log_add(log_beta_det, a.log_mass_q());
        }
    }
    NpResult {
        beta_randomized: log_beta.exp(),
        beta_deterministic: log_beta_det.exp().min(1.0),
        log_beta_randomized: log_beta,
        threshold,
        epsilon: eps,
        type1_randomized: type1_r.max(0.0),
        type1_deterministic: (1.0 - cum_p).max(0.0),
    }
}

/// Exact Neyman–Pearson optimum for a single pair of distributions.
/// Outcomes are ordered by p/q descending (q = 0 first), ties by index.
pub fn classical_np(p: &[f64], q: &[f64], eps: f64) -> Result<NpResult> {
    check_eps(eps)?;
    if p.len() != q.len() {
        return Err(EjaError::InvalidArgument(format!(
            "distributions of lengths {} and {}",
            p.len(),
            q.len()
        )));
    }
    let mut idx: Vec<usize> = (0..p.len()).filter(|&i| p[i] > 0.0 || q[i] > 0.0).collect();
    let ratio = |i: usize| if q[i] <= 0.0 { f64::INFINITY } else { p[i] / q[i] };
    idx.sort_by(|&i, &j| ratio(j).total_cmp(&ratio(i)));
    let atoms: Vec<Atom> = idx.iter().map(|&i| Atom::single(p[i].max(0.0), q[i].max(0.0))).collect();
    Ok(np_sorted(&atoms, eps))
}

pub fn classical_np_dist(p: &Distribution, q: &Distribution, eps: f64) -> Result<NpResult> {
    classical_np(&p.probs, &q.probs, eps)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NpMethod {
    Auto,
    Enumerate,
    TypeClasses,
}

fn log_factorials(n: usize) -> Vec<f64> {
    let mut lf = vec![0.0; n + 1];
    for i in 1..=n {
        lf[i] = lf[i - 1] + (i as f64).ln();
    }
    lf
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn compositions(n: usize, k: usize, out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>) {
    if cur.len() == k - 1 {
        let used: usize = cur.iter().sum();
        let mut t = cur.clone();
        t.push(n - used);
        out.push(t);
        return;
    }
    let used: usize = cur.iter().sum();
    for v in (0..=n - used).rev() {
        cur.push(v);
        compositions(n, k, out, cur);
        cur.pop();
    }
}

/// β^n_ε(p‖q) for i.i.d. product distributions, by full enumeration when
/// kⁿ fits the budget and by type classes otherwise.
pub fn classical_np_iid(p: &[f64], q: &[f64], n: usize, eps: f64, method: NpMethod, budget: usize) -> Result<NpResult> {
    check_eps(eps)?;
    if p.len() != q.len() || p.is_empty() {
        return Err(EjaError::InvalidArgument("distributions of different lengths".into()));
    }
    if n == 0 {
        return Err(EjaError::InvalidArgument("n must be >= 1".into()));
    }
    let k = p.len();
    let full = (k as f64).powi(n as i32);
    let classes = binom(n + k - 1, k - 1);
    let method = match method {
        NpMethod::Auto if full <= budget as f64 => NpMethod::Enumerate,
        NpMethod::Auto => NpMethod::TypeClasses,
        m => m,
    };
    match method {
        NpMethod::Enumerate => {
            if full > budget as f64 {
                return Err(EjaError::Budget {
                    what: format!("{k}^{n} outcomes"),
                    required: full,
                    budget,
                });
            }
            let mut pp = vec![1.0];
            let mut qq = vec![1.0];
            for _ in 0..n {
                pp = pp.iter().flat_map(|a| p.iter().map(move |b| a * b)).collect();
                qq = qq.iter().flat_map(|a| q.iter().map(move |b| a * b)).collect();
            }
            classical_np(&pp, &qq, eps)
        }
        _ => {
            if classes > budget as f64 {
                return Err(EjaError::Budget {
                    what: format!("type classes of {k} symbols at n={n}"),
                    required: classes,
                    budget,
                });
            }
            let lf = log_factorials(n);
            let mut types = Vec::new();
            compositions(n, k, &mut types, &mut Vec::new());
            let lp: Vec<f64> = p.iter().map(|v| v.ln()).collect();
            let lq: Vec<f64> = q.iter().map(|v| v.ln()).collect();
            let mut atoms: Vec<Atom> = Vec::new();
            for t in &types {
                let mut log_p = 0.0;
                let mut log_q = 0.0;
                let mut log_count = lf[n];
                for i in 0..k {
                    if t[i] > 0 {
                        log_p += t[i] as f64 * lp[i];
                        log_q += t[i] as f64 * lq[i];
                        log_count -= lf[t[i]];
                    }
                }
                if log_p == f64::NEG_INFINITY && log_q == f64::NEG_INFINITY {
                    continue;
                }
                atoms.push(Atom {
                    log_p,
                    log_q,
                    count: log_count.exp().round().max(1.0),
                    log_count,
                });
            }
            atoms.sort_by(|a, b| b.log_ratio().total_cmp(&a.log_ratio()));
            Ok(np_sorted(&atoms, eps))
        }
    }
}

// ---------------------------------------------------------------------------

/// How n-fold composites of non-classical algebras are realized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CompositeMode {
    /// Literal composite for classical algebras and n = 1, Kronecker powers
    /// of the canonical matrix embedding otherwise.
    Auto,
    /// Bilinear product composite, refused unless the J2 probe passes.
    Literal,
    /// Always go through the canonical matrix embedding.
    Quantum,
}

#[derive(Clone, Debug)]
pub struct PinchOptions {
    pub mode: CompositeMode,
    pub budget: usize,
    /// Keep the measurement effects in the result.
    pub keep_measurement: bool,
}

impl Default for PinchOptions {
    fn default() -> Self {
        PinchOptions {
            mode: CompositeMode::Auto,
            budget: DEFAULT_BUDGET,
            keep_measurement: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Realization {
    Source,
    Literal,
    Quantum { matrix_size: usize },
}

#[derive(Clone, Debug)]
pub struct PinchedBeta {
    pub np: NpResult,
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub lambda: Vec<f64>,
    pub mu: Vec<f64>,
    /// (1/n) D(P_ρ‖P_σ) under the pinched measurement.
    pub pinched_rate: f64,
    pub sigma_classes: usize,
    pub realization: Realization,
    pub measurement: Option<Measurement>,
}

/// The n-fold states in the chosen realization.
pub struct Composite {
    pub rho: State,
    pub sigma: State,
    pub realization: Realization,
}

pub const J2_GATE_TOL: f64 = 1e-9;

fn j2_gate(alg: &Algebra) -> Result<()> {
    let rep = check_axioms(alg, 20, DEFAULT_TOL, 0);
    if rep.max_residual_j2 > J2_GATE_TOL {
        return Err(EjaError::AxiomGate(format!(
            "the product composite {alg} fails power-associativity on generic elements \
             (J2 residual {:.3e}); whether the bilinear composite is a Jordan algebra is open, \
             so this operation is refused",
            rep.max_residual_j2
        )));
    }
    Ok(())
}

pub fn composite(rho: &State, sigma: &State, n: usize, mode: CompositeMode, budget: usize) -> Result<Composite> {
    let alg = rho.algebra();
    let literal = |gate: bool| -> Result<Composite> {
        let r = rho.iid_power(n, budget)?;
        if gate {
            j2_gate(r.algebra())?;
        }
        let s = sigma.element().iid_power(n, budget)?.reattach(r.algebra())?;
        Ok(Composite {
            rho: r,
            sigma: State::new_unchecked(s),
            realization: Realization::Literal,
        })
    };
    if n == 1 && mode != CompositeMode::Quantum {
        return Ok(Composite {
            rho: rho.clone(),
            sigma: sigma.clone(),
            realization: Realization::Source,
        });
    }
    match mode {
        CompositeMode::Literal => literal(!alg.is_classical()),
        CompositeMode::Auto if alg.is_classical() => literal(false),
        _ => {
            let emb = embed::canonical_embedding(alg)?;
            let size = (emb.size() as f64).powi(n as i32);
            if size * size > budget as f64 {
                return Err(EjaError::Budget {
                    what: format!("matrix realization of {alg}^⊗{n}"),
                    required: size * size,
                    budget,
                });
            }
            let pr = qmat::kron_power(&emb.push_state_matrix(rho.element()), n);
            let ps = qmat::kron_power(&emb.push_state_matrix(sigma.element()), n);
            let m = pr.nrows();
            let target = AlgebraDescriptor::complex_herm(m)?;
            Ok(Composite {
                rho: State::new_unchecked(Element::new(&target, crate::algebra::complex_coeffs(&pr))?),
                sigma: State::new_unchecked(Element::new(&target, crate::algebra::complex_coeffs(&ps))?),
                realization: Realization::Quantum { matrix_size: m },
            })
        }
    }
}

/// Measure ρ^{⊗n}, σ^{⊗n} with the identity pinched measurement and run the
/// exact Neyman–Pearson test on the outcome distributions. The result
/// upper-bounds β^n_ε(ρ‖σ).
pub fn pinched_beta(rho: &State, sigma: &State, n: usize, eps: f64, opts: &PinchOptions) -> Result<PinchedBeta> {
    check_eps(eps)?;
    let comp = composite(rho, sigma, n, opts.mode, opts.budget)?;
    let data = entropy::pinched_data(&comp.rho, &comp.sigma)?;
    let p = entropy::measure(&data.measurement, &comp.rho, 1e-8)?;
    let q = entropy::measure(&data.measurement, &comp.sigma, 1e-8)?;
    let np = classical_np(&p.probs, &q.probs, eps)?;
    let d = entropy::classical_relative(&p, &q)?;
    Ok(PinchedBeta {
        np,
        pinched_rate: d.to_f64() / n as f64,
        p: p.probs,
        q: q.probs,
        lambda: data.lambda,
        mu: data.mu,
        sigma_classes: data.sigma_classes,
        realization: comp.realization,
        measurement: opts.keep_measurement.then_some(data.measurement),
    })
}

/// Default t-grid in (−1, 0) for the converse bound.
pub fn default_converse_grid() -> Vec<f64> {
    vec![
        -0.9, -0.8, -0.7, -0.6, -0.5, -0.4, -0.3, -0.2, -0.1, -0.05, -0.02, -0.01, -0.005, -0.001,
    ]
}

/// max over t in the grid of (−φ̃(t) − t·r)/(1 − t), with φ̃(t) the
/// sandwiched log-trace at order 1 − t. A positive value certifies that
/// type-II exponent r forces the type-I success probability to vanish.
pub fn converse_exponent_bound(rho: &State, sigma: &State, r: f64, t_grid: &[f64]) -> Result<f64> {
    let mut best = f64::NEG_INFINITY;
    for &t in t_grid {
        if !(t > -1.0 && t < 0.0) {
            return Err(EjaError::InvalidArgument(format!("grid point {t} outside (-1,0)")));
        }
        let v = match entropy::phi_tilde(rho, sigma, -t)? {
            ExtReal::Finite(f) => (-f - t * r) / (1.0 - t),
            ExtReal::PosInf => f64::NEG_INFINITY,
            ExtReal::NegInf => f64::INFINITY,
        };
        best = best.max(v);
    }
    Ok(best)
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SteinRecord {
    pub n: usize,
    pub pinched_rate: f64,
    pub achievable_exponent: f64,
    pub converse_bound: f64,
    pub target: f64,
    pub gap_bound: f64,
}

pub const STEIN_CSV_HEADER: &str = "n,pinched_rate,achievable_exponent,converse_bound,target,gap_bound";

impl SteinRecord {
    pub fn csv_row(&self, scale: f64) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.n,
            self.pinched_rate * scale,
            self.achievable_exponent * scale,
            self.converse_bound * scale,
            self.target * scale,
            self.gap_bound * scale
        )
    }
}

/// CSV with the fixed header; `scale` converts nats for display (1 or 1/ln 2).
pub fn stein_csv(records: &[SteinRecord], scale: f64) -> String {
    let mut s = String::from(STEIN_CSV_HEADER);
    s.push('\n');
    for r in records {
        s.push_str(&r.csv_row(scale));
        s.push('\n');
    }
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenCount {
    pub n: usize,
    pub which: String,
    pub classes: usize,
    pub distinct_single: usize,
    pub bound: f64,
}

impl EigenCount {
    pub fn holds(&self) -> bool {
        self.classes as f64 <= self.bound
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SteinScan {
    pub records: Vec<SteinRecord>,
    pub deterministic_betas: Vec<f64>,
    pub eigen_counts: Vec<EigenCount>,
    pub violations: Vec<String>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct SteinOptions {
    pub pinch: PinchOptions,
    pub t_grid: Vec<f64>,
    pub tol: f64,
}

impl Default for SteinOptions {
    fn default() -> Self {
        SteinOptions {
            pinch: PinchOptions::default(),
            t_grid: default_converse_grid(),
            tol: 1e-7,
        }
    }
}

pub fn stein_scan(rho: &State, sigma: &State, eps: f64, n_list: &[usize], opts: &SteinOptions) -> Result<SteinScan> {
    check_eps(eps)?;
    let target = match entropy::relative_entropy(rho, sigma)? {
        ExtReal::Finite(v) => v,
        _ => {
            return Err(EjaError::InvalidArgument(
                "relative entropy is infinite; the Stein exponent is unbounded".into(),
            ))
        }
    };
    let d_sigma = spectral::spectral(sigma.element(), DEFAULT_TOL)?.len();
    let d_rho = spectral::spectral(rho.element(), DEFAULT_TOL)?.len();
    let mut scan = SteinScan {
        records: Vec::new(),
        deterministic_betas: Vec::new(),
        eigen_counts: Vec::new(),
        violations: Vec::new(),
        warnings: Vec::new(),
    };
    let mut last: Option<(usize, f64)> = None;
    for &n in n_list {
        let pb = pinched_beta(rho, sigma, n, eps, &opts.pinch)?;
        let comp = composite(rho, sigma, n, opts.pinch.mode, opts.pinch.budget)?;
        let rho_classes = spectral::spectral(comp.rho.element(), DEFAULT_TOL)?.len();
        let nf = n as f64;
        let gap = (d_sigma as f64 - 1.0) * (nf + 1.0).ln() / nf;
        let achievable = -pb.np.log_beta_randomized / nf;
        let converse = if achievable.is_finite() {
            converse_exponent_bound(rho, sigma, achievable, &opts.t_grid)?
        } else {
            f64::INFINITY
        };
        let rec = SteinRecord {
            n,
            pinched_rate: pb.pinched_rate,
            achievable_exponent: achievable,
            converse_bound: converse,
            target,
            gap_bound: gap,
        };
        if rec.pinched_rate < target - gap - opts.tol || rec.pinched_rate > target + opts.tol {
            scan.violations.push(format!(
                "n={n}: pinched rate {} outside [{}, {}]",
                rec.pinched_rate,
                target - gap,
                target
            ));
        }
        let ceiling = -(1.0 - eps).ln() / nf;
        if converse > ceiling + opts.tol {
            scan.violations.push(format!(
                "n={n}: converse bound {converse} exceeds -log(1-eps)/n = {ceiling}"
            ));
        }
        for (which, classes, d) in [("sigma", pb.sigma_classes, d_sigma), ("rho", rho_classes, d_rho)] {
            let ec = EigenCount {
                n,
                which: which.into(),
                classes,
                distinct_single: d,
                bound: (nf + 1.0).powi(d as i32 - 1),
            };
            if !ec.holds() {
                scan.violations.push(format!(
                    "n={n}: {which}^n has {classes} eigenvalues, bound {}",
                    ec.bound
                ));
            }
            scan.eigen_counts.push(ec);
        }
        if let Some((pn, pe)) = last {
            // Soft trend check; the tolerance uses the larger of the two
            // spectra so a one-point σ spectrum does not make it exact.
            let slack = (d_sigma.max(d_rho) as f64 - 1.0) * (nf + 1.0).ln() / nf;
            if n > pn && achievable < pe - slack {
                scan.warnings.push(format!(
                    "n={n}: achievable exponent {achievable} dropped below {pe} (n={pn}) by more than {slack}"
                ));
            }
        }
        last = Some((n, achievable));
        scan.deterministic_betas.push(pb.np.beta_deterministic);
        scan.records.push(rec);
    }
    Ok(scan)
}

#[derive(Clone, Debug)]
pub struct ElementTest {
    pub test: Element,
    pub rho_mass: f64,
    pub sigma_mass: f64,
}

/// T = sum of the idempotents of ρ^{⊗n} − tσ^{⊗n} with nonnegative
/// eigenvalues, in the literal composite. Refused unless the composite
/// passes the J2 probe.
pub fn np_element_test(rho: &State, sigma: &State, n: usize, t: f64, budget: usize) -> Result<ElementTest> {
    let r = rho.element().iid_power(n, budget)?;
    if !r.algebra().is_classical() {
        j2_gate(r.algebra())?;
    }
    let s = sigma.element().iid_power(n, budget)?.reattach(r.algebra())?;
    let x = r.axpy(-t, &s);
    let d = spectral::spectral(&x, DEFAULT_TOL)?;
    let atol = DEFAULT_TOL * x.norm().max(1.0);
    let mut test = Element::zero(r.algebra());
    for (l, c) in d.eigenvalues.iter().zip(&d.idempotents) {
        if *l >= -atol {
            test.add_assign_scaled(1.0, c);
        }
    }
    Ok(ElementTest {
        rho_mass: test.inner_unchecked(&r),
        sigma_mass: test.inner_unchecked(&s),
        test,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn np_small_examples() {
        let r = classical_np(&[0.75, 0.25], &[0.5, 0.5], 0.25).unwrap();
        assert_eq!(r.beta_randomized, 0.5);
        assert_eq!(r.beta_deterministic, 0.5);
        let r = classical_np(&[1.0, 0.0], &[0.0, 1.0], 0.1).unwrap();
        assert_eq!(r.beta_randomized, 0.0);
        assert_eq!(r.beta_deterministic, 0.0);
        let r = classical_np(&[0.3, 0.7], &[0.3, 0.7], 0.2).unwrap();
        assert!((r.beta_randomized - 0.8).abs() < 1e-15);
        assert!(r.beta_randomized <= r.beta_deterministic);
        assert!(classical_np(&[1.0], &[1.0], 1.0).is_err());
        assert!(classical_np(&[1.0], &[0.5, 0.5], 0.1).is_err());
    }

    #[test]
    fn iid_methods_agree() {
        let p = [0.75, 0.25];
        let q = [0.5, 0.5];
        for n in 1..=12 {
            let a = classical_np_iid(&p, &q, n, 0.05, NpMethod::Enumerate, DEFAULT_BUDGET).unwrap();
            let b = classical_np_iid(&p, &q, n, 0.05, NpMethod::TypeClasses, DEFAULT_BUDGET).unwrap();
            assert!((a.beta_randomized - b.beta_randomized).abs() < 1e-12, "n={n}");
            assert!((a.beta_deterministic - b.beta_deterministic).abs() < 1e-12, "n={n}");
        }
        let one = classical_np_iid(&p, &q, 1, 0.05, NpMethod::Auto, DEFAULT_BUDGET).unwrap();
        assert_eq!(one, classical_np(&p, &q, 0.05).unwrap());
    }

    #[test]
    fn converse_grid_validated() {
        let c = AlgebraDescriptor::classical(2).unwrap();
        let s = State::new_unchecked(Element::new(&c, vec![0.5, 0.5]).unwrap());
        assert!(converse_exponent_bound(&s, &s, 0.1, &[0.5]).is_err());
        assert!(converse_exponent_bound(&s, &s, 0.1, &[-0.01]).unwrap() > 0.0);
    }

    #[test]
    fn csv_header() {
        assert_eq!(stein_csv(&[], 1.0), format!("{STEIN_CSV_HEADER}\n"));
    }
}
