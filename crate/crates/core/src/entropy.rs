//! States, measurements and entropic quantities (natural log throughout).

use std::fmt;

use serde::{Serialize, Serializer};

use crate::algebra::{same_algebra, Algebra};
use crate::element::Element;
use crate::error::{EjaError, Result};
use crate::spectral::{self, Csoi, SpectralDecomposition, DEFAULT_TOL};

/// Eigenvalues at or below `SUPPORT_TOL · tr(x)` count as zero.
pub const SUPPORT_TOL: f64 = 1e-12;
/// Weight of ρ on the kernel of σ above which supports are incompatible.
pub const KERNEL_TOL: f64 = 1e-10;

/// Extended real number with explicit infinities.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtReal {
    Finite(f64),
    PosInf,
    NegInf,
}

impl ExtReal {
    pub fn finite(&self) -> Option<f64> {
        match self {
            ExtReal::Finite(v) => Some(*v),
            _ => None,
        }
    }

    pub fn is_pos_inf(&self) -> bool {
        matches!(self, ExtReal::PosInf)
    }

    /// Unwraps a finite value; panics on infinities.
    pub fn value(&self) -> f64 {
        self.finite().expect("finite value")
    }

    /// Lossy conversion to f64 (infinities map to ±∞ floats).
    pub fn to_f64(&self) -> f64 {
        match self {
            ExtReal::Finite(v) => *v,
            ExtReal::PosInf => f64::INFINITY,
            ExtReal::NegInf => f64::NEG_INFINITY,
        }
    }

    fn from_log(v: f64) -> Self {
        if v == f64::NEG_INFINITY {
            ExtReal::NegInf
        } else if v == f64::INFINITY {
            ExtReal::PosInf
        } else {
            ExtReal::Finite(v)
        }
    }

    /// Divides by a nonzero real.
    pub fn div(self, s: f64) -> Self {
        match self {
            ExtReal::Finite(v) => ExtReal::Finite(v / s),
            ExtReal::PosInf if s > 0.0 => ExtReal::PosInf,
            ExtReal::PosInf => ExtReal::NegInf,
            ExtReal::NegInf if s > 0.0 => ExtReal::NegInf,
            ExtReal::NegInf => ExtReal::PosInf,
        }
    }

    pub fn scale(self, a: f64) -> Self {
        match self {
            ExtReal::Finite(v) => ExtReal::Finite(v * a),
            other => other,
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Finite(v) => write!(f, "{v}"),
            ExtReal::PosInf => write!(f, "+inf"),
            ExtReal::NegInf => write!(f, "-inf"),
        }
    }
}

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtReal::Finite(v) => s.serialize_f64(*v),
            ExtReal::PosInf => s.serialize_str("+inf"),
            ExtReal::NegInf => s.serialize_str("-inf"),
        }
    }
}

// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct State(Element);

impl State {
    /// Checks cone membership and unit trace within `tol`.
    pub fn new(x: Element, tol: f64) -> Result<Self> {
        let t = x.trace();
        if (t - 1.0).abs() > tol {
            return Err(EjaError::Validation(format!("state trace is {t}, expected 1")));
        }
        let m = spectral::cone_min_eig(&x, DEFAULT_TOL)?;
        if m < -tol {
            return Err(EjaError::Validation(format!("state has eigenvalue {m} < 0")));
        }
        Ok(State(x))
    }

    pub fn new_unchecked(x: Element) -> Self {
        State(x)
    }

    pub fn maximally_mixed(alg: &Algebra) -> Self {
        State(Element::unit(alg).scale(1.0 / alg.rank as f64))
    }

    pub fn element(&self) -> &Element {
        &self.0
    }

    pub fn algebra(&self) -> &Algebra {
        self.0.algebra()
    }

    /// ρ^{⊗n} as a state of the n-fold composite.
    pub fn iid_power(&self, n: usize, budget: usize) -> Result<State> {
        Ok(State(self.0.iid_power(n, budget)?))
    }

    /// Convex combination Σ w_i ρ_i.
    pub fn mixture(weights: &[f64], states: &[State]) -> Result<State> {
        let mut acc = Element::zero(states[0].algebra());
        for (w, s) in weights.iter().zip(states) {
            acc = acc.add(&s.0.scale(*w))?;
        }
        Ok(State(acc))
    }
}

#[derive(Clone, Debug)]
pub struct Measurement {
    pub effects: Vec<Element>,
    pub labels: Vec<String>,
}

impl Measurement {
    pub fn new(effects: Vec<Element>, labels: Option<Vec<String>>, tol: f64) -> Result<Self> {
        if effects.is_empty() {
            return Err(EjaError::Validation("measurement without effects".into()));
        }
        let alg = effects[0].algebra().clone();
        let mut sum = Element::zero(&alg);
        for (i, m) in effects.iter().enumerate() {
            let me = spectral::cone_min_eig(m, DEFAULT_TOL)?;
            if me < -tol {
                return Err(EjaError::Validation(format!("effect {i} has eigenvalue {me}")));
            }
            sum = sum.add(m)?;
        }
        let r = sum.distance(&Element::unit(&alg))?;
        if r > tol * (alg.rank as f64).sqrt().max(1.0) {
            return Err(EjaError::Validation(format!("effects sum to the unit only within {r:.3e}")));
        }
        let labels = labels.unwrap_or_else(|| (0..effects.len()).map(|i| i.to_string()).collect());
        Ok(Measurement { effects, labels })
    }

    pub fn from_csoi(c: &Csoi) -> Self {
        Measurement {
            effects: c.idempotents.clone(),
            labels: (0..c.len()).map(|i| i.to_string()).collect(),
        }
    }

    pub fn trivial(alg: &Algebra) -> Self {
        Measurement {
            effects: vec![Element::unit(alg)],
            labels: vec!["u".into()],
        }
    }

    pub fn len(&self) -> usize {
        self.effects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.effects.is_empty()
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Distribution {
    pub probs: Vec<f64>,
    pub labels: Vec<String>,
}

impl Distribution {
    pub fn new(probs: Vec<f64>) -> Self {
        let labels = (0..probs.len()).map(|i| i.to_string()).collect();
        Distribution { probs, labels }
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

pub fn measure(m: &Measurement, rho: &State, tol: f64) -> Result<Distribution> {
    let mut probs = Vec::with_capacity(m.len());
    for e in &m.effects {
        probs.push(e.inner(rho.element())?);
    }
    for (i, p) in probs.iter_mut().enumerate() {
        if *p < -tol {
            return Err(EjaError::Validation(format!("outcome {i} has probability {p}")));
        }
        if *p < 0.0 {
            *p = 0.0;
        }
    }
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > tol {
        return Err(EjaError::Validation(format!("probabilities sum to {total}")));
    }
    for p in &mut probs {
        *p /= total;
    }
    Ok(Distribution {
        probs,
        labels: m.labels.clone(),
    })
}

fn check_len(p: &Distribution, q: &Distribution) -> Result<()> {
    if p.len() != q.len() {
        return Err(EjaError::InvalidArgument(format!(
            "distributions of lengths {} and {}",
            p.len(),
            q.len()
        )));
    }
    Ok(())
}

fn support_cut(total: f64) -> f64 {
    SUPPORT_TOL * total.abs().max(f64::MIN_POSITIVE)
}

/// D(p‖q) with 0·log(0/q) = 0.
pub fn classical_relative(p: &Distribution, q: &Distribution) -> Result<ExtReal> {
    check_len(p, q)?;
    let (cp, cq) = (support_cut(p.probs.iter().sum()), support_cut(q.probs.iter().sum()));
    let mut d = 0.0;
    for (&a, &b) in p.probs.iter().zip(&q.probs) {
        if a <= cp {
            continue;
        }
        if b <= cq {
            return Ok(ExtReal::PosInf);
        }
        d += a * (a / b).ln();
    }
    Ok(ExtReal::Finite(d))
}

/// D_{1+s}(p‖q) = (1/s) log Σ p^{1+s} q^{−s}, s ∈ (−1,0) ∪ (0,∞).
pub fn classical_renyi(p: &Distribution, q: &Distribution, s: f64) -> Result<ExtReal> {
    check_len(p, q)?;
    check_s(s)?;
    let (cp, cq) = (support_cut(p.probs.iter().sum()), support_cut(q.probs.iter().sum()));
    let mut acc = 0.0;
    for (&a, &b) in p.probs.iter().zip(&q.probs) {
        if a <= cp {
            continue;
        }
        if b <= cq {
            if s > 0.0 {
                return Ok(ExtReal::PosInf);
            }
            continue;
        }
        acc += a.powf(1.0 + s) * b.powf(-s);
    }
    Ok(ExtReal::from_log(acc.ln()).div(s))
}

fn check_s(s: f64) -> Result<()> {
    if !(s > -1.0) || s == 0.0 || !s.is_finite() {
        return Err(EjaError::InvalidArgument(format!(
            "order parameter s = {s} outside (-1,0) ∪ (0,∞)"
        )));
    }
    Ok(())
}

fn state_spectrum(x: &Element, tol: f64) -> Result<SpectralDecomposition> {
    let d = spectral::spectral(x, DEFAULT_TOL)?;
    if d.min_eigenvalue() < -tol.max(DEFAULT_TOL) * x.norm().max(1.0) {
        return Err(EjaError::Validation(format!(
            "negative eigenvalue {} in a state",
            d.min_eigenvalue()
        )));
    }
    Ok(d)
}

pub fn vn_entropy(rho: &State) -> Result<f64> {
    let d = state_spectrum(rho.element(), DEFAULT_TOL)?;
    let cut = support_cut(rho.element().trace());
    Ok(-d
        .eigenvalues
        .iter()
        .zip(&d.multiplicities)
        .filter(|(l, _)| **l > cut)
        .map(|(l, m)| l * l.ln() * m)
        .sum::<f64>())
}

fn same(a: &State, b: &State) -> Result<()> {
    if !same_algebra(a.algebra(), b.algebra()) {
        return Err(EjaError::AlgebraMismatch {
            left: a.algebra().to_string(),
            right: b.algebra().to_string(),
        });
    }
    Ok(())
}

/// Σ_{λ > cut} f(λ) c_λ.
fn on_support(d: &SpectralDecomposition, cut: f64, f: impl Fn(f64) -> f64) -> Element {
    let alg = d.idempotents[0].algebra().clone();
    let mut y = Element::zero(&alg);
    for (l, c) in d.eigenvalues.iter().zip(&d.idempotents) {
        if *l > cut {
            y.add_assign_scaled(f(*l), c);
        }
    }
    y
}

/// True when ρ puts weight above KERNEL_TOL on the kernel of σ.
fn kernel_weight(rho: &Element, ds: &SpectralDecomposition, cut: f64) -> f64 {
    ds.eigenvalues
        .iter()
        .zip(&ds.idempotents)
        .filter(|(m, _)| **m <= cut)
        .map(|(_, d)| d.inner_unchecked(rho))
        .sum()
}

pub fn relative_entropy(rho: &State, sigma: &State) -> Result<ExtReal> {
    same(rho, sigma)?;
    let dr = state_spectrum(rho.element(), DEFAULT_TOL)?;
    let ds = state_spectrum(sigma.element(), DEFAULT_TOL)?;
    let (cr, cs) = (support_cut(rho.element().trace()), support_cut(sigma.element().trace()));
    if kernel_weight(rho.element(), &ds, cs) > KERNEL_TOL {
        return Ok(ExtReal::PosInf);
    }
    let a: f64 = dr
        .eigenvalues
        .iter()
        .zip(&dr.multiplicities)
        .filter(|(l, _)| **l > cr)
        .map(|(l, m)| l * l.ln() * m)
        .sum();
    let b: f64 = ds
        .eigenvalues
        .iter()
        .zip(&ds.idempotents)
        .filter(|(m, _)| **m > cs)
        .map(|(m, d)| m.ln() * d.inner_unchecked(rho.element()))
        .sum();
    Ok(ExtReal::Finite(a - b))
}

/// φ(−s) = log tr ρ^{1+s} ∘ σ^{−s}.
pub fn phi(rho: &State, sigma: &State, s: f64) -> Result<ExtReal> {
    same(rho, sigma)?;
    check_s(s)?;
    let dr = state_spectrum(rho.element(), DEFAULT_TOL)?;
    let ds = state_spectrum(sigma.element(), DEFAULT_TOL)?;
    let (cr, cs) = (support_cut(rho.element().trace()), support_cut(sigma.element().trace()));
    if s > 0.0 && kernel_weight(rho.element(), &ds, cs) > KERNEL_TOL {
        return Ok(ExtReal::PosInf);
    }
    let rp = on_support(&dr, cr, |l| l.powf(1.0 + s));
    let acc: f64 = ds
        .eigenvalues
        .iter()
        .zip(&ds.idempotents)
        .filter(|(m, _)| **m > cs)
        .map(|(m, d)| m.powf(-s) * d.inner_unchecked(&rp))
        .sum();
    Ok(ExtReal::from_log(acc.max(0.0).ln()))
}

/// Petz–Rényi divergence D_{1+s}.
pub fn prr(rho: &State, sigma: &State, s: f64) -> Result<ExtReal> {
    Ok(phi(rho, sigma, s)?.div(s))
}

/// φ̃(−s) = log tr (P_{σ^{−s/(2(1+s))}}(ρ))^{1+s}.
pub fn phi_tilde(rho: &State, sigma: &State, s: f64) -> Result<ExtReal> {
    same(rho, sigma)?;
    check_s(s)?;
    let ds = state_spectrum(sigma.element(), DEFAULT_TOL)?;
    let cs = support_cut(sigma.element().trace());
    if s > 0.0 && kernel_weight(rho.element(), &ds, cs) > KERNEL_TOL {
        return Ok(ExtReal::PosInf);
    }
    let e = -s / (2.0 * (1.0 + s));
    let a = on_support(&ds, cs, |m| m.powf(e));
    let y = a.quadratic_unchecked(rho.element());
    let dy = spectral::spectral(&y, DEFAULT_TOL)?;
    let scale = y.norm().max(1.0);
    if dy.min_eigenvalue() < -1e-9 * scale {
        return Err(EjaError::Numeric(format!(
            "sandwiched element has eigenvalue {}",
            dy.min_eigenvalue()
        )));
    }
    let cut = support_cut(y.trace());
    let acc: f64 = dy
        .eigenvalues
        .iter()
        .zip(&dy.multiplicities)
        .filter(|(l, _)| **l > cut)
        .map(|(l, m)| l.powf(1.0 + s) * m)
        .sum();
    Ok(ExtReal::from_log(acc.max(0.0).ln()))
}

/// Sandwiched Rényi divergence D̃_{1+s}.
pub fn srr(rho: &State, sigma: &State, s: f64) -> Result<ExtReal> {
    Ok(phi_tilde(rho, sigma, s)?.div(s))
}

// ---------------------------------------------------------------------------

/// κ_C(ρ) = Σ P_{c_i}(ρ).
pub fn pinch(c: &Csoi, rho: &State) -> Result<State> {
    if !same_algebra(c.algebra(), rho.algebra()) {
        return Err(EjaError::AlgebraMismatch {
            left: c.algebra().to_string(),
            right: rho.algebra().to_string(),
        });
    }
    let mut acc = Element::zero(rho.algebra());
    for ci in &c.idempotents {
        acc.add_assign_scaled(1.0, &ci.quadratic_unchecked(rho.element()));
    }
    Ok(State(acc))
}

/// Pinching by the spectral CSOI of σ.
pub fn pinch_by_state(sigma: &State, rho: &State) -> Result<State> {
    let d = spectral::spectral(sigma.element(), DEFAULT_TOL)?;
    pinch(&d.csoi(), rho)
}

/// The identity pinched measurement together with the eigenvalue labels of
/// every outcome.
#[derive(Clone, Debug)]
pub struct PinchedData {
    pub measurement: Measurement,
    /// Eigenvalue of κ_σ(ρ) on each outcome.
    pub lambda: Vec<f64>,
    /// Eigenvalue of σ on each outcome.
    pub mu: Vec<f64>,
    /// |C_σ|.
    pub sigma_classes: usize,
    /// ⟨c_ij, ρ⟩ and ⟨c_ij, σ⟩ without clamping.
    pub p_raw: Vec<f64>,
    pub q_raw: Vec<f64>,
    pub pinched: State,
}

pub fn pinched_data(rho: &State, sigma: &State) -> Result<PinchedData> {
    same(rho, sigma)?;
    let ds = spectral::spectral(sigma.element(), DEFAULT_TOL)?;
    let mut effects = Vec::new();
    let mut labels = Vec::new();
    let mut lambda = Vec::new();
    let mut mu = Vec::new();
    let mut kappa = Element::zero(rho.algebra());
    for (i, (m, ci)) in ds.eigenvalues.iter().zip(&ds.idempotents).enumerate() {
        let block = ci.quadratic_unchecked(rho.element());
        kappa.add_assign_scaled(1.0, &block);
        let db = spectral::spectral(&block, DEFAULT_TOL)?;
        for (j, (l, d)) in db.eigenvalues.iter().zip(&db.idempotents).enumerate() {
            let cij = ci.quadratic_unchecked(d);
            if cij.norm() <= 1e-8 {
                continue;
            }
            effects.push(cij);
            labels.push(format!("({i},{j})"));
            lambda.push(*l);
            mu.push(*m);
        }
    }
    let p_raw = effects.iter().map(|e| e.inner_unchecked(rho.element())).collect();
    let q_raw = effects.iter().map(|e| e.inner_unchecked(sigma.element())).collect();
    Ok(PinchedData {
        measurement: Measurement { effects, labels },
        lambda,
        mu,
        sigma_classes: ds.len(),
        p_raw,
        q_raw,
        pinched: State(kappa),
    })
}

/// 𝑴^ρ_σ = {P_{c_ij}(M_k)}, or the identity variant {c_ij} when `m` is None.
pub fn pinched_measurement(rho: &State, sigma: &State, m: Option<&Measurement>) -> Result<Measurement> {
    let data = pinched_data(rho, sigma)?;
    let Some(m) = m else {
        return Ok(data.measurement);
    };
    let mut effects = Vec::new();
    let mut labels = Vec::new();
    for (c, l) in data.measurement.effects.iter().zip(&data.measurement.labels) {
        for (mk, lk) in m.effects.iter().zip(&m.labels) {
            effects.push(c.quadratic(mk)?);
            labels.push(format!("{},{}", &l[..l.len() - 1], lk) + ")");
        }
    }
    Ok(Measurement { effects, labels })
}

/// D(κ_σ(ρ)‖σ) through the identity pinched measurement.
pub fn pinched_relative_entropy(rho: &State, sigma: &State) -> Result<ExtReal> {
    let data = pinched_data(rho, sigma)?;
    let p = measure(&data.measurement, rho, 1e-8)?;
    let q = measure(&data.measurement, sigma, 1e-8)?;
    classical_relative(&p, &q)
}

#[derive(Clone, Debug, Serialize)]
pub struct EntropyRecord {
    pub quantity: String,
    pub s: Option<f64>,
    pub value_nats: ExtReal,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraDescriptor as A;

    fn st(alg: &Algebra, c: &[f64]) -> State {
        State::new(Element::new(alg, c.to_vec()).unwrap(), 1e-9).unwrap()
    }

    #[test]
    fn classical_values() {
        let p = Distribution::new(vec![0.75, 0.25]);
        let q = Distribution::new(vec![0.5, 0.5]);
        let d = classical_relative(&p, &q).unwrap().value();
        assert!((d - 0.130812035941137).abs() < 1e-14);
        assert_eq!(classical_relative(&p, &p).unwrap(), ExtReal::Finite(0.0));
        let a = Distribution::new(vec![1.0, 0.0]);
        let b = Distribution::new(vec![0.0, 1.0]);
        assert_eq!(classical_relative(&a, &b).unwrap(), ExtReal::PosInf);
        assert_eq!(classical_renyi(&a, &b, 0.5).unwrap(), ExtReal::PosInf);
        assert_eq!(classical_renyi(&a, &b, -0.5).unwrap(), ExtReal::PosInf);
        assert!(classical_renyi(&p, &q, 0.0).is_err());
        assert!(classical_relative(&p, &Distribution::new(vec![1.0])).is_err());
    }

    #[test]
    fn entropy_of_mixed_and_pure() {
        let c = A::classical(2).unwrap();
        assert!((vn_entropy(&st(&c, &[0.5, 0.5])).unwrap() - 2f64.ln()).abs() < 1e-15);
        let h = A::complex_herm(3).unwrap();
        let mm = State::maximally_mixed(&h);
        assert!((vn_entropy(&mm).unwrap() - 3f64.ln()).abs() < 1e-12);
        let pure = st(&h, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert!(vn_entropy(&pure).unwrap().abs() < 1e-15);
    }

    #[test]
    fn spin_relative_to_maximally_mixed() {
        let s = A::spin(2).unwrap();
        let rho = st(&s, &[0.5, 0.3, 0.1]);
        let mm = State::maximally_mixed(&s);
        let d = relative_entropy(&rho, &mm).unwrap().value();
        let h = vn_entropy(&rho).unwrap();
        assert!((d - (2f64.ln() - h)).abs() < 1e-14);
    }

    #[test]
    fn measure_basics() {
        let c = A::classical(2).unwrap();
        let rho = st(&c, &[0.2, 0.8]);
        let m = Measurement::new(
            vec![Element::basis(&c, 0), Element::basis(&c, 1)],
            None,
            1e-12,
        )
        .unwrap();
        assert_eq!(measure(&m, &rho, 1e-12).unwrap().probs, vec![0.2, 0.8]);
        assert_eq!(measure(&Measurement::trivial(&c), &rho, 1e-12).unwrap().probs, vec![1.0]);
        assert!(Measurement::new(vec![Element::basis(&c, 0)], None, 1e-9).is_err());
    }

    #[test]
    fn pinching_cherm_kills_coherences() {
        let h = A::complex_herm(2).unwrap();
        let rho = st(&h, &[0.6, 0.4, 0.2, -0.1]);
        let c = Csoi::new(
            vec![Element::basis(&h, 0), Element::basis(&h, 1)],
            1e-12,
        )
        .unwrap();
        let k = pinch(&c, &rho).unwrap();
        assert_eq!(k.element().coeffs(), &[0.6, 0.4, 0.0, 0.0]);
        let t = pinch(&Csoi::trivial(&h), &rho).unwrap();
        assert!(t.element().distance(rho.element()).unwrap() < 1e-15);
    }

    #[test]
    fn renyi_support_handling() {
        let c = A::classical(2).unwrap();
        let rho = st(&c, &[0.5, 0.5]);
        let sigma = st(&c, &[1.0, 0.0]);
        assert_eq!(relative_entropy(&rho, &sigma).unwrap(), ExtReal::PosInf);
        assert_eq!(prr(&rho, &sigma, 0.5).unwrap(), ExtReal::PosInf);
        assert_eq!(srr(&rho, &sigma, 0.5).unwrap(), ExtReal::PosInf);
        let v = prr(&rho, &sigma, -0.5).unwrap().value();
        assert!((v - 2f64.ln()).abs() < 1e-12);
    }
}
