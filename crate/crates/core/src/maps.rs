//! Linear channels stored as explicit matrices on basis coefficients.

use nalgebra::DMatrix;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{same_algebra, Algebra, AlgebraDescriptor};
use crate::element::Element;
use crate::entropy::{Measurement, State};
use crate::error::{EjaError, Result};
use crate::random;
use crate::spectral::{self, DEFAULT_TOL};

#[derive(Clone, Debug)]
pub struct LinearChannel {
    pub domain: Algebra,
    pub codomain: Algebra,
    /// codomain.dim × domain.dim.
    pub matrix: DMatrix<f64>,
    pub name: String,
}

impl LinearChannel {
    pub fn new(domain: Algebra, codomain: Algebra, matrix: DMatrix<f64>, name: impl Into<String>) -> Result<Self> {
        if matrix.nrows() != codomain.dim || matrix.ncols() != domain.dim {
            return Err(EjaError::InvalidArgument(format!(
                "channel matrix is {}x{}, expected {}x{}",
                matrix.nrows(),
                matrix.ncols(),
                codomain.dim,
                domain.dim
            )));
        }
        Ok(LinearChannel {
            domain,
            codomain,
            matrix,
            name: name.into(),
        })
    }

    pub fn identity(alg: &Algebra) -> Self {
        LinearChannel {
            domain: alg.clone(),
            codomain: alg.clone(),
            matrix: DMatrix::identity(alg.dim, alg.dim),
            name: "id".into(),
        }
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        if !same_algebra(x.algebra(), &self.domain) {
            return Err(EjaError::AlgebraMismatch {
                left: self.domain.to_string(),
                right: x.algebra().to_string(),
            });
        }
        let v = &self.matrix * nalgebra::DVector::from_column_slice(x.coeffs());
        Element::new(&self.codomain, v.as_slice().to_vec())
    }

    pub fn apply_state(&self, rho: &State) -> Result<State> {
        Ok(State::new_unchecked(self.apply(rho.element())?))
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &LinearChannel) -> Result<LinearChannel> {
        if !same_algebra(&first.codomain, &self.domain) {
            return Err(EjaError::AlgebraMismatch {
                left: first.codomain.to_string(),
                right: self.domain.to_string(),
            });
        }
        Ok(LinearChannel {
            domain: first.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: &self.matrix * &first.matrix,
            name: format!("{}∘{}", self.name, first.name),
        })
    }

    /// Adjoint for the two metrics: W_dom⁻¹ Aᵀ W_cod.
    pub fn adjoint(&self) -> LinearChannel {
        let wd = self.domain.weights();
        let wc = self.codomain.weights();
        let m = DMatrix::from_fn(self.domain.dim, self.codomain.dim, |a, b| {
            self.matrix[(b, a)] * wc[b] / wd[a]
        });
        LinearChannel {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            matrix: m,
            name: format!("{}*", self.name),
        }
    }

    /// id_{Classical(k)} ⊗ self.
    pub fn with_classical_ancilla(&self, k: usize) -> Result<LinearChannel> {
        let anc = AlgebraDescriptor::classical(k)?;
        let dom = AlgebraDescriptor::tensor(vec![anc.clone(), self.domain.clone()])?;
        let cod = AlgebraDescriptor::tensor(vec![anc, self.codomain.clone()])?;
        let m = DMatrix::<f64>::identity(k, k).kronecker(&self.matrix);
        LinearChannel::new(dom, cod, m, format!("id{k}⊗{}", self.name))
    }
}

/// Contracts the listed factors of a tensor algebra against their units.
pub fn partial_trace(domain: &Algebra, which: &[usize]) -> Result<LinearChannel> {
    let factors = domain
        .factors()
        .ok_or_else(|| EjaError::InvalidArgument(format!("{domain} is not a tensor algebra")))?;
    let n = factors.len();
    if which.is_empty() || which.iter().any(|&k| k >= n) {
        return Err(EjaError::InvalidArgument(format!(
            "factor set {which:?} out of range for {n} factors"
        )));
    }
    let traced: Vec<bool> = (0..n).map(|k| which.contains(&k)).collect();
    let keep: Vec<usize> = (0..n).filter(|&k| !traced[k]).collect();
    if keep.is_empty() {
        return Err(EjaError::InvalidArgument("cannot trace out every factor".into()));
    }
    let codomain = if keep.len() == 1 {
        factors[keep[0]].clone()
    } else {
        AlgebraDescriptor::tensor(keep.iter().map(|&k| factors[k].clone()).collect())?
    };
    let traces: Vec<Vec<f64>> = factors
        .iter()
        .map(|f| f.weights().iter().zip(f.unit_coeffs()).map(|(w, u)| w * u).collect())
        .collect();
    let mut m = DMatrix::zeros(codomain.dim, domain.dim);
    let mut digits = vec![0usize; n];
    for a in 0..domain.dim {
        let mut rest = a;
        for k in (0..n).rev() {
            digits[k] = rest % factors[k].dim;
            rest /= factors[k].dim;
        }
        let mut coef = 1.0;
        let mut target = 0;
        for k in 0..n {
            if traced[k] {
                coef *= traces[k][digits[k]];
            } else {
                target = target * factors[k].dim + digits[k];
            }
        }
        if coef != 0.0 {
            m[(target, a)] += coef;
        }
    }
    LinearChannel::new(domain.clone(), codomain, m, format!("tr{which:?}"))
}

/// x ↦ Σ_i ⟨M_i, x⟩ u_i into Classical(k).
pub fn observation_map(m: &Measurement) -> Result<LinearChannel> {
    let dom = m.effects[0].algebra().clone();
    let cod = AlgebraDescriptor::classical(m.len())?;
    let w = dom.weights();
    let mat = DMatrix::from_fn(m.len(), dom.dim, |i, b| w[b] * m.effects[i].coeffs()[b]);
    LinearChannel::new(dom, cod, mat, "obs")
}

#[derive(Clone, Debug, Serialize)]
pub struct ChannelReport {
    pub name: String,
    pub tp_residual: f64,
    pub positivity_min_eig: f64,
    pub unit_preserved_residual: f64,
    pub ancilla_positivity_min_eig: f64,
}

/// Randomized probe: trace preservation on basis elements and random
/// states, least eigenvalue of images of random states (also with a
/// Classical(2) ancilla), and unit preservation of the adjoint.
pub fn channel_report(ch: &LinearChannel, trials: usize, _tol: f64, seed: u64) -> Result<ChannelReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tp: f64 = 0.0;
    for a in 0..ch.domain.dim {
        let e = Element::basis(&ch.domain, a);
        tp = tp.max((ch.apply(&e)?.trace() - e.trace()).abs());
    }
    let mut pos = f64::INFINITY;
    for _ in 0..trials.max(1) {
        let rho = random::random_state_element(&ch.domain, &mut rng);
        let img = ch.apply(&rho)?;
        tp = tp.max((img.trace() - 1.0).abs());
        pos = pos.min(spectral::cone_min_eig(&img, DEFAULT_TOL)?);
    }
    let ext = ch.with_classical_ancilla(2)?;
    let mut anc = f64::INFINITY;
    for _ in 0..trials.max(1) {
        let rho = random::random_state_element(&ext.domain, &mut rng);
        anc = anc.min(spectral::cone_min_eig(&ext.apply(&rho)?, DEFAULT_TOL)?);
    }
    let adj = ch.adjoint();
    let unit = adj
        .apply(&Element::unit(&ch.codomain))?
        .distance(&Element::unit(&ch.domain))?;
    Ok(ChannelReport {
        name: ch.name.clone(),
        tp_residual: tp,
        positivity_min_eig: pos,
        unit_preserved_residual: unit,
        ancilla_positivity_min_eig: anc,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraDescriptor as A;

    #[test]
    fn partial_trace_of_product() {
        let s = A::spin(2).unwrap();
        let x = Element::new(&s, vec![0.7, 0.2, -0.4]).unwrap();
        let y = Element::new(&s, vec![0.3, -0.1, 0.5]).unwrap();
        let xy = Element::tensor_product(&[x.clone(), y.clone()]).unwrap();
        let tr1 = partial_trace(xy.algebra(), &[0]).unwrap();
        let out = tr1.apply(&xy).unwrap();
        assert!(out.distance(&y.scale(x.trace())).unwrap() < 1e-14);
        let uu = Element::unit(xy.algebra());
        let out = tr1.apply(&uu).unwrap();
        assert!(out.distance(&Element::unit(&s).scale(2.0)).unwrap() < 1e-14);
        assert!(partial_trace(&s, &[0]).is_err());
        assert!(partial_trace(xy.algebra(), &[2]).is_err());
        assert!(partial_trace(xy.algebra(), &[0, 1]).is_err());
    }

    #[test]
    fn adjoint_identities() {
        let h = A::complex_herm(2).unwrap();
        let id = LinearChannel::identity(&h);
        assert_eq!(id.adjoint().matrix, id.matrix);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let effects = random::random_effects(&h, 3, &mut rng);
        let m = Measurement::new(effects.clone(), None, 1e-9).unwrap();
        let obs = observation_map(&m).unwrap();
        let adj = obs.adjoint();
        for i in 0..3 {
            let img = adj.apply(&Element::basis(&obs.codomain, i)).unwrap();
            assert!(img.distance(&effects[i]).unwrap() < 1e-12);
        }
        assert!((adj.adjoint().matrix - &obs.matrix).norm() < 1e-12);
    }

    #[test]
    fn identity_report_is_clean() {
        let s = A::spin(3).unwrap();
        let r = channel_report(&LinearChannel::identity(&s), 10, 1e-9, 1).unwrap();
        assert!(r.tp_residual < 1e-14 && r.unit_preserved_residual == 0.0);
        assert!(r.positivity_min_eig >= 0.0);
    }
}
