//! Embeddings of special algebras into complex Hermitian matrices.
//!
//! Duality is taken against the ordinary matrix trace, so
//! Tr φ(x)φ(y) = k⟨x,y⟩ with k = 2^{n−1} for Jordan–Wigner images on n
//! qubits, 2 for the quaternionic block embedding and 1 for inclusions. The
//! state section ψ divides by that factor; relative quantities are
//! unaffected while H(ψρ) − H(ρ) = log k.

use nalgebra::{Cholesky, DMatrix, DVector};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{complex_coeffs, complex_matrix, quat_complex_matrix, Algebra, AlgebraDescriptor, AlgebraKind};
use crate::element::Element;
use crate::entropy::{self, State};
use crate::error::{EjaError, Result};
use crate::hypothesis::{self, PinchOptions};
use crate::qmat::{self, c, CMat};
use crate::random;

pub const OCTONION_MESSAGE: &str = "the 3x3 octonionic Hermitian algebra is exceptional: \
     it has no embedding as a Jordan subalgebra of complex Hermitian matrices";

#[derive(Clone, Debug)]
pub struct Embedding {
    pub source: Algebra,
    pub target: Algebra,
    pub images: Vec<CMat>,
    pub name: String,
    gram: Cholesky<f64, nalgebra::Dyn>,
}

impl Embedding {
    pub fn from_images(source: &Algebra, images: Vec<CMat>, name: impl Into<String>) -> Result<Self> {
        if images.len() != source.dim {
            return Err(EjaError::InvalidArgument(format!(
                "{} images for a {}-dimensional algebra",
                images.len(),
                source.dim
            )));
        }
        let n = images[0].nrows();
        let d = source.dim;
        let g = DMatrix::from_fn(d, d, |a, b| qmat::trace_re(&(&images[a] * &images[b])));
        let gram = Cholesky::new(g)
            .ok_or_else(|| EjaError::Singular("basis images are linearly dependent".into()))?;
        Ok(Embedding {
            source: source.clone(),
            target: AlgebraDescriptor::complex_herm(n)?,
            images,
            name: name.into(),
            gram,
        })
    }

    /// Matrix size N of the target.
    pub fn size(&self) -> usize {
        self.images[0].nrows()
    }

    pub fn basis_images(&self) -> Vec<Element> {
        self.images
            .iter()
            .map(|m| Element::from_raw(&self.target, complex_coeffs(m)))
            .collect()
    }

    pub fn apply_matrix(&self, x: &Element) -> CMat {
        let n = self.size();
        let mut out = DMatrix::zeros(n, n);
        for (v, m) in x.coeffs().iter().zip(&self.images) {
            if *v != 0.0 {
                out += m * c(*v, 0.0);
            }
        }
        out
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        if !crate::algebra::same_algebra(x.algebra(), &self.source) {
            return Err(EjaError::AlgebraMismatch {
                left: self.source.to_string(),
                right: x.algebra().to_string(),
            });
        }
        Ok(Element::from_raw(&self.target, complex_coeffs(&self.apply_matrix(x))))
    }

    /// φ*(X) with ⟨φ*(X), e_b⟩ = Tr X φ(e_b).
    pub fn pull_back_matrix(&self, x: &CMat) -> Element {
        let w = self.source.weights();
        let coeffs = self
            .images
            .iter()
            .zip(w)
            .map(|(m, wb)| qmat::trace_re(&(x * m)) / wb)
            .collect();
        Element::from_raw(&self.source, coeffs)
    }

    pub fn pull_back(&self, x: &Element) -> Result<Element> {
        if !crate::algebra::same_algebra(x.algebra(), &self.target) {
            return Err(EjaError::AlgebraMismatch {
                left: self.target.to_string(),
                right: x.algebra().to_string(),
            });
        }
        let n = self.size();
        Ok(self.pull_back_matrix(&complex_matrix(n, x.coeffs())))
    }

    /// ψ(ρ): the element of span φ(V) whose pull-back is ρ.
    pub fn push_state_matrix(&self, rho: &Element) -> CMat {
        let w = self.source.weights();
        let rhs = DVector::from_iterator(rho.coeffs().len(), rho.coeffs().iter().zip(w).map(|(r, wb)| r * wb));
        let coef = self.gram.solve(&rhs);
        let n = self.size();
        let mut out = DMatrix::zeros(n, n);
        for (v, m) in coef.iter().zip(&self.images) {
            out += m * c(*v, 0.0);
        }
        out
    }

    pub fn push_state(&self, rho: &State) -> Result<State> {
        let m = self.push_state_matrix(rho.element());
        Ok(State::new_unchecked(Element::from_raw(&self.target, complex_coeffs(&m))))
    }

    /// k with Tr φ(x)φ(y) = k⟨x,y⟩ (read off at the unit).
    pub fn trace_scale(&self) -> f64 {
        let u = Element::unit(&self.source);
        let pu = self.apply_matrix(&u);
        qmat::trace_re(&(&pu * &pu)) / u.inner_unchecked(&u)
    }

    /// max over basis pairs of ‖φ(e_a∘e_b) − φ(e_a)∘φ(e_b)‖_F.
    pub fn hom_residual(&self) -> f64 {
        let d = self.source.dim;
        let mut worst: f64 = 0.0;
        for a in 0..d {
            for b in a..d {
                let prod = Element::basis(&self.source, a).jordan_unchecked(&Element::basis(&self.source, b));
                let lhs = self.apply_matrix(&prod);
                let rhs = qmat::jordan(&self.images[a], &self.images[b]);
                worst = worst.max((lhs - rhs).norm());
            }
        }
        worst
    }

    pub fn unit_residual(&self) -> f64 {
        let n = self.size();
        (self.apply_matrix(&Element::unit(&self.source)) - DMatrix::identity(n, n)).norm()
    }

    /// Images as `[{re: [[..]], im: [[..]]}, ...]`, row-major.
    pub fn export_json(&self) -> serde_json::Value {
        let n = self.size();
        let imgs: Vec<serde_json::Value> = self
            .images
            .iter()
            .map(|m| {
                let re: Vec<Vec<f64>> = (0..n).map(|r| (0..n).map(|k| m[(r, k)].re).collect()).collect();
                let im: Vec<Vec<f64>> = (0..n).map(|r| (0..n).map(|k| m[(r, k)].im).collect()).collect();
                serde_json::json!({ "re": re, "im": im })
            })
            .collect();
        serde_json::json!({
            "name": self.name,
            "source": self.source.to_string(),
            "target": self.target.to_string(),
            "labels": self.source.basis_labels,
            "images": imgs,
        })
    }
}

fn pauli_string(ops: &[usize]) -> CMat {
    qmat::kron_all(&ops.iter().map(|&k| qmat::pauli(k)).collect::<Vec<_>>())
}

/// Jordan–Wigner strings on n qubits: λ_{2k−1} = σ0^{⊗k−1}⊗σ1⊗σ3^{⊗n−k},
/// λ_{2k} = σ0^{⊗k−1}⊗σ2⊗σ3^{⊗n−k}, optionally followed by σ3^{⊗n}.
pub fn jw_lambdas(n_qubits: usize, odd_extra: bool) -> Vec<CMat> {
    let mut out = Vec::with_capacity(2 * n_qubits + 1);
    for k in 1..=n_qubits {
        for s in [1, 2] {
            let ops: Vec<usize> = (1..=n_qubits)
                .map(|q| if q < k { 0 } else if q == k { s } else { 3 })
                .collect();
            out.push(pauli_string(&ops));
        }
    }
    if odd_extra {
        out.push(pauli_string(&vec![3; n_qubits]));
    }
    out
}

/// Spin(d) into 2^⌈d/2⌉ × 2^⌈d/2⌉ matrices: e0 ↦ I, e_j ↦ λ_j, with the
/// all-σ3 string standing in for the last generator when d is odd.
pub fn embed_spin(d: usize) -> Result<Embedding> {
    let src = AlgebraDescriptor::spin(d)?;
    let n = d.div_ceil(2);
    let odd = d % 2 == 1;
    let lam = jw_lambdas(n, odd);
    let dim = 1usize << n;
    let mut images = vec![DMatrix::identity(dim, dim)];
    if odd {
        images.extend(lam[..d - 1].iter().cloned());
        images.push(lam.last().unwrap().clone());
    } else {
        images.extend(lam);
    }
    Embedding::from_images(&src, images, format!("jw(spin:{d})"))
}

fn embed_by(src: &Algebra, to_matrix: impl Fn(&[f64]) -> CMat, name: String) -> Result<Embedding> {
    let images = (0..src.dim)
        .map(|a| to_matrix(Element::basis(src, a).coeffs()))
        .collect();
    Embedding::from_images(src, images, name)
}

/// QuatHerm(m) into ComplexHerm(2m), entrywise a+bi+cj+dk ↦ [[a+bi, c+di], [−c+di, a−bi]].
pub fn embed_quat(m: usize) -> Result<Embedding> {
    let src = AlgebraDescriptor::quat_herm(m)?;
    embed_by(&src, |x| quat_complex_matrix(m, x), format!("quat(qherm:{m})"))
}

/// Inclusion of real symmetric into complex Hermitian matrices.
pub fn embed_realsym(m: usize) -> Result<Embedding> {
    let src = AlgebraDescriptor::real_sym(m)?;
    embed_by(
        &src,
        |x| crate::algebra::real_matrix(m, x).map(|v| c(v, 0.0)),
        format!("incl(realsym:{m})"),
    )
}

pub fn embed_cherm(m: usize) -> Result<Embedding> {
    let src = AlgebraDescriptor::complex_herm(m)?;
    embed_by(&src, |x| complex_matrix(m, x), format!("id(cherm:{m})"))
}

/// Classical(d) onto diagonal matrices.
pub fn embed_classical(d: usize) -> Result<Embedding> {
    let src = AlgebraDescriptor::classical(d)?;
    embed_by(
        &src,
        |x| DMatrix::from_diagonal(&DVector::from_iterator(d, x.iter().map(|v| c(*v, 0.0)))),
        format!("diag(classical:{d})"),
    )
}

fn block_diag(parts: &[CMat]) -> CMat {
    let n: usize = parts.iter().map(|p| p.nrows()).sum();
    let mut out = DMatrix::zeros(n, n);
    let mut off = 0;
    for p in parts {
        let k = p.nrows();
        out.view_mut((off, off), (k, k)).copy_from(p);
        off += k;
    }
    out
}

/// Canonical embedding for any special algebra (direct sums block-diagonally).
pub fn canonical_embedding(alg: &Algebra) -> Result<Embedding> {
    match &alg.kind {
        AlgebraKind::Classical(d) => embed_classical(*d),
        AlgebraKind::RealSym(m) => embed_realsym(*m),
        AlgebraKind::ComplexHerm(m) => embed_cherm(*m),
        AlgebraKind::QuatHerm(m) => embed_quat(*m),
        AlgebraKind::Spin(d) => embed_spin(*d),
        AlgebraKind::OctHerm3 => Err(EjaError::Unsupported(OCTONION_MESSAGE.into())),
        AlgebraKind::DirectSum(s) => {
            let parts: Vec<Embedding> = s.iter().map(canonical_embedding).collect::<Result<_>>()?;
            let mut images = Vec::with_capacity(alg.dim);
            for (i, p) in parts.iter().enumerate() {
                for img in &p.images {
                    let blocks: Vec<CMat> = parts
                        .iter()
                        .enumerate()
                        .map(|(j, q)| if i == j { img.clone() } else { DMatrix::zeros(q.size(), q.size()) })
                        .collect();
                    images.push(block_diag(&blocks));
                }
            }
            Embedding::from_images(alg, images, format!("sum({alg})"))
        }
        AlgebraKind::Tensor(_) => Err(EjaError::Unsupported(
            "embeddings of tensor composites are built factor-wise by the hypothesis pipeline".into(),
        )),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingReport {
    pub embedding: String,
    pub trials: usize,
    pub hom_residual: f64,
    pub unit_residual: f64,
    pub duality_residual: f64,
    pub canonicity_residual: f64,
    pub trace_scale: f64,
    pub d_preservation_max_err: f64,
    pub srr_preservation_max_err: f64,
    pub s_grid: Vec<f64>,
    pub h_shift_observed: f64,
    pub h_shift_expected: f64,
    pub beta_preservation_max_err: f64,
}

impl EmbeddingReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.d_preservation_max_err <= tol
            && self.srr_preservation_max_err <= tol
            && self.hom_residual <= 1e-12
            && self.duality_residual <= 1e-9
            && self.beta_preservation_max_err <= 1e-6
    }
}

/// Randomized check of the embedding: Jordan homomorphism, duality φ*∘ψ =
/// id, preservation of D and D̃_{1+s} against plain matrix formulas, the
/// entropy shift, and pinched Neyman–Pearson β at n = 1, 2 recomputed with
/// plain matrices.
pub fn verify_embedding(emb: &Embedding, trials: usize, s_grid: &[f64], seed: u64) -> Result<EmbeddingReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = emb.trace_scale();
    let mut rep = EmbeddingReport {
        embedding: emb.name.clone(),
        trials,
        hom_residual: emb.hom_residual(),
        unit_residual: emb.unit_residual(),
        duality_residual: 0.0,
        canonicity_residual: 0.0,
        trace_scale: k,
        d_preservation_max_err: 0.0,
        srr_preservation_max_err: 0.0,
        s_grid: s_grid.to_vec(),
        h_shift_observed: 0.0,
        h_shift_expected: k.ln(),
        beta_preservation_max_err: 0.0,
    };
    let mut h_shift_sum = 0.0;
    for t in 0..trials.max(1) {
        let rho = State::new_unchecked(random::random_state_element(&emb.source, &mut rng));
        let sigma = State::new_unchecked(random::random_state_element(&emb.source, &mut rng));
        let pr = emb.push_state_matrix(rho.element());
        let ps = emb.push_state_matrix(sigma.element());
        rep.duality_residual = rep
            .duality_residual
            .max(emb.pull_back_matrix(&pr).axpy(-1.0, rho.element()).norm());
        let x = random::random_cone(&emb.source, &mut rng);
        rep.canonicity_residual = rep.canonicity_residual.max(
            emb.pull_back_matrix(&emb.apply_matrix(&x)).scale(1.0 / k).axpy(-1.0, &x).norm() / x.norm().max(1.0),
        );
        let d_src = entropy::relative_entropy(&rho, &sigma)?.to_f64();
        let d_q = qmat::relative_entropy(&pr, &ps);
        rep.d_preservation_max_err = rep.d_preservation_max_err.max((d_src - d_q).abs());
        for &s in s_grid {
            let a = entropy::srr(&rho, &sigma, s)?.to_f64();
            let b = qmat::sandwiched(&pr, &ps, s);
            rep.srr_preservation_max_err = rep.srr_preservation_max_err.max((a - b).abs());
        }
        h_shift_sum += qmat::entropy(&pr) - entropy::vn_entropy(&rho)?;
        if t < 5 {
            for n in 1..=2 {
                let opts = PinchOptions::default();
                let lib = hypothesis::pinched_beta(&rho, &sigma, n, 0.05, &opts)?;
                let (p, q) = qmat::pinched_distributions(&qmat::kron_power(&pr, n), &qmat::kron_power(&ps, n), 1e-9);
                let oracle = hypothesis::classical_np(&p, &q, 0.05)?;
                rep.beta_preservation_max_err = rep
                    .beta_preservation_max_err
                    .max((lib.np.beta_randomized - oracle.beta_randomized).abs());
            }
        }
    }
    rep.h_shift_observed = h_shift_sum / trials.max(1) as f64;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jw_small_cases() {
        let l = jw_lambdas(1, false);
        assert!((&l[0] - qmat::pauli(1)).norm() < 1e-15);
        assert!((&l[1] - qmat::pauli(2)).norm() < 1e-15);
        let l2 = jw_lambdas(2, true);
        assert!((&l2[0] - qmat::kron(&qmat::pauli(1), &qmat::pauli(3))).norm() < 1e-15);
        let id = DMatrix::<num_complex::Complex64>::identity(4, 4);
        for (a, x) in l2.iter().enumerate() {
            for (b, y) in l2.iter().enumerate() {
                let j = qmat::jordan(x, y);
                if a == b {
                    assert!((j - &id).norm() < 1e-15);
                } else {
                    assert!(j.norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn spin_embeddings_are_homomorphisms() {
        for d in 1..=6 {
            let e = embed_spin(d).unwrap();
            assert_eq!(e.size(), 1 << d.div_ceil(2));
            assert!(e.hom_residual() < 1e-12, "d={d}");
            assert!(e.unit_residual() < 1e-15);
        }
        let e = embed_spin(2).unwrap();
        assert_eq!(e.size(), 2);
        assert!((&e.images[1] - qmat::pauli(1)).norm() < 1e-15);
        assert!((&e.images[2] - qmat::pauli(2)).norm() < 1e-15);
    }

    #[test]
    fn quaternion_blocks() {
        let e = embed_quat(1).unwrap();
        let one = &e.images[0];
        assert!((one - DMatrix::identity(2, 2)).norm() < 1e-15);
        let e2 = embed_quat(2).unwrap();
        assert!(e2.hom_residual() < 1e-12);
        // (0,1) entry i
        let i_img = &e2.images[3];
        assert_eq!(i_img[(0, 2)], c(0.0, 1.0));
        assert_eq!(i_img[(1, 3)], c(0.0, -1.0));
    }

    #[test]
    fn push_state_examples() {
        let e = embed_spin(2).unwrap();
        let rho = State::new_unchecked(Element::new(&e.source, vec![0.5, 0.3, 0.0]).unwrap());
        let m = e.push_state_matrix(rho.element());
        let expected = (qmat::pauli(0) + qmat::pauli(1) * c(0.6, 0.0)) * c(0.5, 0.0);
        assert!((m - expected).norm() < 1e-15);
        for d in [3, 4, 5] {
            let e = embed_spin(d).unwrap();
            let mm = State::maximally_mixed(&e.source);
            let n = e.size();
            let target = DMatrix::<num_complex::Complex64>::identity(n, n) * c(1.0 / n as f64, 0.0);
            assert!((e.push_state_matrix(mm.element()) - target).norm() < 1e-14);
        }
    }

    #[test]
    fn octonions_refused() {
        let o = AlgebraDescriptor::oct_herm3().unwrap();
        assert!(matches!(canonical_embedding(&o), Err(EjaError::Unsupported(_))));
    }

    #[test]
    fn direct_sum_embedding() {
        let a = crate::config::parse_algebra("sum(spin:2,classical:1)").unwrap();
        let e = canonical_embedding(&a).unwrap();
        assert_eq!(e.size(), 3);
        assert!(e.hom_residual() < 1e-12 && e.unit_residual() < 1e-15);
    }
}
