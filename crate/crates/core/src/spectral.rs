//! Spectral decompositions, CSOIs, Peirce blocks and functional calculus.
//!
//! Closed forms are used for classical, spin and matrix algebras. Everything
//! else (the octonionic algebra, general tensors) goes through the Krylov
//! subalgebra generated by x: an orthonormal basis of span{u, x, x², …} in
//! the metric, the compression of L_x to it, and one idempotent per
//! eigenvalue of that compression.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{
    complex_coeffs, complex_matrix, quat_coeffs, quat_complex_matrix, real_coeffs, real_matrix,
    Algebra, AlgebraKind,
};
use crate::element::Element;
use crate::error::{EjaError, Result};
use crate::random;

/// Relative eigenvalue clustering tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub idempotents: Vec<Element>,
    pub multiplicities: Vec<f64>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CsoiResiduals {
    pub orthogonality: f64,
    pub idempotency: f64,
    pub completeness: f64,
}

fn csoi_residuals(alg: &Algebra, cs: &[Element]) -> CsoiResiduals {
    let mut r = CsoiResiduals::default();
    let mut sum = Element::zero(alg);
    for (i, c) in cs.iter().enumerate() {
        let cc = c.jordan_unchecked(c);
        r.idempotency = r.idempotency.max(cc.axpy(-1.0, c).norm());
        for d in &cs[i + 1..] {
            r.orthogonality = r.orthogonality.max(c.jordan_unchecked(d).norm());
        }
        sum.add_assign_scaled(1.0, c);
    }
    r.completeness = sum.axpy(-1.0, &Element::unit(alg)).norm();
    r
}

impl SpectralDecomposition {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().unwrap()
    }

    /// Σ λ_i c_i.
    pub fn reconstruct(&self) -> Element {
        let alg = self.idempotents[0].algebra().clone();
        let mut x = Element::zero(&alg);
        for (l, c) in self.eigenvalues.iter().zip(&self.idempotents) {
            x.add_assign_scaled(*l, c);
        }
        x
    }

    pub fn residuals(&self) -> CsoiResiduals {
        csoi_residuals(self.idempotents[0].algebra(), &self.idempotents)
    }

    pub fn reconstruction_residual(&self, x: &Element) -> f64 {
        self.reconstruct().axpy(-1.0, x).norm()
    }

    /// Σ f(λ_i) c_i; fails on the first eigenvalue mapped to a non-finite
    /// value.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> Result<Element> {
        let alg = self.idempotents[0].algebra().clone();
        let mut y = Element::zero(&alg);
        for (l, c) in self.eigenvalues.iter().zip(&self.idempotents) {
            let v = f(*l);
            if !v.is_finite() {
                return Err(EjaError::Domain { eigenvalue: *l });
            }
            if v != 0.0 {
                y.add_assign_scaled(v, c);
            }
        }
        Ok(y)
    }

    pub fn csoi(&self) -> Csoi {
        Csoi {
            idempotents: self.idempotents.clone(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Csoi {
    pub idempotents: Vec<Element>,
}

impl Csoi {
    /// Validates orthogonality, idempotency and completeness within `tol`.
    pub fn new(idempotents: Vec<Element>, tol: f64) -> Result<Self> {
        if idempotents.is_empty() {
            return Err(EjaError::Validation("empty CSOI".into()));
        }
        let alg = idempotents[0].algebra().clone();
        for c in &idempotents {
            if !crate::algebra::same_algebra(c.algebra(), &alg) {
                return Err(EjaError::AlgebraMismatch {
                    left: alg.to_string(),
                    right: c.algebra().to_string(),
                });
            }
        }
        let r = csoi_residuals(&alg, &idempotents);
        let scale = (alg.rank as f64).sqrt().max(1.0);
        if r.orthogonality > tol * scale || r.idempotency > tol * scale || r.completeness > tol * scale {
            return Err(EjaError::Validation(format!(
                "not a CSOI: orthogonality {:.3e}, idempotency {:.3e}, completeness {:.3e}",
                r.orthogonality, r.idempotency, r.completeness
            )));
        }
        Ok(Csoi { idempotents })
    }

    pub fn trivial(alg: &Algebra) -> Self {
        Csoi {
            idempotents: vec![Element::unit(alg)],
        }
    }

    pub fn len(&self) -> usize {
        self.idempotents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.idempotents.is_empty()
    }

    pub fn algebra(&self) -> &Algebra {
        self.idempotents[0].algebra()
    }

    pub fn residuals(&self) -> CsoiResiduals {
        csoi_residuals(self.algebra(), &self.idempotents)
    }
}

#[derive(Clone, Debug)]
pub struct PeirceBlocks {
    pub diagonal: Vec<Element>,
    pub off_diagonal: BTreeMap<(usize, usize), Element>,
}

impl PeirceBlocks {
    pub fn residual(&self, x: &Element) -> f64 {
        let mut s = x.clone();
        for d in &self.diagonal {
            s.add_assign_scaled(-1.0, d);
        }
        for o in self.off_diagonal.values() {
            s.add_assign_scaled(-1.0, o);
        }
        s.norm()
    }
}

/// x_i = P_{c_i}(x) and x_ij = P_{c_i+c_j}(x) − x_i − x_j.
pub fn peirce_blocks(c: &Csoi, x: &Element) -> Result<PeirceBlocks> {
    if !crate::algebra::same_algebra(c.algebra(), x.algebra()) {
        return Err(EjaError::AlgebraMismatch {
            left: c.algebra().to_string(),
            right: x.algebra().to_string(),
        });
    }
    let diagonal: Vec<Element> = c.idempotents.iter().map(|ci| ci.quadratic_unchecked(x)).collect();
    let mut off_diagonal = BTreeMap::new();
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            let cij = c.idempotents[i].axpy(1.0, &c.idempotents[j]);
            let xij = cij
                .quadratic_unchecked(x)
                .axpy(-1.0, &diagonal[i])
                .axpy(-1.0, &diagonal[j]);
            off_diagonal.insert((i, j), xij);
        }
    }
    Ok(PeirceBlocks {
        diagonal,
        off_diagonal,
    })
}

// ---------------------------------------------------------------------------

struct Group {
    value: f64,
    weight: f64,
}

/// Clusters sorted values; consecutive gaps ≤ atol join a group. Returns the
/// group id of every input position plus group means.
fn cluster(sorted: &[f64], atol: f64) -> (Vec<usize>, Vec<Group>) {
    let mut ids = Vec::with_capacity(sorted.len());
    let mut groups: Vec<Group> = Vec::new();
    let mut prev = f64::NEG_INFINITY;
    for &v in sorted {
        if groups.is_empty() || v - prev > atol {
            groups.push(Group { value: 0.0, weight: 0.0 });
        }
        let g = groups.last_mut().unwrap();
        g.value += v;
        g.weight += 1.0;
        ids.push(groups.len() - 1);
        prev = v;
    }
    for g in &mut groups {
        g.value /= g.weight;
    }
    (ids, groups)
}

fn finish(eigenvalues: Vec<f64>, idempotents: Vec<Element>) -> SpectralDecomposition {
    let multiplicities = idempotents.iter().map(|c| c.trace()).collect();
    SpectralDecomposition {
        eigenvalues,
        idempotents,
        multiplicities,
    }
}

fn spectral_classical(x: &Element, atol: f64) -> SpectralDecomposition {
    let alg = x.algebra();
    let v = x.coeffs();
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&a, &b| v[a].total_cmp(&v[b]).then(a.cmp(&b)));
    let sorted: Vec<f64> = order.iter().map(|&a| v[a]).collect();
    let (ids, groups) = cluster(&sorted, atol);
    let mut idem = vec![vec![0.0; alg.dim]; groups.len()];
    for (pos, &a) in order.iter().enumerate() {
        idem[ids[pos]][a] = 1.0;
    }
    finish(
        groups.iter().map(|g| g.value).collect(),
        idem.into_iter().map(|c| Element::from_raw(alg, c)).collect(),
    )
}

fn spectral_spin(x: &Element, atol: f64) -> SpectralDecomposition {
    let alg = x.algebra();
    let v = x.coeffs();
    let w = v[1..].iter().map(|a| a * a).sum::<f64>().sqrt();
    if w <= atol {
        return finish(vec![v[0]], vec![Element::unit(alg)]);
    }
    let mk = |sign: f64| {
        let mut c = vec![0.5; v.len()];
        for j in 1..v.len() {
            c[j] = sign * 0.5 * v[j] / w;
        }
        Element::from_raw(alg, c)
    };
    finish(vec![v[0] - w, v[0] + w], vec![mk(-1.0), mk(1.0)])
}

/// Groups eigenpairs and turns each group into a projector through `proj`.
fn from_eigenpairs<F>(alg: &Algebra, values: &[f64], atol: f64, mut proj: F) -> SpectralDecomposition
where
    F: FnMut(&[usize]) -> Vec<f64>,
{
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let sorted: Vec<f64> = order.iter().map(|&a| values[a]).collect();
    let (ids, groups) = cluster(&sorted, atol);
    let mut members = vec![Vec::new(); groups.len()];
    for (pos, &a) in order.iter().enumerate() {
        members[ids[pos]].push(a);
    }
    let idempotents = members
        .iter()
        .map(|cols| Element::from_raw(alg, proj(cols)))
        .collect();
    finish(groups.iter().map(|g| g.value).collect(), idempotents)
}

fn spectral_real(x: &Element, m: usize, atol: f64) -> SpectralDecomposition {
    let eig = SymmetricEigen::new(real_matrix(m, x.coeffs()));
    let vecs = &eig.eigenvectors;
    from_eigenpairs(x.algebra(), eig.eigenvalues.as_slice(), atol, |cols| {
        let mut p = DMatrix::<f64>::zeros(m, m);
        for &c in cols {
            let v = vecs.column(c);
            p += &v * v.transpose();
        }
        real_coeffs(&p)
    })
}

fn complex_projectors<F>(
    x: &Element,
    a: DMatrix<Complex64>,
    atol: f64,
    to_coeffs: F,
) -> SpectralDecomposition
where
    F: Fn(&DMatrix<Complex64>) -> Vec<f64>,
{
    let n = a.nrows();
    let eig = SymmetricEigen::new(a);
    let vecs = &eig.eigenvectors;
    from_eigenpairs(x.algebra(), eig.eigenvalues.as_slice(), atol, |cols| {
        let mut p = DMatrix::<Complex64>::zeros(n, n);
        for &c in cols {
            let v = vecs.column(c);
            p += &v * v.adjoint();
        }
        to_coeffs(&p)
    })
}

fn merge_pieces(
    alg: &Algebra,
    pieces: Vec<(f64, Vec<(usize, f64)>)>,
    atol: f64,
) -> SpectralDecomposition {
    let mut pieces = pieces;
    pieces.sort_by(|a, b| a.0.total_cmp(&b.0));
    let sorted: Vec<f64> = pieces.iter().map(|p| p.0).collect();
    let (ids, groups) = cluster(&sorted, atol);
    let mut idem = vec![vec![0.0; alg.dim]; groups.len()];
    for (pos, (_, entries)) in pieces.into_iter().enumerate() {
        for (a, v) in entries {
            idem[ids[pos]][a] += v;
        }
    }
    finish(
        groups.iter().map(|g| g.value).collect(),
        idem.into_iter().map(|c| Element::from_raw(alg, c)).collect(),
    )
}

fn spectral_sum(x: &Element, summands: &[Algebra], tol: f64, atol: f64) -> Result<SpectralDecomposition> {
    let alg = x.algebra();
    let off = alg.offsets();
    let mut pieces = Vec::new();
    for (s, sub) in summands.iter().enumerate() {
        let xs = Element::from_raw(sub, x.coeffs()[off[s]..off[s + 1]].to_vec());
        let d = spectral_with_atol(&xs, tol, atol)?;
        for (l, c) in d.eigenvalues.into_iter().zip(d.idempotents) {
            let entries = c
                .coeffs()
                .iter()
                .enumerate()
                .map(|(t, v)| (off[s] + t, *v))
                .collect();
            pieces.push((l, entries));
        }
    }
    Ok(merge_pieces(alg, pieces, atol))
}

fn spectral_blocks(x: &Element, tol: f64, atol: f64) -> Result<SpectralDecomposition> {
    let alg = x.algebra();
    let bv = alg.block_view().expect("block view");
    let mut pieces = Vec::new();
    for blk in 0..bv.bases.len() {
        let idx: Vec<usize> = bv.indices(blk).collect();
        let xs = Element::from_raw(&bv.factor, idx.iter().map(|&a| x.coeffs()[a]).collect());
        let d = spectral_with_atol(&xs, tol, atol)?;
        for (l, c) in d.eigenvalues.into_iter().zip(d.idempotents) {
            let entries = c.coeffs().iter().zip(&idx).map(|(v, &a)| (a, *v)).collect();
            pieces.push((l, entries));
        }
    }
    Ok(merge_pieces(alg, pieces, atol))
}

fn spectral_krylov(x: &Element, atol: f64) -> Result<SpectralDecomposition> {
    let alg = x.algebra();
    let scale = x.norm().max(1.0);
    let u = Element::unit(alg);
    let mut basis = vec![u.scale(1.0 / u.norm())];
    let mut images: Vec<Element> = Vec::new();
    loop {
        let k = basis.len() - 1;
        let img = x.jordan_unchecked(&basis[k]);
        let mut v = img.clone();
        images.push(img);
        for _ in 0..2 {
            for q in &basis {
                let c = q.inner_unchecked(&v);
                v.add_assign_scaled(-c, q);
            }
        }
        let h = v.norm();
        if h <= 1e-10 * scale || basis.len() >= alg.dim {
            break;
        }
        basis.push(v.scale(1.0 / h));
    }
    let k = basis.len();
    let mut t = DMatrix::<f64>::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            t[(i, j)] = basis[i].inner_unchecked(&images[j]);
        }
    }
    let t = (&t + t.transpose()) * 0.5;
    let eig = SymmetricEigen::new(t);
    let mut pieces = Vec::with_capacity(k);
    for (col, &theta) in eig.eigenvalues.iter().enumerate() {
        let y = eig.eigenvectors.column(col);
        let mut yel = Element::zero(alg);
        for (i, q) in basis.iter().enumerate() {
            yel.add_assign_scaled(y[i], q);
        }
        let c = yel.scale(yel.inner_unchecked(&u) / yel.inner_unchecked(&yel));
        pieces.push((theta, c.coeffs().iter().copied().enumerate().collect()));
    }
    let d = merge_pieces(alg, pieces, atol);
    let recon = d.reconstruction_residual(x);
    let r = d.residuals();
    let worst = recon.max(r.idempotency).max(r.orthogonality).max(r.completeness);
    if !worst.is_finite() || worst > 1e-6 * scale {
        return Err(EjaError::Degenerate(format!(
            "Krylov decomposition residual {worst:.3e} for an element of norm {:.3e}",
            x.norm()
        )));
    }
    Ok(d)
}

fn spectral_with_atol(x: &Element, tol: f64, atol: f64) -> Result<SpectralDecomposition> {
    let alg = x.algebra();
    if alg.is_classical() {
        return Ok(spectral_classical(x, atol));
    }
    match &alg.kind {
        AlgebraKind::Spin(_) => Ok(spectral_spin(x, atol)),
        AlgebraKind::RealSym(m) => Ok(spectral_real(x, *m, atol)),
        AlgebraKind::ComplexHerm(m) => Ok(complex_projectors(
            x,
            complex_matrix(*m, x.coeffs()),
            atol,
            complex_coeffs,
        )),
        AlgebraKind::QuatHerm(m) => Ok(complex_projectors(
            x,
            quat_complex_matrix(*m, x.coeffs()),
            atol,
            quat_coeffs,
        )),
        AlgebraKind::DirectSum(s) => spectral_sum(x, s, tol, atol),
        AlgebraKind::Tensor(_) if alg.block_view().is_some() => spectral_blocks(x, tol, atol),
        _ => spectral_krylov(x, atol),
    }
}

/// Spectral decomposition with eigenvalues clustered within
/// `tol · max(1, ‖x‖)`.
pub fn spectral(x: &Element, tol: f64) -> Result<SpectralDecomposition> {
    if !x.is_finite() {
        return Err(EjaError::Numeric("non-finite coefficients".into()));
    }
    let atol = tol * x.norm().max(1.0);
    spectral_with_atol(x, tol, atol)
}

/// Forces the minimal-polynomial (Krylov) path regardless of the algebra.
pub fn spectral_generic(x: &Element, tol: f64) -> Result<SpectralDecomposition> {
    let atol = tol * x.norm().max(1.0);
    spectral_krylov(x, atol)
}

pub fn apply_function(x: &Element, f: impl Fn(f64) -> f64, tol: f64) -> Result<Element> {
    spectral(x, tol)?.apply(f)
}

pub fn cone_min_eig(x: &Element, tol: f64) -> Result<f64> {
    Ok(spectral(x, tol)?.min_eigenvalue())
}

// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub algebra: String,
    pub trials: usize,
    pub max_residual_j1: f64,
    pub max_residual_j2: f64,
    pub max_residual_j3: f64,
    pub max_cone_violation: f64,
    pub spectral_failures: usize,
}

impl AxiomReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_residual_j1 <= tol
            && self.max_residual_j2 <= tol
            && self.max_residual_j3 <= tol
            && self.max_cone_violation <= tol
            && self.spectral_failures == 0
    }
}

/// Randomized J1/J2/J3 probe with standard normal coefficients. The cone
/// check samples P_z(w²) and records how far its least eigenvalue falls
/// below zero, relative to max(1, ‖P_z(w²)‖).
pub fn check_axioms(alg: &Algebra, trials: usize, tol: f64, seed: u64) -> AxiomReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = AxiomReport {
        algebra: alg.to_string(),
        trials,
        max_residual_j1: 0.0,
        max_residual_j2: 0.0,
        max_residual_j3: 0.0,
        max_cone_violation: 0.0,
        spectral_failures: 0,
    };
    for _ in 0..trials.max(1) {
        let x = random::random_element(alg, &mut rng);
        let y = random::random_element(alg, &mut rng);
        let z = random::random_element(alg, &mut rng);
        let xy = x.jordan_unchecked(&y);
        let yx = y.jordan_unchecked(&x);
        rep.max_residual_j1 = rep.max_residual_j1.max(xy.axpy(-1.0, &yx).norm());
        let x2 = x.jordan_unchecked(&x);
        let lhs = x2.jordan_unchecked(&xy);
        let rhs = x.jordan_unchecked(&x2.jordan_unchecked(&y));
        rep.max_residual_j2 = rep.max_residual_j2.max(lhs.axpy(-1.0, &rhs).norm());
        let a = xy.inner_unchecked(&z);
        let b = x.inner_unchecked(&y.jordan_unchecked(&z));
        rep.max_residual_j3 = rep.max_residual_j3.max((a - b).abs());
        let w2 = z.jordan_unchecked(&z);
        let p = x.quadratic_unchecked(&w2);
        match cone_min_eig(&p, tol) {
            Ok(m) => {
                let v = (-m / p.norm().max(1.0)).max(0.0);
                rep.max_cone_violation = rep.max_cone_violation.max(v);
            }
            Err(_) => rep.spectral_failures += 1,
        }
    }
    rep
}

/// Eigenvalues of L_c, which is self-adjoint for the metric.
pub fn l_operator_eigenvalues(c: &Element) -> Vec<f64> {
    let l = c.l_operator();
    let w: Vec<f64> = c.algebra().weights().iter().map(|v| v.sqrt()).collect();
    let d = w.len();
    let s = DMatrix::from_fn(d, d, |a, b| w[a] * l[(a, b)] / w[b]);
    let s = (&s + s.transpose()) * 0.5;
    let mut ev: Vec<f64> = SymmetricEigen::new(s).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Random CSOI: the spectral idempotents of a random element, with random
/// adjacent groups merged.
pub fn random_csoi(alg: &Algebra, rng: &mut impl Rng, tol: f64) -> Result<Csoi> {
    let x = random::random_element(alg, rng);
    let d = spectral(&x, tol)?;
    let mut out: Vec<Element> = Vec::new();
    for c in d.idempotents {
        if !out.is_empty() && rng.random_bool(0.3) {
            out.last_mut().unwrap().add_assign_scaled(1.0, &c);
        } else {
            out.push(c);
        }
    }
    Ok(Csoi { idempotents: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraDescriptor as A;

    fn el(alg: &Algebra, c: &[f64]) -> Element {
        Element::new(alg, c.to_vec()).unwrap()
    }

    #[test]
    fn spin_closed_form() {
        let s = A::spin(2).unwrap();
        let d = spectral(&el(&s, &[2.0, 1.0, 0.0]), DEFAULT_TOL).unwrap();
        assert_eq!(d.eigenvalues, vec![1.0, 3.0]);
        assert_eq!(d.idempotents[0].coeffs(), &[0.5, -0.5, 0.0]);
        assert_eq!(d.idempotents[1].coeffs(), &[0.5, 0.5, 0.0]);
        assert_eq!(d.multiplicities, vec![1.0, 1.0]);
        let g = spectral_generic(&el(&s, &[2.0, 1.0, 0.0]), DEFAULT_TOL).unwrap();
        assert!((g.eigenvalues[0] - 1.0).abs() < 1e-12 && (g.eigenvalues[1] - 3.0).abs() < 1e-12);
        assert!(g.idempotents[0].distance(&d.idempotents[0]).unwrap() < 1e-12);
    }

    #[test]
    fn multiple_of_unit() {
        for alg in [A::spin(3).unwrap(), A::complex_herm(3).unwrap(), A::oct_herm3().unwrap()] {
            let x = Element::unit(&alg).scale(5.0);
            let d = spectral(&x, DEFAULT_TOL).unwrap();
            assert_eq!(d.len(), 1);
            assert!((d.eigenvalues[0] - 5.0).abs() < 1e-12);
            assert!(d.idempotents[0].distance(&Element::unit(&alg)).unwrap() < 1e-12);
        }
    }

    #[test]
    fn classical_spectrum() {
        let c = A::classical(3).unwrap();
        let d = spectral(&el(&c, &[0.3, 0.2, 0.5]), DEFAULT_TOL).unwrap();
        assert_eq!(d.eigenvalues, vec![0.2, 0.3, 0.5]);
        assert_eq!(d.idempotents[0].coeffs(), &[0.0, 1.0, 0.0]);
        let l = d.apply(f64::ln).unwrap();
        assert!((l.coeffs()[0] - 0.3f64.ln()).abs() < 1e-15);
        let e = apply_function(&el(&c, &[1.0, -2.0, 3.0]), |t| (0.0 * t).exp(), DEFAULT_TOL).unwrap();
        assert_eq!(e.coeffs(), &[1.0, 1.0, 1.0]);
        assert_eq!(cone_min_eig(&el(&c, &[1.0, -2.0, 3.0]), DEFAULT_TOL).unwrap(), -2.0);
        assert!(matches!(
            apply_function(&el(&c, &[1.0, 0.0, 3.0]), f64::ln, DEFAULT_TOL),
            Err(EjaError::Domain { .. })
        ));
    }

    #[test]
    fn octonion_generic_path() {
        let o = A::oct_herm3().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = random::random_element(&o, &mut rng);
        let d = spectral(&x, DEFAULT_TOL).unwrap();
        assert_eq!(d.len(), 3);
        assert!(d.reconstruction_residual(&x) < 1e-9 * x.norm());
        for m in &d.multiplicities {
            assert!((m - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn quaternion_fast_path_matches_generic() {
        let q = A::quat_herm(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x = random::random_element(&q, &mut rng);
        let a = spectral(&x, DEFAULT_TOL).unwrap();
        let b = spectral_generic(&x, DEFAULT_TOL).unwrap();
        assert_eq!(a.len(), b.len());
        for i in 0..a.len() {
            assert!((a.eigenvalues[i] - b.eigenvalues[i]).abs() < 1e-9);
            assert!(a.idempotents[i].distance(&b.idempotents[i]).unwrap() < 1e-8);
        }
    }

    #[test]
    fn peirce_of_sigma1() {
        let h = A::complex_herm(2).unwrap();
        let c = Csoi::new(vec![el(&h, &[1.0, 0.0, 0.0, 0.0]), el(&h, &[0.0, 1.0, 0.0, 0.0])], 1e-12).unwrap();
        let x = el(&h, &[0.0, 0.0, 1.0, 0.0]);
        let p = peirce_blocks(&c, &x).unwrap();
        assert!(p.diagonal.iter().all(|d| d.norm() < 1e-15));
        assert!(p.off_diagonal[&(0, 1)].distance(&x).unwrap() < 1e-15);
        let t = peirce_blocks(&Csoi::trivial(&h), &x).unwrap();
        assert!(t.diagonal[0].distance(&x).unwrap() < 1e-15 && t.off_diagonal.is_empty());
    }

    #[test]
    fn invalid_csoi_rejected() {
        let h = A::complex_herm(2).unwrap();
        let r = Csoi::new(vec![el(&h, &[1.0, 0.0, 0.0, 0.0])], 1e-9);
        assert!(matches!(r, Err(EjaError::Validation(_))));
    }

    #[test]
    fn peirce_eigenvalue_law() {
        let s = A::spin(3).unwrap();
        let c = el(&s, &[0.5, 0.5, 0.0, 0.0]);
        for v in l_operator_eigenvalues(&c) {
            assert!([0.0, 0.5, 1.0].iter().any(|t| (v - t).abs() < 1e-12));
        }
    }

    #[test]
    fn axioms_simple_and_composite() {
        let r = check_axioms(&A::classical(5).unwrap(), 100, DEFAULT_TOL, 1);
        assert!(r.max_residual_j2 <= 1e-12 && r.passes(1e-12));
        let r = check_axioms(&A::complex_herm(3).unwrap(), 100, DEFAULT_TOL, 1);
        assert!(r.passes(1e-10));
        let s = A::spin(2).unwrap();
        let t = A::tensor(vec![s.clone(), s]).unwrap();
        let r = check_axioms(&t, 20, DEFAULT_TOL, 1);
        assert!(r.max_residual_j1 < 1e-12 && r.max_residual_j3 < 1e-10);
        assert!(r.max_residual_j2 > 1e-3);
    }
}
