//! Plain complex-matrix quantum information, independent of the Jordan
//! machinery. Used as the target-side reference for embeddings.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn pauli(k: usize) -> CMat {
    let z = c(0.0, 0.0);
    let o = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    match k {
        0 => DMatrix::from_row_slice(2, 2, &[o, z, z, o]),
        1 => DMatrix::from_row_slice(2, 2, &[z, o, o, z]),
        2 => DMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
        3 => DMatrix::from_row_slice(2, 2, &[o, z, z, -o]),
        _ => panic!("Pauli index {k}"),
    }
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

pub fn kron_all(ms: &[CMat]) -> CMat {
    let mut acc = DMatrix::from_element(1, 1, c(1.0, 0.0));
    for m in ms {
        acc = kron(&acc, m);
    }
    acc
}

pub fn kron_power(a: &CMat, n: usize) -> CMat {
    kron_all(&vec![a.clone(); n])
}

pub fn hermitize(a: &CMat) -> CMat {
    (a + a.adjoint()) * c(0.5, 0.0)
}

pub fn trace_re(a: &CMat) -> f64 {
    a.trace().re
}

pub fn jordan(a: &CMat, b: &CMat) -> CMat {
    (a * b + b * a) * c(0.5, 0.0)
}

/// Eigenvalues (ascending) and eigenvectors of a Hermitian matrix.
pub fn eigh(a: &CMat) -> (Vec<f64>, CMat) {
    let eig = SymmetricEigen::new(hermitize(a));
    let mut idx: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    idx.sort_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y]));
    let vals = idx.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = DMatrix::from_fn(a.nrows(), a.nrows(), |r, k| eig.eigenvectors[(r, idx[k])]);
    (vals, vecs)
}

/// f applied to the eigenvalues; eigenvalues ≤ cut map to zero.
pub fn func(a: &CMat, cut: f64, f: impl Fn(f64) -> f64) -> CMat {
    let (vals, vecs) = eigh(a);
    let n = a.nrows();
    let mut out = DMatrix::zeros(n, n);
    for (k, l) in vals.iter().enumerate() {
        if *l > cut {
            let v = vecs.column(k);
            out += (&v * v.adjoint()) * c(f(*l), 0.0);
        }
    }
    out
}

const CUT: f64 = 1e-12;

pub fn entropy(rho: &CMat) -> f64 {
    eigh(rho).0.iter().filter(|l| **l > CUT).map(|l| -l * l.ln()).sum()
}

/// Tr ρ(log ρ − log σ); assumes supp ρ ⊆ supp σ.
pub fn relative_entropy(rho: &CMat, sigma: &CMat) -> f64 {
    let lr = func(rho, CUT, f64::ln);
    let ls = func(sigma, CUT, f64::ln);
    trace_re(&(rho * (lr - ls)))
}

/// (1/s) log Tr (σ^{−s/(2(1+s))} ρ σ^{−s/(2(1+s))})^{1+s}.
pub fn sandwiched(rho: &CMat, sigma: &CMat, s: f64) -> f64 {
    let e = -s / (2.0 * (1.0 + s));
    let a = func(sigma, CUT, |m| m.powf(e));
    let y = &a * rho * &a;
    let t: f64 = eigh(&y).0.iter().filter(|l| **l > CUT).map(|l| l.powf(1.0 + s)).sum();
    t.ln() / s
}

/// (1/s) log Tr ρ^{1+s} σ^{−s}.
pub fn petz(rho: &CMat, sigma: &CMat, s: f64) -> f64 {
    let a = func(rho, CUT, |l| l.powf(1.0 + s));
    let b = func(sigma, CUT, |m| m.powf(-s));
    trace_re(&(a * b)).ln() / s
}

/// Spectral projectors of a Hermitian matrix with eigenvalues clustered
/// within `atol`.
pub fn projectors(a: &CMat, atol: f64) -> Vec<(f64, CMat)> {
    let (vals, vecs) = eigh(a);
    let n = a.nrows();
    let mut out: Vec<(f64, CMat, usize)> = Vec::new();
    let mut prev = f64::NEG_INFINITY;
    for (k, l) in vals.iter().enumerate() {
        let v = vecs.column(k);
        let p = &v * v.adjoint();
        if out.is_empty() || l - prev > atol {
            out.push((*l, p, 1));
        } else {
            let last = out.last_mut().unwrap();
            last.0 += l;
            last.1 += p;
            last.2 += 1;
        }
        prev = *l;
    }
    let _ = n;
    out.into_iter().map(|(s, p, k)| (s / k as f64, p)).collect()
}

/// Outcome probabilities of the identity pinched measurement of ρ with
/// respect to σ: project onto σ's eigenspaces, then refine each block by the
/// spectrum of the pinched block.
pub fn pinched_distributions(rho: &CMat, sigma: &CMat, atol: f64) -> (Vec<f64>, Vec<f64>) {
    let mut p = Vec::new();
    let mut q = Vec::new();
    for (mu, pi) in projectors(sigma, atol) {
        let block = &pi * rho * &pi;
        for (_, d) in projectors(&block, atol) {
            let cij = &pi * d * &pi;
            if cij.norm() <= 1e-8 {
                continue;
            }
            p.push(trace_re(&(&cij * rho)));
            q.push(mu * trace_re(&cij));
        }
    }
    (p, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_jordan_products_vanish() {
        for a in 1..4 {
            for b in 1..4 {
                let j = jordan(&pauli(a), &pauli(b));
                if a == b {
                    assert!((j - pauli(0)).norm() < 1e-15);
                } else {
                    assert!(j.norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn maximally_mixed_entropy() {
        let m = pauli(0) * c(0.5, 0.0);
        assert!((entropy(&m) - 2f64.ln()).abs() < 1e-14);
        assert!(relative_entropy(&m, &m).abs() < 1e-14);
    }
}
