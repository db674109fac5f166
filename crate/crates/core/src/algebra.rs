//! Algebra descriptors: basis, metric, unit and product backends for the
//! simple families, direct sums and tensor composites.
//!
//! Every basis is orthogonal, so the metric is stored as a weight vector.
//! Weights are chosen so that primitive idempotents have trace one.

use std::fmt;
use std::sync::{Arc, OnceLock};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{EjaError, Result};

pub type Algebra = Arc<AlgebraDescriptor>;

/// Sparse structure constants, indexed by `a * dim + b`.
pub type Table = Vec<Vec<(usize, f64)>>;

#[derive(Clone, Debug)]
pub enum AlgebraKind {
    Classical(usize),
    RealSym(usize),
    ComplexHerm(usize),
    QuatHerm(usize),
    Spin(usize),
    OctHerm3,
    DirectSum(Vec<Algebra>),
    Tensor(Vec<Algebra>),
}

impl PartialEq for AlgebraKind {
    fn eq(&self, other: &Self) -> bool {
        use AlgebraKind::*;
        match (self, other) {
            (Classical(a), Classical(b)) => a == b,
            (RealSym(a), RealSym(b)) => a == b,
            (ComplexHerm(a), ComplexHerm(b)) => a == b,
            (QuatHerm(a), QuatHerm(b)) => a == b,
            (Spin(a), Spin(b)) => a == b,
            (OctHerm3, OctHerm3) => true,
            (DirectSum(a), DirectSum(b)) | (Tensor(a), Tensor(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.kind == y.kind)
            }
            _ => false,
        }
    }
}

/// Layout of a tensor algebra with at most one non-classical factor: the
/// algebra is a direct sum of copies of that factor.
#[derive(Debug)]
pub(crate) struct BlockView {
    pub factor: Algebra,
    pub stride: usize,
    pub bases: Vec<usize>,
}

impl BlockView {
    pub fn indices(&self, block: usize) -> impl Iterator<Item = usize> + '_ {
        let base = self.bases[block];
        (0..self.factor.dim).map(move |t| base + t * self.stride)
    }
}

#[derive(Debug)]
pub struct AlgebraDescriptor {
    pub kind: AlgebraKind,
    pub dim: usize,
    pub rank: usize,
    pub basis_labels: Vec<String>,
    weights: Vec<f64>,
    unit: Vec<f64>,
    table: OnceLock<Arc<Table>>,
    offsets: Vec<usize>,
    digits: Vec<Vec<usize>>,
    block: Option<BlockView>,
}

impl PartialEq for AlgebraDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

pub fn same_algebra(a: &Algebra, b: &Algebra) -> bool {
    Arc::ptr_eq(a, b) || a.kind == b.kind
}

// ---------------------------------------------------------------------------
// Cayley-Dickson arithmetic on 8-component hypercomplex numbers.

pub(crate) type Oct = [f64; 8];

fn cd_conj(a: &[f64]) -> Vec<f64> {
    let mut out = a.to_vec();
    for v in out.iter_mut().skip(1) {
        *v = -*v;
    }
    out
}

fn cd_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len();
    if n == 1 {
        return vec![a[0] * b[0]];
    }
    let h = n / 2;
    let (a1, a2) = a.split_at(h);
    let (b1, b2) = b.split_at(h);
    // (a1,a2)(b1,b2) = (a1 b1 - conj(b2) a2, b2 a1 + a2 conj(b1))
    let l1 = cd_mul(a1, b1);
    let l2 = cd_mul(&cd_conj(b2), a2);
    let r1 = cd_mul(b2, a1);
    let r2 = cd_mul(a2, &cd_conj(b1));
    let mut out = Vec::with_capacity(n);
    out.extend(l1.iter().zip(&l2).map(|(x, y)| x - y));
    out.extend(r1.iter().zip(&r2).map(|(x, y)| x + y));
    out
}

pub(crate) fn oct_mul(a: &Oct, b: &Oct) -> Oct {
    let v = cd_mul(a, b);
    let mut out = [0.0; 8];
    out.copy_from_slice(&v);
    out
}

pub(crate) fn oct_conj(a: &Oct) -> Oct {
    let mut out = *a;
    for v in out.iter_mut().skip(1) {
        *v = -*v;
    }
    out
}

const UNIT_NAMES: [&str; 8] = ["", "i", "j", "k", "l", "il", "jl", "kl"];

/// Hermitian matrices over R, C, H or O (k = 1, 2, 4, 8 units).
#[derive(Clone, Copy, Debug)]
pub(crate) struct HermShape {
    pub m: usize,
    pub k: usize,
}

impl HermShape {
    pub fn dim(&self) -> usize {
        self.m + self.k * self.m * (self.m - 1) / 2
    }

    /// Index of the off-diagonal basis element at (i, j), i < j, unit t.
    pub fn off_index(&self, i: usize, j: usize, t: usize) -> usize {
        let m = self.m;
        let pair = i * (2 * m - i - 1) / 2 + (j - i - 1);
        m + pair * self.k + t
    }

    pub fn to_entries(&self, x: &[f64]) -> Vec<Oct> {
        let m = self.m;
        let mut a = vec![[0.0; 8]; m * m];
        for i in 0..m {
            a[i * m + i][0] = x[i];
            for j in i + 1..m {
                let mut e = [0.0; 8];
                for t in 0..self.k {
                    e[t] = x[self.off_index(i, j, t)];
                }
                a[i * m + j] = e;
                a[j * m + i] = oct_conj(&e);
            }
        }
        a
    }

    pub fn from_entries(&self, a: &[Oct]) -> Vec<f64> {
        let m = self.m;
        let mut x = vec![0.0; self.dim()];
        for i in 0..m {
            x[i] = a[i * m + i][0];
            for j in i + 1..m {
                for t in 0..self.k {
                    x[self.off_index(i, j, t)] = a[i * m + j][t];
                }
            }
        }
        x
    }

    fn jordan_entries(&self, a: &[Oct], b: &[Oct]) -> Vec<Oct> {
        let m = self.m;
        let mut out = vec![[0.0; 8]; m * m];
        for i in 0..m {
            for j in 0..m {
                let mut acc = [0.0; 8];
                for l in 0..m {
                    let p = oct_mul(&a[i * m + l], &b[l * m + j]);
                    let q = oct_mul(&b[i * m + l], &a[l * m + j]);
                    for t in 0..8 {
                        acc[t] += 0.5 * (p[t] + q[t]);
                    }
                }
                out[i * m + j] = acc;
            }
        }
        out
    }

    pub fn labels(&self) -> Vec<String> {
        let mut labels = vec![String::new(); self.dim()];
        for i in 0..self.m {
            labels[i] = format!("E{}{}", i + 1, i + 1);
            for j in i + 1..self.m {
                for t in 0..self.k {
                    let suffix = if t == 0 {
                        String::new()
                    } else {
                        format!(".{}", UNIT_NAMES[t])
                    };
                    labels[self.off_index(i, j, t)] = format!("F{}{}{}", i + 1, j + 1, suffix);
                }
            }
        }
        labels
    }

    pub fn weights(&self) -> Vec<f64> {
        (0..self.dim())
            .map(|a| if a < self.m { 1.0 } else { 2.0 })
            .collect()
    }

    pub fn unit(&self) -> Vec<f64> {
        (0..self.dim())
            .map(|a| if a < self.m { 1.0 } else { 0.0 })
            .collect()
    }

    fn table(&self) -> Table {
        let d = self.dim();
        let mut basis = Vec::with_capacity(d);
        for a in 0..d {
            let mut e = vec![0.0; d];
            e[a] = 1.0;
            basis.push(self.to_entries(&e));
        }
        let mut table = vec![Vec::new(); d * d];
        for a in 0..d {
            for b in a..d {
                let prod = self.from_entries(&self.jordan_entries(&basis[a], &basis[b]));
                let terms: Vec<(usize, f64)> = prod
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| v.abs() > 1e-15)
                    .map(|(c, v)| (c, *v))
                    .collect();
                table[b * d + a] = terms.clone();
                table[a * d + b] = terms;
            }
        }
        table
    }
}

// ---------------------------------------------------------------------------
// Matrix views used by the RealSym / ComplexHerm backends and by the spectral
// fast paths.

pub(crate) fn real_matrix(m: usize, x: &[f64]) -> DMatrix<f64> {
    let shape = HermShape { m, k: 1 };
    let mut a = DMatrix::zeros(m, m);
    for i in 0..m {
        a[(i, i)] = x[i];
        for j in i + 1..m {
            let v = x[shape.off_index(i, j, 0)];
            a[(i, j)] = v;
            a[(j, i)] = v;
        }
    }
    a
}

pub(crate) fn real_coeffs(a: &DMatrix<f64>) -> Vec<f64> {
    let m = a.nrows();
    let shape = HermShape { m, k: 1 };
    let mut x = vec![0.0; shape.dim()];
    for i in 0..m {
        x[i] = a[(i, i)];
        for j in i + 1..m {
            x[shape.off_index(i, j, 0)] = 0.5 * (a[(i, j)] + a[(j, i)]);
        }
    }
    x
}

pub(crate) fn complex_matrix(m: usize, x: &[f64]) -> DMatrix<Complex64> {
    let shape = HermShape { m, k: 2 };
    let mut a = DMatrix::zeros(m, m);
    for i in 0..m {
        a[(i, i)] = Complex64::new(x[i], 0.0);
        for j in i + 1..m {
            let v = Complex64::new(x[shape.off_index(i, j, 0)], x[shape.off_index(i, j, 1)]);
            a[(i, j)] = v;
            a[(j, i)] = v.conj();
        }
    }
    a
}

pub(crate) fn complex_coeffs(a: &DMatrix<Complex64>) -> Vec<f64> {
    let m = a.nrows();
    let shape = HermShape { m, k: 2 };
    let mut x = vec![0.0; shape.dim()];
    for i in 0..m {
        x[i] = a[(i, i)].re;
        for j in i + 1..m {
            let v = 0.5 * (a[(i, j)] + a[(j, i)].conj());
            x[shape.off_index(i, j, 0)] = v.re;
            x[shape.off_index(i, j, 1)] = v.im;
        }
    }
    x
}

/// Complex 2x2 block of a quaternion a + bi + cj + dk.
pub(crate) fn quat_block(q: &[f64]) -> [[Complex64; 2]; 2] {
    [
        [Complex64::new(q[0], q[1]), Complex64::new(q[2], q[3])],
        [Complex64::new(-q[2], q[3]), Complex64::new(q[0], -q[1])],
    ]
}

pub(crate) fn quat_complex_matrix(m: usize, x: &[f64]) -> DMatrix<Complex64> {
    let shape = HermShape { m, k: 4 };
    let entries = shape.to_entries(x);
    let mut a = DMatrix::zeros(2 * m, 2 * m);
    for i in 0..m {
        for j in 0..m {
            let blk = quat_block(&entries[i * m + j][..4]);
            for r in 0..2 {
                for c in 0..2 {
                    a[(2 * i + r, 2 * j + c)] = blk[r][c];
                }
            }
        }
    }
    a
}

/// Inverse of `quat_complex_matrix` on its image (reads the upper rows of
/// each block and symmetrizes).
pub(crate) fn quat_coeffs(a: &DMatrix<Complex64>) -> Vec<f64> {
    let m = a.nrows() / 2;
    let shape = HermShape { m, k: 4 };
    let mut entries = vec![[0.0; 8]; m * m];
    for i in 0..m {
        for j in 0..m {
            let p = a[(2 * i, 2 * j)];
            let q = a[(2 * i, 2 * j + 1)];
            let r = a[(2 * i + 1, 2 * j)];
            let s = a[(2 * i + 1, 2 * j + 1)];
            entries[i * m + j] = [
                0.5 * (p.re + s.re),
                0.5 * (p.im - s.im),
                0.5 * (q.re - r.re),
                0.5 * (q.im + r.im),
                0.0,
                0.0,
                0.0,
                0.0,
            ];
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            let up = entries[i * m + j];
            let lo = oct_conj(&entries[j * m + i]);
            let mut avg = [0.0; 8];
            for t in 0..4 {
                avg[t] = 0.5 * (up[t] + lo[t]);
            }
            entries[i * m + j] = avg;
        }
    }
    shape.from_entries(&entries)
}

// ---------------------------------------------------------------------------

impl AlgebraDescriptor {
    fn base(kind: AlgebraKind, dim: usize, rank: usize, labels: Vec<String>, weights: Vec<f64>, unit: Vec<f64>) -> Self {
        AlgebraDescriptor {
            kind,
            dim,
            rank,
            basis_labels: labels,
            weights,
            unit,
            table: OnceLock::new(),
            offsets: Vec::new(),
            digits: Vec::new(),
            block: None,
        }
    }

    pub fn classical(d: usize) -> Result<Algebra> {
        if d == 0 {
            return Err(EjaError::Construction("classical dimension must be >= 1".into()));
        }
        let labels = (1..=d).map(|i| format!("u{i}")).collect();
        Ok(Arc::new(Self::base(
            AlgebraKind::Classical(d),
            d,
            d,
            labels,
            vec![1.0; d],
            vec![1.0; d],
        )))
    }

    pub fn spin(d: usize) -> Result<Algebra> {
        if d == 0 {
            return Err(EjaError::Construction("spin dimension must be >= 1".into()));
        }
        let labels = (0..=d).map(|i| format!("e{i}")).collect();
        let mut unit = vec![0.0; d + 1];
        unit[0] = 1.0;
        Ok(Arc::new(Self::base(
            AlgebraKind::Spin(d),
            d + 1,
            2,
            labels,
            vec![2.0; d + 1],
            unit,
        )))
    }

    fn herm(kind: AlgebraKind, shape: HermShape) -> Result<Algebra> {
        if shape.m == 0 {
            return Err(EjaError::Construction("matrix size must be >= 1".into()));
        }
        let desc = Self::base(
            kind,
            shape.dim(),
            shape.m,
            shape.labels(),
            shape.weights(),
            shape.unit(),
        );
        if shape.k >= 4 {
            let _ = desc.table.set(Arc::new(shape.table()));
        }
        Ok(Arc::new(desc))
    }

    pub fn real_sym(m: usize) -> Result<Algebra> {
        Self::herm(AlgebraKind::RealSym(m), HermShape { m, k: 1 })
    }

    pub fn complex_herm(m: usize) -> Result<Algebra> {
        Self::herm(AlgebraKind::ComplexHerm(m), HermShape { m, k: 2 })
    }

    pub fn quat_herm(m: usize) -> Result<Algebra> {
        Self::herm(AlgebraKind::QuatHerm(m), HermShape { m, k: 4 })
    }

    pub fn oct_herm3() -> Result<Algebra> {
        Self::herm(AlgebraKind::OctHerm3, HermShape { m: 3, k: 8 })
    }

    pub fn direct_sum(summands: Vec<Algebra>) -> Result<Algebra> {
        if summands.is_empty() {
            return Err(EjaError::Construction("direct sum needs at least one summand".into()));
        }
        let mut offsets = Vec::with_capacity(summands.len() + 1);
        let mut labels = Vec::new();
        let mut weights = Vec::new();
        let mut unit = Vec::new();
        let mut off = 0;
        let mut rank = 0;
        for (s, alg) in summands.iter().enumerate() {
            offsets.push(off);
            off += alg.dim;
            rank += alg.rank;
            labels.extend(alg.basis_labels.iter().map(|l| format!("{}[{}]", l, s)));
            weights.extend_from_slice(&alg.weights);
            unit.extend_from_slice(&alg.unit);
        }
        offsets.push(off);
        let mut desc = Self::base(AlgebraKind::DirectSum(summands), off, rank, labels, weights, unit);
        desc.offsets = offsets;
        Ok(Arc::new(desc))
    }

    pub fn tensor(factors: Vec<Algebra>) -> Result<Algebra> {
        if factors.is_empty() {
            return Err(EjaError::Construction("tensor product needs at least one factor".into()));
        }
        let dim: usize = factors
            .iter()
            .try_fold(1usize, |acc, f| acc.checked_mul(f.dim))
            .ok_or_else(|| EjaError::Construction("tensor dimension overflows".into()))?;
        let rank = factors.iter().map(|f| f.rank).product();
        let mut labels = vec![String::new()];
        let mut weights = vec![1.0];
        let mut unit = vec![1.0];
        for f in &factors {
            let mut nl = Vec::with_capacity(labels.len() * f.dim);
            let mut nw = Vec::with_capacity(labels.len() * f.dim);
            let mut nu = Vec::with_capacity(labels.len() * f.dim);
            for (i, l) in labels.iter().enumerate() {
                for b in 0..f.dim {
                    nl.push(if l.is_empty() {
                        f.basis_labels[b].clone()
                    } else {
                        format!("{}⊗{}", l, f.basis_labels[b])
                    });
                    nw.push(weights[i] * f.weights[b]);
                    nu.push(unit[i] * f.unit[b]);
                }
            }
            labels = nl;
            weights = nw;
            unit = nu;
        }
        let mut digits = vec![Vec::with_capacity(dim); factors.len()];
        for a in 0..dim {
            let mut rest = a;
            for (k, f) in factors.iter().enumerate().rev() {
                digits[k].push(rest % f.dim);
                rest /= f.dim;
            }
        }
        let special: Vec<usize> = factors
            .iter()
            .enumerate()
            .filter(|(_, f)| !f.is_classical())
            .map(|(k, _)| k)
            .collect();
        let block = match special.len() {
            0 => None,
            1 => {
                let p = special[0];
                let stride: usize = factors[p + 1..].iter().map(|f| f.dim).product();
                let bases = (0..dim).filter(|&a| digits[p][a] == 0).collect();
                Some(BlockView {
                    factor: factors[p].clone(),
                    stride,
                    bases,
                })
            }
            _ => None,
        };
        let mut desc = Self::base(AlgebraKind::Tensor(factors), dim, rank, labels, weights, unit);
        desc.digits = digits;
        desc.block = block;
        Ok(Arc::new(desc))
    }

    pub fn build(kind: AlgebraKind) -> Result<Algebra> {
        match kind {
            AlgebraKind::Classical(d) => Self::classical(d),
            AlgebraKind::RealSym(m) => Self::real_sym(m),
            AlgebraKind::ComplexHerm(m) => Self::complex_herm(m),
            AlgebraKind::QuatHerm(m) => Self::quat_herm(m),
            AlgebraKind::Spin(d) => Self::spin(d),
            AlgebraKind::OctHerm3 => Self::oct_herm3(),
            AlgebraKind::DirectSum(s) => Self::direct_sum(s),
            AlgebraKind::Tensor(f) => Self::tensor(f),
        }
    }

    /// `alg ⊗ alg ⊗ ... ⊗ alg` with n factors.
    pub fn tensor_power(alg: &Algebra, n: usize) -> Result<Algebra> {
        if n == 0 {
            return Err(EjaError::Construction("tensor power needs n >= 1".into()));
        }
        Self::tensor(vec![alg.clone(); n])
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn unit_coeffs(&self) -> &[f64] {
        &self.unit
    }

    /// ⟨e_a, e_b⟩.
    pub fn metric(&self, a: usize, b: usize) -> f64 {
        if a == b {
            self.weights[a]
        } else {
            0.0
        }
    }

    /// Coefficients of e_a ∘ e_b as sparse (index, value) pairs.
    pub fn structure(&self, a: usize, b: usize) -> Vec<(usize, f64)> {
        self.table()[a * self.dim + b].clone()
    }

    /// All classical: every basis element is an idempotent orthogonal to the
    /// others and the product is componentwise.
    pub fn is_classical(&self) -> bool {
        match &self.kind {
            AlgebraKind::Classical(_) => true,
            AlgebraKind::DirectSum(s) | AlgebraKind::Tensor(s) => s.iter().all(|f| f.is_classical()),
            _ => false,
        }
    }

    pub fn factors(&self) -> Option<&[Algebra]> {
        match &self.kind {
            AlgebraKind::Tensor(f) => Some(f),
            _ => None,
        }
    }

    pub fn summands(&self) -> Option<&[Algebra]> {
        match &self.kind {
            AlgebraKind::DirectSum(s) => Some(s),
            _ => None,
        }
    }

    pub(crate) fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub(crate) fn block_view(&self) -> Option<&BlockView> {
        self.block.as_ref()
    }

    /// Sparse structure constants, built on first use.
    pub fn table(&self) -> Arc<Table> {
        self.table
            .get_or_init(|| {
                let d = self.dim;
                let mut table = vec![Vec::new(); d * d];
                let mut ea = vec![0.0; d];
                let mut eb = vec![0.0; d];
                for a in 0..d {
                    ea[a] = 1.0;
                    for b in a..d {
                        eb[b] = 1.0;
                        let prod = self.mul_coeffs(&ea, &eb);
                        let terms: Vec<(usize, f64)> = prod
                            .iter()
                            .enumerate()
                            .filter(|(_, v)| v.abs() > 1e-15)
                            .map(|(c, v)| (c, *v))
                            .collect();
                        table[b * d + a] = terms.clone();
                        table[a * d + b] = terms;
                        eb[b] = 0.0;
                    }
                    ea[a] = 0.0;
                }
                Arc::new(table)
            })
            .clone()
    }

    /// Jordan product on raw coefficient vectors.
    pub fn mul_coeffs(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        if self.is_classical() {
            return x.iter().zip(y).map(|(a, b)| a * b).collect();
        }
        match &self.kind {
            AlgebraKind::Spin(_) => {
                let dot: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
                let mut out = Vec::with_capacity(x.len());
                out.push(dot);
                for j in 1..x.len() {
                    out.push(x[0] * y[j] + y[0] * x[j]);
                }
                out
            }
            AlgebraKind::RealSym(m) => {
                let a = real_matrix(*m, x);
                let b = real_matrix(*m, y);
                let p = &a * &b;
                real_coeffs(&((&p + p.transpose()) * 0.5))
            }
            AlgebraKind::ComplexHerm(m) => {
                let a = complex_matrix(*m, x);
                let b = complex_matrix(*m, y);
                let p = &a * &b;
                complex_coeffs(&((&p + p.adjoint()) * Complex64::new(0.5, 0.0)))
            }
            AlgebraKind::QuatHerm(_) | AlgebraKind::OctHerm3 => self.mul_by_table(x, y),
            AlgebraKind::DirectSum(s) => {
                let mut out = vec![0.0; self.dim];
                for (i, alg) in s.iter().enumerate() {
                    let (lo, hi) = (self.offsets[i], self.offsets[i + 1]);
                    let p = alg.mul_coeffs(&x[lo..hi], &y[lo..hi]);
                    out[lo..hi].copy_from_slice(&p);
                }
                out
            }
            AlgebraKind::Tensor(factors) => {
                if let Some(bv) = &self.block {
                    let mut out = vec![0.0; self.dim];
                    let mut xb = vec![0.0; bv.factor.dim];
                    let mut yb = vec![0.0; bv.factor.dim];
                    for blk in 0..bv.bases.len() {
                        let mut nz = false;
                        for (t, a) in bv.indices(blk).enumerate() {
                            xb[t] = x[a];
                            yb[t] = y[a];
                            nz |= x[a] != 0.0 || y[a] != 0.0;
                        }
                        if !nz {
                            continue;
                        }
                        let p = bv.factor.mul_coeffs(&xb, &yb);
                        for (t, a) in bv.indices(blk).enumerate() {
                            out[a] = p[t];
                        }
                    }
                    out
                } else {
                    self.mul_tensor(factors, x, y)
                }
            }
            AlgebraKind::Classical(_) => unreachable!(),
        }
    }

    fn mul_by_table(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let table = self.table();
        let d = self.dim;
        let mut out = vec![0.0; d];
        for a in 0..d {
            if x[a] == 0.0 {
                continue;
            }
            for b in 0..d {
                if y[b] == 0.0 {
                    continue;
                }
                let c = x[a] * y[b];
                for &(r, v) in &table[a * d + b] {
                    out[r] += c * v;
                }
            }
        }
        out
    }

    fn mul_tensor(&self, factors: &[Algebra], x: &[f64], y: &[f64]) -> Vec<f64> {
        let tables: Vec<Arc<Table>> = factors.iter().map(|f| f.table()).collect();
        let dims: Vec<usize> = factors.iter().map(|f| f.dim).collect();
        let nz_y: Vec<usize> = (0..self.dim).filter(|&b| y[b] != 0.0).collect();
        let mut out = vec![0.0; self.dim];
        let mut terms: Vec<(usize, f64)> = Vec::new();
        let mut next: Vec<(usize, f64)> = Vec::new();
        for a in 0..self.dim {
            if x[a] == 0.0 {
                continue;
            }
            for &b in &nz_y {
                terms.clear();
                terms.push((0, x[a] * y[b]));
                for k in 0..factors.len() {
                    let entry = &tables[k][self.digits[k][a] * dims[k] + self.digits[k][b]];
                    next.clear();
                    for &(idx, c) in &terms {
                        for &(r, v) in entry {
                            next.push((idx * dims[k] + r, c * v));
                        }
                    }
                    std::mem::swap(&mut terms, &mut next);
                    if terms.is_empty() {
                        break;
                    }
                }
                for &(idx, c) in &terms {
                    out[idx] += c;
                }
            }
        }
        out
    }
}

impl fmt::Display for AlgebraDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            AlgebraKind::Classical(d) => write!(f, "classical:{d}"),
            AlgebraKind::RealSym(m) => write!(f, "realsym:{m}"),
            AlgebraKind::ComplexHerm(m) => write!(f, "cherm:{m}"),
            AlgebraKind::QuatHerm(m) => write!(f, "qherm:{m}"),
            AlgebraKind::Spin(d) => write!(f, "spin:{d}"),
            AlgebraKind::OctHerm3 => write!(f, "oct3"),
            AlgebraKind::DirectSum(s) => {
                write!(f, "sum(")?;
                for (i, a) in s.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            AlgebraKind::Tensor(fs) => {
                if fs.iter().all(|a| a.kind == fs[0].kind) {
                    write!(f, "tensor({};{})", fs[0], fs.len())
                } else {
                    write!(f, "tensor(")?;
                    for (i, a) in fs.iter().enumerate() {
                        if i > 0 {
                            write!(f, ",")?;
                        }
                        write!(f, "{a}")?;
                    }
                    write!(f, ")")
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(d: usize, a: usize) -> Vec<f64> {
        let mut v = vec![0.0; d];
        v[a] = 1.0;
        v
    }

    #[test]
    fn quaternion_units_multiply() {
        let one = [1.0, 0., 0., 0., 0., 0., 0., 0.];
        let i = [0., 1.0, 0., 0., 0., 0., 0., 0.];
        let j = [0., 0., 1.0, 0., 0., 0., 0., 0.];
        let k = [0., 0., 0., 1.0, 0., 0., 0., 0.];
        assert_eq!(oct_mul(&i, &j), k);
        assert_eq!(oct_mul(&j, &i).map(|v| -v), k);
        assert_eq!(oct_mul(&k, &k), one.map(|v| -v));
        assert_eq!(oct_mul(&j, &k), i);
    }

    #[test]
    fn octonions_are_alternative_not_associative() {
        let u = |t: usize| {
            let mut a = [0.0; 8];
            a[t] = 1.0;
            a
        };
        let mut non_assoc = 0;
        for a in 0..8 {
            for b in 0..8 {
                // (aa)b = a(ab)
                let lhs = oct_mul(&oct_mul(&u(a), &u(a)), &u(b));
                let rhs = oct_mul(&u(a), &oct_mul(&u(a), &u(b)));
                assert_eq!(lhs, rhs);
                for c in 0..8 {
                    let l = oct_mul(&oct_mul(&u(a), &u(b)), &u(c));
                    let r = oct_mul(&u(a), &oct_mul(&u(b), &u(c)));
                    if l != r {
                        non_assoc += 1;
                    }
                }
            }
        }
        assert!(non_assoc > 0);
    }

    #[test]
    fn dims_and_ranks() {
        let c = AlgebraDescriptor::classical(3).unwrap();
        assert_eq!((c.dim, c.rank), (3, 3));
        assert_eq!(c.unit_coeffs(), &[1.0, 1.0, 1.0]);
        let s = AlgebraDescriptor::spin(2).unwrap();
        assert_eq!((s.dim, s.rank), (3, 2));
        assert_eq!(s.unit_coeffs(), &[1.0, 0.0, 0.0]);
        let h = AlgebraDescriptor::complex_herm(2).unwrap();
        assert_eq!((h.dim, h.rank), (4, 2));
        assert_eq!(AlgebraDescriptor::real_sym(3).unwrap().dim, 6);
        assert_eq!(AlgebraDescriptor::quat_herm(3).unwrap().dim, 15);
        assert_eq!(AlgebraDescriptor::oct_herm3().unwrap().dim, 27);
        let t = AlgebraDescriptor::tensor_power(&s, 3).unwrap();
        assert_eq!((t.dim, t.rank), (27, 8));
        assert!(AlgebraDescriptor::spin(0).is_err());
        assert!(AlgebraDescriptor::tensor(vec![]).is_err());
    }

    #[test]
    fn tensor_metric_factorizes() {
        let s = AlgebraDescriptor::spin(2).unwrap();
        let t = AlgebraDescriptor::tensor(vec![s.clone(), s.clone()]).unwrap();
        // e0 ⊗ e1 sits at index 0*3 + 1
        assert_eq!(t.metric(1, 1), s.metric(0, 0) * s.metric(1, 1));
        assert_eq!(t.basis_labels[1], "e0⊗e1");
    }

    #[test]
    fn spin_square_of_generator_is_unit() {
        let s = AlgebraDescriptor::spin(2).unwrap();
        assert_eq!(s.mul_coeffs(&e(3, 1), &e(3, 1)), vec![1.0, 0.0, 0.0]);
        assert_eq!(s.mul_coeffs(&e(3, 1), &e(3, 2)), vec![0.0, 0.0, 0.0]);
    }

    #[test]
    fn matrix_backends_agree_with_tables() {
        for (alg, k) in [
            (AlgebraDescriptor::real_sym(3).unwrap(), 1),
            (AlgebraDescriptor::complex_herm(3).unwrap(), 2),
        ] {
            let shape = HermShape { m: 3, k };
            let table = shape.table();
            let d = alg.dim;
            for a in 0..d {
                for b in 0..d {
                    let p = alg.mul_coeffs(&e(d, a), &e(d, b));
                    let mut q = vec![0.0; d];
                    for &(c, v) in &table[a * d + b] {
                        q[c] += v;
                    }
                    for c in 0..d {
                        assert!((p[c] - q[c]).abs() < 1e-14);
                    }
                }
            }
        }
    }

    #[test]
    fn quat_matrix_round_trip() {
        let x: Vec<f64> = (0..6).map(|i| 0.3 * i as f64 - 0.7).collect();
        let m = quat_complex_matrix(2, &x);
        assert!((m.adjoint() - &m).norm() < 1e-15);
        let back = quat_coeffs(&m);
        for (a, b) in x.iter().zip(&back) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn display_round_trips_through_grammar_shape() {
        let s = AlgebraDescriptor::spin(2).unwrap();
        let c = AlgebraDescriptor::classical(1).unwrap();
        let sum = AlgebraDescriptor::direct_sum(vec![s.clone(), c]).unwrap();
        assert_eq!(sum.to_string(), "sum(spin:2,classical:1)");
        let t = AlgebraDescriptor::tensor_power(&s, 3).unwrap();
        assert_eq!(t.to_string(), "tensor(spin:2;3)");
    }
}
