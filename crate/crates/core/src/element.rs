use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::algebra::{same_algebra, Algebra, AlgebraDescriptor};
use crate::error::{EjaError, Result};

/// Default cap on tensor coefficient counts.
pub const DEFAULT_BUDGET: usize = 100_000;

#[derive(Clone, Debug)]
pub struct Element {
    alg: Algebra,
    coeffs: Vec<f64>,
}

fn check_same(a: &Algebra, b: &Algebra) -> Result<()> {
    if same_algebra(a, b) {
        Ok(())
    } else {
        Err(EjaError::AlgebraMismatch {
            left: a.to_string(),
            right: b.to_string(),
        })
    }
}

impl Element {
    pub fn new(alg: &Algebra, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != alg.dim {
            return Err(EjaError::Length {
                expected: alg.dim,
                got: coeffs.len(),
            });
        }
        Ok(Element {
            alg: alg.clone(),
            coeffs,
        })
    }

    pub(crate) fn from_raw(alg: &Algebra, coeffs: Vec<f64>) -> Self {
        debug_assert_eq!(coeffs.len(), alg.dim);
        Element {
            alg: alg.clone(),
            coeffs,
        }
    }

    pub fn zero(alg: &Algebra) -> Self {
        Self::from_raw(alg, vec![0.0; alg.dim])
    }

    pub fn unit(alg: &Algebra) -> Self {
        Self::from_raw(alg, alg.unit_coeffs().to_vec())
    }

    pub fn basis(alg: &Algebra, a: usize) -> Self {
        let mut c = vec![0.0; alg.dim];
        c[a] = 1.0;
        Self::from_raw(alg, c)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn jordan(&self, other: &Element) -> Result<Element> {
        check_same(&self.alg, &other.alg)?;
        Ok(self.jordan_unchecked(other))
    }

    pub(crate) fn jordan_unchecked(&self, other: &Element) -> Element {
        Self::from_raw(&self.alg, self.alg.mul_coeffs(&self.coeffs, &other.coeffs))
    }

    pub fn inner(&self, other: &Element) -> Result<f64> {
        check_same(&self.alg, &other.alg)?;
        Ok(self.inner_unchecked(other))
    }

    pub(crate) fn inner_unchecked(&self, other: &Element) -> f64 {
        self.alg
            .weights()
            .iter()
            .zip(self.coeffs.iter().zip(&other.coeffs))
            .map(|(w, (a, b))| w * a * b)
            .sum()
    }

    pub fn trace(&self) -> f64 {
        self.alg
            .weights()
            .iter()
            .zip(self.coeffs.iter().zip(self.alg.unit_coeffs()))
            .map(|(w, (a, b))| w * a * b)
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.inner_unchecked(self).max(0.0).sqrt()
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        check_same(&self.alg, &other.alg)?;
        Ok(self.axpy(1.0, other))
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        check_same(&self.alg, &other.alg)?;
        Ok(self.axpy(-1.0, other))
    }

    /// self + a * other.
    pub(crate) fn axpy(&self, a: f64, other: &Element) -> Element {
        let c = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(x, y)| x + a * y)
            .collect();
        Self::from_raw(&self.alg, c)
    }

    pub(crate) fn add_assign_scaled(&mut self, a: f64, other: &Element) {
        for (x, y) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *x += a * y;
        }
    }

    pub fn scale(&self, a: f64) -> Element {
        Self::from_raw(&self.alg, self.coeffs.iter().map(|x| a * x).collect())
    }

    pub fn distance(&self, other: &Element) -> Result<f64> {
        Ok(self.sub(other)?.norm())
    }

    /// P_x(y) = 2 x∘(x∘y) − x²∘y.
    pub fn quadratic(&self, y: &Element) -> Result<Element> {
        check_same(&self.alg, &y.alg)?;
        Ok(self.quadratic_unchecked(y))
    }

    pub(crate) fn quadratic_unchecked(&self, y: &Element) -> Element {
        let xy = self.jordan_unchecked(y);
        let x_xy = self.jordan_unchecked(&xy);
        let x2 = self.jordan_unchecked(self);
        let x2y = x2.jordan_unchecked(y);
        x_xy.scale(2.0).axpy(-1.0, &x2y)
    }

    /// Left-nested power x∘(x∘(…)).
    pub fn power(&self, k: u32) -> Element {
        let mut acc = Element::unit(&self.alg);
        for _ in 0..k {
            acc = self.jordan_unchecked(&acc);
        }
        acc
    }

    /// Left-nested power together with the distance to the balanced
    /// (repeated squaring) evaluation.
    pub fn power_with_diagnostic(&self, k: u32) -> (Element, f64) {
        let left = self.power(k);
        let balanced = self.power_balanced(k);
        let res = left.axpy(-1.0, &balanced).norm();
        (left, res)
    }

    fn power_balanced(&self, k: u32) -> Element {
        match k {
            0 => Element::unit(&self.alg),
            1 => self.clone(),
            _ => {
                let lo = self.power_balanced(k / 2);
                let hi = self.power_balanced(k - k / 2);
                lo.jordan_unchecked(&hi)
            }
        }
    }

    /// Matrix of L_x on basis coefficients (column b holds x∘e_b).
    pub fn l_operator(&self) -> DMatrix<f64> {
        let d = self.alg.dim;
        let mut m = DMatrix::zeros(d, d);
        let mut e = vec![0.0; d];
        for b in 0..d {
            e[b] = 1.0;
            let col = self.alg.mul_coeffs(&self.coeffs, &e);
            for (a, v) in col.into_iter().enumerate() {
                m[(a, b)] = v;
            }
            e[b] = 0.0;
        }
        m
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|v| v.is_finite())
    }

    /// x ⊗ y ⊗ … in the tensor algebra of the factors' algebras.
    pub fn tensor_product(parts: &[Element]) -> Result<Element> {
        let factors: Vec<Algebra> = parts.iter().map(|p| p.alg.clone()).collect();
        let alg = AlgebraDescriptor::tensor(factors)?;
        Ok(Self::kron_into(&alg, parts))
    }

    fn kron_into(alg: &Algebra, parts: &[Element]) -> Element {
        let mut coeffs = vec![1.0];
        for p in parts {
            let mut next = Vec::with_capacity(coeffs.len() * p.coeffs.len());
            for a in &coeffs {
                for b in &p.coeffs {
                    next.push(a * b);
                }
            }
            coeffs = next;
        }
        Self::from_raw(alg, coeffs)
    }

    /// x^{⊗n} in the n-fold tensor algebra, refused above `budget`
    /// coefficients.
    pub fn iid_power(&self, n: usize, budget: usize) -> Result<Element> {
        if n == 0 {
            return Err(EjaError::InvalidArgument("iid power needs n >= 1".into()));
        }
        let required = (self.alg.dim as f64).powi(n as i32);
        if required > budget as f64 {
            return Err(EjaError::Budget {
                what: format!("{}^⊗{}", self.alg, n),
                required,
                budget,
            });
        }
        let alg = AlgebraDescriptor::tensor_power(&self.alg, n)?;
        Ok(Self::kron_into(&alg, &vec![self.clone(); n]))
    }

    /// Same element viewed in a structurally equal algebra instance.
    pub fn reattach(&self, alg: &Algebra) -> Result<Element> {
        check_same(&self.alg, alg)?;
        Ok(Self::from_raw(alg, self.coeffs.clone()))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, l) in self.coeffs.iter().zip(&self.alg.basis_labels) {
            if *c == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{c}·{l}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Serialized form `{algebra_spec, coeffs}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ElementRecord {
    pub algebra_spec: String,
    pub coeffs: Vec<f64>,
}

impl From<&Element> for ElementRecord {
    fn from(x: &Element) -> Self {
        ElementRecord {
            algebra_spec: x.alg.to_string(),
            coeffs: x.coeffs.clone(),
        }
    }
}

impl ElementRecord {
    pub fn to_element(&self) -> Result<Element> {
        let alg = crate::config::parse_algebra(&self.algebra_spec)?;
        Element::new(&alg, self.coeffs.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraDescriptor as A;

    #[test]
    fn classical_product_and_power() {
        let c = A::classical(2).unwrap();
        let x = Element::new(&c, vec![1.0, 2.0]).unwrap();
        let y = Element::new(&c, vec![3.0, 4.0]).unwrap();
        assert_eq!(x.jordan(&y).unwrap().coeffs(), &[3.0, 8.0]);
        let z = Element::new(&c, vec![2.0, 3.0]).unwrap();
        assert_eq!(z.power(2).coeffs(), &[4.0, 9.0]);
        assert_eq!(z.power(1).coeffs(), z.coeffs());
        assert_eq!(z.power(0).coeffs(), &[1.0, 1.0]);
    }

    #[test]
    fn spin_power_and_trace() {
        let s = A::spin(2).unwrap();
        let x = Element::new(&s, vec![1.0, 1.0, 0.0]).unwrap();
        assert_eq!(x.power(2).coeffs(), &[2.0, 2.0, 0.0]);
        assert_eq!(Element::basis(&s, 1).trace(), 0.0);
        assert_eq!(Element::unit(&s).trace(), 2.0);
    }

    #[test]
    fn quadratic_identities() {
        let h = A::complex_herm(2).unwrap();
        let y = Element::new(&h, vec![0.3, -1.2, 0.5, 0.7]).unwrap();
        let u = Element::unit(&h);
        assert!(u.quadratic(&y).unwrap().distance(&y).unwrap() < 1e-15);
        let c = Element::new(&h, vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(c.quadratic(&u).unwrap().distance(&c).unwrap() < 1e-15);
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = Element::unit(&A::spin(2).unwrap());
        let b = Element::unit(&A::spin(3).unwrap());
        assert!(matches!(a.jordan(&b), Err(EjaError::AlgebraMismatch { .. })));
        assert!(Element::new(&A::spin(2).unwrap(), vec![1.0]).is_err());
    }

    #[test]
    fn iid_power_products() {
        let c = A::classical(2).unwrap();
        let p = Element::new(&c, vec![0.5, 0.5]).unwrap();
        let p2 = p.iid_power(2, DEFAULT_BUDGET).unwrap();
        assert_eq!(p2.coeffs(), &[0.25; 4]);
        let one = p.iid_power(1, DEFAULT_BUDGET).unwrap();
        assert_eq!(one.coeffs(), p.coeffs());
        assert_eq!(one.algebra().factors().unwrap().len(), 1);
        let s = A::spin(2).unwrap();
        let x = Element::new(&s, vec![0.7, 0.2, -0.1]).unwrap();
        let x3 = x.iid_power(3, DEFAULT_BUDGET).unwrap();
        assert!((x3.trace() - x.trace().powi(3)).abs() < 1e-14);
        assert!(matches!(x.iid_power(20, DEFAULT_BUDGET), Err(EjaError::Budget { .. })));
    }
}
