//! Seeded generators for elements, states and measurements.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::algebra::Algebra;
use crate::element::Element;
use crate::spectral;

pub fn random_element(alg: &Algebra, rng: &mut impl Rng) -> Element {
    let c = (0..alg.dim).map(|_| rng.sample(StandardNormal)).collect();
    Element::from_raw(alg, c)
}

/// z² for a random z.
pub fn random_cone(alg: &Algebra, rng: &mut impl Rng) -> Element {
    let z = random_element(alg, rng);
    z.jordan_unchecked(&z)
}

/// z² / tr z².
pub fn random_state_element(alg: &Algebra, rng: &mut impl Rng) -> Element {
    let x = random_cone(alg, rng);
    let t = x.trace();
    x.scale(1.0 / t)
}

/// k effects M_i = P_{S^{-1/2}}(z_i²) with S = Σ z_i², which sum to the unit
/// exactly in exact arithmetic.
pub fn random_effects(alg: &Algebra, k: usize, rng: &mut impl Rng) -> Vec<Element> {
    let zs: Vec<Element> = (0..k).map(|_| random_cone(alg, rng)).collect();
    let mut s = Element::zero(alg);
    for z in &zs {
        s.add_assign_scaled(1.0, z);
    }
    let inv_sqrt = spectral::apply_function(&s, |t| 1.0 / t.sqrt(), spectral::DEFAULT_TOL)
        .expect("sum of random squares is invertible");
    zs.iter().map(|z| inv_sqrt.quadratic_unchecked(z)).collect()
}
