#![allow(dead_code)]

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wegner_core::{
    AndersonConfig, Boundary, CoefficientField, DensityBV, LatticeFunction, PeriodicPotential,
    SingleSiteProfile,
};

pub fn field_1d(entries: &[(i64, f64)]) -> CoefficientField {
    CoefficientField::from_1d(entries).unwrap()
}

pub fn field_2d(entries: &[((i64, i64), f64)]) -> CoefficientField {
    CoefficientField::from_entries(2, entries.iter().map(|&((a, b), v)| (vec![a, b], v))).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_symmetric(rng: &mut impl Rng, n: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let x = rng.random_range(-1.0..1.0);
            m[(i, j)] = x;
            m[(j, i)] = x;
        }
    }
    m
}

pub fn random_unit_vector(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    let v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / norm).collect()
}

/// Dense eigenvalue count, independent of the inertia route.
pub fn dense_count(m: &DMatrix<f64>, e: f64) -> usize {
    nalgebra::SymmetricEigen::new(m.clone())
        .eigenvalues
        .iter()
        .filter(|&&x| x <= e)
        .count()
}

/// Model with profile `v`, couplings uniform on `[a, b]`.
pub fn model(alpha: CoefficientField, v: LatticeFunction, kappa: f64, l: usize, density: DensityBV) -> AndersonConfig {
    let d = alpha.d();
    AndersonConfig::new(
        l,
        Boundary::Truncated,
        PeriodicPotential::zero(d),
        alpha,
        SingleSiteProfile::new(v, kappa).unwrap(),
        density,
    )
    .unwrap()
}
