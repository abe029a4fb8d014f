//! Eigenvalue counting, spectral projector matrix elements, and the
//! spectral averaging estimate for monotone one-parameter families.

mod averaging;
mod inertia;

pub use averaging::{spectral_averaging_check, AveragingOutcome, QuadratureOptions};
pub use inertia::{inertia, Inertia};

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::Hamiltonian;

/// Relative pivot tolerance of the inertia count.
pub const PIVOT_TOLERANCE: f64 = 1e-10;

/// The half-open energy interval `(lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo <= hi) {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, e: f64) -> bool {
        self.lo < e && e <= self.hi
    }
}

/// `E -> #{eigenvalues <= E}` for a fixed matrix, from its sorted spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct CountingFunction {
    eigenvalues: Vec<f64>,
}

impl CountingFunction {
    pub fn new(h: &Hamiltonian) -> Self {
        CountingFunction { eigenvalues: sorted_eigenvalues(&h.to_dense()) }
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn count(&self, e: f64) -> usize {
        self.eigenvalues.partition_point(|&x| x <= e)
    }
}

pub fn sorted_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let mut e: Vec<f64> = SymmetricEigen::new(m.clone()).eigenvalues.iter().cloned().collect();
    e.sort_by(|a, b| a.total_cmp(b));
    e
}

/// Number of eigenvalues `<= e` of the symmetric matrix `m`.
///
/// Counts the positive pivots of `m - e I`; if a pivot falls within
/// `tol = PIVOT_TOLERANCE * ||m - e I||_inf` of zero the count comes from a
/// dense eigendecomposition instead, where eigenvalues up to `e + tol` count
/// as `<= e`.
pub fn count_below_dense(m: &DMatrix<f64>, e: f64) -> usize {
    let n = m.nrows();
    if n == 0 {
        return 0;
    }
    let mut shifted = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            shifted.push(if i == j { m[(i, j)] - e } else { m[(i, j)] });
        }
    }
    let norm = (0..n)
        .map(|i| shifted[i * n..(i + 1) * n].iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let tolerance = PIVOT_TOLERANCE * norm.max(f64::MIN_POSITIVE);
    match inertia(shifted, n, tolerance) {
        Some(inertia) => n - inertia.positive,
        None => sorted_eigenvalues(m).partition_point(|&x| x <= e + tolerance),
    }
}

pub fn count_below(h: &Hamiltonian, e: f64) -> usize {
    count_below_dense(&h.to_dense(), e)
}

/// Eigenvalues in `(e1, e2]`.
pub fn count_in_interval(h: &Hamiltonian, e1: f64, e2: f64) -> Result<usize> {
    let interval = Interval::new(e1, e2)?;
    if interval.is_empty() {
        return Ok(0);
    }
    let dense = h.to_dense();
    Ok(count_below_dense(&dense, e2) - count_below_dense(&dense, e1))
}

/// `<phi, chi_j P(I) chi_j phi> = |phi_j|^2 <e_j, P(I) e_j>` where `P(I)` is
/// the spectral projector of `h` onto `I` and `j` is a site ordinal.
pub fn projector_element(h: &Hamiltonian, interval: Interval, j: usize, phi: &[f64]) -> Result<f64> {
    check_unit_vector(h.dim(), j, phi)?;
    Ok(phi[j] * phi[j] * local_weight(&h.to_dense(), interval, j))
}

/// `<e_j, P(I) e_j>` from a dense eigendecomposition.
pub(crate) fn local_weight(m: &DMatrix<f64>, interval: Interval, j: usize) -> f64 {
    let eig = SymmetricEigen::new(m.clone());
    eig.eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, &lambda)| interval.contains(lambda))
        .map(|(i, _)| eig.eigenvectors[(j, i)].powi(2))
        .sum()
}

pub(crate) fn check_unit_vector(dim: usize, j: usize, phi: &[f64]) -> Result<()> {
    if phi.len() != dim || j >= dim {
        return Err(Error::InvalidGeometry(format!(
            "site {j} / vector of length {} incompatible with dimension {dim}",
            phi.len()
        )));
    }
    let norm = phi.iter().map(|x| x * x).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidInput(format!("phi must be a unit vector, has norm {norm}")));
    }
    Ok(())
}

/// The two sides of the discrete trace decomposition: `Tr P(I)` (as an
/// eigenvalue count) and `sum_j <e_j, P(I) e_j>`.
pub fn trace_decomposition(h: &Hamiltonian, interval: Interval) -> (usize, f64) {
    let dense = h.to_dense();
    let eig = SymmetricEigen::new(dense);
    let mut count = 0;
    let mut local = 0.0;
    for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
        if interval.contains(lambda) {
            count += 1;
            local += eig.eigenvectors.column(i).iter().map(|x| x * x).sum::<f64>();
        }
    }
    (count, local)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Boundary;

    fn ring3() -> Hamiltonian {
        Hamiltonian::lattice(&[3], Boundary::Periodic, &[0.0; 3]).unwrap()
    }

    #[test]
    fn count_examples() {
        let h = ring3();
        assert_eq!(count_below(&h, 0.0), 1);
        assert_eq!(count_below(&h, 1.0), 3);
        assert_eq!(count_below(&h, -3.0), 0);
        assert_eq!(count_below(&h, -2.0), 1);
        let f = CountingFunction::new(&h);
        assert_eq!((f.count(0.0), f.count(1.5), f.count(-3.0)), (1, 3, 0));
    }

    #[test]
    fn interval_examples() {
        let h = ring3();
        assert_eq!(count_in_interval(&h, 0.5, 0.5).unwrap(), 0);
        assert_eq!(count_in_interval(&h, 0.0, 2.0).unwrap(), 2);
        assert_eq!(count_in_interval(&h, -3.0, 2.0).unwrap(), 3);
        assert!(matches!(count_in_interval(&h, 1.0, 0.0), Err(Error::InvalidInterval { .. })));
    }

    #[test]
    fn projector_examples() {
        let h = ring3();
        let phi = vec![1.0 / 3f64.sqrt(); 3];
        let whole = Interval::new(-10.0, 10.0).unwrap();
        assert!((projector_element(&h, whole, 1, &phi).unwrap() - 1.0 / 3.0).abs() < 1e-14);
        let gap = Interval::new(-1.0, 0.5).unwrap();
        assert_eq!(projector_element(&h, gap, 0, &phi).unwrap(), 0.0);
        // ground state is uniform: |phi_0|^2 |psi_0(0)|^2 = 1/3 * 1/3
        let low = Interval::new(-2.5, 0.0).unwrap();
        assert!((projector_element(&h, low, 0, &phi).unwrap() - 1.0 / 9.0).abs() < 1e-14);
        assert!(projector_element(&h, low, 0, &[1.0, 1.0, 0.0]).is_err());
        assert!(projector_element(&h, low, 3, &phi).is_err());
    }

    #[test]
    fn trace_equals_local_sum() {
        let h = Hamiltonian::lattice(&[4, 3], Boundary::Truncated, &[0.3, -0.2, 0.9, 0.0, 1.1, -0.4, 0.5, 0.2, 0.0, -1.0, 0.7, 0.1]).unwrap();
        let (count, local) = trace_decomposition(&h, Interval::new(-1.0, 1.5).unwrap());
        assert!((count as f64 - local).abs() < 1e-12);
    }
}
