//! Multi-dimensional circulant matrices on `Q_s`, `s = l + R`: the periodized
//! coefficient matrix `A(j, k) = alpha_{pi(j - k)}`, its inverse, and the
//! change of couplings `eta = A omega`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;
use std::fmt::Write as _;

use crate::dft::{fft_nd, wrap_index, Direction};
use crate::error::{Error, Result};
use crate::geometry::{BoxSpec, Site, TorusProjection};
use crate::symbol::{CoefficientField, WienerInverse};

/// A circulant operator on `l^2(Q_s)`, stored by its generating coefficients
/// `c_m`, `m in Q_s`, so that `M(j, k) = c_{pi(j - k)}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CirculantOperator {
    pub d: usize,
    pub s: usize,
    /// Indexed by the lexicographic ordinal of `m` in `Q_s`.
    pub generating_coefficients: Vec<f64>,
    /// Indexed row-major by the frequency `n in [0, 2s+1)^d`; the eigenvalue
    /// for the eigenvector `exp(2 pi i n.j / (2s+1))`.
    #[serde(skip)]
    pub dft_eigenvalues: Vec<Complex64>,
}

impl CirculantOperator {
    /// Builds the operator from coefficients indexed by ordinals of `Q_s`.
    pub fn from_coefficients(d: usize, s: usize, coefficients: Vec<f64>) -> Self {
        let cube = BoxSpec::new(d, s);
        assert_eq!(coefficients.len(), cube.len(), "coefficient count mismatch");
        let period = cube.side();
        let mut data = vec![Complex64::new(0.0, 0.0); cube.len()];
        for (ordinal, &c) in coefficients.iter().enumerate() {
            data[wrap_index(&cube.point(ordinal), period)] = Complex64::new(c, 0.0);
        }
        fft_nd(&mut data, period, d, Direction::Forward);
        CirculantOperator {
            d,
            s,
            generating_coefficients: coefficients,
            dft_eigenvalues: data,
        }
    }

    pub fn identity(d: usize, s: usize) -> Self {
        let cube = BoxSpec::new(d, s);
        let mut c = vec![0.0; cube.len()];
        c[cube.ordinal(&vec![0; d]).unwrap()] = 1.0;
        CirculantOperator::from_coefficients(d, s, c)
    }

    pub fn index_box(&self) -> BoxSpec {
        BoxSpec::new(self.d, self.s)
    }

    pub fn projection(&self) -> TorusProjection {
        TorusProjection::new(self.d, self.s)
    }

    pub fn dim(&self) -> usize {
        self.generating_coefficients.len()
    }

    /// `c_m` for any `m in Z^d` (taken modulo the period).
    pub fn coefficient(&self, m: &[i64]) -> f64 {
        let p = self.projection().project(m);
        self.generating_coefficients[self.index_box().ordinal(&p).unwrap()]
    }

    pub fn entry(&self, j: &[i64], k: &[i64]) -> f64 {
        let diff: Site = j.iter().zip(k).map(|(a, b)| a - b).collect();
        self.coefficient(&diff)
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let cube = self.index_box();
        let pts: Vec<Site> = cube.iter().collect();
        DMatrix::from_fn(pts.len(), pts.len(), |r, c| self.entry(&pts[r], &pts[c]))
    }

    /// Row-major text, one matrix row per line.
    pub fn to_dense_text(&self) -> String {
        let m = self.to_dense();
        let mut out = String::new();
        for r in 0..m.nrows() {
            let row: Vec<String> = (0..m.ncols()).map(|c| format!("{:.17e}", m[(r, c)])).collect();
            writeln!(out, "{}", row.join(" ")).unwrap();
        }
        out
    }

    /// Exact matrix-vector product `M x`, with `x` indexed by ordinals of `Q_s`.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        let cube = self.index_box();
        if x.len() != cube.len() {
            return Err(Error::InvalidGeometry(format!(
                "vector has {} entries, operator acts on {}",
                x.len(),
                cube.len()
            )));
        }
        let pts: Vec<Site> = cube.iter().collect();
        Ok(pts
            .iter()
            .map(|j| pts.iter().zip(x).map(|(k, xk)| self.entry(j, k) * xk).sum())
            .collect())
    }

    pub fn min_eigenvalue_modulus(&self) -> f64 {
        self.dft_eigenvalues.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min)
    }

    /// `1e-12 * max |eigenvalue|`.
    pub fn default_floor(&self) -> f64 {
        1e-12 * self.dft_eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn invert(&self) -> Result<CirculantOperator> {
        invert_circulant(self, self.default_floor())
    }
}

/// The circulant on `Q_{l+R}` generated by the periodization of `alpha`.
pub fn build_circulant(alpha: &CoefficientField, l: usize, big_r: usize) -> Result<CirculantOperator> {
    if l <= big_r {
        return Err(Error::InvalidGeometry(format!("need l > R, got l = {l}, R = {big_r}")));
    }
    let support = alpha.support_radius();
    if big_r < support {
        return Err(Error::InvalidGeometry(format!(
            "need R >= D, got R = {big_r}, D = {support}"
        )));
    }
    let d = alpha.d();
    let s = l + big_r;
    let cube = BoxSpec::new(d, s);
    let pi = TorusProjection::new(d, s);
    let mut c = vec![0.0; cube.len()];
    for (k, a) in alpha.iter() {
        c[cube.ordinal(&pi.project(k)).unwrap()] += a;
    }
    Ok(CirculantOperator::from_coefficients(d, s, c))
}

/// Brute-force check that `A(j, k) = alpha_{j-k}` for all `j in Q_{l+r}`,
/// `k in Q_{l+R}`. Requires `R = r + D` and `A` built on `Q_{l+R}`.
pub fn verify_rectangle_condition(
    a: &CirculantOperator,
    alpha: &CoefficientField,
    l: usize,
    r: usize,
    big_r: usize,
) -> Result<bool> {
    if big_r != r + alpha.support_radius() {
        return Err(Error::InvalidGeometry(format!(
            "rectangle check expects R = r + D = {}, got R = {big_r}",
            r + alpha.support_radius()
        )));
    }
    if a.s != l + big_r || a.d != alpha.d() {
        return Err(Error::InvalidGeometry("operator does not live on Q_{l+R}".into()));
    }
    let rows = BoxSpec::new(a.d, l + r);
    let cols = a.index_box();
    for j in rows.iter() {
        for k in cols.iter() {
            let diff: Site = j.iter().zip(&k).map(|(x, y)| x - y).collect();
            if a.entry(&j, &k) != alpha.get(&diff) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Inverse via reciprocal DFT eigenvalues; fails if any eigenvalue modulus is
/// below `floor`.
pub fn invert_circulant(a: &CirculantOperator, floor: f64) -> Result<CirculantOperator> {
    let min_modulus = a.min_eigenvalue_modulus();
    if min_modulus < floor || min_modulus == 0.0 {
        return Err(Error::SingularCirculant { min_modulus, floor });
    }
    let cube = a.index_box();
    let period = cube.side();
    let mut data: Vec<Complex64> = a.dft_eigenvalues.iter().map(|z| z.inv()).collect();
    fft_nd(&mut data, period, a.d, Direction::Inverse);
    let scale = 1.0 / cube.len() as f64;
    let coefficients = cube
        .iter()
        .map(|m| data[wrap_index(&m, period)].re * scale)
        .collect();
    Ok(CirculantOperator::from_coefficients(a.d, a.s, coefficients))
}

/// `B_Lambda(j, k) = sum_{p in j + P Z^d} beta_{p - k}`: the Laurent inverse
/// folded onto the torus of period `2(l+R)+1`.
pub fn fold_laurent_inverse(beta: &WienerInverse, l: usize, big_r: usize) -> CirculantOperator {
    let d = beta.d;
    let s = l + big_r;
    let cube = BoxSpec::new(d, s);
    let pi = TorusProjection::new(d, s);
    let mut c = vec![0.0; cube.len()];
    for (n, b) in beta.beta.iter() {
        c[cube.ordinal(&pi.project(n)).unwrap()] += b;
    }
    CirculantOperator::from_coefficients(d, s, c)
}

/// The transformed couplings `eta = A omega`, indexed by ordinals of `Q_{l+R}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EtaVariables {
    pub values: Vec<f64>,
}

pub fn eta_from_omega(a: &CirculantOperator, omega: &[f64]) -> Result<EtaVariables> {
    Ok(EtaVariables { values: a.apply(omega)? })
}

/// `sup_k sum_j |M(j, k)|`, which for a circulant is `sum_m |c_m|`.
pub fn column_sum_norm(m: &CirculantOperator) -> f64 {
    m.generating_coefficients.iter().map(|c| c.abs()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::enumerate_box;
    use crate::symbol::wiener_inverse;

    fn field(entries: &[(i64, f64)]) -> CoefficientField {
        CoefficientField::from_1d(entries).unwrap()
    }

    #[test]
    fn delta_builds_identity() {
        let a = build_circulant(&CoefficientField::delta(2), 2, 1).unwrap();
        assert_eq!(a.to_dense(), DMatrix::identity(49, 49));
        assert_eq!(column_sum_norm(&a), 1.0);
        let b = a.invert().unwrap();
        assert!((b.to_dense() - DMatrix::<f64>::identity(49, 49)).amax() < 1e-15);
    }

    #[test]
    fn geometry_errors() {
        let alpha = field(&[(0, 2.0), (1, -1.0)]);
        assert!(matches!(build_circulant(&alpha, 1, 1), Err(Error::InvalidGeometry(_))));
        assert!(matches!(build_circulant(&alpha, 3, 0), Err(Error::InvalidGeometry(_))));
    }

    #[test]
    fn seven_by_seven_circulant() {
        let a = build_circulant(&field(&[(0, 2.0), (1, -1.0)]), 2, 1).unwrap();
        assert_eq!(a.dim(), 7);
        for m in -3..=3i64 {
            let expected = match m {
                0 => 2.0,
                1 => -1.0,
                _ => 0.0,
            };
            assert_eq!(a.coefficient(&[m]), expected);
        }
        // entry (j, k) = c_{pi(j-k)}: wrap-around corner
        assert_eq!(a.entry(&[-3], &[3]), -1.0);
        for (n, z) in a.dft_eigenvalues.iter().enumerate() {
            let theta = 2.0 * std::f64::consts::PI * n as f64 / 7.0;
            let expected = Complex64::new(2.0, 0.0) - Complex64::from_polar(1.0, -theta);
            assert!((z - expected).norm() < 1e-14);
        }
        assert!((a.min_eigenvalue_modulus() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn periodized_geometric_inverse() {
        let a = build_circulant(&field(&[(0, 2.0), (1, -1.0)]), 2, 1).unwrap();
        let b = a.invert().unwrap();
        for m in 0..7i64 {
            let expected = 0.5f64.powi(m as i32 + 1) * 128.0 / 127.0;
            assert!((b.coefficient(&[m]) - expected).abs() < 1e-14, "m = {m}");
        }
        assert!((column_sum_norm(&b) - 1.0).abs() < 1e-14);
        let prod = a.to_dense() * b.to_dense();
        assert!((prod - DMatrix::<f64>::identity(7, 7)).amax() < 1e-14);
    }

    #[test]
    fn singular_circulant_detected() {
        let a = build_circulant(&field(&[(0, 1.0), (1, -1.0)]), 2, 1).unwrap();
        assert_eq!(a.min_eigenvalue_modulus(), 0.0);
        assert!(matches!(a.invert(), Err(Error::SingularCirculant { .. })));
    }

    #[test]
    fn rectangle_condition_examples() {
        let alpha = field(&[(0, 2.0), (1, -1.0)]);
        let a = build_circulant(&alpha, 2, 1).unwrap();
        assert!(verify_rectangle_condition(&a, &alpha, 2, 0, 1).unwrap());
        assert!(verify_rectangle_condition(&a, &alpha, 2, 1, 1).is_err());

        let delta = CoefficientField::delta(1);
        let a = build_circulant(&delta, 3, 2).unwrap();
        assert!(verify_rectangle_condition(&a, &delta, 3, 2, 2).unwrap());
    }

    #[test]
    fn rectangle_condition_fails_for_too_small_period() {
        // R = D rather than r + D with r = 1 leaves wrapped entries inside the rectangle.
        let alpha = field(&[(-1, 0.3), (0, 2.0), (1, -1.0)]);
        let a = build_circulant(&alpha, 2, 1).unwrap();
        let cols = enumerate_box(a.index_box());
        let bad = BoxSpec::new(1, 3)
            .iter()
            .any(|j| cols.iter().any(|k| a.entry(&j, k) != alpha.get(&[j[0] - k[0]])));
        assert!(bad);
    }

    #[test]
    fn folding_matches_direct_inverse() {
        for (alpha, l) in [
            (field(&[(0, 2.0), (1, -1.0)]), 2usize),
            (field(&[(0, 1.0), (1, -0.5)]), 3),
        ] {
            let w = wiener_inverse(&alpha, 1e-12).unwrap();
            let folded = fold_laurent_inverse(&w, l, 1);
            let direct = build_circulant(&alpha, l, 1).unwrap().invert().unwrap();
            let diff = folded
                .generating_coefficients
                .iter()
                .zip(&direct.generating_coefficients)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max);
            assert!(diff < 1e-10, "diff = {diff:e}");
        }
        let identity = fold_laurent_inverse(&wiener_inverse(&CoefficientField::delta(1), 1e-12).unwrap(), 2, 1);
        assert!((identity.to_dense() - DMatrix::<f64>::identity(7, 7)).amax() < 1e-14);
    }

    #[test]
    fn eta_examples() {
        let alpha = field(&[(0, 1.0), (1, -0.5)]);
        let a = build_circulant(&alpha, 2, 1).unwrap();
        let eta = eta_from_omega(&a, &[0.0; 7]).unwrap();
        assert!(eta.values.iter().all(|&x| x == 0.0));
        assert!(eta_from_omega(&a, &[0.0; 5]).is_err());

        let mut omega = vec![0.0; 7];
        omega[1] = 1.0; // k = -2
        let eta = eta_from_omega(&a, &omega).unwrap();
        assert_eq!(eta.values, vec![0.0, 1.0, -0.5, 0.0, 0.0, 0.0, 0.0]);

        let b = a.invert().unwrap();
        let back = b.apply(&eta.values).unwrap();
        for (x, y) in back.iter().zip(&omega) {
            assert!((x - y).abs() < 1e-14);
        }
        assert!((column_sum_norm(&a) - 1.5).abs() < 1e-15);
    }
}
