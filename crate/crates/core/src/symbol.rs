//! Coefficient fields `alpha`, their trigonometric symbols
//! `alpha_hat(theta) = sum_k alpha_k exp(-i k.theta)`, a rigorous
//! non-vanishing certificate, and the Wiener inversion `1 / alpha_hat`.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use crate::dft::{fft_nd, grid_coords, wrap_index, Direction};
use crate::error::{Error, Result};
use crate::geometry::{max_norm, Site};
use crate::lattice::LatticeFunction;

/// Relative floor below which `|alpha_hat|` counts as zero.
pub const SYMBOL_FLOOR: f64 = 1e-12;

/// Largest grid (total points) the Wiener inversion will try.
pub const MAX_WIENER_GRID_POINTS: usize = 1 << 22;

/// A finitely supported, not identically zero coefficient sequence on `Z^d`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientField {
    values: LatticeFunction,
}

impl CoefficientField {
    pub fn new(values: LatticeFunction) -> Result<Self> {
        if values.is_zero() {
            return Err(Error::InvalidInput(
                "coefficient field must have a nonzero entry".into(),
            ));
        }
        Ok(CoefficientField { values })
    }

    pub fn from_entries<I: IntoIterator<Item = (Site, f64)>>(d: usize, entries: I) -> Result<Self> {
        CoefficientField::new(LatticeFunction::new(d, entries)?)
    }

    /// One-dimensional field from `(k, alpha_k)` pairs.
    pub fn from_1d(entries: &[(i64, f64)]) -> Result<Self> {
        CoefficientField::from_entries(1, entries.iter().map(|&(k, v)| (vec![k], v)))
    }

    pub fn delta(d: usize) -> Self {
        CoefficientField { values: LatticeFunction::delta(d, 1.0) }
    }

    pub fn parse(text: &str, d: Option<usize>) -> Result<Self> {
        CoefficientField::new(LatticeFunction::parse(text, d)?)
    }

    pub fn to_text(&self) -> String {
        self.values.to_text()
    }

    pub fn d(&self) -> usize {
        self.values.d()
    }

    /// The support radius `D`.
    pub fn support_radius(&self) -> usize {
        self.values.support_radius()
    }

    pub fn get(&self, k: &[i64]) -> f64 {
        self.values.get(k)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Site, f64)> {
        self.values.iter()
    }

    pub fn values(&self) -> &LatticeFunction {
        &self.values
    }

    /// `sum_k |k|_2 |alpha_k|`, a Lipschitz constant of `alpha_hat` on the torus.
    pub fn lipschitz_bound(&self) -> f64 {
        self.iter()
            .map(|(k, a)| {
                let norm = k.iter().map(|&c| (c * c) as f64).sum::<f64>().sqrt();
                norm * a.abs()
            })
            .sum()
    }
}

/// Direct evaluation of the symbol at `theta`.
pub fn evaluate_symbol(alpha: &CoefficientField, theta: &[f64]) -> Complex64 {
    assert_eq!(theta.len(), alpha.d(), "theta has wrong dimension");
    alpha
        .iter()
        .map(|(k, a)| {
            let phase: f64 = k.iter().zip(theta).map(|(&c, t)| c as f64 * t).sum();
            Complex64::from_polar(a, -phase)
        })
        .sum()
}

/// Symbol values at `2 pi n / grid` for all `n` in `[0, grid)^d`, row-major,
/// computed by an FFT of the wrapped coefficients. Wrapping is exact at
/// grid frequencies, so no lower bound on `grid` is needed.
pub fn symbol_on_grid(alpha: &CoefficientField, grid: usize) -> Vec<Complex64> {
    let d = alpha.d();
    let mut data = vec![Complex64::new(0.0, 0.0); grid.pow(d as u32)];
    for (k, a) in alpha.iter() {
        data[wrap_index(k, grid)] += a;
    }
    fft_nd(&mut data, grid, d, Direction::Forward);
    data
}

/// True iff some `|alpha_j|` strictly exceeds the sum of all other `|alpha_k|`,
/// which forces `alpha_hat` to vanish nowhere.
pub fn check_diagonal_dominance(alpha: &CoefficientField) -> bool {
    let total = alpha.values().l1_norm();
    alpha.iter().any(|(_, a)| a.abs() > total - a.abs())
}

/// Outcome of [`certify_nonvanishing`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymbolCertificate {
    pub grid_points_per_axis: usize,
    pub min_modulus_on_grid: f64,
    pub lipschitz_bound: f64,
    pub certified_lower_bound: f64,
    /// `true` is a proof that the symbol has no zero on the torus. `false` is
    /// inconclusive unless [`SymbolCertificate::definitely_vanishes`] holds.
    pub nonvanishing: bool,
}

impl SymbolCertificate {
    pub fn definitely_vanishes(&self) -> bool {
        self.min_modulus_on_grid == 0.0
    }
}

/// Lower bound for `|alpha_hat|` on the whole torus from a uniform grid and
/// the Lipschitz constant: every point lies within `(pi / n) sqrt(d)` of a
/// grid point in the Euclidean norm.
pub fn certify_nonvanishing(alpha: &CoefficientField, grid_points_per_axis: usize) -> SymbolCertificate {
    assert!(grid_points_per_axis >= 2, "grid needs at least two points per axis");
    let n = grid_points_per_axis;
    let d = alpha.d();
    let min_modulus_on_grid = symbol_on_grid(alpha, n)
        .iter()
        .map(|z| z.norm())
        .fold(f64::INFINITY, f64::min);
    let lipschitz_bound = alpha.lipschitz_bound();
    let half_spacing = PI / n as f64;
    let certified_lower_bound = min_modulus_on_grid - lipschitz_bound * half_spacing * (d as f64).sqrt();
    SymbolCertificate {
        grid_points_per_axis: n,
        min_modulus_on_grid,
        lipschitz_bound,
        certified_lower_bound,
        nonvanishing: certified_lower_bound > 0.0,
    }
}

/// Fourier coefficients `beta` of `1 / alpha_hat`, i.e. the entries of the
/// inverse Laurent operator `B(j, k) = beta_{j-k}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WienerInverse {
    pub d: usize,
    pub beta: LatticeFunction,
    /// Every site with max-norm up to this radius is stored.
    pub truncation_radius: usize,
    /// Grid points per axis of the final sampling grid.
    pub grid: usize,
    pub tail_bound: f64,
    /// `sum_n |beta_n|` over the stored coefficients.
    pub column_sum_norm: f64,
}

impl WienerInverse {
    pub fn coefficient(&self, n: &[i64]) -> f64 {
        self.beta.get(n)
    }
}

/// Samples `1/alpha_hat` on an `N^d` grid and inverse-transforms, doubling
/// `N` until the tail estimate drops below `tolerance`.
///
/// The result at grid size `N` is the `N`-periodization of `beta`, stored on
/// the window `[-N/2, N/2)^d`. The tail estimate is the larger of the mass
/// outside `Q_{N/4}` and the change in `sum |beta|` since the previous grid.
pub fn wiener_inverse(alpha: &CoefficientField, tolerance: f64) -> Result<WienerInverse> {
    if !(tolerance > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {tolerance}")));
    }
    let d = alpha.d();
    let mut n = (4 * (alpha.support_radius() + 1)).max(8).next_power_of_two();
    let mut previous_norm: Option<f64> = None;
    loop {
        let total = n.pow(d as u32);
        let samples = symbol_on_grid(alpha, n);
        let max_modulus = samples.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let min_modulus = samples.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
        let floor = SYMBOL_FLOOR * max_modulus;
        if min_modulus < floor || min_modulus == 0.0 {
            return Err(Error::SymbolVanishes { min_modulus, floor });
        }

        let mut data: Vec<Complex64> = samples.iter().map(|z| z.inv()).collect();
        fft_nd(&mut data, n, d, Direction::Inverse);
        let scale = 1.0 / total as f64;
        let half = (n / 2) as i64;
        let coefficients: Vec<(Site, f64)> = data
            .iter()
            .enumerate()
            .map(|(index, z)| {
                let site: Site = grid_coords(index, n, d)
                    .into_iter()
                    .map(|c| if (c as i64) < half { c as i64 } else { c as i64 - n as i64 })
                    .collect();
                (site, z.re * scale)
            })
            .collect();
        let peak = coefficients.iter().map(|(_, b)| b.abs()).fold(0.0, f64::max);
        let kept: Vec<(Site, f64)> = coefficients
            .into_iter()
            .filter(|(_, b)| b.abs() >= 1e-15 * peak)
            .collect();

        let norm: f64 = kept.iter().map(|(_, b)| b.abs()).sum();
        let shell_radius = (n / 4) as i64;
        let shell: f64 = kept
            .iter()
            .filter(|(m, _)| max_norm(m) > shell_radius)
            .map(|(_, b)| b.abs())
            .sum();
        let drift = previous_norm.map_or(0.0, |p| (norm - p).abs());
        let tail = shell.max(drift);

        if tail <= tolerance {
            return Ok(WienerInverse {
                d,
                beta: LatticeFunction::new(d, kept)?,
                truncation_radius: n / 2 - 1,
                grid: n,
                tail_bound: tail,
                column_sum_norm: norm,
            });
        }
        let next = n * 2;
        if next.pow(d as u32) > MAX_WIENER_GRID_POINTS {
            return Err(Error::NoConvergence { grid: n, tail, tolerance });
        }
        previous_norm = Some(norm);
        n = next;
    }
}
