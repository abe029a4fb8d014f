use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{DensityBV, Hamiltonian};

use super::{check_unit_vector, local_weight, sorted_eigenvalues, Interval};

/// Settings for the adaptive quadrature in [`spectral_averaging_check`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureOptions {
    /// Requested bound on the total quadrature error.
    pub tolerance: f64,
    /// Maximum bisection depth per smooth piece.
    pub max_depth: usize,
    /// Width to which eigenvalue crossings of the interval ends are resolved.
    pub crossing_resolution: f64,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions { tolerance: 1e-8, max_depth: 40, crossing_resolution: 1e-13 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AveragingOutcome {
    /// `int g(t) <phi, chi_j P_t(I) chi_j phi> dt`
    pub lhs: f64,
    /// `|I| sup g`
    pub bound: f64,
    pub error_estimate: f64,
    /// Parameter values where an eigenvalue crosses an end of `I`.
    pub crossings: usize,
    pub pass: bool,
}

/// Integrates `t -> <phi, chi_j P_t(I) chi_j phi>` for `H_t = H0 + t diag(w)`
/// against the piecewise-constant weight `g` and compares with `|I| sup g`.
///
/// Since `w >= 0`, every eigenvalue of `H_t` is non-decreasing in `t`, so the
/// integrand jumps exactly where an eigenvalue crosses `I.lo` or `I.hi`.
/// Those points are located by bisection on the eigenvalue count; between
/// them the integrand is continuous and is integrated by adaptive
/// Gauss-Kronrod (7/15) quadrature.
pub fn spectral_averaging_check(
    h0: &Hamiltonian,
    w: &[f64],
    g: &DensityBV,
    interval: Interval,
    j: usize,
    phi: &[f64],
    options: QuadratureOptions,
) -> Result<AveragingOutcome> {
    check_unit_vector(h0.dim(), j, phi)?;
    if w.len() != h0.dim() || w.iter().any(|&x| x < 0.0) || w[j] < 1.0 {
        return Err(Error::InvalidInput("weights must be nonnegative with w[j] >= 1".into()));
    }
    let bound = interval.len() * g.sup();
    let scale = phi[j] * phi[j];
    let (a, b) = g.support();

    let mut cuts: Vec<f64> = g.breakpoints().to_vec();
    let mut crossings = 0;
    if !interval.is_empty() && scale > 0.0 {
        for energy in [interval.lo, interval.hi] {
            // same eigendecomposition as the integrand, without the tie
            // allowance of `count_below`, so cuts and integrand agree
            let count = |t: f64| {
                sorted_eigenvalues(&h0.with_diagonal_shift(t, w).to_dense()).partition_point(|&x| x <= energy)
            };
            let mut found = Vec::new();
            locate_jumps(&count, a, b, count(a), count(b), options.crossing_resolution, &mut found);
            crossings += found.len();
            cuts.extend(found);
        }
    }
    cuts.sort_by(|x, y| x.total_cmp(y));
    cuts.dedup();

    let integrand = |t: f64| {
        if interval.is_empty() || scale == 0.0 {
            return 0.0;
        }
        scale * local_weight(&h0.with_diagonal_shift(t, w).to_dense(), interval, j)
    };

    let total_width = b - a;
    let mut lhs = 0.0;
    // each crossing is known to within `crossing_resolution`; the integrand
    // jumps by at most `scale` there
    let mut error = crossings as f64 * options.crossing_resolution * scale * g.sup();
    for piece in cuts.windows(2) {
        let (t0, t1) = (piece[0], piece[1]);
        let weight = g.pdf(0.5 * (t0 + t1));
        if weight == 0.0 || t1 <= t0 {
            continue;
        }
        let local_tol = options.tolerance * (t1 - t0) / total_width / weight;
        let (value, err) = adaptive_gk(&integrand, t0, t1, local_tol, options.max_depth);
        lhs += weight * value;
        error += weight * err;
    }
    if error > options.tolerance {
        return Err(Error::QuadratureFailure { error, tolerance: options.tolerance });
    }
    Ok(AveragingOutcome {
        lhs,
        bound,
        error_estimate: error,
        crossings,
        pass: lhs <= bound + error,
    })
}

/// Bisection on a monotone integer-valued function: pushes the midpoint of
/// every bracket narrower than `resolution` that contains a change.
fn locate_jumps(
    count: &impl Fn(f64) -> usize,
    t0: f64,
    t1: f64,
    n0: usize,
    n1: usize,
    resolution: f64,
    out: &mut Vec<f64>,
) {
    if n0 == n1 {
        return;
    }
    let mid = 0.5 * (t0 + t1);
    if t1 - t0 <= resolution || mid <= t0 || mid >= t1 {
        out.push(mid);
        return;
    }
    let nm = count(mid);
    locate_jumps(count, t0, mid, n0, nm, resolution, out);
    locate_jumps(count, mid, t1, nm, n1, resolution, out);
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gauss_kronrod(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = half * XGK[i];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

fn adaptive_gk(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: usize) -> (f64, f64) {
    let (value, err) = gauss_kronrod(f, a, b);
    if err <= tol || depth == 0 {
        return (value, err);
    }
    let mid = 0.5 * (a + b);
    let (left, el) = adaptive_gk(f, a, mid, 0.5 * tol, depth - 1);
    let (right, er) = adaptive_gk(f, mid, b, 0.5 * tol, depth - 1);
    (left + right, el + er)
}
