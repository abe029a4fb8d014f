//! Monte Carlo estimation of the Wegner bound and the integrated density of
//! states, with Lipschitz and self-averaging checks.
//!
//! Realization `i` always uses stream `i` of the master seed and results are
//! reduced in realization order, so parallel and serial runs agree exactly.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{assemble_hamiltonian, sample_omega_stream, wegner_constant, AndersonConfig};
use crate::spectral::{count_below_dense, count_in_interval};
use crate::symbol::wiener_inverse;

/// Accuracy requested from the Wiener inversion when computing `C_W`.
pub const WIENER_TOLERANCE: f64 = 1e-10;

/// Number of standard errors allowed before a bound counts as violated.
pub const SIGMA_THRESHOLD: f64 = 3.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WegnerReport {
    pub config_digest: String,
    pub e1: f64,
    pub e2: f64,
    pub realizations: usize,
    pub seed: u64,
    pub mean_count: f64,
    pub std_error: f64,
    /// `(2l+1)^d`
    pub volume: usize,
    /// `mean_count / (volume |I|)`
    pub ratio: f64,
    pub c_w: f64,
    /// `(c_w - ratio)` in units of the ratio's standard error; `None` when
    /// the standard error vanishes.
    pub slack_sigmas: Option<f64>,
    pub pass: bool,
    /// Per-realization eigenvalue counts in `(e1, e2]`.
    #[serde(skip)]
    pub counts: Vec<usize>,
}

/// Sample mean and standard error of the mean, summed pairwise in index order.
/// Deviations are taken from the first sample, so constant data has exactly
/// zero variance.
pub fn mean_and_std_error(samples: &[f64]) -> (f64, f64) {
    let n = samples.len() as f64;
    let mean = pairwise_sum(samples) / n;
    if samples.len() < 2 {
        return (mean, 0.0);
    }
    let shifted: Vec<f64> = samples.iter().map(|x| x - samples[0]).collect();
    let shifted_mean = pairwise_sum(&shifted) / n;
    let squares: Vec<f64> = shifted.iter().map(|x| (x - shifted_mean).powi(2)).collect();
    let variance = pairwise_sum(&squares) / (n - 1.0);
    (mean, (variance / n).sqrt())
}

/// Unbiased sample variance.
pub fn sample_variance(samples: &[f64]) -> f64 {
    let (_, se) = mean_and_std_error(samples);
    se * se * samples.len() as f64
}

fn pairwise_sum(x: &[f64]) -> f64 {
    if x.len() <= 8 {
        return x.iter().sum();
    }
    let (a, b) = x.split_at(x.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

fn check_realizations(m: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidInput(format!("need at least 2 realizations, got {m}")));
    }
    Ok(())
}

/// Monte Carlo estimate of `E{N(e2) - N(e1)}` on `Q_l`, compared with
/// `C_W (2l+1)^d (e2 - e1)`.
pub fn estimate_wegner(config: &AndersonConfig, e1: f64, e2: f64, m: usize, seed: u64) -> Result<WegnerReport> {
    if !(e1 < e2) {
        return Err(Error::InvalidInterval { lo: e1, hi: e2 });
    }
    check_realizations(m)?;
    let wiener = wiener_inverse(&config.alpha, WIENER_TOLERANCE)?;
    let c_w = wegner_constant(config, &wiener);

    let couplings = config.coupling_box();
    let counts = (0..m)
        .into_par_iter()
        .map(|i| {
            let omega = sample_omega_stream(&config.f, couplings, seed, i as u64);
            count_in_interval(&assemble_hamiltonian(config, &omega)?, e1, e2)
        })
        .collect::<Result<Vec<usize>>>()?;

    let samples: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
    let (mean_count, std_error) = mean_and_std_error(&samples);
    let volume = config.volume();
    let scale = volume as f64 * (e2 - e1);
    let ratio = mean_count / scale;
    let ratio_error = std_error / scale;
    Ok(WegnerReport {
        config_digest: config.digest(),
        e1,
        e2,
        realizations: m,
        seed,
        mean_count,
        std_error,
        volume,
        ratio,
        c_w,
        slack_sigmas: (ratio_error > 0.0).then(|| (c_w - ratio) / ratio_error),
        pass: ratio <= c_w + SIGMA_THRESHOLD * ratio_error,
        counts,
    })
}

/// Monte Carlo estimate of `E{N(E)} / (2l+1)^d` on an energy grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdsCurve {
    pub energies: Vec<f64>,
    pub mean: Vec<f64>,
    pub std_error: Vec<f64>,
    /// Half-sides `l` of the boxes used.
    pub box_sizes: Vec<usize>,
    pub realizations: usize,
    pub seed: u64,
}

impl IdsCurve {
    pub fn in_unit_interval(&self) -> bool {
        self.mean.iter().all(|&v| (0.0..=1.0).contains(&v))
    }

    /// Every adjacent pair is non-decreasing up to `sigmas` combined
    /// standard errors.
    pub fn is_monotone_within(&self, sigmas: f64) -> bool {
        (1..self.mean.len()).all(|i| {
            let sigma = self.std_error[i].hypot(self.std_error[i - 1]);
            self.mean[i] >= self.mean[i - 1] - sigmas * sigma
        })
    }
}

pub fn estimate_ids(config: &AndersonConfig, energies: &[f64], m: usize, seed: u64) -> Result<IdsCurve> {
    check_realizations(m)?;
    if energies.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(Error::InvalidInput("energy grid must be sorted".into()));
    }
    let volume = config.volume() as f64;
    let couplings = config.coupling_box();
    let per_realization = (0..m)
        .into_par_iter()
        .map(|i| {
            let omega = sample_omega_stream(&config.f, couplings, seed, i as u64);
            let dense = assemble_hamiltonian(config, &omega)?.to_dense();
            Ok(energies
                .iter()
                .map(|&e| count_below_dense(&dense, e) as f64 / volume)
                .collect::<Vec<f64>>())
        })
        .collect::<Result<Vec<Vec<f64>>>>()?;

    let (mean, std_error) = (0..energies.len())
        .map(|k| {
            let column: Vec<f64> = per_realization.iter().map(|row| row[k]).collect();
            mean_and_std_error(&column)
        })
        .unzip();
    Ok(IdsCurve {
        energies: energies.to_vec(),
        mean,
        std_error,
        box_sizes: vec![config.l],
        realizations: m,
        seed,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LipschitzVerdict {
    pub e1: f64,
    pub e2: f64,
    pub slope: f64,
    /// Standard error of the slope from the two per-energy errors.
    pub slope_error: f64,
    pub pass: bool,
}

/// Checks `(N(e2) - N(e1)) / (e2 - e1) <= c_w + 3 sigma` on adjacent grid
/// points. Pairs with `e1 == e2` are skipped.
pub fn lipschitz_check(curve: &IdsCurve, c_w: f64) -> Vec<LipschitzVerdict> {
    (1..curve.energies.len())
        .filter(|&i| curve.energies[i] > curve.energies[i - 1])
        .map(|i| {
            let width = curve.energies[i] - curve.energies[i - 1];
            let slope = (curve.mean[i] - curve.mean[i - 1]) / width;
            let slope_error = curve.std_error[i].hypot(curve.std_error[i - 1]) / width;
            LipschitzVerdict {
                e1: curve.energies[i - 1],
                e2: curve.energies[i],
                slope,
                slope_error,
                pass: slope <= c_w + SIGMA_THRESHOLD * slope_error,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelfAveragingRow {
    pub l: usize,
    pub volume: usize,
    pub mean: f64,
    /// Sample variance of `N(E) / (2l+1)^d` across realizations.
    pub variance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelfAveragingTable {
    pub energy: f64,
    pub realizations: usize,
    pub seed: u64,
    pub rows: Vec<SelfAveragingRow>,
    /// Each variance is at most twice the previous one.
    pub non_increasing: bool,
}

pub fn self_averaging_check(
    template: &AndersonConfig,
    sizes: &[usize],
    energy: f64,
    m: usize,
    seed: u64,
) -> Result<SelfAveragingTable> {
    check_realizations(m)?;
    if sizes.is_empty() || sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput("box sizes must be non-empty and increasing".into()));
    }
    let rows = sizes
        .iter()
        .map(|&l| {
            let curve = estimate_ids(&template.with_l(l), &[energy], m, seed)?;
            let config = template.with_l(l);
            let se = curve.std_error[0];
            Ok(SelfAveragingRow {
                l,
                volume: config.volume(),
                mean: curve.mean[0],
                variance: se * se * m as f64,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let non_increasing = rows.windows(2).all(|w| w[1].variance <= 2.0 * w[0].variance);
    Ok(SelfAveragingTable { energy, realizations: m, seed, rows, non_increasing })
}
