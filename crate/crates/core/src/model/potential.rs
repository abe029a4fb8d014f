use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::Site;
use crate::lattice::LatticeFunction;
use crate::symbol::CoefficientField;

use super::density::DensityBV;

/// The nonnegative profile `v` with `v >= kappa * indicator(0)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SingleSiteProfile {
    values: LatticeFunction,
    kappa: f64,
}

impl SingleSiteProfile {
    pub fn new(values: LatticeFunction, kappa: f64) -> Result<Self> {
        if !(kappa > 0.0) {
            return Err(Error::InvalidInput(format!("kappa must be positive, got {kappa}")));
        }
        if values.iter().any(|(_, v)| v < 0.0) {
            return Err(Error::InvalidInput("single-site profile must be nonnegative".into()));
        }
        let origin = values.get(&vec![0; values.d()]);
        if origin < kappa {
            return Err(Error::InvalidInput(format!(
                "profile value {origin} at the origin is below kappa = {kappa}"
            )));
        }
        Ok(SingleSiteProfile { values, kappa })
    }

    /// `kappa` times the indicator of the origin.
    pub fn indicator(d: usize, kappa: f64) -> Result<Self> {
        SingleSiteProfile::new(LatticeFunction::delta(d, kappa), kappa)
    }

    pub fn d(&self) -> usize {
        self.values.d()
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// Support radius `r`.
    pub fn support_radius(&self) -> usize {
        self.values.support_radius()
    }

    pub fn values(&self) -> &LatticeFunction {
        &self.values
    }

    pub fn get(&self, x: &[i64]) -> f64 {
        self.values.get(x)
    }
}

/// `u = sum_k alpha_k v(. - k)`, together with `R = r + D`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneralizedStepPotential {
    pub values: LatticeFunction,
    pub big_r: usize,
}

impl GeneralizedStepPotential {
    pub fn get(&self, x: &[i64]) -> f64 {
        self.values.get(x)
    }
}

pub fn build_u(alpha: &CoefficientField, v: &SingleSiteProfile) -> Result<GeneralizedStepPotential> {
    Ok(GeneralizedStepPotential {
        values: alpha.values().convolve(v.values())?,
        big_r: v.support_radius() + alpha.support_radius(),
    })
}

/// Reduces to `kappa = 1`: returns `(v / kappa, h)` with
/// `h(x) = f(x / kappa) / kappa`, the density of `kappa * omega`.
pub fn rescale_kappa(v: &SingleSiteProfile, f: &DensityBV) -> Result<(SingleSiteProfile, DensityBV)> {
    let kappa = v.kappa();
    if kappa == 1.0 {
        return Ok((v.clone(), f.clone()));
    }
    let scaled = SingleSiteProfile::new(v.values().map_values(|x| x / kappa)?, 1.0)?;
    Ok((scaled, f.scaled(kappa)?))
}

/// A potential on `Z^d` with period `n` in every direction, given by its
/// values on the cell `{0, ..., n-1}^d`; unspecified cell sites are zero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodicPotential {
    pub period: usize,
    pub cell: LatticeFunction,
}

impl PeriodicPotential {
    pub fn new(period: usize, cell: LatticeFunction) -> Result<Self> {
        if period == 0 {
            return Err(Error::InvalidInput("period must be positive".into()));
        }
        if cell.iter().any(|(k, _)| k.iter().any(|&c| c < 0 || c >= period as i64)) {
            return Err(Error::InvalidInput(format!(
                "periodic cell entries must lie in [0, {period})^d"
            )));
        }
        Ok(PeriodicPotential { period, cell })
    }

    pub fn zero(d: usize) -> Self {
        PeriodicPotential { period: 1, cell: LatticeFunction::zero(d) }
    }

    pub fn value(&self, x: &[i64]) -> f64 {
        let p = self.period as i64;
        let reduced: Site = x.iter().map(|c| c.rem_euclid(p)).collect();
        self.cell.get(&reduced)
    }

    pub fn sup_abs(&self) -> f64 {
        self.cell.iter().map(|(_, v)| v.abs()).fold(0.0, f64::max)
    }
}
