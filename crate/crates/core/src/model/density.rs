use serde::Serialize;

use crate::error::{Error, Result};

/// A piecewise-constant probability density with compact support
/// `[breakpoints[0], breakpoints[n]]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityBV {
    breakpoints: Vec<f64>,
    piece_values: Vec<f64>,
    /// `cumulative[i]` is the mass to the left of `breakpoints[i]`.
    #[serde(skip)]
    cumulative: Vec<f64>,
}

impl DensityBV {
    pub fn new(breakpoints: Vec<f64>, piece_values: Vec<f64>) -> Result<Self> {
        if piece_values.is_empty() || breakpoints.len() != piece_values.len() + 1 {
            return Err(Error::InvalidInput(format!(
                "density needs n+1 breakpoints for n pieces, got {} and {}",
                breakpoints.len(),
                piece_values.len()
            )));
        }
        if breakpoints.iter().any(|b| !b.is_finite()) || breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput("breakpoints must be finite and strictly increasing".into()));
        }
        if piece_values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidInput("density values must be finite and nonnegative".into()));
        }
        let mut cumulative = Vec::with_capacity(breakpoints.len());
        cumulative.push(0.0);
        for (i, v) in piece_values.iter().enumerate() {
            let last = *cumulative.last().unwrap();
            cumulative.push(last + v * (breakpoints[i + 1] - breakpoints[i]));
        }
        let total = *cumulative.last().unwrap();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidInput(format!("density integrates to {total}, not 1")));
        }
        Ok(DensityBV { breakpoints, piece_values, cumulative })
    }

    pub fn uniform(a: f64, b: f64) -> Result<Self> {
        DensityBV::new(vec![a, b], vec![1.0 / (b - a)])
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn piece_values(&self) -> &[f64] {
        &self.piece_values
    }

    pub fn support(&self) -> (f64, f64) {
        (self.breakpoints[0], *self.breakpoints.last().unwrap())
    }

    /// `sup f`.
    pub fn sup(&self) -> f64 {
        self.piece_values.iter().cloned().fold(0.0, f64::max)
    }

    /// `max |x|` over the support.
    pub fn max_abs(&self) -> f64 {
        let (a, b) = self.support();
        a.abs().max(b.abs())
    }

    pub fn pdf(&self, x: f64) -> f64 {
        let (a, b) = self.support();
        if x < a || x >= b {
            return 0.0;
        }
        let i = self.breakpoints.partition_point(|&p| p <= x) - 1;
        self.piece_values[i]
    }

    pub fn cdf(&self, x: f64) -> f64 {
        let (a, b) = self.support();
        if x <= a {
            return 0.0;
        }
        if x >= b {
            return 1.0;
        }
        let i = self.breakpoints.partition_point(|&p| p <= x) - 1;
        self.cumulative[i] + self.piece_values[i] * (x - self.breakpoints[i])
    }

    /// Inverse CDF for `u in [0, 1)`; pieces of zero mass are never returned.
    pub fn quantile(&self, u: f64) -> f64 {
        let n = self.piece_values.len();
        // first piece whose right cumulative mass exceeds u and has positive density
        let mut i = self.cumulative[1..].partition_point(|&c| c <= u).min(n - 1);
        while i + 1 < n && self.piece_values[i] == 0.0 {
            i += 1;
        }
        let x = self.breakpoints[i] + (u - self.cumulative[i]) / self.piece_values[i];
        x.clamp(self.breakpoints[i], self.breakpoints[i + 1])
    }

    /// The density of `kappa * X` when `X` has this density.
    pub fn scaled(&self, kappa: f64) -> Result<Self> {
        DensityBV::new(
            self.breakpoints.iter().map(|b| b * kappa).collect(),
            self.piece_values.iter().map(|v| v / kappa).collect(),
        )
    }
}

/// Total variation of the density viewed as a function on the whole line:
/// the sum of absolute jumps, including those onto and off the support.
pub fn bv_norm(f: &DensityBV) -> f64 {
    let v = f.piece_values();
    let interior: f64 = v.windows(2).map(|w| (w[1] - w[0]).abs()).sum();
    v[0].abs() + interior + v[v.len() - 1].abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bv_norm_examples() {
        assert_eq!(bv_norm(&DensityBV::uniform(0.0, 1.0).unwrap()), 2.0);
        assert_eq!(bv_norm(&DensityBV::uniform(0.0, 2.0).unwrap()), 1.0);
        let two_step = DensityBV::new(vec![0.0, 0.5, 1.0], vec![1.5, 0.5]).unwrap();
        assert_eq!(bv_norm(&two_step), 3.0);
    }

    #[test]
    fn rejects_bad_densities() {
        assert!(DensityBV::new(vec![0.0, 1.0], vec![0.5]).is_err());
        assert!(DensityBV::new(vec![1.0, 0.0], vec![1.0]).is_err());
        assert!(DensityBV::new(vec![0.0, 1.0, 2.0], vec![1.5, -0.5]).is_err());
        assert!(DensityBV::new(vec![0.0, 1.0], vec![1.0, 1.0]).is_err());
    }

    #[test]
    fn cdf_and_quantile_are_inverse() {
        let f = DensityBV::new(vec![-1.0, 0.0, 0.5, 2.0], vec![0.4, 0.0, 0.4]).unwrap();
        assert_eq!(f.cdf(-2.0), 0.0);
        assert_eq!(f.cdf(3.0), 1.0);
        assert!((f.cdf(0.25) - 0.4).abs() < 1e-15);
        for i in 0..100 {
            let u = i as f64 / 100.0;
            let x = f.quantile(u);
            assert!(!(0.0 < x && x < 0.5), "zero-mass piece sampled: {x}");
            assert!((f.cdf(x) - u).abs() < 1e-12);
        }
    }

    #[test]
    fn scaling_halves_jumps() {
        let f = DensityBV::uniform(0.0, 1.0).unwrap();
        let h = f.scaled(2.0).unwrap();
        assert_eq!(h.support(), (0.0, 2.0));
        assert_eq!(bv_norm(&h), 1.0);
        assert_eq!(bv_norm(&f.scaled(0.5).unwrap()), 4.0);
    }
}
