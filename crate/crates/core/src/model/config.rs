use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::BoxSpec;
use crate::lattice::{parse_entry, LatticeFunction};
use crate::symbol::CoefficientField;

use super::density::DensityBV;
use super::hamiltonian::Boundary;
use super::potential::{build_u, rescale_kappa, GeneralizedStepPotential, PeriodicPotential, SingleSiteProfile};

/// A finite-volume discrete Anderson model on `Q_l` with single-site
/// potential `u = alpha * v` and coupling density `f`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AndersonConfig {
    pub d: usize,
    pub l: usize,
    pub boundary: Boundary,
    pub v_per: PeriodicPotential,
    pub alpha: CoefficientField,
    pub v: SingleSiteProfile,
    pub f: DensityBV,
    pub seed: Option<u64>,
    #[serde(skip)]
    u: GeneralizedStepPotential,
}

impl AndersonConfig {
    pub fn new(
        l: usize,
        boundary: Boundary,
        v_per: PeriodicPotential,
        alpha: CoefficientField,
        v: SingleSiteProfile,
        f: DensityBV,
    ) -> Result<Self> {
        let d = alpha.d();
        if v.d() != d || v_per.cell.d() != d {
            return Err(Error::Config(format!(
                "dimension mismatch: alpha {d}, v {}, v_per {}",
                v.d(),
                v_per.cell.d()
            )));
        }
        let u = build_u(&alpha, &v)?;
        Ok(AndersonConfig { d, l, boundary, v_per, alpha, v, f, seed: None, u })
    }

    /// The one-dimensional alloy model with `v` the indicator of the origin,
    /// couplings uniform on `[0, 1]`, no periodic background, truncated boundary.
    pub fn simple(alpha: CoefficientField, l: usize) -> Result<Self> {
        let d = alpha.d();
        AndersonConfig::new(
            l,
            Boundary::Truncated,
            PeriodicPotential::zero(d),
            alpha,
            SingleSiteProfile::indicator(d, 1.0)?,
            DensityBV::uniform(0.0, 1.0)?,
        )
    }

    pub fn u(&self) -> &GeneralizedStepPotential {
        &self.u
    }

    /// `R = r + D`.
    pub fn big_r(&self) -> usize {
        self.u.big_r
    }

    pub fn kappa(&self) -> f64 {
        self.v.kappa()
    }

    /// `Q_l`, the box carrying the Hamiltonian.
    pub fn box_spec(&self) -> BoxSpec {
        BoxSpec::new(self.d, self.l)
    }

    /// `Q_{l+R}`, the sites whose couplings reach `Q_l`.
    pub fn coupling_box(&self) -> BoxSpec {
        BoxSpec::new(self.d, self.l + self.big_r())
    }

    pub fn volume(&self) -> usize {
        self.box_spec().len()
    }

    pub fn with_l(&self, l: usize) -> Self {
        AndersonConfig { l, ..self.clone() }
    }

    pub fn with_boundary(&self, boundary: Boundary) -> Self {
        AndersonConfig { boundary, ..self.clone() }
    }

    /// The equivalent model with `kappa = 1`: profile `v / kappa` and the
    /// density of `kappa * omega`.
    pub fn rescaled(&self) -> Result<Self> {
        let (v, f) = rescale_kappa(&self.v, &self.f)?;
        let mut out = AndersonConfig::new(self.l, self.boundary, self.v_per.clone(), self.alpha.clone(), v, f)?;
        out.seed = self.seed;
        Ok(out)
    }

    /// Hex SHA-256 of the canonical JSON form.
    pub fn digest(&self) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        Sha256::digest(json.as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        AndersonConfig::from_toml_str(&text)
    }

    /// Parses the TOML config schema:
    ///
    /// ```toml
    /// dimension = 1
    /// l = 10
    /// boundary = "truncated"     # or "periodic"
    /// kappa = 1.0
    /// alpha = ["0 1", "1 -1/2"]  # "k_1 ... k_d value"
    /// v = ["0 1"]
    /// seed = 7                   # optional
    ///
    /// [density]
    /// breakpoints = [0.0, 1.0]
    /// values = [1.0]
    ///
    /// [v_per]                    # optional
    /// period = 2
    /// entries = ["0 0.5", "1 -0.5"]
    /// ```
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        raw.into_config()
    }

    pub fn to_toml_string(&self) -> String {
        fn lines(f: &LatticeFunction) -> Vec<String> {
            f.to_text().lines().map(str::to_owned).collect()
        }
        let raw = RawConfig {
            dimension: self.d,
            l: self.l,
            boundary: self.boundary,
            kappa: self.kappa(),
            alpha: lines(self.alpha.values()),
            v: lines(self.v.values()),
            seed: self.seed,
            density: RawDensity {
                breakpoints: self.f.breakpoints().to_vec(),
                values: self.f.piece_values().to_vec(),
            },
            v_per: Some(RawPeriodic {
                period: self.v_per.period,
                entries: lines(&self.v_per.cell),
            }),
        };
        toml::to_string(&raw).expect("config serializes to TOML")
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    dimension: usize,
    l: usize,
    #[serde(default)]
    boundary: Boundary,
    kappa: f64,
    alpha: Vec<String>,
    v: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    density: RawDensity,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    v_per: Option<RawPeriodic>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDensity {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPeriodic {
    period: usize,
    #[serde(default)]
    entries: Vec<String>,
}

fn parse_entries(key: &str, d: usize, lines: &[String]) -> Result<LatticeFunction> {
    let entries = lines
        .iter()
        .map(|line| {
            let (site, value) = parse_entry(line).map_err(|e| Error::Config(format!("{key}: {e}")))?;
            if site.len() != d {
                return Err(Error::Config(format!(
                    "{key}: entry `{line}` has {} coordinates, dimension is {d}",
                    site.len()
                )));
            }
            Ok((site, value))
        })
        .collect::<Result<Vec<_>>>()?;
    LatticeFunction::new(d, entries).map_err(|e| Error::Config(format!("{key}: {e}")))
}

impl RawConfig {
    fn into_config(self) -> Result<AndersonConfig> {
        let d = self.dimension;
        if d == 0 {
            return Err(Error::Config("dimension must be positive".into()));
        }
        let ctx = |key: &'static str| move |e: Error| Error::Config(format!("{key}: {e}"));
        let alpha = CoefficientField::new(parse_entries("alpha", d, &self.alpha)?).map_err(ctx("alpha"))?;
        let v = SingleSiteProfile::new(parse_entries("v", d, &self.v)?, self.kappa).map_err(ctx("v"))?;
        let f = DensityBV::new(self.density.breakpoints, self.density.values).map_err(ctx("density"))?;
        let v_per = match self.v_per {
            Some(p) => PeriodicPotential::new(p.period, parse_entries("v_per", d, &p.entries)?).map_err(ctx("v_per"))?,
            None => PeriodicPotential::zero(d),
        };
        let mut config = AndersonConfig::new(self.l, self.boundary, v_per, alpha, v, f)?;
        config.seed = self.seed;
        Ok(config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
dimension = 1
l = 10
boundary = "periodic"
kappa = 1.0
alpha = ["0 1", "1 -1/2"]
v = ["0 1"]
seed = 7

[density]
breakpoints = [0.0, 1.0]
values = [1.0]

[v_per]
period = 2
entries = ["0 0.25"]
"#;

    #[test]
    fn parses_sample() {
        let c = AndersonConfig::from_toml_str(SAMPLE).unwrap();
        assert_eq!((c.d, c.l, c.boundary, c.seed), (1, 10, Boundary::Periodic, Some(7)));
        assert_eq!(c.alpha.get(&[1]), -0.5);
        assert_eq!(c.big_r(), 1);
        assert_eq!(c.v_per.value(&[4]), 0.25);
        assert_eq!(c.coupling_box().len(), 23);
        let again = AndersonConfig::from_toml_str(&c.to_toml_string()).unwrap();
        assert_eq!(again, c);
        assert_eq!(again.digest(), c.digest());
    }

    #[test]
    fn rejects_bad_configs() {
        let wrong_dim = SAMPLE.replace("\"0 1\", \"1 -1/2\"", "\"0 0 1\"");
        assert!(matches!(AndersonConfig::from_toml_str(&wrong_dim), Err(Error::Config(_))));
        let unknown = format!("{SAMPLE}\nextra = 1\n");
        assert!(AndersonConfig::from_toml_str(&unknown).is_err());
        let bad_density = SAMPLE.replace("values = [1.0]", "values = [2.0]");
        assert!(AndersonConfig::from_toml_str(&bad_density).is_err());
        assert!(AndersonConfig::from_toml_str("dimension = 1").is_err());
    }

    #[test]
    fn digest_tracks_content() {
        let c = AndersonConfig::from_toml_str(SAMPLE).unwrap();
        assert_ne!(c.digest(), c.with_l(5).digest());
        assert_eq!(c.digest().len(), 64);
    }
}
