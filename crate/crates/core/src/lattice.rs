//! Finitely supported real functions on `Z^d`.

use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geometry::{max_norm, Site};

/// A finitely supported function `Z^d -> R`, stored as sorted `(site, value)`
/// pairs with exact zeros removed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LatticeFunction {
    d: usize,
    entries: Vec<(Site, f64)>,
}

impl LatticeFunction {
    /// Builds a lattice function; duplicate sites are summed.
    pub fn new<I>(d: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Site, f64)>,
    {
        if d == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        let mut map: BTreeMap<Site, f64> = BTreeMap::new();
        for (site, value) in entries {
            if site.len() != d {
                return Err(Error::InvalidInput(format!(
                    "site {site:?} has {} coordinates, expected {d}",
                    site.len()
                )));
            }
            if !value.is_finite() {
                return Err(Error::InvalidInput(format!("non-finite value at {site:?}")));
            }
            *map.entry(site).or_insert(0.0) += value;
        }
        Ok(LatticeFunction {
            d,
            entries: map.into_iter().filter(|(_, v)| *v != 0.0).collect(),
        })
    }

    pub fn zero(d: usize) -> Self {
        LatticeFunction { d, entries: Vec::new() }
    }

    pub fn delta(d: usize, value: f64) -> Self {
        LatticeFunction::new(d, [(vec![0; d], value)]).expect("valid delta")
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, m: &[i64]) -> f64 {
        self.entries
            .binary_search_by(|(k, _)| k.as_slice().cmp(m))
            .map(|i| self.entries[i].1)
            .unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Site, f64)> {
        self.entries.iter().map(|(k, v)| (k, *v))
    }

    /// Smallest `s` such that the support lies in `Q_s`.
    pub fn support_radius(&self) -> usize {
        self.entries
            .iter()
            .map(|(k, _)| max_norm(k) as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn l1_norm(&self) -> f64 {
        self.entries.iter().map(|(_, v)| v.abs()).sum()
    }

    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        LatticeFunction::new(self.d, self.entries.iter().map(|(k, v)| (k.clone(), f(*v))))
    }

    /// `(self * other)(x) = sum_k self(k) other(x - k)`.
    pub fn convolve(&self, other: &LatticeFunction) -> Result<Self> {
        if self.d != other.d {
            return Err(Error::InvalidInput(format!(
                "dimension mismatch: {} vs {}",
                self.d, other.d
            )));
        }
        let terms = self.entries.iter().flat_map(|(k, a)| {
            other.entries.iter().map(move |(m, b)| {
                let x: Site = k.iter().zip(m).map(|(p, q)| p + q).collect();
                (x, a * b)
            })
        });
        LatticeFunction::new(self.d, terms)
    }

    /// Parses the line format `k_1 ... k_d value`, with `#` comments. The
    /// dimension is taken from `d` if given, else from the first entry.
    pub fn parse(text: &str, d: Option<usize>) -> Result<Self> {
        let mut dim = d;
        let mut entries = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (site, value) = parse_entry(line).map_err(|message| Error::Parse {
                line: lineno + 1,
                message,
            })?;
            match dim {
                None => dim = Some(site.len()),
                Some(dd) if dd != site.len() => {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        message: format!("expected {dd} coordinates, found {}", site.len()),
                    })
                }
                _ => {}
            }
            entries.push((site, value));
        }
        let dim = dim.ok_or_else(|| Error::Parse {
            line: 0,
            message: "no entries and no dimension given".into(),
        })?;
        LatticeFunction::new(dim, entries)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            for c in k {
                write!(out, "{c} ").unwrap();
            }
            writeln!(out, "{v:?}").unwrap();
        }
        out
    }
}

/// Parses one `k_1 ... k_d value` entry.
pub fn parse_entry(line: &str) -> std::result::Result<(Site, f64), String> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    if tokens.len() < 2 {
        return Err(format!("expected `k_1 ... k_d value`, got `{line}`"));
    }
    let (coords, value) = tokens.split_at(tokens.len() - 1);
    let site = coords
        .iter()
        .map(|t| t.parse::<i64>().map_err(|e| format!("bad coordinate `{t}`: {e}")))
        .collect::<std::result::Result<Site, _>>()?;
    let value = parse_real(value[0])?;
    Ok((site, value))
}

/// Parses a real number, also accepting simple fractions such as `-1/2`.
pub fn parse_real(token: &str) -> std::result::Result<f64, String> {
    if let Some((num, den)) = token.split_once('/') {
        let n: f64 = num.trim().parse().map_err(|e| format!("bad value `{token}`: {e}"))?;
        let d: f64 = den.trim().parse().map_err(|e| format!("bad value `{token}`: {e}"))?;
        return Ok(n / d);
    }
    token.parse().map_err(|e| format!("bad value `{token}`: {e}"))
}
