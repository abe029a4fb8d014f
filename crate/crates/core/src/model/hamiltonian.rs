use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::geometry::BoxSpec;

use super::config::AndersonConfig;

/// Restriction of the lattice Laplacian to a finite box.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    /// Hopping terms leaving the box are deleted.
    #[default]
    Truncated,
    /// Indices wrap modulo the side length.
    Periodic,
}

/// A real symmetric sparse matrix: the diagonal plus the strict upper
/// triangle.
#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian {
    diagonal: Vec<f64>,
    /// `(i, j, value)` with `i < j`, sorted.
    upper: Vec<(usize, usize, f64)>,
}

impl Hamiltonian {
    /// `-Delta + diag(potential)` on the grid `prod_i {0, ..., sides[i] - 1}`
    /// in row-major order, where `Delta phi(k) = sum_i phi(k + e_i) + phi(k - e_i)`.
    pub fn lattice(sides: &[usize], boundary: Boundary, potential: &[f64]) -> Result<Self> {
        let n: usize = sides.iter().product();
        if sides.is_empty() || n == 0 {
            return Err(Error::InvalidGeometry("empty lattice".into()));
        }
        if potential.len() != n {
            return Err(Error::InvalidGeometry(format!(
                "potential has {} entries for {n} sites",
                potential.len()
            )));
        }
        let mut diagonal = potential.to_vec();
        let mut off: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        let strides: Vec<usize> = (0..sides.len())
            .map(|a| sides[a + 1..].iter().product())
            .collect();
        for k in 0..n {
            for (&side, &stride) in sides.iter().zip(&strides) {
                let c = (k / stride) % side;
                for step in [1i64, -1] {
                    let target = c as i64 + step;
                    let nc = if (0..side as i64).contains(&target) {
                        target as usize
                    } else if boundary == Boundary::Periodic {
                        target.rem_euclid(side as i64) as usize
                    } else {
                        continue;
                    };
                    let nb = k - c * stride + nc * stride;
                    if nb == k {
                        diagonal[k] -= 1.0;
                    } else if k < nb {
                        *off.entry((k, nb)).or_insert(0.0) -= 1.0;
                    }
                }
            }
        }
        Ok(Hamiltonian {
            diagonal,
            upper: off.into_iter().map(|((i, j), v)| (i, j, v)).collect(),
        })
    }

    /// Reads the diagonal and upper triangle of a square matrix.
    pub fn from_dense(m: &DMatrix<f64>) -> Self {
        assert!(m.is_square(), "matrix must be square");
        let n = m.nrows();
        let mut upper = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if m[(i, j)] != 0.0 {
                    upper.push((i, j, m[(i, j)]));
                }
            }
        }
        Hamiltonian { diagonal: (0..n).map(|i| m[(i, i)]).collect(), upper }
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    pub fn off_diagonal(&self) -> &[(usize, usize, f64)] {
        &self.upper
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&self.diagonal));
        for &(i, j, v) in &self.upper {
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
        m
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        let mut rows: Vec<f64> = self.diagonal.iter().map(|d| d.abs()).collect();
        for &(i, j, v) in &self.upper {
            rows[i] += v.abs();
            rows[j] += v.abs();
        }
        rows.into_iter().fold(0.0, f64::max)
    }

    /// `self + t diag(w)`.
    pub fn with_diagonal_shift(&self, t: f64, w: &[f64]) -> Self {
        assert_eq!(w.len(), self.dim(), "weight length mismatch");
        let mut h = self.clone();
        for (d, wi) in h.diagonal.iter_mut().zip(w) {
            *d += t * wi;
        }
        h
    }
}

/// `H = -Delta + V_per + V_omega` on `Q_l`, with
/// `V_omega(x) = sum_{k in Q_{l+R}} omega_k u(x - k)` and `omega` indexed by
/// the ordinals of `Q_{l+R}`.
pub fn assemble_hamiltonian(config: &AndersonConfig, omega: &[f64]) -> Result<Hamiltonian> {
    let potential = config.potential(omega)?;
    let side = config.box_spec().side();
    Hamiltonian::lattice(&vec![side; config.d], config.boundary, &potential)
}

impl AndersonConfig {
    /// Values of `V_per + V_omega` on `Q_l` in lexicographic order.
    pub fn potential(&self, omega: &[f64]) -> Result<Vec<f64>> {
        let couplings = self.coupling_box();
        if omega.len() != couplings.len() {
            return Err(Error::InvalidGeometry(format!(
                "omega has {} entries, Q_(l+R) has {}",
                omega.len(),
                couplings.len()
            )));
        }
        let cube: BoxSpec = self.box_spec();
        Ok(cube
            .iter()
            .map(|x| {
                let random: f64 = self
                    .u()
                    .values
                    .iter()
                    .map(|(y, uy)| {
                        let k: Vec<i64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
                        omega[couplings.ordinal(&k).expect("support of u lies in Q_R")] * uy
                    })
                    .sum();
                self.v_per.value(&x) + random
            })
            .collect())
    }
}
