//! Lattice cubes `Q_s = {-s, ..., s}^d`, their lexicographic enumeration, and
//! the centered projection onto the discrete torus `Z^d / (2s+1) Z^d`.

use serde::{Deserialize, Serialize};

/// A lattice point in `Z^d`.
pub type Site = Vec<i64>;

/// Max-norm of a lattice point.
pub fn max_norm(m: &[i64]) -> i64 {
    m.iter().map(|c| c.abs()).max().unwrap_or(0)
}

/// The centered cube `Q_s` in `Z^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoxSpec {
    pub d: usize,
    pub s: usize,
}

impl BoxSpec {
    pub fn new(d: usize, s: usize) -> Self {
        assert!(d > 0, "dimension must be positive");
        BoxSpec { d, s }
    }

    /// Points per axis, `2s + 1`.
    pub fn side(&self) -> usize {
        2 * self.s + 1
    }

    pub fn len(&self) -> usize {
        self.side().pow(self.d as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, m: &[i64]) -> bool {
        m.len() == self.d && max_norm(m) <= self.s as i64
    }

    /// Ordinal of `m` in the lexicographic enumeration (first coordinate most
    /// significant), or `None` if `m` lies outside the cube.
    pub fn ordinal(&self, m: &[i64]) -> Option<usize> {
        if !self.contains(m) {
            return None;
        }
        let side = self.side() as i64;
        let s = self.s as i64;
        Some(m.iter().fold(0i64, |acc, &c| acc * side + (c + s)) as usize)
    }

    /// Inverse of [`BoxSpec::ordinal`].
    pub fn point(&self, ordinal: usize) -> Site {
        assert!(ordinal < self.len(), "ordinal {ordinal} out of range");
        let side = self.side();
        let mut rest = ordinal;
        let mut m = vec![0i64; self.d];
        for c in m.iter_mut().rev() {
            *c = (rest % side) as i64 - self.s as i64;
            rest /= side;
        }
        m
    }

    pub fn iter(&self) -> impl Iterator<Item = Site> + '_ {
        (0..self.len()).map(move |i| self.point(i))
    }
}

/// All points of `Q_s` in lexicographic order.
pub fn enumerate_box(b: BoxSpec) -> Vec<Site> {
    b.iter().collect()
}

/// Projection of `Z^d` onto `Q_s` modulo the sub-lattice `(2s+1) Z^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusProjection {
    pub d: usize,
    pub s: usize,
}

impl TorusProjection {
    pub fn new(d: usize, s: usize) -> Self {
        assert!(d > 0, "dimension must be positive");
        TorusProjection { d, s }
    }

    pub fn period(&self) -> i64 {
        2 * self.s as i64 + 1
    }

    pub fn target(&self) -> BoxSpec {
        BoxSpec::new(self.d, self.s)
    }

    pub fn project_coord(&self, c: i64) -> i64 {
        let s = self.s as i64;
        (c + s).rem_euclid(self.period()) - s
    }

    pub fn project(&self, m: &[i64]) -> Site {
        debug_assert_eq!(m.len(), self.d);
        m.iter().map(|&c| self.project_coord(c)).collect()
    }

    /// All points of `m + P Z^d` with max-norm at most `radius`, in
    /// lexicographic order.
    pub fn offsets_in_sublattice(&self, m: &[i64], radius: i64) -> Vec<Site> {
        let p = self.period();
        let per_axis: Vec<Vec<i64>> = m
            .iter()
            .map(|&c| {
                let mut x = -radius + (c + radius).rem_euclid(p);
                let mut out = Vec::new();
                while x <= radius {
                    out.push(x);
                    x += p;
                }
                out
            })
            .collect();
        cartesian(&per_axis)
    }
}

fn cartesian(axes: &[Vec<i64>]) -> Vec<Site> {
    let mut out: Vec<Site> = vec![Vec::with_capacity(axes.len())];
    for axis in axes {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                axis.iter().map(move |&c| {
                    let mut next = prefix.clone();
                    next.push(c);
                    next
                })
            })
            .collect();
    }
    out
}
