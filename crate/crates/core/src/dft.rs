//! Multi-dimensional DFT on `n^d` grids stored in row-major (lexicographic)
//! order, built from one-dimensional transforms along each axis.

use num_complex::Complex64;
use rustfft::FftPlanner;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `X_k = sum_m x_m exp(-2 pi i k.m / n)`
    Forward,
    /// `x_m = sum_k X_k exp(+2 pi i k.m / n)`, unnormalized.
    Inverse,
}

/// In-place transform of `data`, which must hold `n^d` values.
pub fn fft_nd(data: &mut [Complex64], n: usize, d: usize, direction: Direction) {
    assert_eq!(data.len(), n.pow(d as u32), "grid size mismatch");
    if n == 1 {
        return;
    }
    let mut planner = FftPlanner::new();
    let fft = match direction {
        Direction::Forward => planner.plan_fft_forward(n),
        Direction::Inverse => planner.plan_fft_inverse(n),
    };
    let mut line = vec![Complex64::new(0.0, 0.0); n];
    // axis `a` has stride n^(d-1-a)
    for axis in 0..d {
        let stride = n.pow((d - 1 - axis) as u32);
        let block = stride * n;
        for start in (0..data.len()).step_by(block) {
            for offset in 0..stride {
                let base = start + offset;
                for (i, slot) in line.iter_mut().enumerate() {
                    *slot = data[base + i * stride];
                }
                fft.process(&mut line);
                for (i, v) in line.iter().enumerate() {
                    data[base + i * stride] = *v;
                }
            }
        }
    }
}

/// Row-major index of the grid point whose coordinates are `m mod n`.
pub fn wrap_index(m: &[i64], n: usize) -> usize {
    let ni = n as i64;
    m.iter().fold(0usize, |acc, &c| acc * n + c.rem_euclid(ni) as usize)
}

/// Grid coordinates `(k_1, ..., k_d)` in `[0, n)^d` of a row-major index.
pub fn grid_coords(mut index: usize, n: usize, d: usize) -> Vec<usize> {
    let mut k = vec![0usize; d];
    for c in k.iter_mut().rev() {
        *c = index % n;
        index /= n;
    }
    k
}
