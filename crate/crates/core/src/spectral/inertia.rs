//! Sylvester inertia of a dense symmetric matrix via a Bunch-Kaufman
//! `L D L^T` factorization with 1x1 and 2x2 pivots.

/// Eigenvalue sign counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub negative: usize,
    pub positive: usize,
}

/// Growth-limiting constant `(1 + sqrt 17) / 8`.
const BK_ALPHA: f64 = 0.640_388_203_202_208_4;

/// Inertia of the symmetric `n x n` matrix `a` (row-major, consumed as
/// workspace). Returns `None` if some pivot, or an eigenvalue of some 2x2
/// pivot block, has modulus below `tolerance`; the inertia is then not
/// reliable and the caller should fall back to an eigendecomposition.
pub fn inertia(mut a: Vec<f64>, n: usize, tolerance: f64) -> Option<Inertia> {
    assert_eq!(a.len(), n * n, "matrix size mismatch");
    let mut negative = 0;
    let mut positive = 0;
    let mut k = 0;
    while k < n {
        let akk = a[k * n + k].abs();
        let (r, colmax) = (k + 1..n)
            .map(|i| (i, a[i * n + k].abs()))
            .fold((k, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best });

        let two_by_two = if akk >= BK_ALPHA * colmax || colmax == 0.0 {
            false
        } else {
            let rowmax = (k..n)
                .filter(|&j| j != r)
                .map(|j| a[r * n + j].abs())
                .fold(0.0, f64::max);
            if akk * rowmax >= BK_ALPHA * colmax * colmax {
                false
            } else if a[r * n + r].abs() >= BK_ALPHA * rowmax {
                symmetric_swap(&mut a, n, k, r);
                false
            } else {
                symmetric_swap(&mut a, n, k + 1, r);
                true
            }
        };

        if !two_by_two {
            let d = a[k * n + k];
            if d.abs() < tolerance {
                return None;
            }
            if d < 0.0 {
                negative += 1;
            } else {
                positive += 1;
            }
            for i in k + 1..n {
                let lik = a[i * n + k] / d;
                if lik == 0.0 {
                    continue;
                }
                for j in k + 1..n {
                    a[i * n + j] -= lik * a[k * n + j];
                }
            }
            k += 1;
        } else {
            let (p, q, s) = (a[k * n + k], a[k * n + k + 1], a[(k + 1) * n + k + 1]);
            let mean = 0.5 * (p + s);
            let radius = (0.25 * (p - s) * (p - s) + q * q).sqrt();
            for lambda in [mean - radius, mean + radius] {
                if lambda.abs() < tolerance {
                    return None;
                }
                if lambda < 0.0 {
                    negative += 1;
                } else {
                    positive += 1;
                }
            }
            let det = p * s - q * q;
            let (ip, iq, is) = (s / det, -q / det, p / det);
            for i in k + 2..n {
                let (x, y) = (a[i * n + k], a[i * n + k + 1]);
                let (c0, c1) = (ip * x + iq * y, iq * x + is * y);
                if c0 == 0.0 && c1 == 0.0 {
                    continue;
                }
                for j in k + 2..n {
                    a[i * n + j] -= c0 * a[k * n + j] + c1 * a[(k + 1) * n + j];
                }
            }
            k += 2;
        }
    }
    Some(Inertia { negative, positive })
}

fn symmetric_swap(a: &mut [f64], n: usize, i: usize, j: usize) {
    if i == j {
        return;
    }
    for c in 0..n {
        a.swap(i * n + c, j * n + c);
    }
    for r in 0..n {
        a.swap(r * n + i, r * n + j);
    }
}
