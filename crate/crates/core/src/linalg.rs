//! Dense 8x8 helpers for the characteristic projections.

use crate::state::Vec8;

pub type Mat8 = [[f64; 8]; 8];

pub const ZERO8: Vec8 = [0.0; 8];

pub fn identity() -> Mat8 {
    let mut m = [[0.0; 8]; 8];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    m
}

#[inline]
pub fn mat_vec(m: &Mat8, x: &Vec8) -> Vec8 {
    let mut y = [0.0; 8];
    for (yi, row) in y.iter_mut().zip(m.iter()) {
        let mut s = 0.0;
        for k in 0..8 {
            s += row[k] * x[k];
        }
        *yi = s;
    }
    y
}

pub fn mat_mul(a: &Mat8, b: &Mat8) -> Mat8 {
    let mut c = [[0.0; 8]; 8];
    for i in 0..8 {
        for k in 0..8 {
            let aik = a[i][k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..8 {
                c[i][j] += aik * b[k][j];
            }
        }
    }
    c
}

/// Maximum absolute row sum.
pub fn norm_inf(m: &Mat8) -> f64 {
    m.iter()
        .map(|row| row.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &Mat8, b: &Mat8) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..8 {
        for j in 0..8 {
            d = d.max((a[i][j] - b[i][j]).abs());
        }
    }
    d
}

#[inline]
pub fn sub(a: &Vec8, b: &Vec8) -> Vec8 {
    let mut c = [0.0; 8];
    for i in 0..8 {
        c[i] = a[i] - b[i];
    }
    c
}

#[inline]
pub fn add(a: &Vec8, b: &Vec8) -> Vec8 {
    let mut c = [0.0; 8];
    for i in 0..8 {
        c[i] = a[i] + b[i];
    }
    c
}

#[inline]
pub fn scale(s: f64, a: &Vec8) -> Vec8 {
    let mut c = [0.0; 8];
    for i in 0..8 {
        c[i] = s * a[i];
    }
    c
}

/// Solves `m x = rhs` by Gaussian elimination with partial pivoting.
/// Returns `None` for a numerically singular matrix.
pub fn solve(m: &Mat8, rhs: &Vec8) -> Option<Vec8> {
    let mut a = *m;
    let mut b = *rhs;
    for col in 0..8 {
        let piv = (col..8)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[piv][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..8 {
            let f = a[r][col] / a[col][col];
            if f != 0.0 {
                for c in col..8 {
                    a[r][c] -= f * a[col][c];
                }
                b[r] -= f * b[col];
            }
        }
    }
    let mut x = [0.0; 8];
    for r in (0..8).rev() {
        let mut s = b[r];
        for c in r + 1..8 {
            s -= a[r][c] * x[c];
        }
        x[r] = s / a[r][r];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_recovers_known_vector() {
        let mut m = identity();
        for i in 0..8 {
            for j in 0..8 {
                m[i][j] += ((i * 3 + j * 5) % 7) as f64 * 0.1;
            }
        }
        let x = [1.0, -2.0, 3.0, 0.5, -0.25, 4.0, 0.0, 1.5];
        let b = mat_vec(&m, &x);
        let y = solve(&m, &b).unwrap();
        for i in 0..8 {
            assert!((x[i] - y[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn singular_matrix_is_reported() {
        let m = [[0.0; 8]; 8];
        assert!(solve(&m, &[1.0; 8]).is_none());
    }

    #[test]
    fn inf_norm_is_max_row_sum() {
        let mut m = [[0.0; 8]; 8];
        m[2] = [1.0, -1.0, 2.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        m[5][7] = -3.5;
        assert_eq!(norm_inf(&m), 4.0);
    }
}
