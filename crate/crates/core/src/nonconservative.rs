//! Nonconservative contributions of the Godunov-Powell terms and their
//! running integrals `I^x`, `I^y`, folded into the global fluxes `K`, `L`.
//!
//! Along one row (or column) with `n` cells, interfaces are numbered
//! `0..=n`, interface `i` separating cells `i-1` and `i`.

use crate::linalg::sub;
use crate::state::{godunov_powell_q, idx, ConsState, Direction, Vec8};

fn normal_b(u: &ConsState, dir: Direction) -> f64 {
    match dir {
        Direction::X => u.0[idx::B1],
        Direction::Y => u.0[idx::B2],
    }
}

/// In-cell term `q(U_bar) (b_N^+ - b_N^-)`, with `b_N^+`/`b_N^-` the cell's
/// point values of b1 (x) or b2 (y) at its upper and lower faces.
#[inline]
pub fn cell_q(u_bar: &ConsState, bn_upper: f64, bn_lower: f64) -> Vec8 {
    let q = godunov_powell_q(u_bar);
    let jump = bn_upper - bn_lower;
    q.map(|x| x * jump)
}

/// Interface term `q((U^- + U^+)/2) (b_N(U^+) - b_N(U^-))`: linear path,
/// midpoint rule. `lower` is the face value on the low-index side.
#[inline]
pub fn interface_q(lower: &ConsState, upper: &ConsState, dir: Direction) -> Vec8 {
    let jump = normal_b(upper, dir) - normal_b(lower, dir);
    if jump == 0.0 {
        return [0.0; 8];
    }
    let q = godunov_powell_q(&lower.midpoint(upper));
    q.map(|x| x * jump)
}

/// Running integrals `(I^-, I^+)` at every interface of a row, anchored at
/// `I^-_0 = 0`. Requires `iface_q.len() == cell_q.len() + 1`.
pub fn integrate_globals(cell_q: &[Vec8], iface_q: &[Vec8]) -> (Vec<Vec8>, Vec<Vec8>) {
    assert_eq!(iface_q.len(), cell_q.len() + 1, "one more interface than cells");
    let n = iface_q.len();
    let mut minus = Vec::with_capacity(n);
    let mut plus = Vec::with_capacity(n);
    let mut cur = [0.0; 8];
    for i in 0..n {
        if i > 0 {
            for (c, q) in cur.iter_mut().zip(cell_q[i - 1].iter()) {
                *c += q;
            }
        }
        minus.push(cur);
        for (c, q) in cur.iter_mut().zip(iface_q[i].iter()) {
            *c += q;
        }
        plus.push(cur);
    }
    (minus, plus)
}

/// `K^E_j = F(U^E_j) - I^-_{j+1}` and `K^W_j = F(U^W_j) - I^+_j`: each
/// cell's global flux uses the integral value just inside its own face.
#[inline]
pub fn global_flux_faces(f_upper: &Vec8, f_lower: &Vec8, i_minus_upper: &Vec8, i_plus_lower: &Vec8) -> (Vec8, Vec8) {
    (sub(f_upper, i_minus_upper), sub(f_lower, i_plus_lower))
}
