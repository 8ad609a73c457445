//! Piecewise-linear reconstruction: characteristic generalized minmod for the
//! primitive variables, plain minmod for the derivative variables, and the
//! slope correction that makes the b1/b2 point values locally divergence free.

use crate::eigen::PrimEigenSystem;
use crate::error::MhdError;
use crate::linalg::{mat_vec, sub};
use crate::state::{PrimState, Vec8};

/// Generalized minmod parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlopeLimiterConfig {
    theta: f64,
}

impl SlopeLimiterConfig {
    pub fn new(theta: f64) -> Result<Self, MhdError> {
        if !(1.0..=2.0).contains(&theta) {
            return Err(MhdError::Config(format!(
                "minmod parameter theta must lie in [1, 2], got {theta}"
            )));
        }
        Ok(Self { theta })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

/// Three-argument minmod: the smallest argument if all are positive, the
/// largest if all are negative, zero otherwise.
#[inline]
pub fn minmod(z1: f64, z2: f64, z3: f64) -> f64 {
    if z1 > 0.0 && z2 > 0.0 && z3 > 0.0 {
        z1.min(z2).min(z3)
    } else if z1 < 0.0 && z2 < 0.0 && z3 < 0.0 {
        z1.max(z2).max(z3)
    } else {
        0.0
    }
}

/// Limited undivided slope from the backward and forward differences.
/// Multiply by `1/h` for the derivative.
#[inline]
pub fn limited_difference(theta: f64, back: f64, fwd: f64) -> f64 {
    minmod(theta * fwd, 0.5 * (back + fwd), theta * back)
}

/// Characteristic variables of the four cells `j-1..=j+2` around one
/// interface, and their limited slopes (per unit length) at cells `j` and `j+1`.
#[derive(Clone, Copy, Debug)]
pub struct CharacteristicSlopes {
    pub gamma: [Vec8; 4],
    pub slope_left: Vec8,
    pub slope_right: Vec8,
}

/// Transforms the stencil with the interface matrix `T^-1` and applies the
/// generalized minmod limiter componentwise.
pub fn characteristic_slopes(
    stencil: &[PrimState; 4],
    tinv: &crate::linalg::Mat8,
    cfg: SlopeLimiterConfig,
    h: f64,
) -> CharacteristicSlopes {
    let gamma = stencil.map(|v| mat_vec(tinv, &v.0));
    let th = cfg.theta;
    let mut slope_left = [0.0; 8];
    let mut slope_right = [0.0; 8];
    for i in 0..8 {
        let d0 = gamma[1][i] - gamma[0][i];
        let d1 = gamma[2][i] - gamma[1][i];
        let d2 = gamma[3][i] - gamma[2][i];
        slope_left[i] = limited_difference(th, d0, d1) / h;
        slope_right[i] = limited_difference(th, d1, d2) / h;
    }
    CharacteristicSlopes {
        gamma,
        slope_left,
        slope_right,
    }
}

/// `(V^E_j, V^W_{j+1})` from characteristic slopes: `T (Gamma +- h/2 slope)`.
pub fn face_values_from_slopes(cs: &CharacteristicSlopes, t: &crate::linalg::Mat8, h: f64) -> (PrimState, PrimState) {
    let mut ge = cs.gamma[1];
    let mut gw = cs.gamma[2];
    for i in 0..8 {
        ge[i] += 0.5 * h * cs.slope_left[i];
        gw[i] -= 0.5 * h * cs.slope_right[i];
    }
    (PrimState(mat_vec(t, &ge)), PrimState(mat_vec(t, &gw)))
}

/// One-sided primitive values at an interface from the four surrounding cell
/// states, reconstructed in the characteristic variables of `eig`.
///
/// The result is written as `V_j + T (h/2) slope_j` rather than
/// `T (Gamma_j + (h/2) slope_j)`; the two agree in exact arithmetic, but the
/// former reproduces piecewise-constant data bit for bit.
#[inline]
pub fn reconstruct_interface(
    stencil: [&PrimState; 4],
    eig: &PrimEigenSystem,
    theta: f64,
) -> (PrimState, PrimState) {
    let tinv = &eig.inverse_transform;
    let d0 = mat_vec(tinv, &sub(&stencil[1].0, &stencil[0].0));
    let d1 = mat_vec(tinv, &sub(&stencil[2].0, &stencil[1].0));
    let d2 = mat_vec(tinv, &sub(&stencil[3].0, &stencil[2].0));
    let mut half_left = [0.0; 8];
    let mut half_right = [0.0; 8];
    let mut any_left = false;
    let mut any_right = false;
    for i in 0..8 {
        half_left[i] = 0.5 * limited_difference(theta, d0[i], d1[i]);
        half_right[i] = 0.5 * limited_difference(theta, d1[i], d2[i]);
        any_left |= half_left[i] != 0.0;
        any_right |= half_right[i] != 0.0;
    }
    let mut east = stencil[1].0;
    let mut west = stencil[2].0;
    if any_left {
        let dl = mat_vec(&eig.transform, &half_left);
        for i in 0..8 {
            east[i] += dl[i];
        }
    }
    if any_right {
        let dr = mat_vec(&eig.transform, &half_right);
        for i in 0..8 {
            west[i] -= dr[i];
        }
    }
    (PrimState(east), PrimState(west))
}

/// Componentwise primitive-variable reconstruction (no characteristic
/// projection), used by the plain PCCU baseline.
#[inline]
pub fn reconstruct_interface_componentwise(stencil: [&PrimState; 4], theta: f64) -> (PrimState, PrimState) {
    let mut east = stencil[1].0;
    let mut west = stencil[2].0;
    for i in 0..8 {
        let d0 = stencil[1].0[i] - stencil[0].0[i];
        let d1 = stencil[2].0[i] - stencil[1].0[i];
        let d2 = stencil[3].0[i] - stencil[2].0[i];
        east[i] += 0.5 * limited_difference(theta, d0, d1);
        west[i] -= 0.5 * limited_difference(theta, d1, d2);
    }
    (PrimState(east), PrimState(west))
}

/// Minmod reconstruction of a scalar at one interface from four cell
/// averages: returns `(value^E_j, value^W_{j+1})`.
#[inline]
pub fn reconstruct_scalar(s: [f64; 4], theta: f64) -> (f64, f64) {
    let d0 = s[1] - s[0];
    let d1 = s[2] - s[1];
    let d2 = s[3] - s[2];
    (
        s[1] + 0.5 * limited_difference(theta, d0, d1),
        s[2] - 0.5 * limited_difference(theta, d1, d2),
    )
}

/// Minmod one-sided values of `A` or `B` along a row/column of averages.
/// Returns `(east, west)` where `east[i]`, `west[i]` are the values at the
/// interface between `avg[i+1]` and `avg[i+2]`; `avg.len() - 3` interfaces.
pub fn reconstruct_aux(avg: &[f64], cfg: SlopeLimiterConfig) -> (Vec<f64>, Vec<f64>) {
    let n = avg.len().saturating_sub(3);
    let mut east = Vec::with_capacity(n);
    let mut west = Vec::with_capacity(n);
    for w in avg.windows(4) {
        let (e, wv) = reconstruct_scalar([w[0], w[1], w[2], w[3]], cfg.theta);
        east.push(e);
        west.push(wv);
    }
    (east, west)
}

/// Inputs to the divergence correction for one cell.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorrectionInput {
    pub b1_bar: f64,
    pub b2_bar: f64,
    pub a_bar: f64,
    pub b_bar: f64,
    /// Reconstructed b1 at the cell's east and west faces.
    pub b1_hat_e: f64,
    pub b1_hat_w: f64,
    /// Reconstructed b2 at the cell's north and south faces.
    pub b2_hat_n: f64,
    pub b2_hat_s: f64,
    pub dx: f64,
    pub dy: f64,
}

/// Corrected slopes and face values of one cell.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Correction {
    pub sigma: f64,
    pub sigma_x: f64,
    pub sigma_y: f64,
    pub slope_b1: f64,
    pub slope_b2: f64,
    pub b1_e: f64,
    pub b1_w: f64,
    pub b2_n: f64,
    pub b2_s: f64,
}

/// Ratio bound for one direction: `min(1, s1, s2)` if both ratios are
/// positive and the derivative average is nonzero, else 0.
pub fn direction_scale(bar: f64, hat_plus: f64, hat_minus: f64, deriv: f64, h: f64) -> f64 {
    if deriv == 0.0 {
        return 0.0;
    }
    let s1 = 2.0 * (hat_plus - bar) / (h * deriv);
    let s2 = 2.0 * (bar - hat_minus) / (h * deriv);
    if s1 > 0.0 && s2 > 0.0 {
        1.0f64.min(s1).min(s2)
    } else {
        0.0
    }
}

/// Replaces the b1 east/west and b2 north/south point values by
/// `b_bar +- (h/2) sigma (A, B)`, so that the cell's discrete divergence is
/// exactly `sigma (A + B)`.
pub fn divergence_correction(inp: &CorrectionInput) -> Correction {
    let sigma_x = direction_scale(inp.b1_bar, inp.b1_hat_e, inp.b1_hat_w, inp.a_bar, inp.dx);
    let sigma_y = direction_scale(inp.b2_bar, inp.b2_hat_n, inp.b2_hat_s, inp.b_bar, inp.dy);
    let sigma = 1.0f64.min(sigma_x).min(sigma_y);
    let slope_b1 = sigma * inp.a_bar;
    let slope_b2 = sigma * inp.b_bar;
    let hx = 0.5 * inp.dx * slope_b1;
    let hy = 0.5 * inp.dy * slope_b2;
    Correction {
        sigma,
        sigma_x,
        sigma_y,
        slope_b1,
        slope_b2,
        b1_e: inp.b1_bar + hx,
        b1_w: inp.b1_bar - hx,
        b2_n: inp.b2_bar + hy,
        b2_s: inp.b2_bar - hy,
    }
}

/// Discrete divergence of one cell from its four face values.
#[inline]
pub fn cell_divergence(b1_e: f64, b1_w: f64, b2_n: f64, b2_s: f64, dx: f64, dy: f64) -> f64 {
    (b1_e - b1_w) / dx + (b2_n - b2_s) / dy
}
