//! Interface numerical fluxes: the characteristic-wise LCD flux, the scalar
//! PCCU flux, and the central-upwind flux of the `(A, B)` subsystem.

use crate::eigen::EigenSystem;
use crate::linalg::{mat_vec, sub};
use crate::state::Vec8;

/// Default desingularization constant for the per-wave speed bounds.
pub const DEFAULT_EPS: f64 = 1e-8;

/// Below this speed gap the scalar fluxes fall back to a plain average.
const SPEED_GAP_MIN: f64 = 1e-14;

/// Per-wave one-sided bounds at one interface.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralBounds {
    pub lam_plus: Vec8,
    pub lam_minus: Vec8,
    pub eps: f64,
}

impl SpectralBounds {
    /// `lam+ = max(lam_i(left), lam_i(right), eps)`,
    /// `lam- = min(lam_i(left), lam_i(right), -eps)`.
    pub fn new(lam_left: &Vec8, lam_right: &Vec8, eps: f64) -> Self {
        let mut lam_plus = [0.0; 8];
        let mut lam_minus = [0.0; 8];
        for i in 0..8 {
            lam_plus[i] = lam_left[i].max(lam_right[i]).max(eps);
            lam_minus[i] = lam_left[i].min(lam_right[i]).min(-eps);
        }
        Self {
            lam_plus,
            lam_minus,
            eps,
        }
    }

    /// Same scalar pair for every wave.
    pub fn uniform(s_plus: f64, s_minus: f64) -> Self {
        Self {
            lam_plus: [s_plus; 8],
            lam_minus: [s_minus; 8],
            eps: 0.0,
        }
    }

    /// Diagonal entries `(P_i, M_i, Q_i)`.
    #[inline]
    pub fn weights(&self, i: usize) -> (f64, f64, f64) {
        let lp = self.lam_plus[i];
        let lm = self.lam_minus[i];
        let d = lp - lm;
        (lp / d, -lm / d, lp * lm / d)
    }
}

/// One-sided scalar local speeds at one interface.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalSpeeds {
    pub s_plus: f64,
    pub s_minus: f64,
}

impl LocalSpeeds {
    /// Largest signal speed magnitude.
    pub fn max_abs(&self) -> f64 {
        self.s_plus.max(-self.s_minus)
    }
}

/// `s+ = max(lam_8(left), lam_8(right), 0)`, `s- = min(lam_1(left), lam_1(right), 0)`
/// from ascending eigenvalues of the two face states.
pub fn local_speeds(lam_left: &Vec8, lam_right: &Vec8) -> LocalSpeeds {
    LocalSpeeds {
        s_plus: lam_left[7].max(lam_right[7]).max(0.0),
        s_minus: lam_left[0].min(lam_right[0]).min(0.0),
    }
}

/// `R [P L K^E + M L K^W + Q L (U^W - U^E)]` with `R`, `L = R^-1` from `eig`.
/// `k_lower`/`u_lower` belong to the low-index side of the interface.
#[inline]
pub fn lcd_flux(
    k_lower: &Vec8,
    k_upper: &Vec8,
    u_lower: &Vec8,
    u_upper: &Vec8,
    eig: &EigenSystem,
    bounds: &SpectralBounds,
) -> Vec8 {
    let lk_lower = mat_vec(&eig.left, k_lower);
    let lk_upper = mat_vec(&eig.left, k_upper);
    let ljump = mat_vec(&eig.left, &sub(u_upper, u_lower));
    let mut w = [0.0; 8];
    for i in 0..8 {
        let (p, m, q) = bounds.weights(i);
        w[i] = p * lk_lower[i] + m * lk_upper[i] + q * ljump[i];
    }
    mat_vec(&eig.right, &w)
}

/// Scalar central-upwind blend of two flux vectors.
#[inline]
fn cu_blend<const N: usize>(f_lower: &[f64; N], f_upper: &[f64; N], u_lower: &[f64; N], u_upper: &[f64; N], s: LocalSpeeds) -> [f64; N] {
    let gap = s.s_plus - s.s_minus;
    let mut out = [0.0; N];
    if gap < SPEED_GAP_MIN {
        for i in 0..N {
            out[i] = 0.5 * (f_lower[i] + f_upper[i]);
        }
        return out;
    }
    let a = s.s_plus / gap;
    let b = -s.s_minus / gap;
    let c = s.s_plus * s.s_minus / gap;
    for i in 0..N {
        out[i] = a * f_lower[i] + b * f_upper[i] + c * (u_upper[i] - u_lower[i]);
    }
    out
}

/// PCCU global flux: the LCD form with the scalar speeds applied to every wave.
#[inline]
pub fn pccu_flux(k_lower: &Vec8, k_upper: &Vec8, u_lower: &Vec8, u_upper: &Vec8, s: LocalSpeeds) -> Vec8 {
    cu_blend(k_lower, k_upper, u_lower, u_upper, s)
}

/// CU flux of the `(A, B)` subsystem.
#[inline]
pub fn cu_aux_flux(f_lower: &[f64; 2], f_upper: &[f64; 2], ab_lower: &[f64; 2], ab_upper: &[f64; 2], s: LocalSpeeds) -> [f64; 2] {
    cu_blend(f_lower, f_upper, ab_lower, ab_upper, s)
}
