//! Eigenstructure of the eight-wave MHD system in conservative and primitive
//! variables, for both sweep directions.
//!
//! All formulas are written for the x-direction in terms of the normal and
//! tangential components `(u_N, u_T, b_N, b_T)`. The y-direction eigensystem is
//! the x-direction one evaluated at the state with `(u, v)` and `(b1, b2)`
//! swapped, with the same swap applied to the vector components.
//!
//! Conservative vectors use the canonical ordering
//! `(rho, rho u, rho v, rho w, b1, b2, b3, E)`.

use crate::error::MhdError;
use crate::linalg::Mat8;
use crate::state::{cons_to_prim, idx, pidx, ConsState, Direction, GasModel, PrimState, Vec8};

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Sound, Alfven, fast and slow speeds in one direction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WaveSpeeds {
    pub c: f64,
    pub ca: f64,
    pub cf: f64,
    pub cs: f64,
}

/// Eigenvalues and conservative eigenvectors: `right` holds the vectors as
/// columns, `left` as rows, and `left * right = I`.
#[derive(Clone, Debug)]
pub struct EigenSystem {
    pub lambdas: Vec8,
    pub right: Mat8,
    pub left: Mat8,
    pub direction: Direction,
}

/// Eigen-decomposition of the primitive quasi-linear matrix `D = T diag T^-1`.
#[derive(Clone, Debug)]
pub struct PrimEigenSystem {
    pub lambdas: Vec8,
    pub transform: Mat8,
    pub inverse_transform: Mat8,
    pub direction: Direction,
}

/// Squared speeds plus the cancellation-free differences the eigenvector
/// normalisations need.
#[derive(Clone, Copy, Debug)]
struct Spectrum {
    c2: f64,
    ca2: f64,
    cf2: f64,
    cs2: f64,
    /// cf^2 - cs^2
    split: f64,
    /// cf^2 - c^2
    fast_minus_sound: f64,
    /// cf^2 - ca^2
    fast_minus_alfven: f64,
}

impl Spectrum {
    fn new(rho: f64, p: f64, bn: f64, bt: f64, b3: f64, gamma: f64) -> Self {
        let c2 = gamma * p / rho;
        let ca2 = bn * bn / rho;
        let bt2 = (bt * bt + b3 * b3) / rho;
        let gap = c2 - ca2;
        // (cf^2 - cs^2)^2 = gap^2 + extra
        let extra = bt2 * (2.0 * (c2 + ca2) + bt2);
        let split = (gap * gap + extra).sqrt();
        let cf2 = 0.5 * (c2 + ca2 + bt2 + split);
        let cs2 = if cf2 > 0.0 { c2 * ca2 / cf2 } else { 0.0 };
        // Rationalised forms avoid cancellation as b_T -> 0.
        let fast_minus_sound = if gap > 0.0 {
            0.5 * (bt2 + extra / (split + gap))
        } else {
            0.5 * (bt2 - gap + split)
        };
        let fast_minus_alfven = if gap < 0.0 {
            0.5 * (bt2 + extra / (split - gap))
        } else {
            0.5 * (bt2 + gap + split)
        };
        Self {
            c2,
            ca2,
            cf2,
            cs2,
            split,
            fast_minus_sound,
            fast_minus_alfven,
        }
    }

    fn speeds(&self) -> WaveSpeeds {
        WaveSpeeds {
            c: self.c2.sqrt(),
            ca: self.ca2.sqrt(),
            cf: self.cf2.sqrt(),
            cs: self.cs2.sqrt(),
        }
    }

    /// `c^2 - cs^2`
    fn sound_minus_slow(&self) -> f64 {
        if self.cf2 > 0.0 {
            self.c2 * self.fast_minus_alfven / self.cf2
        } else {
            0.0
        }
    }
}

/// Unit-vector coefficients shared by both eigenvector families.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Betas {
    pub beta1: f64,
    pub beta2: f64,
    pub beta3: f64,
}

/// `beta1 = sign(b_N)` with `sign(0) = +1`, and `(beta2, beta3)` the unit
/// tangential field direction, `(1/sqrt2, 1/sqrt2)` when `b_T = b3 = 0`.
pub fn betas(bn: f64, bt: f64, b3: f64) -> Betas {
    let beta1 = if bn < 0.0 { -1.0 } else { 1.0 };
    let norm = bt.hypot(b3);
    let (beta2, beta3) = if norm == 0.0 {
        (FRAC_1_SQRT_2, FRAC_1_SQRT_2)
    } else {
        (bt / norm, b3 / norm)
    };
    Betas {
        beta1,
        beta2,
        beta3,
    }
}

/// Fast/slow weights `(alpha_f, alpha_s)` of the conservative eigenvectors.
///
/// When `b_T = b3 = 0` the general quotient is 0/0 only at the triple point
/// `c = c_a`; there any pair spans the same triple eigenspace and `(1, 1)` is
/// used. Away from the triple point the limit values are used instead
/// (`(1, 0)` when the sound speed dominates, `(0, 1)` otherwise), since
/// `(1, 1)` fails the eigen-residual check there.
pub fn conservative_alphas(v: &PrimState, gas: &GasModel, dir: Direction) -> (f64, f64) {
    let (_, bn, bt, b3) = frame(v, dir);
    let sp = Spectrum::new(v.rho(), v.p(), bn, bt, b3, gas.gamma());
    cons_alphas(&sp)
}

fn cons_alphas(sp: &Spectrum) -> (f64, f64) {
    if sp.split == 0.0 {
        return (1.0, 1.0);
    }
    (
        (sp.fast_minus_alfven / sp.split).max(0.0).sqrt(),
        (sp.fast_minus_sound / sp.split).max(0.0).sqrt(),
    )
}

/// Fast/slow weights of the primitive eigenvectors; `(1/sqrt2, 1/sqrt2)` at
/// the triple point.
pub fn primitive_alphas(v: &PrimState, gas: &GasModel, dir: Direction) -> (f64, f64) {
    let (_, bn, bt, b3) = frame(v, dir);
    let sp = Spectrum::new(v.rho(), v.p(), bn, bt, b3, gas.gamma());
    prim_alphas(&sp)
}

fn prim_alphas(sp: &Spectrum) -> (f64, f64) {
    if sp.split == 0.0 {
        return (FRAC_1_SQRT_2, FRAC_1_SQRT_2);
    }
    (
        (sp.sound_minus_slow() / sp.split).max(0.0).sqrt(),
        (sp.fast_minus_sound / sp.split).max(0.0).sqrt(),
    )
}

/// `(u_N, b_N, b_T, b3)` for a direction.
fn frame(v: &PrimState, dir: Direction) -> (f64, f64, f64, f64) {
    match dir {
        Direction::X => (v.u(), v.b1(), v.b2(), v.b3()),
        Direction::Y => (v.v(), v.b2(), v.b1(), v.b3()),
    }
}

pub fn wave_speeds(v: &PrimState, gas: &GasModel, dir: Direction) -> Result<WaveSpeeds, MhdError> {
    if !(v.rho() > 0.0) {
        return Err(MhdError::NonPositiveDensity { rho: v.rho() });
    }
    if !(v.p() >= 0.0) {
        return Err(MhdError::NonPositivePressure { p: v.p() });
    }
    let (_, bn, bt, b3) = frame(v, dir);
    Ok(Spectrum::new(v.rho(), v.p(), bn, bt, b3, gas.gamma()).speeds())
}

fn ascending(un: f64, s: &WaveSpeeds) -> Vec8 {
    [
        un - s.cf,
        un - s.ca,
        un - s.cs,
        un,
        un,
        un + s.cs,
        un + s.ca,
        un + s.cf,
    ]
}

/// Eigenvalues of the primitive state, ascending.
pub fn eigenvalues_prim(v: &PrimState, gas: &GasModel, dir: Direction) -> Result<Vec8, MhdError> {
    let s = wave_speeds(v, gas, dir)?;
    Ok(ascending(v.normal_velocity(dir), &s))
}

/// `(u_N - c_f, u_N - c_a, u_N - c_s, u_N, u_N, u_N + c_s, u_N + c_a, u_N + c_f)`.
pub fn eigenvalues_cons(u: &ConsState, gas: &GasModel, dir: Direction) -> Result<Vec8, MhdError> {
    let v = cons_to_prim(u, gas)?;
    eigenvalues_prim(&v, gas, dir)
}

/// Canonical conservative slots swapped between the two directions.
const CONS_SWAP: [usize; 8] = [0, 2, 1, 3, 5, 4, 6, 7];
/// Primitive slots swapped between the two directions.
const PRIM_SWAP: [usize; 8] = [0, 2, 1, 3, 4, 6, 5, 7];

fn permute_rows(m: &Mat8, perm: &[usize; 8]) -> Mat8 {
    let mut out = [[0.0; 8]; 8];
    for i in 0..8 {
        out[i] = m[perm[i]];
    }
    out
}

fn permute_cols(m: &Mat8, perm: &[usize; 8]) -> Mat8 {
    let mut out = [[0.0; 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            out[i][j] = m[i][perm[j]];
        }
    }
    out
}

/// Conservative quasi-linear matrix `C = dF/dU - Q` in the canonical ordering.
///
/// The b_N column carries `(gamma-1)`-weighted entries and the energy row's
/// density entry is the full Jacobian term; both were checked against a
/// central-difference Jacobian of the physical flux.
pub fn quasilinear_matrix_cons(u: &ConsState, gas: &GasModel, dir: Direction) -> Result<Mat8, MhdError> {
    match dir {
        Direction::X => {
            let v = cons_to_prim(u, gas)?;
            Ok(quasilinear_x(u.energy(), &v, gas))
        }
        Direction::Y => {
            let us = u.swap_xy();
            let v = cons_to_prim(&us, gas)?;
            let cx = quasilinear_x(us.energy(), &v, gas);
            Ok(permute_cols(&permute_rows(&cx, &CONS_SWAP), &CONS_SWAP))
        }
    }
}

fn quasilinear_x(en: f64, v: &PrimState, gas: &GasModel) -> Mat8 {
    let [rho, un, ut, w, p, bn, bt, b3] = v.0;
    let g = gas.gamma();
    let (g1, g2, g3) = (gas.gamma_n(1), gas.gamma_n(2), gas.gamma_n(3));
    let uu = un * un + ut * ut + w * w;
    let bb = bn * bn + bt * bt + b3 * b3;
    let ub = un * bn + ut * bt + w * b3;
    let h = (en + p + 0.5 * bb) / rho;

    let a1 = -0.5 * g3 * un * un - 0.5 * g1 * (ut * ut + w * w);
    let a2 = un * (-0.5 * g1 * uu - h) + bn * ub / rho;
    let a3 = h - bn * bn / rho + g1 * un * un;
    let a4 = g1 * un * ut - bn * bt / rho;
    let a5 = g1 * un * w - bn * b3 / rho;
    let a6 = g2 * un * bt - ut * bn;
    let a7 = g2 * un * b3 - w * bn;

    use idx::*;
    let mut c = [[0.0; 8]; 8];
    c[RHO][MX] = 1.0;

    c[MX] = [a1, g3 * un, g1 * ut, g1 * w, g1 * bn, g2 * bt, g2 * b3, -g1];
    c[MY] = [-un * ut, ut, un, 0.0, 0.0, -bn, 0.0, 0.0];
    c[MZ] = [-un * w, w, 0.0, un, 0.0, 0.0, -bn, 0.0];
    c[B1][B1] = un;
    c[B2] = [(ut * bn - un * bt) / rho, bt / rho, -bn / rho, 0.0, 0.0, un, 0.0, 0.0];
    c[B3] = [(w * bn - un * b3) / rho, b3 / rho, 0.0, -bn / rho, 0.0, 0.0, un, 0.0];
    c[EN] = [a2, a3, a4, a5, g1 * un * bn, a6, a7, g * un];
    c
}

/// Primitive quasi-linear matrix `D` (ordering `(rho, u, v, w, p, b1, b2, b3)`).
pub fn quasilinear_matrix_prim(v: &PrimState, gas: &GasModel, dir: Direction) -> Mat8 {
    match dir {
        Direction::X => prim_matrix_x(v, gas),
        Direction::Y => {
            let dx = prim_matrix_x(&v.swap_xy(), gas);
            permute_cols(&permute_rows(&dx, &PRIM_SWAP), &PRIM_SWAP)
        }
    }
}

fn prim_matrix_x(v: &PrimState, gas: &GasModel) -> Mat8 {
    let [rho, u, _, _, p, b1, b2, b3] = v.0;
    use pidx::*;
    let mut d = [[0.0; 8]; 8];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = u;
    }
    d[RHO][U] = rho;
    d[U][P] = 1.0 / rho;
    d[U][B2] = b2 / rho;
    d[U][B3] = b3 / rho;
    d[V][B2] = -b1 / rho;
    d[W][B3] = -b1 / rho;
    d[P][U] = gas.gamma() * p;
    d[B2][U] = b2;
    d[B2][V] = -b1;
    d[B3][U] = b3;
    d[B3][W] = -b1;
    d
}

/// Right/left eigenvectors of the conservative quasi-linear matrix.
///
/// Transcribed from the Brio-Wu normalisation with three repairs that the
/// residual and inverse checks require: the divergence wave's right vector
/// carries energy `b_N` (the magnetic pressure of a b_N perturbation), every
/// left vector therefore carries `-b_N` times its energy entry in the b_N
/// slot, and the speed multiplying `alpha_f^2 c_f` in `theta2` is the sound
/// speed.
pub fn eigensystem_cons(u: &ConsState, gas: &GasModel, dir: Direction) -> Result<EigenSystem, MhdError> {
    let v = cons_to_prim(u, gas)?;
    v.check_admissible()?;
    Ok(eigensystem_cons_prim(&v, gas, dir))
}

/// [`eigensystem_cons`] for an already-converted admissible state.
pub fn eigensystem_cons_prim(v: &PrimState, gas: &GasModel, dir: Direction) -> EigenSystem {
    match dir {
        Direction::X => {
            let (lambdas, right, left) = cons_vectors_x(v, gas);
            EigenSystem {
                lambdas,
                right,
                left,
                direction: dir,
            }
        }
        Direction::Y => {
            let (lambdas, right, left) = cons_vectors_x(&v.swap_xy(), gas);
            EigenSystem {
                lambdas,
                right: permute_rows(&right, &CONS_SWAP),
                left: permute_cols(&left, &CONS_SWAP),
                direction: dir,
            }
        }
    }
}

fn cons_vectors_x(v: &PrimState, gas: &GasModel) -> (Vec8, Mat8, Mat8) {
    let [rho, un, ut, w, p, bn, bt, b3] = v.0;
    let sp = Spectrum::new(rho, p, bn, bt, b3, gas.gamma());
    let s = sp.speeds();
    let (c, ca, cf, cs) = (s.c, s.ca, s.cf, s.cs);
    let (c2, cf2, cs2) = (sp.c2, sp.cf2, sp.cs2);
    let Betas {
        beta1,
        beta2,
        beta3,
    } = betas(bn, bt, b3);
    let (af, asl) = cons_alphas(&sp);
    let g1 = gas.gamma_n(1);
    let g21 = gas.gamma_n(2) / g1;
    let sr = rho.sqrt();
    let uu = un * un + ut * ut + w * w;
    let tang = beta2 * ut + beta3 * w;

    let theta1 = 0.5 / (af * af * c2 * (cf2 - g21 * c2) + asl * asl * cf2 * (cs2 - g21 * c2));
    let theta2 = 0.5 / (af * af * cf * c * beta1 + asl * asl * cs * ca * beta1);

    use idx::*;
    let mut r = [[0.0; 8]; 8];
    let mut l = [[0.0; 8]; 8];
    let mut set_col = |col: usize, vals: [f64; 8]| {
        for (i, x) in vals.into_iter().enumerate() {
            r[i][col] = x;
        }
    };

    // Columns/rows are ordered by ascending eigenvalue; `s` is the upper sign
    // of the paired (i, 9-i) formulas.
    for (col, sgn) in [(0usize, 1.0), (7, -1.0)] {
        let mu_f = -af * cf2 / g1 - sgn * af * cf * un + sgn * asl * ca * beta1 * tang
            + g21 * af * (cf2 - c2);
        let mut col_vals = [0.0; 8];
        col_vals[RHO] = af;
        col_vals[MX] = af * (un - sgn * cf);
        col_vals[MY] = af * ut + sgn * asl * beta1 * beta2 * ca;
        col_vals[MZ] = af * w + sgn * asl * beta1 * beta3 * ca;
        col_vals[EN] = 0.5 * af * uu + mu_f;
        col_vals[B2] = asl * beta2 * cf / sr;
        col_vals[B3] = asl * beta3 * cf / sr;
        set_col(col, col_vals);

        let row = &mut l[col];
        row[RHO] = 0.5 * theta1 * af * c2 * uu
            + sgn * theta2 * (af * c * un * beta1 - asl * cs * tang);
        row[MX] = -theta1 * af * c2 * un - sgn * theta2 * af * c * beta1;
        row[MY] = -theta1 * af * c2 * ut + sgn * theta2 * asl * cs * beta2;
        row[MZ] = -theta1 * af * c2 * w + sgn * theta2 * asl * cs * beta3;
        row[EN] = theta1 * af * c2;
        row[B2] = theta1 * sr * asl * beta2 * cf * (cs2 - g21 * c2);
        row[B3] = theta1 * sr * asl * beta3 * cf * (cs2 - g21 * c2);
    }

    for (col, sgn) in [(1usize, 1.0), (6, -1.0)] {
        let mut col_vals = [0.0; 8];
        col_vals[MY] = sgn * beta1 * beta3;
        col_vals[MZ] = -sgn * beta1 * beta2;
        col_vals[EN] = sgn * (beta3 * ut - beta2 * w) * beta1;
        col_vals[B2] = beta3 / sr;
        col_vals[B3] = -beta2 / sr;
        set_col(col, col_vals);

        let row = &mut l[col];
        row[RHO] = -sgn * 0.5 * beta1 * (beta3 * ut - beta2 * w);
        row[MY] = sgn * 0.5 * beta1 * beta3;
        row[MZ] = -sgn * 0.5 * beta1 * beta2;
        row[B2] = 0.5 * sr * beta3;
        row[B3] = -0.5 * sr * beta2;
    }

    for (col, sgn) in [(2usize, 1.0), (5, -1.0)] {
        let mu_s = -asl * cs2 / g1 - sgn * asl * cs * un - sgn * af * c * beta1 * tang
            + g21 * asl * (cs2 - c2);
        let mut col_vals = [0.0; 8];
        col_vals[RHO] = asl;
        col_vals[MX] = asl * (un - sgn * cs);
        col_vals[MY] = asl * ut - sgn * af * beta1 * beta2 * c;
        col_vals[MZ] = asl * w - sgn * af * beta1 * beta3 * c;
        col_vals[EN] = 0.5 * asl * uu + mu_s;
        col_vals[B2] = -af * beta2 * c2 / (cf * sr);
        col_vals[B3] = -af * beta3 * c2 / (cf * sr);
        set_col(col, col_vals);

        let row = &mut l[col];
        row[RHO] = 0.5 * theta1 * asl * cf2 * uu
            + sgn * theta2 * (asl * ca * un * beta1 + af * cf * tang);
        row[MX] = -theta1 * asl * cf2 * un - sgn * theta2 * asl * ca * beta1;
        row[MY] = -theta1 * asl * cf2 * ut - sgn * theta2 * af * cf * beta2;
        row[MZ] = -theta1 * asl * cf2 * w - sgn * theta2 * af * cf * beta3;
        row[EN] = theta1 * asl * cf2;
        row[B2] = -theta1 * sr * af * beta2 * cf * (cf2 - g21 * c2);
        row[B3] = -theta1 * sr * af * beta3 * cf * (cf2 - g21 * c2);
    }

    // entropy wave
    set_col(3, [1.0, un, ut, w, 0.0, 0.0, 0.0, 0.5 * uu]);
    let k = theta1 * (af * af * c2 + asl * asl * cf2);
    l[3][RHO] = 1.0 - k * uu;
    l[3][MX] = 2.0 * k * un;
    l[3][MY] = 2.0 * k * ut;
    l[3][MZ] = 2.0 * k * w;
    l[3][EN] = -2.0 * k;
    l[3][B2] = 2.0 * theta1 * sr * af * asl * beta2 * cf * (cf2 - cs2);
    l[3][B3] = 2.0 * theta1 * sr * af * asl * beta3 * cf * (cf2 - cs2);

    // divergence wave
    let mut div = [0.0; 8];
    div[B1] = 1.0;
    div[EN] = bn;
    set_col(4, div);
    l[4][B1] = 1.0;

    for (i, row) in l.iter_mut().enumerate() {
        if i != 4 {
            row[B1] = -bn * row[EN];
        }
    }

    (ascending(un, &s), r, l)
}

/// Primitive eigenvectors `T`, `T^-1` (Roe-Balsara normalisation).
pub fn eigensystem_prim(v: &PrimState, gas: &GasModel, dir: Direction) -> Result<PrimEigenSystem, MhdError> {
    v.check_admissible()?;
    Ok(eigensystem_prim_unchecked(v, gas, dir))
}

/// [`eigensystem_prim`] without the admissibility check.
pub fn eigensystem_prim_unchecked(v: &PrimState, gas: &GasModel, dir: Direction) -> PrimEigenSystem {
    match dir {
        Direction::X => {
            let (lambdas, t, tinv) = prim_vectors_x(v, gas);
            PrimEigenSystem {
                lambdas,
                transform: t,
                inverse_transform: tinv,
                direction: dir,
            }
        }
        Direction::Y => {
            let (lambdas, t, tinv) = prim_vectors_x(&v.swap_xy(), gas);
            PrimEigenSystem {
                lambdas,
                transform: permute_rows(&t, &PRIM_SWAP),
                inverse_transform: permute_cols(&tinv, &PRIM_SWAP),
                direction: dir,
            }
        }
    }
}

fn prim_vectors_x(v: &PrimState, gas: &GasModel) -> (Vec8, Mat8, Mat8) {
    let [rho, un, _, _, p, bn, bt, b3] = v.0;
    let sp = Spectrum::new(rho, p, bn, bt, b3, gas.gamma());
    let s = sp.speeds();
    let (c, cf, cs) = (s.c, s.cf, s.cs);
    let c2 = sp.c2;
    let Betas {
        beta1,
        beta2,
        beta3,
    } = betas(bn, bt, b3);
    let (af, asl) = prim_alphas(&sp);
    let sr = rho.sqrt();
    let inv2c2 = 0.5 / c2;

    use pidx::*;
    let mut t = [[0.0; 8]; 8];
    let mut ti = [[0.0; 8]; 8];
    let mut set_col = |col: usize, vals: [f64; 8]| {
        for (i, x) in vals.into_iter().enumerate() {
            t[i][col] = x;
        }
    };

    for (col, sgn) in [(0usize, 1.0), (7, -1.0)] {
        set_col(
            col,
            [
                af * rho,
                -sgn * af * cf,
                sgn * asl * cs * beta1 * beta2,
                sgn * asl * cs * beta1 * beta3,
                af * rho * c2,
                0.0,
                asl * sr * c * beta2,
                asl * sr * c * beta3,
            ],
        );
        ti[col] = [
            0.0,
            -sgn * af * cf * inv2c2,
            sgn * asl * cs * beta1 * beta2 * inv2c2,
            sgn * asl * cs * beta1 * beta3 * inv2c2,
            af / rho * inv2c2,
            0.0,
            asl * c * beta2 / sr * inv2c2,
            asl * c * beta3 / sr * inv2c2,
        ];
    }
    for (col, sgn) in [(1usize, 1.0), (6, -1.0)] {
        set_col(
            col,
            [
                0.0,
                0.0,
                -sgn * beta3,
                sgn * beta2,
                0.0,
                0.0,
                -sr * beta1 * beta3,
                sr * beta1 * beta2,
            ],
        );
        ti[col] = [
            0.0,
            0.0,
            -0.5 * sgn * beta3,
            0.5 * sgn * beta2,
            0.0,
            0.0,
            -0.5 * beta1 * beta3 / sr,
            0.5 * beta1 * beta2 / sr,
        ];
    }
    // The slow-wave magnetic entries use the sound speed.
    for (col, sgn) in [(2usize, 1.0), (5, -1.0)] {
        set_col(
            col,
            [
                asl * rho,
                -sgn * asl * cs,
                -sgn * af * cf * beta1 * beta2,
                -sgn * af * cf * beta1 * beta3,
                asl * rho * c2,
                0.0,
                -af * sr * c * beta2,
                -af * sr * c * beta3,
            ],
        );
        ti[col] = [
            0.0,
            -sgn * asl * cs * inv2c2,
            -sgn * af * cf * beta1 * beta2 * inv2c2,
            -sgn * af * cf * beta1 * beta3 * inv2c2,
            asl / rho * inv2c2,
            0.0,
            -af * c * beta2 / sr * inv2c2,
            -af * c * beta3 / sr * inv2c2,
        ];
    }
    let mut e = [0.0; 8];
    e[RHO] = 1.0;
    set_col(3, e);
    let mut e = [0.0; 8];
    e[B1] = 1.0;
    set_col(4, e);
    ti[3][RHO] = 1.0;
    ti[3][P] = -1.0 / c2;
    ti[4][B1] = 1.0;

    (ascending(un, &s), t, ti)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{identity, mat_mul, max_abs_diff, norm_inf};
    use crate::state::prim_to_cons;

    fn gas(g: f64) -> GasModel {
        GasModel::new(g).unwrap()
    }

    fn residual(c: &Mat8, r: &Mat8, lam: &Vec8) -> f64 {
        let cr = mat_mul(c, r);
        let mut worst: f64 = 0.0;
        for i in 0..8 {
            for j in 0..8 {
                worst = worst.max((cr[i][j] - r[i][j] * lam[j]).abs());
            }
        }
        worst
    }

    #[test]
    fn speeds_closed_form() {
        let v = PrimState([1.0, 0.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0]);
        let s = wave_speeds(&v, &gas(2.0), Direction::X).unwrap();
        assert!((s.c - 2f64.sqrt()).abs() < 1e-15);
        assert!((s.ca - 1.0).abs() < 1e-15);
        assert!((s.cf - 2f64.sqrt()).abs() < 1e-15);
        assert!((s.cs - 1.0).abs() < 1e-15);
        let lam = eigenvalues_prim(&v, &gas(2.0), Direction::X).unwrap();
        let r2 = 2f64.sqrt();
        let expect = [-r2, -1.0, -1.0, 0.0, 0.0, 1.0, 1.0, r2];
        for i in 0..8 {
            assert!((lam[i] - expect[i]).abs() < 1e-15);
        }
    }

    #[test]
    fn hydrodynamic_limit() {
        let v = PrimState([1.4, 3.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
        let g = gas(1.4);
        let s = wave_speeds(&v, &g, Direction::X).unwrap();
        assert_eq!((s.ca, s.cs), (0.0, 0.0));
        assert!((s.cf - 1.0).abs() < 1e-15);
        let lam = eigenvalues_prim(&v, &g, Direction::X).unwrap();
        let expect = [2.0, 3.0, 3.0, 3.0, 3.0, 3.0, 3.0, 4.0];
        for i in 0..8 {
            assert!((lam[i] - expect[i]).abs() < 1e-15);
        }
    }

    #[test]
    fn y_speeds_match_swapped_x() {
        let g = gas(2.0);
        let vx = PrimState([1.0, 0.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0]);
        let vy = PrimState([1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0, 0.0]);
        assert_eq!(
            wave_speeds(&vx, &g, Direction::X).unwrap(),
            wave_speeds(&vy, &g, Direction::Y).unwrap()
        );
    }

    #[test]
    fn wave_speeds_reject_negative_inputs() {
        let g = gas(2.0);
        let v = PrimState([1.0, 0.0, 0.0, 0.0, -1.0, 1.0, 0.0, 0.0]);
        assert!(wave_speeds(&v, &g, Direction::X).is_err());
        let v = PrimState([-1.0, 0.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0]);
        assert!(wave_speeds(&v, &g, Direction::X).is_err());
    }

    #[test]
    fn degenerate_transverse_field_branch() {
        let b = betas(0.7, 0.0, 0.0);
        assert_eq!((b.beta2, b.beta3), (FRAC_1_SQRT_2, FRAC_1_SQRT_2));
        assert_eq!(betas(0.0, 1.0, 0.0).beta1, 1.0);
        assert_eq!(betas(-2.0, 1.0, 0.0).beta1, -1.0);

        let g = gas(5.0 / 3.0);
        // triple point: c = c_a, b_T = b3 = 0
        let p = 0.6;
        let bn = (g.gamma() * p).sqrt();
        let v = PrimState([1.0, 0.1, 0.2, 0.3, p, bn, 0.0, 0.0]);
        assert_eq!(conservative_alphas(&v, &g, Direction::X), (1.0, 1.0));
        assert_eq!(
            primitive_alphas(&v, &g, Direction::X),
            (FRAC_1_SQRT_2, FRAC_1_SQRT_2)
        );
        // sound dominated / Alfven dominated limits
        let v = PrimState([1.0, 0.0, 0.0, 0.0, 1.0, 0.5, 0.0, 0.0]);
        assert_eq!(conservative_alphas(&v, &g, Direction::X), (1.0, 0.0));
        let v = PrimState([1.0, 0.0, 0.0, 0.0, 0.1, 2.0, 0.0, 0.0]);
        assert_eq!(conservative_alphas(&v, &g, Direction::X), (0.0, 1.0));
    }

    #[test]
    fn printed_unit_weights_fail_off_the_triple_point() {
        // With alpha = (1, 1) at b_T = b3 = 0 and c != c_a, the fast vector's
        // transverse entries are not an eigenvector.
        let g = gas(5.0 / 3.0);
        let v = PrimState([1.0, 0.0, 0.0, 0.0, 1.0, 0.5, 0.0, 0.0]);
        let u = prim_to_cons(&v, &g).unwrap();
        let c = quasilinear_matrix_cons(&u, &g, Direction::X).unwrap();
        let sp = wave_speeds(&v, &g, Direction::X).unwrap();
        let bt = betas(0.5, 0.0, 0.0);
        let mut r1 = [0.0; 8];
        r1[idx::RHO] = 1.0;
        r1[idx::MX] = -sp.cf;
        r1[idx::MY] = bt.beta1 * bt.beta2 * sp.ca;
        r1[idx::B2] = bt.beta2 * sp.cf;
        let cr = crate::linalg::mat_vec(&c, &r1);
        let lam = -sp.cf;
        let res = (0..8).map(|i| (cr[i] - lam * r1[i]).abs()).fold(0.0, f64::max);
        assert!(res > 1e-2, "{res}");
    }

    #[test]
    fn conservative_system_at_special_states() {
        let g = gas(5.0 / 3.0);
        let bn = (g.gamma() * 0.6f64).sqrt();
        let states = [
            PrimState([1.0, 0.1, 0.2, 0.3, 0.6, bn, 0.0, 0.0]),
            PrimState([1.0, -0.4, 0.2, 0.3, 1.0, 0.5, 0.0, 0.0]),
            PrimState([0.5, 0.0, 0.0, 0.0, 0.1, 2.0, 0.0, 0.0]),
            PrimState([1.2, 0.3, 0.0, 0.0, 0.7, 0.0, 0.8, -0.2]),
            PrimState([1.2, 0.3, 0.0, 0.0, 0.7, 0.0, 0.0, 0.0]),
            PrimState([1.0, 0.0, 0.0, 0.0, 1.0, 0.75, 1.0, 0.0]),
        ];
        for v in states {
            for dir in [Direction::X, Direction::Y] {
                let u = prim_to_cons(&v, &g).unwrap();
                let es = eigensystem_cons(&u, &g, dir).unwrap();
                let c = quasilinear_matrix_cons(&u, &g, dir).unwrap();
                let lr = mat_mul(&es.left, &es.right);
                assert!(max_abs_diff(&lr, &identity()) < 1e-10, "{v:?} {dir:?}");
                assert!(residual(&c, &es.right, &es.lambdas) <= 1e-9 * norm_inf(&c), "{v:?} {dir:?}");

                let ps = eigensystem_prim(&v, &g, dir).unwrap();
                let d = quasilinear_matrix_prim(&v, &g, dir);
                let tt = mat_mul(&ps.inverse_transform, &ps.transform);
                assert!(max_abs_diff(&tt, &identity()) < 1e-10);
                assert!(residual(&d, &ps.transform, &ps.lambdas) <= 1e-9 * norm_inf(&d));
            }
        }
    }

    #[test]
    fn entropy_left_vector_hydrodynamic() {
        let g = gas(1.4);
        let v = PrimState([1.0, 0.2, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
        let ps = eigensystem_prim(&v, &g, Direction::X).unwrap();
        let c2 = 1.4;
        let expect = [1.0, 0.0, 0.0, 0.0, -1.0 / c2, 0.0, 0.0, 0.0];
        for i in 0..8 {
            assert!((ps.inverse_transform[3][i] - expect[i]).abs() < 1e-15);
        }
    }

    #[test]
    fn divergence_wave_row_of_matrix() {
        let g = gas(5.0 / 3.0);
        let u = prim_to_cons(&PrimState([1.0, 0.3, 0.1, 0.0, 1.0, 0.2, 0.4, 0.1]), &g).unwrap();
        let c = quasilinear_matrix_cons(&u, &g, Direction::X).unwrap();
        for j in 0..8 {
            let want = if j == idx::B1 { 0.3 } else { 0.0 };
            assert!((c[idx::B1][j] - want).abs() < 1e-15);
        }
    }

    #[test]
    fn static_field_free_matrix_decouples() {
        let g = gas(1.4);
        let u = prim_to_cons(&PrimState([1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]), &g).unwrap();
        let c = quasilinear_matrix_cons(&u, &g, Direction::X).unwrap();
        for i in [idx::B1, idx::B2, idx::B3] {
            assert!(c[i].iter().all(|x| *x == 0.0));
            for row in c.iter() {
                assert_eq!(row[i], 0.0);
            }
        }
    }
}
