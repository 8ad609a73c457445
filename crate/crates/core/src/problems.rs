//! Benchmark problem definitions.

use std::f64::consts::PI;

use crate::error::MhdError;
use crate::reconstruction::SlopeLimiterConfig;
use crate::solver::{AugField, BcKind, BoundaryCondition, Grid2D, Scheme, SchemeVariant};
use crate::state::{AugPair, GasModel, PrimState};

pub const PROBLEM_NAMES: [&str; 5] = ["brio_wu", "alfven", "orszag_tang", "rotor", "blast"];

/// Alfven-wave propagation angle.
pub const ALFVEN_ANGLE: f64 = PI / 6.0;

type InitFn = fn(f64, f64, f64) -> (PrimState, AugPair);

#[derive(Clone, Copy, Debug)]
pub struct ProblemSpec {
    pub name: &'static str,
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub gamma: f64,
    pub theta: f64,
    pub bc: BcKind,
    pub t_final: f64,
    /// Mesh used when none is given.
    pub default_mesh: (usize, usize),
    init: InitFn,
}

impl ProblemSpec {
    pub fn gas(&self) -> GasModel {
        GasModel::new(self.gamma).expect("problem gamma exceeds one")
    }

    pub fn limiter(&self) -> SlopeLimiterConfig {
        SlopeLimiterConfig::new(self.theta).expect("problem theta lies in [1, 2]")
    }

    pub fn boundary(&self) -> BoundaryCondition {
        BoundaryCondition::uniform(self.bc)
    }

    pub fn grid(&self, nx: usize, ny: usize) -> Result<Grid2D, MhdError> {
        Grid2D::new(nx, ny, self.x_range, self.y_range)
    }

    /// Point values of the initial primitive state and `(A, B)`.
    pub fn initial_state(&self, x: f64, y: f64) -> (PrimState, AugPair) {
        (self.init)(x, y, self.gamma)
    }

    /// Cell averages approximated by cell-centre values.
    pub fn initial_field(&self, nx: usize, ny: usize) -> Result<AugField, MhdError> {
        let grid = self.grid(nx, ny)?;
        AugField::from_fn(grid, &self.gas(), |x, y| self.initial_state(x, y))
    }

    /// Scheme with the problem's gamma, theta and boundary conditions.
    pub fn scheme(&self, variant: SchemeVariant) -> Scheme {
        Scheme::new(variant, self.gas(), self.limiter(), self.boundary())
    }
}

pub fn problem(name: &str) -> Result<ProblemSpec, MhdError> {
    let norm = name.trim().to_ascii_lowercase().replace('-', "_");
    let spec = match norm.as_str() {
        "brio_wu" => ProblemSpec {
            name: "brio_wu",
            x_range: (-1.0, 1.0),
            y_range: (-0.01, 0.01),
            gamma: 2.0,
            theta: 1.3,
            bc: BcKind::Extrapolate,
            t_final: 0.2,
            default_mesh: (200, 2),
            init: brio_wu,
        },
        "alfven" => ProblemSpec {
            name: "alfven",
            x_range: (0.0, 1.0 / ALFVEN_ANGLE.cos()),
            y_range: (0.0, 1.0 / ALFVEN_ANGLE.sin()),
            gamma: 5.0 / 3.0,
            theta: 1.3,
            bc: BcKind::Periodic,
            t_final: 5.0,
            default_mesh: (80, 80),
            init: |x, y, _| alfven_exact(x, y, 0.0),
        },
        "orszag_tang" => ProblemSpec {
            name: "orszag_tang",
            x_range: (0.0, 2.0 * PI),
            y_range: (0.0, 2.0 * PI),
            gamma: 5.0 / 3.0,
            theta: 1.3,
            bc: BcKind::Periodic,
            t_final: 4.0,
            default_mesh: (200, 200),
            init: orszag_tang,
        },
        "rotor" => ProblemSpec {
            name: "rotor",
            x_range: (0.0, 1.0),
            y_range: (0.0, 1.0),
            gamma: 5.0 / 3.0,
            theta: 1.3,
            bc: BcKind::Periodic,
            t_final: 0.295,
            default_mesh: (200, 200),
            init: rotor,
        },
        "blast" => ProblemSpec {
            name: "blast",
            x_range: (-0.5, 0.5),
            y_range: (-0.5, 0.5),
            gamma: 1.4,
            theta: 1.0,
            bc: BcKind::Extrapolate,
            t_final: 0.01,
            default_mesh: (200, 200),
            init: blast,
        },
        _ => {
            return Err(MhdError::UnknownProblem {
                name: name.to_string(),
                valid: PROBLEM_NAMES.join(", "),
            })
        }
    };
    Ok(spec)
}

fn brio_wu(x: f64, _y: f64, _gamma: f64) -> (PrimState, AugPair) {
    let v = if x < 0.0 {
        [1.0, 0.0, 0.0, 0.0, 1.0, 0.75, 1.0, 0.0]
    } else {
        [0.125, 0.0, 0.0, 0.0, 0.1, 0.75, -1.0, 0.0]
    };
    (PrimState(v), AugPair::default())
}

/// Exact circularly polarized Alfven wave. With `b_par = 1` and `rho = 1` the
/// wave travels along `-(cos a, sin a)` at unit speed, so the state depends on
/// `phi + t` with `phi = x cos a + y sin a`.
pub fn alfven_exact(x: f64, y: f64, t: f64) -> (PrimState, AugPair) {
    let (sa, ca) = ALFVEN_ANGLE.sin_cos();
    let phase = 2.0 * PI * (x * ca + y * sa + t);
    let perp = 0.1 * phase.sin();
    let u = perp * sa;
    let v = -perp * ca;
    let b1 = ca + perp * sa;
    let b2 = sa - perp * ca;
    let w = 0.1 * phase.cos();
    // d(perp)/d(phi)
    let dperp = 0.2 * PI * phase.cos();
    let a = dperp * ca * sa;
    let b = -dperp * sa * ca;
    (PrimState([1.0, u, v, w, 0.1, b1, b2, w]), AugPair { a, b })
}

fn orszag_tang(x: f64, y: f64, gamma: f64) -> (PrimState, AugPair) {
    (
        PrimState([
            gamma * gamma,
            -y.sin(),
            x.sin(),
            0.0,
            gamma,
            -y.sin(),
            (2.0 * x).sin(),
            0.0,
        ]),
        AugPair::default(),
    )
}

/// Rotor taper `mu = (0.115 - r)/0.015`.
pub fn rotor_taper(r: f64) -> f64 {
    (0.115 - r) / 0.015
}

fn rotor(x: f64, y: f64, _gamma: f64) -> (PrimState, AugPair) {
    let r0 = 0.1;
    let r = (x - 0.5).hypot(y - 0.5);
    let (rho, u, v) = if r < r0 {
        (10.0, (0.5 - y) / r0, (x - 0.5) / r0)
    } else if r <= 0.115 {
        let mu = rotor_taper(r);
        (1.0 + 9.0 * mu, mu * (0.5 - y) / r, mu * (x - 0.5) / r)
    } else {
        (1.0, 0.0, 0.0)
    };
    let b1 = 2.5 / (4.0 * PI).sqrt();
    (PrimState([rho, u, v, 0.0, 0.5, b1, 0.0, 0.0]), AugPair::default())
}

fn blast(x: f64, y: f64, _gamma: f64) -> (PrimState, AugPair) {
    let p = if x.hypot(y) < 0.1 { 1000.0 } else { 0.1 };
    let b1 = 50.0 / PI.sqrt();
    (PrimState([1.0, 0.0, 0.0, 0.0, p, b1, 0.0, 0.0]), AugPair::default())
}
