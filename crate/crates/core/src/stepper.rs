//! Three-stage, third-order strong-stability-preserving Runge-Kutta (Shu-Osher
//! form) and the CFL time-step rule.

use crate::error::MhdError;

/// CFL number, final time and the abort threshold for the time step.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeControls {
    pub cfl: f64,
    pub t_final: f64,
    pub dt_min: f64,
}

impl TimeControls {
    pub fn new(cfl: f64, t_final: f64, dt_min: f64) -> Result<Self, MhdError> {
        if !(cfl > 0.0 && cfl < 1.0) {
            return Err(MhdError::Config(format!("cfl must lie in (0, 1), got {cfl}")));
        }
        if !(t_final >= 0.0) || !t_final.is_finite() {
            return Err(MhdError::Config(format!("final time must be non-negative, got {t_final}")));
        }
        if !(dt_min >= 0.0) {
            return Err(MhdError::Config(format!("dt_min must be non-negative, got {dt_min}")));
        }
        Ok(Self { cfl, t_final, dt_min })
    }
}

impl Default for TimeControls {
    fn default() -> Self {
        Self {
            cfl: 0.25,
            t_final: 0.0,
            dt_min: 1e-12,
        }
    }
}

/// `dt = cfl min(dx/a_x, dy/a_y)`, clipped so that `t + dt` does not pass
/// `t_final`. A direction with zero speed imposes no limit.
pub fn compute_dt(dx: f64, dy: f64, a_x: f64, a_y: f64, t: f64, controls: &TimeControls) -> Result<f64, MhdError> {
    let lim_x = if a_x > 0.0 { dx / a_x } else { f64::INFINITY };
    let lim_y = if a_y > 0.0 { dy / a_y } else { f64::INFINITY };
    let mut dt = controls.cfl * lim_x.min(lim_y);
    let remaining = controls.t_final - t;
    if dt >= remaining {
        return Ok(remaining);
    }
    if !dt.is_finite() {
        dt = remaining;
    }
    if !(dt >= controls.dt_min) {
        return Err(MhdError::UnstableRun {
            t,
            dt,
            dt_min: controls.dt_min,
        });
    }
    Ok(dt)
}

/// One SSP-RK3 step given the already evaluated `L(u)`:
/// `u1 = u + dt L(u)`, `u2 = 3/4 u + 1/4 (u1 + dt L(u1))`,
/// `u^{n+1} = 1/3 u + 2/3 (u2 + dt L(u2))`.
pub fn ssp_rk3_step_from<E>(
    u: &[f64],
    l0: &[f64],
    dt: f64,
    mut rhs: impl FnMut(&[f64], &mut [f64]) -> Result<(), E>,
) -> Result<Vec<f64>, E> {
    let n = u.len();
    let mut stage: Vec<f64> = u.iter().zip(l0).map(|(a, l)| a + dt * l).collect();
    let mut l = vec![0.0; n];
    rhs(&stage, &mut l)?;
    for i in 0..n {
        stage[i] = 0.75 * u[i] + 0.25 * (stage[i] + dt * l[i]);
    }
    rhs(&stage, &mut l)?;
    for i in 0..n {
        stage[i] = u[i] / 3.0 + 2.0 / 3.0 * (stage[i] + dt * l[i]);
    }
    Ok(stage)
}

/// One SSP-RK3 step.
pub fn ssp_rk3_step<E>(
    u: &[f64],
    dt: f64,
    mut rhs: impl FnMut(&[f64], &mut [f64]) -> Result<(), E>,
) -> Result<Vec<f64>, E> {
    let mut l0 = vec![0.0; u.len()];
    rhs(u, &mut l0)?;
    ssp_rk3_step_from(u, &l0, dt, rhs)
}
