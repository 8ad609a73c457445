use crate::error::MhdError;
use crate::stepper::{compute_dt, ssp_rk3_step_from, TimeControls};

use super::diagnostics::{DiagnosticSample, Diagnostics, DivergenceReport};
use super::field::{AugField, CellVec, NVAR};
use super::rhs::{discrete_divergence, rhs, RhsInfo};
use super::Scheme;

#[derive(Clone, Debug, PartialEq)]
pub struct RunSettings {
    pub scheme: Scheme,
    pub controls: TimeControls,
    /// Intermediate output times in `(0, t_final)`; the step size is clipped
    /// to land on each of them.
    pub snapshot_times: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    pub field: AugField,
    pub diagnostics: Diagnostics,
    pub steps: usize,
    /// Divergence of the final state's point values.
    pub final_divergence: DivergenceReport,
}

fn sample(field: &AugField, scheme: &Scheme, t: f64, dt: f64, div_l1: f64, div_linf: f64) -> DiagnosticSample {
    let (min_rho, min_p) = field.min_rho_p(&scheme.gas);
    DiagnosticSample {
        t,
        dt,
        div_l1,
        div_linf,
        mass: field.total_mass(),
        min_rho,
        min_p,
    }
}

/// Integrates to `t_final`, calling `on_snapshot(t, field)` at each snapshot
/// time and at the final time.
pub fn run_with(
    initial: AugField,
    settings: &RunSettings,
    mut on_snapshot: impl FnMut(f64, &AugField) -> Result<(), MhdError>,
) -> Result<RunOutput, MhdError> {
    let grid = initial.grid;
    let scheme = &settings.scheme;
    let t_final = settings.controls.t_final;
    let mut targets: Vec<f64> = settings
        .snapshot_times
        .iter()
        .copied()
        .filter(|t| *t > 0.0 && *t < t_final)
        .collect();
    targets.sort_by(f64::total_cmp);
    targets.dedup();
    targets.push(t_final);

    let n = grid.num_cells();
    let mut field = initial;
    let mut diagnostics = Diagnostics::default();
    let mut t = 0.0;
    let mut steps = 0;
    let mut l0 = vec![[0.0; NVAR]; n];

    let eval = |cells: &[f64], out: &mut [f64]| -> Result<RhsInfo, MhdError> {
        let cells: &[CellVec] = as_cells(cells);
        rhs(cells, &grid, scheme, as_cells_mut(out))
    };

    for &target in &targets {
        while t < target {
            let info = rhs(&field.cells, &grid, scheme, &mut l0)?;
            let controls = TimeControls {
                t_final: target,
                ..settings.controls
            };
            let dt = compute_dt(grid.dx(), grid.dy(), info.max_speed_x, info.max_speed_y, t, &controls)?;
            diagnostics.push(sample(&field, scheme, t, dt, info.div_l1, info.div_linf));
            let next = ssp_rk3_step_from(field.as_flat(), l0.as_flattened(), dt, |u, o| eval(u, o).map(|_| ()))?;
            field = AugField::from_flat(grid, &next);
            if !field.all_finite() {
                return Err(MhdError::UnstableRun {
                    t,
                    dt,
                    dt_min: settings.controls.dt_min,
                });
            }
            t = if dt >= target - t { target } else { t + dt };
            steps += 1;
        }
        on_snapshot(t, &field)?;
    }

    let final_divergence = DivergenceReport::new(discrete_divergence(&field.cells, &grid, scheme)?, &grid);
    diagnostics.push(sample(&field, scheme, t, 0.0, final_divergence.l1, final_divergence.linf));
    Ok(RunOutput {
        field,
        diagnostics,
        steps,
        final_divergence,
    })
}

pub fn run(initial: AugField, settings: &RunSettings) -> Result<RunOutput, MhdError> {
    run_with(initial, settings, |_, _| Ok(()))
}

fn as_cells(flat: &[f64]) -> &[CellVec] {
    let (cells, rest) = flat.as_chunks::<NVAR>();
    debug_assert!(rest.is_empty());
    cells
}

fn as_cells_mut(flat: &mut [f64]) -> &mut [CellVec] {
    let (cells, rest) = flat.as_chunks_mut::<NVAR>();
    debug_assert!(rest.is_empty());
    cells
}
