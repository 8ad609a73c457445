//! Mesh-refinement study against the exact Alfven-wave solution.

use std::io::Write;
use std::path::Path;

use crate::error::MhdError;
use crate::problems::{alfven_exact, problem};
use crate::solver::{run, AugField, RunSettings, SchemeVariant};
use crate::state::GasModel;
use crate::stepper::TimeControls;

/// Observed order between two meshes refined by a factor of two.
pub fn rate(coarse: f64, fine: f64) -> f64 {
    (coarse / fine).log2()
}

/// `sum |u - u_exact| dx dy` and the same for `b3`, with the exact solution
/// sampled at cell centres.
pub fn alfven_l1_errors(field: &AugField, gas: &GasModel, t: f64) -> Result<(f64, f64), MhdError> {
    let g = field.grid;
    let (mut eu, mut eb) = (0.0, 0.0);
    for k in 0..g.ny {
        for j in 0..g.nx {
            let v = field.prim(j, k, gas)?;
            let (ex, _) = alfven_exact(g.x_center(j), g.y_center(k), t);
            eu += (v.u() - ex.u()).abs();
            eb += (v.b3() - ex.b3()).abs();
        }
    }
    Ok((eu * g.cell_area(), eb * g.cell_area()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceRow {
    /// Cells per direction.
    pub n: usize,
    pub err_u: f64,
    /// `None` on the coarsest mesh.
    pub rate_u: Option<f64>,
    pub err_b3: f64,
    pub rate_b3: Option<f64>,
    /// Largest `max |div b|` seen during the run, and `max |b|` at the end.
    pub max_div_linf: f64,
    pub max_abs_b: f64,
    pub final_div_l1: f64,
    pub steps: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceTable {
    pub variant: SchemeVariant,
    pub t_final: f64,
    pub rows: Vec<ConvergenceRow>,
}

/// Runs the Alfven problem on `n x n` meshes up to `t_final` (the problem's
/// own final time if `None`).
pub fn convergence_study(
    meshes: &[usize],
    variant: SchemeVariant,
    cfl: f64,
    t_final: Option<f64>,
) -> Result<ConvergenceTable, MhdError> {
    let spec = problem("alfven")?;
    let t_final = t_final.unwrap_or(spec.t_final);
    let gas = spec.gas();
    if meshes.windows(2).any(|w| w[1] != 2 * w[0]) {
        return Err(MhdError::Config(format!(
            "meshes must double at each refinement, got {meshes:?}"
        )));
    }
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(meshes.len());
    for &n in meshes {
        let settings = RunSettings {
            scheme: spec.scheme(variant),
            controls: TimeControls::new(cfl, t_final, TimeControls::default().dt_min)?,
            snapshot_times: Vec::new(),
        };
        let out = run(spec.initial_field(n, n)?, &settings)?;
        let (err_u, err_b3) = alfven_l1_errors(&out.field, &gas, t_final)?;
        let prev = rows.last();
        rows.push(ConvergenceRow {
            n,
            err_u,
            rate_u: prev.map(|p| rate(p.err_u, err_u)),
            err_b3,
            rate_b3: prev.map(|p| rate(p.err_b3, err_b3)),
            max_div_linf: out.diagnostics.max_div_linf(),
            max_abs_b: out.field.max_abs_b(),
            final_div_l1: out.final_divergence.l1,
            steps: out.steps,
        });
    }
    Ok(ConvergenceTable {
        variant,
        t_final,
        rows,
    })
}

impl ConvergenceTable {
    pub fn write_csv(&self, path: &Path) -> Result<(), MhdError> {
        let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
        writeln!(w, "mesh,err_u,rate_u,err_b3,rate_b3,max_div_linf,final_div_l1")?;
        let fmt_rate = |r: Option<f64>| r.map(|r| format!("{r:.2}")).unwrap_or_else(|| "-".into());
        for r in &self.rows {
            writeln!(
                w,
                "{},{:.3e},{},{:.3e},{},{:.3e},{:.3e}",
                r.n,
                r.err_u,
                fmt_rate(r.rate_u),
                r.err_b3,
                fmt_rate(r.rate_b3),
                r.max_div_linf,
                r.final_div_l1
            )?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rate_formula() {
        assert_eq!(format!("{:.2}", rate(2.69e-2, 7.83e-3)), "1.78");
        assert_eq!(rate(0.5, 0.5), 0.0);
        assert!((rate(4.0, 1.0) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn exact_initial_data_has_tiny_error() {
        let spec = problem("alfven").unwrap();
        let f = spec.initial_field(8, 8).unwrap();
        let (eu, eb) = alfven_l1_errors(&f, &spec.gas(), 0.0).unwrap();
        assert!(eu < 1e-15 && eb < 1e-15, "{eu} {eb}");
        // one period later the exact solution is unchanged
        let (eu, _) = alfven_l1_errors(&f, &spec.gas(), 1.0).unwrap();
        assert!(eu < 1e-12);
    }

    #[test]
    fn meshes_must_double() {
        assert!(convergence_study(&[10, 30], SchemeVariant::LcdPccu, 0.25, Some(0.0)).is_err());
    }

    #[test]
    fn short_study_and_csv() {
        let t = convergence_study(&[8, 16], SchemeVariant::Pccu, 0.25, Some(0.05)).unwrap();
        assert_eq!(t.rows.len(), 2);
        assert!(t.rows[0].rate_u.is_none() && t.rows[1].rate_u.is_some());
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.csv");
        t.write_csv(&p).unwrap();
        let text = std::fs::read_to_string(p).unwrap();
        assert_eq!(text.lines().count(), 3);
        assert!(text.lines().nth(1).unwrap().starts_with("8,"));
    }
}
