use std::io::Write;
use std::path::Path;

use crate::error::MhdError;

use super::grid::Grid2D;

/// Per-cell discrete divergence and its norms.
#[derive(Clone, Debug, PartialEq)]
pub struct DivergenceReport {
    pub values: Vec<f64>,
    /// `sum |div| dx dy`
    pub l1: f64,
    /// `max |div|`
    pub linf: f64,
}

impl DivergenceReport {
    pub fn new(values: Vec<f64>, grid: &Grid2D) -> Self {
        let l1 = values.iter().map(|d| d.abs()).sum::<f64>() * grid.cell_area();
        let linf = values.iter().map(|d| d.abs()).fold(0.0, f64::max);
        Self { values, l1, linf }
    }
}

/// One diagnostics record, taken from the first stage of a step (the state
/// at time `t`) or from the final state (`dt = 0`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiagnosticSample {
    pub t: f64,
    pub dt: f64,
    pub div_l1: f64,
    pub div_linf: f64,
    pub mass: f64,
    pub min_rho: f64,
    pub min_p: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Diagnostics {
    pub samples: Vec<DiagnosticSample>,
}

impl Diagnostics {
    pub fn push(&mut self, s: DiagnosticSample) {
        self.samples.push(s);
    }

    pub fn max_div_linf(&self) -> f64 {
        self.samples.iter().map(|s| s.div_linf).fold(0.0, f64::max)
    }

    pub fn last(&self) -> Option<&DiagnosticSample> {
        self.samples.last()
    }

    /// Largest relative deviation of the total mass from the first sample.
    pub fn mass_drift(&self) -> f64 {
        let Some(first) = self.samples.first() else {
            return 0.0;
        };
        self.samples
            .iter()
            .map(|s| ((s.mass - first.mass) / first.mass).abs())
            .fold(0.0, f64::max)
    }

    pub fn write_csv(&self, path: &Path) -> Result<(), MhdError> {
        let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
        writeln!(w, "t,dt,div_l1,div_linf,mass,min_rho,min_p")?;
        for s in &self.samples {
            writeln!(
                w,
                "{:e},{:e},{:e},{:e},{:e},{:e},{:e}",
                s.t, s.dt, s.div_l1, s.div_linf, s.mass, s.min_rho, s.min_p
            )?;
        }
        w.flush()?;
        Ok(())
    }
}
