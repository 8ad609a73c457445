//! Grid and boundary handling, the semi-discrete right-hand side, and the
//! time-marching driver.

pub mod boundary;
pub mod diagnostics;
pub mod field;
pub mod grid;
pub mod rhs;
pub mod run;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::MhdError;
use crate::flux::DEFAULT_EPS;
use crate::reconstruction::SlopeLimiterConfig;
use crate::state::GasModel;

pub use boundary::{BcKind, BoundaryCondition, GHOST};
pub use diagnostics::{DiagnosticSample, Diagnostics, DivergenceReport};
pub use field::{AugField, CellVec, NVAR};
pub use grid::Grid2D;
pub use rhs::{discrete_divergence, rhs, RhsInfo};
pub use run::{run, RunOutput, RunSettings};

/// Density/pressure floor used when floor mode is enabled.
pub const FLOOR: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SchemeVariant {
    /// Characteristic reconstruction, slope correction, LCD fluxes.
    #[serde(rename = "lcd-pccu")]
    LcdPccu,
    /// Componentwise reconstruction, slope correction, scalar-speed fluxes.
    #[serde(rename = "pccu")]
    Pccu,
    /// LCD-PCCU without the slope correction.
    #[serde(rename = "lcd-pccu-uncorrected")]
    LcdPccuUncorrected,
}

impl SchemeVariant {
    pub const ALL: [SchemeVariant; 3] = [
        SchemeVariant::LcdPccu,
        SchemeVariant::Pccu,
        SchemeVariant::LcdPccuUncorrected,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SchemeVariant::LcdPccu => "lcd-pccu",
            SchemeVariant::Pccu => "pccu",
            SchemeVariant::LcdPccuUncorrected => "lcd-pccu-uncorrected",
        }
    }

    pub fn is_corrected(&self) -> bool {
        !matches!(self, SchemeVariant::LcdPccuUncorrected)
    }

    pub fn is_characteristic(&self) -> bool {
        !matches!(self, SchemeVariant::Pccu)
    }
}

impl fmt::Display for SchemeVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchemeVariant {
    type Err = MhdError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        SchemeVariant::ALL
            .into_iter()
            .find(|v| v.name() == norm)
            .ok_or_else(|| {
                MhdError::Config(format!(
                    "unknown scheme `{s}`; expected one of lcd-pccu, pccu, lcd-pccu-uncorrected"
                ))
            })
    }
}

/// Everything the right-hand side needs besides the field.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Scheme {
    pub variant: SchemeVariant,
    pub gas: GasModel,
    pub limiter: SlopeLimiterConfig,
    pub bc: BoundaryCondition,
    /// Desingularization constant of the per-wave speed bounds.
    pub eps: f64,
    /// Clamp density and pressure at [`FLOOR`] instead of failing.
    pub floor: bool,
}

impl Scheme {
    pub fn new(variant: SchemeVariant, gas: GasModel, limiter: SlopeLimiterConfig, bc: BoundaryCondition) -> Self {
        Self {
            variant,
            gas,
            limiter,
            bc,
            eps: DEFAULT_EPS,
            floor: false,
        }
    }

    pub fn with_eps(mut self, eps: f64) -> Result<Self, MhdError> {
        if !(eps > 0.0) || !eps.is_finite() {
            return Err(MhdError::Config(format!("eps must be positive, got {eps}")));
        }
        self.eps = eps;
        Ok(self)
    }

    pub fn with_floor(mut self, floor: bool) -> Self {
        self.floor = floor;
        self
    }
}
