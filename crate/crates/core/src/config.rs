//! Run configuration: a TOML file whose keys mirror the `run` flags, with
//! flags taking precedence.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::MhdError;
use crate::problems::{problem, ProblemSpec};
use crate::reconstruction::SlopeLimiterConfig;
use crate::solver::{RunSettings, SchemeVariant};
use crate::stepper::TimeControls;

/// Environment variable setting the number of worker threads.
pub const THREADS_ENV: &str = "LCDMHD_THREADS";

/// Every field is optional so that a file and the command line can each
/// supply part of the configuration.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct RunConfig {
    pub problem: Option<String>,
    pub scheme: Option<SchemeVariant>,
    pub nx: Option<usize>,
    pub ny: Option<usize>,
    pub theta: Option<f64>,
    pub cfl: Option<f64>,
    pub eps: Option<f64>,
    pub t_final: Option<f64>,
    pub dt_min: Option<f64>,
    pub floor: Option<bool>,
    pub out: Option<PathBuf>,
    pub snapshot_times: Option<Vec<f64>>,
}

impl RunConfig {
    pub fn from_toml_str(text: &str) -> Result<Self, MhdError> {
        toml::from_str(text).map_err(|e| MhdError::Config(e.to_string()))
    }

    pub fn from_file(path: &Path) -> Result<Self, MhdError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| MhdError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    /// Values set in `over` replace those in `self`.
    pub fn overridden_by(self, over: RunConfig) -> Self {
        Self {
            problem: over.problem.or(self.problem),
            scheme: over.scheme.or(self.scheme),
            nx: over.nx.or(self.nx),
            ny: over.ny.or(self.ny),
            theta: over.theta.or(self.theta),
            cfl: over.cfl.or(self.cfl),
            eps: over.eps.or(self.eps),
            t_final: over.t_final.or(self.t_final),
            dt_min: over.dt_min.or(self.dt_min),
            floor: over.floor.or(self.floor),
            out: over.out.or(self.out),
            snapshot_times: over.snapshot_times.or(self.snapshot_times),
        }
    }

    /// Fills unset values from the problem definition and validates.
    pub fn resolve(&self) -> Result<ResolvedRun, MhdError> {
        let name = self
            .problem
            .as_deref()
            .ok_or_else(|| MhdError::Config("no problem given".into()))?;
        let spec = problem(name)?;
        let variant = self.scheme.unwrap_or(SchemeVariant::LcdPccu);
        let (nx, ny) = (
            self.nx.unwrap_or(spec.default_mesh.0),
            self.ny.unwrap_or(spec.default_mesh.1),
        );
        let defaults = TimeControls::default();
        let t_final = self.t_final.unwrap_or(spec.t_final);
        let controls = TimeControls::new(
            self.cfl.unwrap_or(defaults.cfl),
            t_final,
            self.dt_min.unwrap_or(defaults.dt_min),
        )?;
        let mut scheme = spec.scheme(variant).with_floor(self.floor.unwrap_or(false));
        if let Some(theta) = self.theta {
            scheme.limiter = SlopeLimiterConfig::new(theta)?;
        }
        if let Some(eps) = self.eps {
            scheme = scheme.with_eps(eps)?;
        }
        let snapshot_times = self.snapshot_times.clone().unwrap_or_default();
        if let Some(t) = snapshot_times.iter().find(|t| !(**t >= 0.0 && **t <= t_final)) {
            return Err(MhdError::Config(format!("snapshot time {t} outside [0, {t_final}]")));
        }
        let out = self
            .out
            .clone()
            .ok_or_else(|| MhdError::Config("no output directory given".into()))?;
        // validates the mesh
        spec.grid(nx, ny)?;
        Ok(ResolvedRun {
            spec,
            nx,
            ny,
            settings: RunSettings {
                scheme,
                controls,
                snapshot_times,
            },
            out,
        })
    }
}

#[derive(Clone, Debug)]
pub struct ResolvedRun {
    pub spec: ProblemSpec,
    pub nx: usize,
    pub ny: usize,
    pub settings: RunSettings,
    pub out: PathBuf,
}

/// Parses a comma-separated list such as `0.1,0.2` or `20,40,80`.
pub fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, MhdError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| MhdError::Config(format!("cannot parse list item `{t}`")))
        })
        .collect()
}

/// Worker count from [`THREADS_ENV`], if set.
pub fn threads_from_env() -> Result<Option<usize>, MhdError> {
    match std::env::var(THREADS_ENV) {
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(MhdError::Config(format!("{THREADS_ENV} must be a positive integer, got `{s}`"))),
        },
        Err(_) => Ok(None),
    }
}
