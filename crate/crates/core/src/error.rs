use thiserror::Error;

#[derive(Debug, Error)]
pub enum MhdError {
    #[error("non-positive density {rho}")]
    NonPositiveDensity { rho: f64 },

    #[error("non-positive pressure {p}")]
    NonPositivePressure { p: f64 },

    /// Admissibility failure located at cell `(j, k)` (interior indexing,
    /// ghost cells are negative or beyond `nx`/`ny`).
    #[error("inadmissible state at cell ({j}, {k}) [{site}]: {source}")]
    Inadmissible {
        j: isize,
        k: isize,
        site: &'static str,
        #[source]
        source: Box<MhdError>,
    },

    #[error("time step {dt:e} fell below the minimum {dt_min:e} at t = {t}")]
    UnstableRun { t: f64, dt: f64, dt_min: f64 },

    #[error("unknown problem `{name}`; valid problems: {valid}")]
    UnknownProblem { name: String, valid: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("malformed dump: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl MhdError {
    /// Attaches a cell location to a pointwise admissibility error.
    pub fn at(self, j: isize, k: isize, site: &'static str) -> Self {
        match self {
            e @ MhdError::Inadmissible { .. } => e,
            e => MhdError::Inadmissible {
                j,
                k,
                site,
                source: Box::new(e),
            },
        }
    }

    /// True for failures caused by the numerical solution itself, as opposed
    /// to bad configuration or I/O.
    pub fn is_runtime_failure(&self) -> bool {
        matches!(
            self,
            MhdError::NonPositiveDensity { .. }
                | MhdError::NonPositivePressure { .. }
                | MhdError::Inadmissible { .. }
                | MhdError::UnstableRun { .. }
        )
    }
}
