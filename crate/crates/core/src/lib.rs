//! Locally divergence-free central-upwind finite-volume solver for 2-D ideal
//! MHD.

// NaN-rejecting `!(x > 0.0)` checks and index loops over small fixed-size
// matrices are used throughout.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod config;
pub mod convergence;
pub mod dump;
pub mod eigen;
pub mod error;
pub mod flux;
pub mod linalg;
pub mod nonconservative;
pub mod problems;
pub mod reconstruction;
pub mod solver;
pub mod state;
pub mod stepper;

pub use error::MhdError;
