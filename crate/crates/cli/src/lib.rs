//! IO, file formats, experiment harness, and report emission around
//! `manifoldnet-core`. The `manifoldnet` binary is a thin argument-parsing
//! layer over these modules.

pub mod error;
pub mod harness;
pub mod heatmap;
pub mod io;

pub use error::{AppError, Result};
