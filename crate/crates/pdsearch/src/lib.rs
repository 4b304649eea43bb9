//! File formats, Monte Carlo batches and the command line for partial-diffusion search.

pub mod cli;
pub mod error;
pub mod format;
pub mod gates;
pub mod marked;
pub mod montecarlo;
pub mod report;
pub mod sweep;

pub use error::{CliError, Result};
