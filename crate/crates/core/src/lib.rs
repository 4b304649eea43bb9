//! Partial-diffusion quantum search.
//!
//! The search register holds `n` index qubits plus one workspace qubit. The
//! oracle writes `f(i)` into the workspace, and the partial diffusion operator
//! inverts about the mean only on the workspace-0 half of the state while
//! flipping the sign of the workspace-1 half.
//!
//! This crate is `no_std` (it needs `alloc`) and contains:
//!
//! - [`sim`]: exact dense statevector simulation of the register, oracle,
//!   partial diffusion and measurement distribution.
//! - [`analytic`]: Chebyshev closed forms, recurrences, success
//!   probabilities, iteration counts and lower bounds.
//! - [`grover`]: Grover's algorithm as a reference baseline.
//! - [`unknown_m`]: the randomized driver for an unknown number of matches
//!   and its expected-cost accounting.
//! - [`circuit`]: the gate-level construction of the partial diffusion
//!   operator and its verification against the operator definition.
//!
//! IO, file formats and the command line live in the `pdsearch` crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analytic;
pub mod circuit;
pub mod error;
pub mod grover;
pub mod sim;
pub mod unknown_m;

pub use analytic::{IterationPlan, RatioGrid, SearchShape};
pub use error::{Error, Result};
pub use grover::GroverShape;
pub use sim::{AmplitudeTriple, MarkedSet, StateVector};
pub use unknown_m::{DriverConfig, RunRecord};
