//! Ratio sweeps of the achieved success probability.

use std::io::Write;

use pdsearch_core::analytic::{required_iterations, RatioGrid};
use pdsearch_core::grover::{grover_iterations, grover_success};
use pdsearch_core::{GroverShape, SearchShape};
use rayon::prelude::*;

use crate::error::Result;
use crate::format::fmt_f64;

pub const SWEEP_HEADER: &str = "ratio,q,p_proposed,p_lower_bound,q_grover,p_grover";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SweepMode {
    /// Proposed algorithm only; the Grover columns are left empty.
    Proposed,
    /// Proposed algorithm and Grover's algorithm side by side.
    Compare,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroverPoint {
    pub q: u64,
    pub p: f64,
}

/// One grid point of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub ratio: f64,
    pub q: u64,
    pub p_proposed: f64,
    pub p_lower_bound: f64,
    pub grover: Option<GroverPoint>,
}

impl SweepRow {
    pub fn at(ratio: f64, mode: SweepMode) -> Result<Self> {
        let plan = required_iterations(&SearchShape::from_ratio(ratio)?);
        let grover = match mode {
            SweepMode::Proposed => None,
            SweepMode::Compare => {
                let shape = GroverShape::from_ratio(ratio)?;
                let q = grover_iterations(&shape);
                Some(GroverPoint {
                    q,
                    p: grover_success(q, &shape),
                })
            }
        };
        Ok(Self {
            ratio,
            q: plan.q,
            p_proposed: plan.p_success,
            p_lower_bound: plan.p_lower_bound,
            grover,
        })
    }

    pub fn to_csv(&self) -> String {
        let (q_g, p_g) = match self.grover {
            Some(g) => (g.q.to_string(), fmt_f64(g.p)),
            None => (String::new(), String::new()),
        };
        format!(
            "{},{},{},{},{},{}",
            fmt_f64(self.ratio),
            self.q,
            fmt_f64(self.p_proposed),
            fmt_f64(self.p_lower_bound),
            q_g,
            p_g
        )
    }
}

/// Evaluates every grid point in parallel; rows come back in grid order.
pub fn sweep(grid: &RatioGrid, mode: SweepMode) -> Result<Vec<SweepRow>> {
    (0..grid.len())
        .into_par_iter()
        .map(|k| SweepRow::at(grid.point(k), mode))
        .collect()
}

pub fn write_csv(rows: &[SweepRow], out: &mut impl Write) -> Result<()> {
    writeln!(out, "{SWEEP_HEADER}")?;
    for row in rows {
        writeln!(out, "{}", row.to_csv())?;
    }
    Ok(())
}
