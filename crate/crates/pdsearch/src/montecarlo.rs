//! Seeded Monte Carlo runs of the unknown-M driver and their summary.

use std::io::Write;

use pdsearch_core::unknown_m::{
    expected_cost_grover, expected_cost_proposed, GroverCost, ItemSampler, GROVER_COST_COEFFICIENT,
    PROPOSED_COST_COEFFICIENT,
};
use pdsearch_core::{DriverConfig, GroverShape, MarkedSet, RunRecord, SearchShape};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{CliError, Result};

pub const RUNS_HEADER: &str = "run,seed,rounds,total_iterations,oracle_calls,found";

/// Value written where the Grover-based cost formula does not apply.
pub const OUT_OF_RANGE: &str = "out_of_range";

/// Largest number of cached distribution entries shared across threads.
const MAX_SHARED_CACHE: usize = 1 << 27;

/// Seed of run `k` in a batch started from `base`.
pub fn run_seed(base: u64, k: u64) -> u64 {
    base.wrapping_add(k)
}

/// Runs `runs` independent driver runs. Records come back in run order.
pub fn run_batch(
    n: usize,
    marked: &MarkedSet,
    runs: u64,
    base_seed: u64,
    lambda: f64,
) -> Result<Vec<RunRecord>> {
    let template = DriverConfig::new(base_seed).with_lambda(lambda)?;
    let mut sampler = ItemSampler::new(n, marked.clone())?;
    let shared = (sampler.max_iterations() as usize + 1).saturating_mul(sampler.items());
    if shared <= MAX_SHARED_CACHE {
        sampler.prepare_all()?;
        (0..runs)
            .into_par_iter()
            .map(|k| {
                let config = template.with_seed(run_seed(base_seed, k));
                Ok(sampler.run_prepared(&config)?)
            })
            .collect()
    } else {
        (0..runs)
            .map(|k| Ok(sampler.run(&template.with_seed(run_seed(base_seed, k)))?))
            .collect()
    }
}

pub fn write_runs_csv(records: &[RunRecord], out: &mut impl Write) -> Result<()> {
    writeln!(out, "{RUNS_HEADER}")?;
    for (k, r) in records.iter().enumerate() {
        let found = r.found_index.map(|i| i.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{k},{},{},{},{},{found}",
            r.seed, r.rounds, r.total_iterations, r.oracle_calls
        )?;
    }
    Ok(())
}

/// A number, or the out-of-range marker.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum CostValue {
    Value(f64),
    Marker(&'static str),
}

impl From<GroverCost> for CostValue {
    fn from(cost: GroverCost) -> Self {
        match cost.total() {
            Some(t) => CostValue::Value(t),
            None => CostValue::Marker(OUT_OF_RANGE),
        }
    }
}

/// One point of the expected-cost curves, floored to whole iterations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CostCurvePoint {
    pub ratio: f64,
    pub proposed: f64,
    pub grover: CostValue,
}

/// `⌊6.4·m_q⌋` and `⌊8·m_G⌋` over `M/N = k/points`, `k = 1..=points`.
pub fn cost_curves(points: usize) -> Result<Vec<CostCurvePoint>> {
    (1..=points)
        .map(|k| {
            let ratio = k as f64 / points as f64;
            let m_q = 1.0 / SearchShape::from_ratio(ratio)?.theta().sin();
            let grover = match expected_cost_grover(&GroverShape::from_ratio(ratio)?) {
                GroverCost::Valid { m_g, .. } => {
                    CostValue::Value((GROVER_COST_COEFFICIENT * m_g).floor())
                }
                GroverCost::OutOfRange => CostValue::Marker(OUT_OF_RANGE),
            };
            Ok(CostCurvePoint {
                ratio,
                proposed: (PROPOSED_COST_COEFFICIENT * m_q).floor(),
                grover,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub n: usize,
    #[serde(rename = "N")]
    pub items: usize,
    #[serde(rename = "M")]
    pub marked: usize,
    pub runs: u64,
    pub seed: u64,
    pub lambda: f64,
    pub found_fraction: f64,
    pub mean_rounds: f64,
    pub mean_total_iterations: f64,
    pub mean_oracle_calls: f64,
    pub m_q: f64,
    /// `6.4·m_q`.
    pub predicted_proposed: f64,
    /// The same bound with the unrounded series coefficients at `lambda`.
    pub predicted_proposed_exact: f64,
    /// `8·m_G`, or the out-of-range marker for `M > 3N/4`.
    pub predicted_grover: CostValue,
    pub cost_curves: Vec<CostCurvePoint>,
}

pub fn summarize(
    n: usize,
    marked: &MarkedSet,
    records: &[RunRecord],
    seed: u64,
    lambda: f64,
    curve_points: usize,
) -> Result<Summary> {
    if records.is_empty() {
        return Err(CliError::Usage("at least one run is required".into()));
    }
    let items = marked.items() as u64;
    let m = marked.len() as u64;
    let shape = SearchShape::new(items, m)?;
    let cost = expected_cost_proposed(&shape, lambda)?;
    let count = records.len() as f64;
    let mean = |f: fn(&RunRecord) -> u64| records.iter().map(|r| f(r) as f64).sum::<f64>() / count;
    Ok(Summary {
        n,
        items: items as usize,
        marked: m as usize,
        runs: records.len() as u64,
        seed,
        lambda,
        found_fraction: records.iter().filter(|r| r.found_index.is_some()).count() as f64 / count,
        mean_rounds: mean(|r| r.rounds),
        mean_total_iterations: mean(|r| r.total_iterations),
        mean_oracle_calls: mean(|r| r.oracle_calls),
        m_q: cost.m_q,
        predicted_proposed: PROPOSED_COST_COEFFICIENT * cost.m_q,
        predicted_proposed_exact: cost.total(),
        predicted_grover: expected_cost_grover(&GroverShape::new(items, m)?).into(),
        cost_curves: cost_curves(curve_points)?,
    })
}
