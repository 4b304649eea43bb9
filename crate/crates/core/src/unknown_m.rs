//! Search with an unknown number of matches.
//!
//! The driver grows a real-valued bound `m` geometrically, each round running
//! a uniformly random number `j < m` of partial-diffusion iterations from a
//! freshly prepared state, measuring, and checking the result classically:
//!
//! 1. `m = 1`, `λ ∈ (1, 4/3]` (default `8/7`);
//! 2. draw `j` uniformly from `{0, …, ⌈m⌉ − 1}`;
//! 3. run `j` iterations on the uniform state;
//! 4. measure the index register, giving `i`;
//! 5. stop if `f(i) = 1`;
//! 6. `m ← min(λm, √N)` and repeat.

use alloc::vec::Vec;

use libm::{ceil, cos, log, sin, sqrt};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analytic::SearchShape;
use crate::error::{domain_err, shape_err, Result};
use crate::grover::GroverShape;
use crate::sim::{run_search, MarkedSet};

pub const DEFAULT_LAMBDA: f64 = 8.0 / 7.0;
pub const MAX_LAMBDA: f64 = 4.0 / 3.0;

/// Per-round success probability once `m ≥ 1/sin θ`, for small `M/N`.
pub const CRITICAL_SUCCESS_BOUND: f64 = 0.2725;
/// `1 − CRITICAL_SUCCESS_BOUND`, the ratio of the post-critical series.
pub const CRITICAL_FAILURE_RATE: f64 = 1.0 - CRITICAL_SUCCESS_BOUND;

/// Rounded total cost coefficient of the driver at `λ = 8/7`, in units of
/// `m_q = 1/sin θ`.
pub const PROPOSED_COST_COEFFICIENT: f64 = 6.4;
/// Total cost coefficient of the same driver built on Grover iterations, in
/// units of `m_G = 1/sin 2θ_G`.
pub const GROVER_COST_COEFFICIENT: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriverConfig {
    lambda: f64,
    seed: u64,
    max_rounds: Option<u64>,
}

impl DriverConfig {
    /// Default growth factor `8/7` and a round cap derived from `N`.
    pub fn new(seed: u64) -> Self {
        Self {
            lambda: DEFAULT_LAMBDA,
            seed,
            max_rounds: None,
        }
    }

    pub fn with_lambda(mut self, lambda: f64) -> Result<Self> {
        if !(lambda > 1.0 && lambda <= MAX_LAMBDA) {
            return Err(domain_err!("lambda = {lambda} outside (1, 4/3]"));
        }
        self.lambda = lambda;
        Ok(self)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_max_rounds(mut self, max_rounds: u64) -> Self {
        self.max_rounds = Some(max_rounds);
        self
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// The configured cap, or `10·⌈log_λ √N⌉ + 64`.
    pub fn max_rounds(&self, items: usize) -> u64 {
        self.max_rounds.unwrap_or_else(|| {
            let steps = ceil(log(sqrt(items as f64)) / log(self.lambda)).max(0.0);
            10 * steps as u64 + 64
        })
    }
}

/// Outcome of one randomized run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunRecord {
    /// `None` only if the round cap was hit.
    pub found_index: Option<usize>,
    pub rounds: u64,
    /// Sum of the `j` values drawn.
    pub total_iterations: u64,
    /// `total_iterations + rounds`: one extra classical check per round.
    pub oracle_calls: u64,
    pub seed: u64,
}

/// Samples measurement outcomes after `j` iterations, caching the
/// cumulative item distribution per `j`.
///
/// Each distribution comes from an exact [`run_search`] followed by
/// [`measure_item_probabilities`](crate::StateVector::measure_item_probabilities);
/// sampling is inverse-CDF.
#[derive(Debug, Clone)]
pub struct ItemSampler {
    n: usize,
    marked: MarkedSet,
    cdfs: Vec<Vec<f64>>,
}

impl ItemSampler {
    pub fn new(n: usize, marked: MarkedSet) -> Result<Self> {
        if marked.n() != n {
            return Err(shape_err!(
                "marked set is over {} qubits, register over {n}",
                marked.n()
            ));
        }
        if marked.is_empty() {
            return Err(domain_err!("the driver needs at least one marked item"));
        }
        Ok(Self {
            n,
            marked,
            cdfs: Vec::new(),
        })
    }

    pub fn marked(&self) -> &MarkedSet {
        &self.marked
    }

    pub fn items(&self) -> usize {
        1 << self.n
    }

    /// Largest `j` the driver can draw, `⌈√N⌉ − 1`.
    pub fn max_iterations(&self) -> u64 {
        ceil(sqrt(self.items() as f64)) as u64 - 1
    }

    /// Computes the distributions for every `j ≤ max_j`.
    pub fn prepare(&mut self, max_j: u64) -> Result<()> {
        while (self.cdfs.len() as u64) <= max_j {
            let j = self.cdfs.len() as u64;
            let probs = run_search(self.n, &self.marked, j)?.measure_item_probabilities();
            let mut acc = 0.0;
            let cdf = probs
                .into_iter()
                .map(|p| {
                    acc += p;
                    acc
                })
                .collect();
            self.cdfs.push(cdf);
        }
        Ok(())
    }

    /// Prepares every distribution the driver can reach.
    pub fn prepare_all(&mut self) -> Result<()> {
        self.prepare(self.max_iterations())
    }

    fn sample_prepared(&self, j: u64, u: f64) -> Option<usize> {
        let cdf = self.cdfs.get(j as usize)?;
        let target = u * cdf.last().copied().unwrap_or(1.0);
        Some(cdf.partition_point(|&c| c <= target).min(cdf.len() - 1))
    }

    /// Samples an item after `j` iterations given a uniform `u ∈ [0, 1)`.
    pub fn sample(&mut self, j: u64, u: f64) -> Result<usize> {
        self.prepare(j)?;
        Ok(self.sample_prepared(j, u).expect("distribution prepared"))
    }

    /// One driver run, computing distributions on demand.
    pub fn run(&mut self, config: &DriverConfig) -> Result<RunRecord> {
        let items = self.items();
        let marked = self.marked.clone();
        drive(items, &marked, config, |j, u| self.sample(j, u))
    }

    /// One driver run against distributions already built by
    /// [`ItemSampler::prepare_all`]. Takes `&self` so runs can share one
    /// sampler across threads.
    pub fn run_prepared(&self, config: &DriverConfig) -> Result<RunRecord> {
        if (self.cdfs.len() as u64) <= self.max_iterations() {
            return Err(shape_err!(
                "sampler prepared up to j = {}, driver may need {}",
                self.cdfs.len() as i64 - 1,
                self.max_iterations()
            ));
        }
        drive(self.items(), &self.marked, config, |j, u| {
            self.sample_prepared(j, u)
                .ok_or_else(|| shape_err!("no distribution for j = {j}"))
        })
    }
}

fn drive(
    items: usize,
    marked: &MarkedSet,
    config: &DriverConfig,
    mut sample: impl FnMut(u64, f64) -> Result<usize>,
) -> Result<RunRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let cap = sqrt(items as f64);
    let max_rounds = config.max_rounds(items);
    let mut m = 1.0_f64;
    let mut record = RunRecord {
        found_index: None,
        rounds: 0,
        total_iterations: 0,
        oracle_calls: 0,
        seed: config.seed,
    };
    while record.rounds < max_rounds {
        record.rounds += 1;
        let j = rng.random_range(0..ceil(m) as u64);
        record.total_iterations += j;
        let u: f64 = rng.random();
        let item = sample(j, u)?;
        if marked.contains(item) {
            record.found_index = Some(item);
            break;
        }
        m = (config.lambda * m).min(cap);
    }
    record.oracle_calls = record.total_iterations + record.rounds;
    Ok(record)
}

/// Runs the driver once for `n` index qubits.
pub fn run_unknown_m(n: usize, marked: &MarkedSet, config: &DriverConfig) -> Result<RunRecord> {
    ItemSampler::new(n, marked.clone())?.run(config)
}

/// `Σ_{q=0}^{m−1} sin²((q+1)θ) + sin²(qθ) = m − cos θ·sin(2mθ)/(2 sin θ)`.
pub fn sine_square_sum(m: u64, theta: f64) -> Result<f64> {
    if m == 0 {
        return Err(domain_err!("m must be positive"));
    }
    if !(theta > 0.0 && theta <= core::f64::consts::FRAC_PI_2) {
        return Err(domain_err!("theta = {theta} outside (0, pi/2]"));
    }
    Ok(m as f64 - cos(theta) * sin(2.0 * m as f64 * theta) / (2.0 * sin(theta)))
}

/// Success probability of one round when `q` is drawn uniformly from
/// `{0, …, m−1}`:
/// `P_m = (1 − cos θ·sin(2mθ)/(2m·sin θ))/(1 + cos θ)`.
pub fn average_success_prob(m: u64, shape: &SearchShape) -> Result<f64> {
    if m == 0 {
        return Err(domain_err!("m must be positive"));
    }
    let (y, theta) = (shape.y(), shape.theta());
    let m = m as f64;
    Ok((1.0 - y * sin(2.0 * m * theta) / (2.0 * m * sin(theta))) / (1.0 + y))
}

/// Expected iteration counts of the driver before and after reaching the
/// critical stage `m ≥ m_q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpectedCost {
    /// `1/sin θ`.
    pub m_q: f64,
    /// `1/(2(λ − 1))`.
    pub pre_coefficient: f64,
    /// `1/(2(1 − 0.7275λ))`.
    pub post_coefficient: f64,
}

impl ExpectedCost {
    pub fn pre_critical(&self) -> f64 {
        self.pre_coefficient * self.m_q
    }

    pub fn post_critical(&self) -> f64 {
        self.post_coefficient * self.m_q
    }

    pub fn total_coefficient(&self) -> f64 {
        self.pre_coefficient + self.post_coefficient
    }

    pub fn total(&self) -> f64 {
        self.total_coefficient() * self.m_q
    }
}

pub fn expected_cost_proposed(shape: &SearchShape, lambda: f64) -> Result<ExpectedCost> {
    if lambda.is_nan() || lambda <= 1.0 {
        return Err(domain_err!("lambda = {lambda} must exceed 1"));
    }
    if CRITICAL_FAILURE_RATE * lambda >= 1.0 {
        return Err(domain_err!(
            "post-critical series diverges: {CRITICAL_FAILURE_RATE}·lambda >= 1"
        ));
    }
    Ok(ExpectedCost {
        m_q: 1.0 / sin(shape.theta()),
        pre_coefficient: 1.0 / (2.0 * (lambda - 1.0)),
        post_coefficient: 1.0 / (2.0 * (1.0 - CRITICAL_FAILURE_RATE * lambda)),
    })
}

/// Expected cost of the Grover-based driver, `8·m_G` with
/// `m_G = 1/sin(2θ_G)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GroverCost {
    Valid {
        m_g: f64,
        total: f64,
    },
    /// `M > 3N/4`: `m_G` no longer bounds the Grover iteration count.
    OutOfRange,
}

impl GroverCost {
    pub fn total(&self) -> Option<f64> {
        match self {
            GroverCost::Valid { total, .. } => Some(*total),
            GroverCost::OutOfRange => None,
        }
    }
}

pub fn expected_cost_grover(shape: &GroverShape) -> GroverCost {
    if shape.ratio() > 0.75 {
        return GroverCost::OutOfRange;
    }
    let m_g = 1.0 / sin(2.0 * shape.theta_g());
    GroverCost::Valid {
        m_g,
        total: GROVER_COST_COEFFICIENT * m_g,
    }
}
