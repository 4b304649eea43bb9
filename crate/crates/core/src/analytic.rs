//! Closed-form analysis of the partial-diffusion search.
//!
//! With `y = 1 − M/N = cos θ` and `s = 1/√N`, the amplitudes after `q`
//! iterations are
//!
//! ```text
//! a_q = s·(U_q(y) − U_{q−1}(y)),   b_q = s·U_q(y),   c_q = −s·U_{q−1}(y)
//! ```
//!
//! where `U_q` is the Chebyshev polynomial of the second kind. Everything
//! here is a pure function of a [`SearchShape`].

use core::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use libm::{acos, cos, floor, sin, sqrt};

use crate::error::{domain_err, Result};
use crate::sim::AmplitudeTriple;

/// Coarsest grid step accepted by [`min_success_over_ratios`].
pub const MAX_MIN_SEARCH_STEP: f64 = 1e-4;

/// The scalars derived from a list of `N` items with `M` matches.
///
/// A shape built with [`SearchShape::new`] knows `N` and `M`; a shape built
/// with [`SearchShape::from_ratio`] only knows `M/N`, which is enough for
/// every probability and iteration count but not for amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchShape {
    counts: Option<(u64, u64)>,
    ratio: f64,
    y: f64,
    theta: f64,
}

impl SearchShape {
    /// `N` must be a power of two and `1 ≤ M ≤ N`.
    pub fn new(items: u64, marked: u64) -> Result<Self> {
        if !items.is_power_of_two() {
            return Err(domain_err!("N = {items} is not a power of two"));
        }
        if marked == 0 || marked > items {
            return Err(domain_err!("M = {marked} outside 1..={items}"));
        }
        let mut shape = Self::from_ratio(marked as f64 / items as f64)?;
        shape.counts = Some((items, marked));
        Ok(shape)
    }

    /// Shape of an `n`-qubit index register with `marked` matches.
    pub fn from_qubits(n: usize, marked: usize) -> Result<Self> {
        if n >= 64 {
            return Err(domain_err!("n = {n} is too large"));
        }
        Self::new(1u64 << n, marked as u64)
    }

    /// Continuous-ratio shape, `0 < M/N ≤ 1`.
    pub fn from_ratio(ratio: f64) -> Result<Self> {
        if !(ratio > 0.0 && ratio <= 1.0) {
            return Err(domain_err!("M/N = {ratio} outside (0, 1]"));
        }
        let y = 1.0 - ratio;
        Ok(Self {
            counts: None,
            ratio,
            y,
            theta: acos(y.clamp(-1.0, 1.0)),
        })
    }

    pub fn items(&self) -> Option<u64> {
        self.counts.map(|(n, _)| n)
    }

    pub fn marked(&self) -> Option<u64> {
        self.counts.map(|(_, m)| m)
    }

    /// `M/N`.
    pub fn ratio(&self) -> f64 {
        self.ratio
    }

    /// `1 − M/N`.
    pub fn y(&self) -> f64 {
        self.y
    }

    /// `arccos(y)`, in `(0, π/2]`.
    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `1/√N`, when `N` is known.
    pub fn s(&self) -> Option<f64> {
        self.items().map(|n| 1.0 / sqrt(n as f64))
    }

    /// `√(N/M)`.
    pub fn sqrt_inverse_ratio(&self) -> f64 {
        sqrt(1.0 / self.ratio)
    }
}

/// Iteration count for a known number of matches and what it achieves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationPlan {
    /// `⌊π/2θ⌋`.
    pub q: u64,
    /// `π/2θ` before flooring.
    pub q_exact: f64,
    pub p_success: f64,
    pub p_lower_bound: f64,
}

/// `U_q` evaluated through `θ` directly.
fn chebyshev_u_at(q: i64, theta: f64) -> f64 {
    if q == -1 {
        return 0.0;
    }
    let st = sin(theta);
    if st == 0.0 {
        // limit y → 1
        return (q + 1) as f64;
    }
    sin((q + 1) as f64 * theta) / st
}

/// Chebyshev polynomial of the second kind, `U_q(y) = sin((q+1)θ)/sin θ`
/// with `y = cos θ` and `U_{−1} = 0`.
pub fn chebyshev_u(q: i64, y: f64) -> Result<f64> {
    if q < -1 {
        return Err(domain_err!("Chebyshev degree {q} below -1"));
    }
    if !(0.0..=1.0).contains(&y) {
        return Err(domain_err!("y = {y} outside [0, 1]"));
    }
    Ok(chebyshev_u_at(q, acos(y)))
}

fn require_s(shape: &SearchShape) -> Result<f64> {
    shape
        .s()
        .ok_or_else(|| domain_err!("amplitudes need N; shape was built from a ratio only"))
}

/// The closed-form amplitudes after `q` iterations.
pub fn closed_amplitudes(q: u64, shape: &SearchShape) -> Result<AmplitudeTriple> {
    let s = require_s(shape)?;
    let u_q = chebyshev_u_at(q as i64, shape.theta);
    let u_prev = chebyshev_u_at(q as i64 - 1, shape.theta);
    Ok(AmplitudeTriple {
        q,
        a: s * (u_q - u_prev),
        b: s * u_q,
        c: -s * u_prev,
    })
}

/// The amplitudes after `q` iterations by stepping the recurrences
///
/// ```text
/// ⟨α_q⟩ = y·a_{q−1} + (1−y)·c_{q−1}
/// a_q = 2⟨α_q⟩ − a_{q−1},   b_q = 2⟨α_q⟩ − c_{q−1},   c_q = −b_{q−1}
/// ```
///
/// from `a₀ = b₀ = s`, `c₀ = 0`.
pub fn recurrence_amplitudes(q: u64, shape: &SearchShape) -> Result<AmplitudeTriple> {
    let s = require_s(shape)?;
    let y = shape.y;
    let (mut a, mut b, mut c) = (s, s, 0.0);
    for _ in 0..q {
        let mean = y * a + (1.0 - y) * c;
        let next = (2.0 * mean - a, 2.0 * mean - c, -b);
        (a, b, c) = next;
    }
    Ok(AmplitudeTriple { q, a, b, c })
}

/// `P_s = (1 − cos θ)·(U_q² + U_{q−1}²)`.
pub fn success_prob(q: u64, shape: &SearchShape) -> f64 {
    let u_q = chebyshev_u_at(q as i64, shape.theta);
    let u_prev = chebyshev_u_at(q as i64 - 1, shape.theta);
    shape.ratio * (u_q * u_q + u_prev * u_prev)
}

/// `P_ns = cos θ·(U_q − U_{q−1})²`.
pub fn failure_prob(q: u64, shape: &SearchShape) -> f64 {
    let d = chebyshev_u_at(q as i64, shape.theta) - chebyshev_u_at(q as i64 - 1, shape.theta);
    shape.y * d * d
}

/// Success probability after one iteration, `5r − 8r² + 4r³` with `r = M/N`.
pub fn first_iteration_success(ratio: f64) -> Result<f64> {
    if !(ratio > 0.0 && ratio <= 1.0) {
        return Err(domain_err!("M/N = {ratio} outside (0, 1]"));
    }
    Ok(ratio * (5.0 + ratio * (-8.0 + 4.0 * ratio)))
}

/// `(1 + cos²θ)/(1 + cos θ)`, a lower bound on the success probability at
/// the required iteration count.
pub fn success_lower_bound(shape: &SearchShape) -> f64 {
    let y = shape.y;
    (1.0 + y * y) / (1.0 + y)
}

/// `q = ⌊π/2θ⌋` together with its predicted success probability.
pub fn required_iterations(shape: &SearchShape) -> IterationPlan {
    let q_exact = FRAC_PI_2 / shape.theta;
    let q = floor(q_exact) as u64;
    debug_assert!(q as f64 <= PI / (2.0 * SQRT_2) * shape.sqrt_inverse_ratio() + 1e-9);
    IterationPlan {
        q,
        q_exact,
        p_success: success_prob(q, shape),
        p_lower_bound: success_lower_bound(shape),
    }
}

/// `(π/(2√2))·√(N/M)`, the upper bound on the required iteration count.
pub fn iteration_bound(shape: &SearchShape) -> f64 {
    PI / (2.0 * SQRT_2) * shape.sqrt_inverse_ratio()
}

/// Success probability for a real-valued iteration count, through the
/// cosine form `(1 − cos θ·cos((2q+1)θ))/(1 + cos θ)`.
pub fn success_prob_continuous(q: f64, shape: &SearchShape) -> f64 {
    let y = shape.y;
    (1.0 - y * cos((2.0 * q + 1.0) * shape.theta)) / (1.0 + y)
}

/// An evenly spaced grid of `M/N` ratios.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioGrid {
    start: f64,
    step: f64,
    count: usize,
    stop: f64,
}

impl RatioGrid {
    /// Points `start, start + step, …` up to and including `stop`. Requires
    /// `0 < start ≤ stop ≤ 1` and `step > 0`.
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self> {
        if !(start > 0.0 && start <= stop && stop <= 1.0) {
            return Err(domain_err!(
                "ratio grid needs 0 < start <= stop <= 1, got [{start}, {stop}]"
            ));
        }
        if !(step > 0.0 && step.is_finite()) {
            return Err(domain_err!("ratio grid step {step} is not positive"));
        }
        let span = (stop - start) / step;
        let count = floor(span + 1e-9) as usize + 1;
        Ok(Self {
            start,
            step,
            count,
            stop,
        })
    }

    /// Multiples of `step` in the half-open interval `(low, high]`.
    pub fn open_closed(low: f64, high: f64, step: f64) -> Result<Self> {
        if !(step > 0.0 && step.is_finite()) {
            return Err(domain_err!("ratio grid step {step} is not positive"));
        }
        let first = floor(low / step + 1e-9) + 1.0;
        Self::new(first * step, high, step)
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    /// The `k`-th point. The last point snaps to `stop` when rounding leaves
    /// it within a millionth of a step.
    pub fn point(&self, k: usize) -> f64 {
        let x = self.start + k as f64 * self.step;
        if (x - self.stop).abs() <= 1e-6 * self.step || x > self.stop {
            self.stop
        } else {
            x
        }
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(move |k| self.point(k))
    }
}

/// Minimum of the achieved success probability `P_s(⌊π/2θ⌋)` over a ratio
/// grid, returned as `(ratio, probability)`.
pub fn min_success_over_ratios(grid: &RatioGrid) -> Result<(f64, f64)> {
    if grid.step() > MAX_MIN_SEARCH_STEP {
        return Err(domain_err!(
            "grid step {} is coarser than {MAX_MIN_SEARCH_STEP}",
            grid.step()
        ));
    }
    let mut best = (f64::NAN, f64::INFINITY);
    for ratio in grid.points() {
        let shape = SearchShape::from_ratio(ratio)?;
        let p = required_iterations(&shape).p_success;
        if p < best.1 {
            best = (ratio, p);
        }
    }
    Ok(best)
}
