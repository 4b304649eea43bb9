//! Grover's algorithm as a reference baseline.

use alloc::vec;

use core::f64::consts::{FRAC_PI_4, PI};

use libm::{asin, floor, sin, sqrt};

use crate::error::{domain_err, Result};
use crate::sim::{uniform_amplitude, MarkedSet, MAX_QUBITS};

/// `M/N` together with `θ_G = arcsin(√(M/N))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroverShape {
    counts: Option<(u64, u64)>,
    ratio: f64,
    theta_g: f64,
}

impl GroverShape {
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

    pub fn from_ratio(ratio: f64) -> Result<Self> {
        if !(ratio > 0.0 && ratio <= 1.0) {
            return Err(domain_err!("M/N = {ratio} outside (0, 1]"));
        }
        Ok(Self {
            counts: None,
            ratio,
            theta_g: asin(sqrt(ratio).min(1.0)),
        })
    }

    pub fn items(&self) -> Option<u64> {
        self.counts.map(|(n, _)| n)
    }

    pub fn marked(&self) -> Option<u64> {
        self.counts.map(|(_, m)| m)
    }

    pub fn ratio(&self) -> f64 {
        self.ratio
    }

    pub fn theta_g(&self) -> f64 {
        self.theta_g
    }
}

/// `q_G = ⌊π/4θ_G⌋`.
pub fn grover_iterations(shape: &GroverShape) -> u64 {
    let q = floor(FRAC_PI_4 / shape.theta_g) as u64;
    debug_assert!(q as f64 <= grover_iteration_bound(shape) + 1e-9);
    q
}

/// `(π/4)·√(N/M)`.
pub fn grover_iteration_bound(shape: &GroverShape) -> f64 {
    PI / 4.0 * sqrt(1.0 / shape.ratio)
}

/// `sin²((2q_G + 1)·θ_G)`.
pub fn grover_success(q_g: u64, shape: &GroverShape) -> f64 {
    let s = sin((2 * q_g + 1) as f64 * shape.theta_g);
    s * s
}

/// Dense simulation of `q_g` Grover iterations from the uniform state:
/// negate marked amplitudes, then invert every amplitude about the mean.
/// Returns the total probability on marked items.
pub fn grover_simulate(n: usize, marked: &MarkedSet, q_g: u64) -> Result<f64> {
    if n == 0 || n > MAX_QUBITS || marked.n() != n {
        return Err(domain_err!(
            "register of {n} qubits does not match marked set over {} qubits",
            marked.n()
        ));
    }
    if marked.is_empty() {
        return Err(domain_err!("Grover search needs at least one marked item"));
    }
    let items = 1usize << n;
    let mut amps = vec![uniform_amplitude(n); items];
    for _ in 0..q_g {
        for &i in marked.members() {
            amps[i] = -amps[i];
        }
        let twice_mean = 2.0 * amps.iter().sum::<f64>() / items as f64;
        for x in amps.iter_mut() {
            *x = twice_mean - *x;
        }
    }
    Ok(marked.members().iter().map(|&i| amps[i] * amps[i]).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn iteration_counts() {
        let quarter = GroverShape::from_ratio(0.25).unwrap();
        assert_abs_diff_eq!(quarter.theta_g(), PI / 6.0, epsilon = 1e-15);
        assert_eq!(grover_iterations(&quarter), 1);
        for r in [0.5001, 0.6, 0.75, 0.99, 1.0] {
            assert_eq!(grover_iterations(&GroverShape::from_ratio(r).unwrap()), 0);
        }
        let big = GroverShape::new(1024, 1).unwrap();
        assert_abs_diff_eq!(big.theta_g(), 0.031_256, epsilon = 1e-6);
        assert_eq!(grover_iterations(&big), 25);
    }

    #[test]
    fn success_values() {
        let quarter = GroverShape::from_ratio(0.25).unwrap();
        assert_abs_diff_eq!(grover_success(1, &quarter), 1.0, epsilon = 1e-15);
        let half = GroverShape::from_ratio(0.5).unwrap();
        assert_abs_diff_eq!(grover_success(1, &half), 0.5, epsilon = 1e-15);
        let big = GroverShape::new(1024, 1).unwrap();
        assert_abs_diff_eq!(grover_success(25, &big), 0.99945, epsilon = 2e-5);
        for r in [0.001, 0.3, 0.9] {
            let shape = GroverShape::from_ratio(r).unwrap();
            assert_abs_diff_eq!(grover_success(0, &shape), r, epsilon = 1e-15);
        }
    }

    #[test]
    fn simulation_examples() {
        let marked = MarkedSet::new(2, [3]).unwrap();
        assert_abs_diff_eq!(
            grover_simulate(2, &marked, 1).unwrap(),
            1.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            grover_simulate(2, &marked, 0).unwrap(),
            0.25,
            epsilon = 1e-15
        );
        let marked = MarkedSet::new(10, [7]).unwrap();
        let p = grover_simulate(10, &marked, 25).unwrap();
        assert_abs_diff_eq!(p, 0.99945, epsilon = 2e-5);
        assert!(grover_simulate(3, &MarkedSet::empty(3).unwrap(), 1).is_err());
        assert!(grover_simulate(3, &marked, 1).is_err());
    }

    #[test]
    fn simulation_matches_formula() {
        for n in 2..=10usize {
            let items = 1u64 << n;
            for m in [1u64, 2, 3, items / 4, items / 2, items * 3 / 4, items] {
                let marked =
                    MarkedSet::new(n, (0..m as usize).map(|k| (k * 7 + 1) % items as usize))
                        .unwrap();
                let shape = GroverShape::new(items, marked.len() as u64).unwrap();
                let q_g = grover_iterations(&shape);
                for q in 0..=2 * q_g + 2 {
                    let sim = grover_simulate(n, &marked, q).unwrap();
                    assert_abs_diff_eq!(sim, grover_success(q, &shape), epsilon = 1e-9);
                }
            }
        }
    }

    #[test]
    fn optimal_success_at_least_one_minus_ratio() {
        for k in 1..=10_000 {
            let shape = GroverShape::from_ratio(k as f64 * 1e-4).unwrap();
            let q = grover_iterations(&shape);
            assert!(grover_success(q, &shape) >= 1.0 - shape.ratio() - 1e-12);
        }
    }
}
