//! Property tests for the simulator and closed forms.

use approx::assert_abs_diff_eq;
use proptest::prelude::*;

use pdsearch_core::analytic::{
    closed_amplitudes, failure_prob, required_iterations, success_lower_bound, success_prob,
};
use pdsearch_core::sim::run_search;
use pdsearch_core::unknown_m::{average_success_prob, sine_square_sum};
use pdsearch_core::{MarkedSet, SearchShape, StateVector};

/// A normalized random real state over `n` index qubits.
fn real_state(max_n: usize) -> impl Strategy<Value = StateVector> {
    (2..=max_n).prop_flat_map(|n| {
        prop::collection::vec(-1.0f64..1.0, 2usize << n).prop_map(move |mut v| {
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-6);
            v.iter_mut().for_each(|x| *x /= norm);
            StateVector::from_real(n, &v).unwrap()
        })
    })
}

fn marked_for(n: usize) -> impl Strategy<Value = MarkedSet> {
    prop::collection::vec(0usize..1 << n, 0..(1usize << n).min(12))
        .prop_map(move |m| MarkedSet::new(n, m).unwrap())
}

fn max_diff(a: &StateVector, b: &StateVector) -> f64 {
    a.amplitudes()
        .iter()
        .zip(b.amplitudes())
        .fold(0.0, |m, (x, y)| m.max((x - y).norm()))
}

/// `sin(k·θ)` with `k·θ` carried to double-double precision.
fn sin_multiple(k: u64, theta: f64) -> f64 {
    let k = k as f64;
    let hi = k * theta;
    let lo = k.mul_add(theta, -hi);
    hi.sin() + hi.cos() * lo
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn operators_preserve_norm((state, marked) in real_state(10).prop_flat_map(|s| {
        let n = s.n();
        (Just(s), marked_for(n))
    })) {
        let before = state.norm_sqr();
        let mut s = state.clone();
        s.apply_oracle(&marked).unwrap();
        prop_assert!((s.norm_sqr() - before).abs() <= 1e-12);
        s.apply_partial_diffusion();
        prop_assert!((s.norm_sqr() - before).abs() <= 1e-12);
    }

    #[test]
    fn operators_are_involutions((state, marked) in real_state(10).prop_flat_map(|s| {
        let n = s.n();
        (Just(s), marked_for(n))
    })) {
        let mut s = state.clone();
        s.apply_oracle(&marked).unwrap();
        s.apply_oracle(&marked).unwrap();
        prop_assert!(max_diff(&s, &state) <= 1e-12);

        let mut s = state.clone();
        s.apply_partial_diffusion();
        s.apply_partial_diffusion();
        prop_assert!(max_diff(&s, &state) <= 1e-12);
    }

    #[test]
    fn oracle_touches_only_marked_pairs((state, marked) in real_state(8).prop_flat_map(|s| {
        let n = s.n();
        (Just(s), marked_for(n))
    })) {
        let mut s = state.clone();
        s.apply_oracle(&marked).unwrap();
        for (p, (x, y)) in s.amplitudes().iter().zip(state.amplitudes()).enumerate() {
            if !marked.contains(p / 2) {
                prop_assert_eq!(x, y);
            }
        }
    }

    #[test]
    fn simulator_matches_closed_form(n in 2usize..=8, m_frac in 0.0f64..1.0, extra in 0u64..3) {
        let items = 1usize << n;
        let m = 1 + (m_frac * (items - 1) as f64) as usize;
        let marked = MarkedSet::new(n, (0..m).map(|k| (k * 5 + 3) % items)).unwrap();
        let shape = SearchShape::new(items as u64, m as u64).unwrap();
        let q_max = 2 * required_iterations(&shape).q + extra;
        let mut state = run_search(n, &marked, 0).unwrap();
        for q in 0..=q_max {
            if q > 0 {
                state.apply_oracle(&marked).unwrap();
                state.apply_partial_diffusion();
            }
            let t = state.extract_amplitude_triple(&marked, q).unwrap();
            let c = closed_amplitudes(q, &shape).unwrap();
            prop_assert!(t.max_deviation(&c, items, m) <= 1e-9);
            prop_assert!((t.norm_sqr(items as f64, m as f64) - 1.0).abs() <= 1e-10);
            let probs = state.measure_item_probabilities();
            prop_assert!((probs.iter().sum::<f64>() - 1.0).abs() <= 1e-10);
            let p_s = state.success_probability(&marked).unwrap();
            let p_ns: f64 = probs.iter().enumerate()
                .filter(|(i, _)| !marked.contains(*i))
                .map(|(_, p)| p)
                .sum();
            prop_assert!((p_s + p_ns - 1.0).abs() <= 1e-12);
            prop_assert!((p_s - success_prob(q, &shape)).abs() <= 1e-9);
        }
    }

    #[test]
    fn probabilities_normalize(ratio in 1e-6f64..=1.0, q in 0u64..500) {
        let shape = SearchShape::from_ratio(ratio).unwrap();
        prop_assert!((success_prob(q, &shape) + failure_prob(q, &shape) - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn lower_bound_dominated(ratio in 1e-6f64..=1.0) {
        let shape = SearchShape::from_ratio(ratio).unwrap();
        let plan = required_iterations(&shape);
        prop_assert!(success_lower_bound(&shape) <= plan.p_success + 1e-12);
        prop_assert!(plan.p_success <= 1.0 + 1e-12);
    }

    #[test]
    fn sine_square_sum_matches_explicit_sum(m in 1u64..=500, theta in 1e-3f64..=core::f64::consts::FRAC_PI_2) {
        let explicit: f64 = (0..m).map(|q| {
            let a = sin_multiple(q + 1, theta);
            let b = sin_multiple(q, theta);
            a * a + b * b
        }).sum();
        prop_assert!((sine_square_sum(m, theta).unwrap() - explicit).abs() <= 1e-12);
    }

    #[test]
    fn average_success_is_mean_of_success(n in 2u32..=16, m_frac in 0.0f64..1.0, rounds in 1u64..200) {
        let items = 1u64 << n;
        let m = 1 + (m_frac * (items - 1) as f64) as u64;
        let shape = SearchShape::new(items, m).unwrap();
        let mean = (0..rounds).map(|q| success_prob(q, &shape)).sum::<f64>() / rounds as f64;
        prop_assert!((average_success_prob(rounds, &shape).unwrap() - mean).abs() <= 1e-12);
    }
}

#[test]
fn uniform_state_distribution() {
    let s = run_search(5, &MarkedSet::empty(5).unwrap(), 0).unwrap();
    for p in s.measure_item_probabilities() {
        assert_abs_diff_eq!(p, 1.0 / 32.0, epsilon = 1e-15);
    }
}
