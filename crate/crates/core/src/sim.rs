//! Dense statevector simulation of the search register.
//!
//! Basis state `|i⟩ ⊗ |w⟩` (item `i`, workspace bit `w`) lives at position
//! `2·i + w`, so the workspace-0 subspace is the even positions and the
//! workspace-1 subspace is the odd positions.

use alloc::vec;
use alloc::vec::Vec;

use libm::sqrt;
use num_complex::Complex64;

use crate::error::{domain_err, shape_err, size_err, Result};

/// Largest supported index-register width (2^25 amplitudes).
pub const MAX_QUBITS: usize = 24;

/// Tolerance used by [`StateVector::extract_amplitude_triple`].
pub const STRUCTURE_TOL: f64 = 1e-9;

/// Amplitudes produced by this module are real; this bounds the imaginary
/// parts they may carry.
const REAL_TOL: f64 = 1e-12;

fn check_width(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(size_err!(
            "index register width {n} outside 1..={MAX_QUBITS}"
        ));
    }
    Ok(())
}

/// The items `i` with `f(i) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedSet {
    n: usize,
    members: Vec<usize>,
}

impl MarkedSet {
    /// Builds a marked set over `2^n` items. Members are sorted and
    /// deduplicated.
    pub fn new(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        check_width(n)?;
        let items = 1usize << n;
        let mut members: Vec<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&i| i >= items) {
            return Err(domain_err!("marked item {bad} is not below N = {items}"));
        }
        members.sort_unstable();
        members.dedup();
        Ok(Self { n, members })
    }

    /// Every item is marked.
    pub fn all(n: usize) -> Result<Self> {
        check_width(n)?;
        Ok(Self {
            n,
            members: (0..1usize << n).collect(),
        })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, [])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `N = 2^n`.
    pub fn items(&self) -> usize {
        1 << self.n
    }

    /// `M`, the number of matches.
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// The oracle function `f(i)`.
    pub fn contains(&self, item: usize) -> bool {
        self.members.binary_search(&item).is_ok()
    }
}

/// The three distinct amplitudes of the search state after `q` iterations.
///
/// `a` sits on unmarked items with workspace 0, `b` on marked items with
/// workspace 0 and `c` on marked items with workspace 1. Unmarked items
/// never carry workspace-1 amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeTriple {
    pub q: u64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl AmplitudeTriple {
    /// `(N−M)·a² + M·b² + M·c²`, which is 1 for a normalized state.
    pub fn norm_sqr(&self, items: f64, marked: f64) -> f64 {
        (items - marked) * self.a * self.a + marked * (self.b * self.b + self.c * self.c)
    }

    /// Largest componentwise difference, skipping components whose item
    /// class is empty (`a` when `M = N`, `b` and `c` when `M = 0`).
    pub fn max_deviation(&self, other: &Self, items: usize, marked: usize) -> f64 {
        let mut dev: f64 = 0.0;
        if marked < items {
            dev = dev.max((self.a - other.a).abs());
        }
        if marked > 0 {
            dev = dev.max((self.b - other.b).abs());
            dev = dev.max((self.c - other.c).abs());
        }
        dev
    }
}

/// Complex amplitudes of an `(n+1)`-qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// A fresh register in `|0…0⟩ ⊗ |0⟩`.
    pub fn new(n: usize) -> Result<Self> {
        check_width(n)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 2usize << n];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amps })
    }

    /// Wraps explicit amplitudes. The length must be `2^(n+1)`; the caller is
    /// responsible for normalization.
    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_width(n)?;
        if amps.len() != 2usize << n {
            return Err(shape_err!(
                "expected {} amplitudes for n = {n}, got {}",
                2usize << n,
                amps.len()
            ));
        }
        Ok(Self { n, amps })
    }

    /// Same as [`StateVector::from_amplitudes`] for real amplitudes.
    pub fn from_real(n: usize, amps: &[f64]) -> Result<Self> {
        Self::from_amplitudes(n, amps.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `N = 2^n`.
    pub fn items(&self) -> usize {
        1 << self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Largest `|Im(amplitude)|`.
    pub fn max_imag(&self) -> f64 {
        self.amps.iter().fold(0.0, |m, z| m.max(z.im.abs()))
    }

    fn debug_check_real(&self) {
        debug_assert!(
            self.max_imag() <= REAL_TOL,
            "imaginary part {} exceeds {REAL_TOL}",
            self.max_imag()
        );
    }

    /// Hadamard on every index qubit; the workspace qubit is untouched.
    pub fn apply_walsh_init(&mut self) {
        let h = core::f64::consts::FRAC_1_SQRT_2;
        // Index qubit k occupies bit k+1 of the position.
        for bit in 1..=self.n {
            let stride = 1usize << bit;
            for block in (0..self.amps.len()).step_by(stride << 1) {
                for p in block..block + stride {
                    let x = self.amps[p];
                    let y = self.amps[p + stride];
                    self.amps[p] = (x + y) * h;
                    self.amps[p + stride] = (x - y) * h;
                }
            }
        }
        self.debug_check_real();
    }

    /// The oracle `U_f`: XORs `f(i)` into the workspace, i.e. swaps positions
    /// `2i` and `2i+1` for every marked `i`.
    pub fn apply_oracle(&mut self, marked: &MarkedSet) -> Result<()> {
        if marked.n() != self.n {
            return Err(shape_err!(
                "marked set is over {} qubits, state over {}",
                marked.n(),
                self.n
            ));
        }
        for &i in marked.members() {
            self.amps.swap(2 * i, 2 * i + 1);
        }
        Ok(())
    }

    /// The partial diffusion operator `D_p`: inversion about the mean of the
    /// workspace-0 amplitudes, sign flip of the workspace-1 amplitudes.
    pub fn apply_partial_diffusion(&mut self) {
        let items = self.items() as f64;
        let sum: Complex64 = self.amps.iter().step_by(2).sum();
        let twice_mean = sum * (2.0 / items);
        for pair in self.amps.chunks_exact_mut(2) {
            pair[0] = twice_mean - pair[0];
            pair[1] = -pair[1];
        }
        self.debug_check_real();
    }

    /// Probability of reading each item when the index register is measured.
    pub fn measure_item_probabilities(&self) -> Vec<f64> {
        self.amps
            .chunks_exact(2)
            .map(|pair| pair[0].norm_sqr() + pair[1].norm_sqr())
            .collect()
    }

    /// Total probability of measuring a marked item.
    pub fn success_probability(&self, marked: &MarkedSet) -> Result<f64> {
        if marked.n() != self.n {
            return Err(shape_err!(
                "marked set is over {} qubits, state over {}",
                marked.n(),
                self.n
            ));
        }
        Ok(marked
            .members()
            .iter()
            .map(|&i| self.amps[2 * i].norm_sqr() + self.amps[2 * i + 1].norm_sqr())
            .sum())
    }

    /// Reads `(a, b, c)` off a state produced by [`run_search`], checking
    /// that it has the three-amplitude structure.
    ///
    /// A component whose item class is empty is reported as zero.
    pub fn extract_amplitude_triple(&self, marked: &MarkedSet, q: u64) -> Result<AmplitudeTriple> {
        if marked.n() != self.n {
            return Err(shape_err!(
                "marked set is over {} qubits, state over {}",
                marked.n(),
                self.n
            ));
        }
        let mut a: Option<f64> = None;
        let mut b: Option<f64> = None;
        let mut c: Option<f64> = None;
        let agree = |slot: &mut Option<f64>, value: Complex64, what: &str, item: usize| {
            if value.im.abs() > STRUCTURE_TOL {
                return Err(shape_err!("{what} amplitude of item {item} is not real"));
            }
            match *slot {
                None => *slot = Some(value.re),
                Some(first) if (first - value.re).abs() > STRUCTURE_TOL => {
                    return Err(shape_err!(
                        "{what} amplitude of item {item} is {} but expected {first}",
                        value.re
                    ));
                }
                Some(_) => {}
            }
            Ok(())
        };
        for (item, pair) in self.amps.chunks_exact(2).enumerate() {
            if marked.contains(item) {
                agree(&mut b, pair[0], "marked workspace-0", item)?;
                agree(&mut c, pair[1], "marked workspace-1", item)?;
            } else {
                agree(&mut a, pair[0], "unmarked workspace-0", item)?;
                if pair[1].norm() > STRUCTURE_TOL {
                    return Err(shape_err!(
                        "unmarked item {item} carries workspace-1 amplitude {}",
                        pair[1]
                    ));
                }
            }
        }
        Ok(AmplitudeTriple {
            q,
            a: a.unwrap_or(0.0),
            b: b.unwrap_or(0.0),
            c: c.unwrap_or(0.0),
        })
    }
}

/// Prepares the register, applies the Walsh–Hadamard initialization and then
/// `q` rounds of oracle followed by partial diffusion.
pub fn run_search(n: usize, marked: &MarkedSet, q: u64) -> Result<StateVector> {
    let mut state = StateVector::new(n)?;
    state.apply_walsh_init();
    for _ in 0..q {
        state.apply_oracle(marked)?;
        state.apply_partial_diffusion();
    }
    Ok(state)
}

/// `1/√N` for an `n`-qubit index register.
pub(crate) fn uniform_amplitude(n: usize) -> f64 {
    1.0 / sqrt((1u64 << n) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn re(state: &StateVector) -> Vec<f64> {
        state.amplitudes().iter().map(|z| z.re).collect()
    }

    fn assert_close(got: &[f64], want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert_abs_diff_eq!(*g, *w, epsilon = tol);
        }
    }

    #[test]
    fn fresh_register() {
        assert_close(
            &re(&StateVector::new(1).unwrap()),
            &[1.0, 0.0, 0.0, 0.0],
            0.0,
        );
        let s = StateVector::new(2).unwrap();
        assert_eq!(s.amplitudes().len(), 8);
        assert_close(&re(&s), &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0], 0.0);
        assert!(matches!(StateVector::new(25), Err(crate::Error::Size(_))));
        assert!(matches!(StateVector::new(0), Err(crate::Error::Size(_))));
    }

    #[test]
    fn walsh_init_uniform_on_even_positions() {
        let mut s = StateVector::new(2).unwrap();
        s.apply_walsh_init();
        assert_close(&re(&s), &[0.5, 0.0, 0.5, 0.0, 0.5, 0.0, 0.5, 0.0], 1e-15);

        let mut s = StateVector::new(3).unwrap();
        s.apply_walsh_init();
        for (p, z) in s.amplitudes().iter().enumerate() {
            let want = if p % 2 == 0 {
                0.353_553_390_593_273_8
            } else {
                0.0
            };
            assert_abs_diff_eq!(z.re, want, epsilon = 1e-15);
        }
    }

    #[test]
    fn walsh_init_is_an_involution() {
        let mut s = StateVector::new(4).unwrap();
        s.apply_walsh_init();
        s.apply_walsh_init();
        assert_close(&re(&s), &re(&StateVector::new(4).unwrap()), 1e-15);
    }

    #[test]
    fn oracle_swaps_marked_pairs() {
        let mut s = StateVector::new(2).unwrap();
        s.apply_walsh_init();
        let before = s.clone();
        s.apply_oracle(&MarkedSet::new(2, [2]).unwrap()).unwrap();
        assert_close(&re(&s), &[0.5, 0.0, 0.5, 0.0, 0.0, 0.5, 0.5, 0.0], 1e-15);

        let mut t = before.clone();
        t.apply_oracle(&MarkedSet::empty(2).unwrap()).unwrap();
        assert_eq!(t, before);
    }

    #[test]
    fn oracle_swaps_after_first_iteration() {
        let marked = MarkedSet::new(2, [1]).unwrap();
        let mut s = run_search(2, &marked, 1).unwrap();
        assert_close(
            &re(&s),
            &[0.25, 0.0, 0.75, -0.5, 0.25, 0.0, 0.25, 0.0],
            1e-15,
        );
        s.apply_oracle(&marked).unwrap();
        assert_close(
            &re(&s),
            &[0.25, 0.0, -0.5, 0.75, 0.25, 0.0, 0.25, 0.0],
            1e-15,
        );
    }

    #[test]
    fn oracle_rejects_size_mismatch() {
        let mut s = StateVector::new(3).unwrap();
        let marked = MarkedSet::new(2, [1]).unwrap();
        assert!(matches!(
            s.apply_oracle(&marked),
            Err(crate::Error::Shape(_))
        ));
        assert!(matches!(
            s.success_probability(&marked),
            Err(crate::Error::Shape(_))
        ));
    }

    #[test]
    fn partial_diffusion_first_iteration() {
        let marked = MarkedSet::new(2, [1]).unwrap();
        let mut s = StateVector::new(2).unwrap();
        s.apply_walsh_init();
        s.apply_oracle(&marked).unwrap();
        s.apply_partial_diffusion();
        let t = s.extract_amplitude_triple(&marked, 1).unwrap();
        assert_abs_diff_eq!(t.a, 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(t.b, 0.75, epsilon = 1e-15);
        assert_abs_diff_eq!(t.c, -0.5, epsilon = 1e-15);
        // 3/16 + 9/16 + 4/16
        assert_abs_diff_eq!(t.norm_sqr(4.0, 1.0), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn partial_diffusion_fixed_point_and_odd_flip() {
        let mut s = StateVector::new(3).unwrap();
        s.apply_walsh_init();
        let before = s.clone();
        s.apply_partial_diffusion();
        assert_close(&re(&s), &re(&before), 1e-15);

        let odd: Vec<f64> = (0..16)
            .map(|p| {
                if p % 2 == 1 {
                    0.25 * if p % 3 == 0 { -1.0 } else { 1.0 }
                } else {
                    0.0
                }
            })
            .collect();
        let mut s = StateVector::from_real(3, &odd).unwrap();
        s.apply_partial_diffusion();
        let flipped: Vec<f64> = odd.iter().map(|x| -x).collect();
        assert_close(&re(&s), &flipped, 1e-15);
    }

    #[test]
    fn run_search_probabilities() {
        let marked = MarkedSet::new(2, [1]).unwrap();
        let p1 = run_search(2, &marked, 1)
            .unwrap()
            .success_probability(&marked)
            .unwrap();
        assert_abs_diff_eq!(p1, 13.0 / 16.0, epsilon = 1e-14);
        let p2 = run_search(2, &marked, 2)
            .unwrap()
            .success_probability(&marked)
            .unwrap();
        assert_abs_diff_eq!(p2, 61.0 / 64.0, epsilon = 1e-14);

        for n in 1..=6 {
            let all = MarkedSet::all(n).unwrap();
            let p = run_search(n, &all, 1)
                .unwrap()
                .success_probability(&all)
                .unwrap();
            assert_abs_diff_eq!(p, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn success_probability_at_zero_iterations_is_ratio() {
        let marked = MarkedSet::new(4, [0, 3, 9]).unwrap();
        let p = run_search(4, &marked, 0)
            .unwrap()
            .success_probability(&marked)
            .unwrap();
        assert_abs_diff_eq!(p, 3.0 / 16.0, epsilon = 1e-15);
    }

    #[test]
    fn item_distribution() {
        let s = run_search(3, &MarkedSet::empty(3).unwrap(), 0).unwrap();
        for p in s.measure_item_probabilities() {
            assert_abs_diff_eq!(p, 0.125, epsilon = 1e-15);
        }

        let marked = MarkedSet::new(2, [1]).unwrap();
        let probs = run_search(2, &marked, 1)
            .unwrap()
            .measure_item_probabilities();
        assert_close(
            &probs,
            &[1.0 / 16.0, 13.0 / 16.0, 1.0 / 16.0, 1.0 / 16.0],
            1e-15,
        );
        assert_abs_diff_eq!(probs.iter().sum::<f64>(), 1.0, epsilon = 1e-10);

        let mut basis = vec![0.0; 8];
        basis[5] = 1.0;
        let probs = StateVector::from_real(2, &basis)
            .unwrap()
            .measure_item_probabilities();
        assert_close(&probs, &[0.0, 0.0, 1.0, 0.0], 0.0);
    }

    #[test]
    fn extract_triples() {
        let marked = MarkedSet::new(2, [1]).unwrap();
        let t = run_search(2, &marked, 0)
            .unwrap()
            .extract_amplitude_triple(&marked, 0)
            .unwrap();
        assert_abs_diff_eq!(t.a, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(t.b, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(t.c, 0.0, epsilon = 1e-15);

        // y = 3/4, s = 1/√8: a₁ = s(2y−1), b₁ = 2sy, c₁ = −s
        let marked = MarkedSet::new(3, [0, 5]).unwrap();
        let t = run_search(3, &marked, 1)
            .unwrap()
            .extract_amplitude_triple(&marked, 1)
            .unwrap();
        assert_abs_diff_eq!(t.a, 0.176_776_695_296_636_9, epsilon = 1e-12);
        assert_abs_diff_eq!(t.b, 0.530_330_085_889_910_6, epsilon = 1e-12);
        assert_abs_diff_eq!(t.c, -0.353_553_390_593_273_8, epsilon = 1e-12);
        assert_eq!(t.q, 1);
    }

    #[test]
    fn extract_rejects_unstructured_state() {
        let marked = MarkedSet::new(2, [1]).unwrap();
        let s = StateVector::from_real(2, &[0.5, 0.0, 0.5, 0.0, 0.7, 0.0, 0.1, 0.0]).unwrap();
        assert!(matches!(
            s.extract_amplitude_triple(&marked, 0),
            Err(crate::Error::Shape(_))
        ));
        let s = StateVector::from_real(2, &[0.5, 0.1, 0.5, 0.0, 0.5, 0.0, 0.5, 0.0]).unwrap();
        assert!(matches!(
            s.extract_amplitude_triple(&marked, 0),
            Err(crate::Error::Shape(_))
        ));
    }

    #[test]
    fn empty_marked_set_is_legal() {
        let marked = MarkedSet::empty(3).unwrap();
        let s = run_search(3, &marked, 4).unwrap();
        assert_abs_diff_eq!(s.norm_sqr(), 1.0, epsilon = 1e-12);
        assert_eq!(s.success_probability(&marked).unwrap(), 0.0);
    }

    #[test]
    fn marked_set_validation() {
        let m = MarkedSet::new(3, [5, 1, 5, 0]).unwrap();
        assert_eq!(m.members(), &[0, 1, 5]);
        assert!(m.contains(5) && !m.contains(4));
        assert!(matches!(
            MarkedSet::new(3, [8]),
            Err(crate::Error::Domain(_))
        ));
        assert_eq!(MarkedSet::all(3).unwrap().len(), 8);
    }
}
