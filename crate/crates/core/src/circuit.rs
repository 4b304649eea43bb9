//! Gate-level construction of the partial diffusion operator.
//!
//! For `n` index qubits the circuit acts on `n + 1` qubits: qubits
//! `0..n` are the index register and qubit `n` is the workspace. In the
//! matrix and statevector layout the workspace is the least significant bit
//! and index qubit `k` is bit `k + 1`, the same layout as [`crate::sim`].
//!
//! ```text
//! H^⊗n · X^⊗n · C^n(U) · V · X^⊗n · H^⊗n,   U = diag(−1, 1),  V = diag(−1, −1)
//! ```
//!
//! `V` is unconditional and supplies the global `−1`; the `n`-controlled `U`
//! restores `+1` on `|0…0⟩|0⟩`. Together they give `2|0⟩⟨0| − I`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{shape_err, size_err, Result};
use crate::sim::StateVector;

/// Widest circuit [`gatelist_to_matrix`] will expand.
pub const MAX_MATRIX_WIDTH: usize = 11;
/// Largest `n` accepted by [`build_partial_diffusion_circuit`].
pub const MAX_BUILD_QUBITS: usize = 10;
/// Largest `n` accepted by [`verify_partial_diffusion`].
pub const MAX_VERIFY_QUBITS: usize = 8;

const UNITARY_TOL: f64 = 1e-12;

pub type Payload = [[Complex64; 2]; 2];

const fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

pub const HADAMARD: Payload = [
    [
        real(core::f64::consts::FRAC_1_SQRT_2),
        real(core::f64::consts::FRAC_1_SQRT_2),
    ],
    [
        real(core::f64::consts::FRAC_1_SQRT_2),
        real(-core::f64::consts::FRAC_1_SQRT_2),
    ],
];
pub const PAULI_X: Payload = [[real(0.0), real(1.0)], [real(1.0), real(0.0)]];
/// `U = diag(−1, 1)`.
pub const PHASE_U: Payload = [[real(-1.0), real(0.0)], [real(0.0), real(1.0)]];
/// `V = diag(−1, −1)`.
pub const PHASE_V: Payload = [[real(-1.0), real(0.0)], [real(0.0), real(-1.0)]];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateKind {
    Hadamard,
    PauliX,
    /// A single-qubit payload conditioned on every control being `|1⟩`; no
    /// controls means unconditional.
    Controlled,
}

impl GateKind {
    pub fn name(self) -> &'static str {
        match self {
            GateKind::Hadamard => "H",
            GateKind::PauliX => "X",
            GateKind::Controlled => "CU",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub target: usize,
    pub controls: Vec<usize>,
    pub matrix: Payload,
}

impl Gate {
    pub fn h(target: usize) -> Self {
        Self {
            kind: GateKind::Hadamard,
            target,
            controls: Vec::new(),
            matrix: HADAMARD,
        }
    }

    pub fn x(target: usize) -> Self {
        Self {
            kind: GateKind::PauliX,
            target,
            controls: Vec::new(),
            matrix: PAULI_X,
        }
    }

    pub fn controlled(target: usize, controls: Vec<usize>, matrix: Payload) -> Self {
        Self {
            kind: GateKind::Controlled,
            target,
            controls,
            matrix,
        }
    }
}

fn is_unitary(m: &Payload) -> bool {
    for i in 0..2 {
        for j in 0..2 {
            let dot = m[0][i].conj() * m[0][j] + m[1][i].conj() * m[1][j];
            let want = if i == j { 1.0 } else { 0.0 };
            if (dot - real(want)).norm() > UNITARY_TOL {
                return false;
            }
        }
    }
    true
}

/// An ordered list of gates over `width` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct GateList {
    width: usize,
    gates: Vec<Gate>,
}

impl GateList {
    pub fn new(width: usize) -> Result<Self> {
        if width == 0 || width > 64 {
            return Err(size_err!("circuit width {width} outside 1..=64"));
        }
        Ok(Self {
            width,
            gates: Vec::new(),
        })
    }

    /// Appends a gate after checking qubit indices and payload unitarity.
    pub fn push(&mut self, gate: Gate) -> Result<()> {
        if gate.target >= self.width {
            return Err(shape_err!(
                "target {} outside width {}",
                gate.target,
                self.width
            ));
        }
        for (k, &c) in gate.controls.iter().enumerate() {
            if c >= self.width || c == gate.target || gate.controls[..k].contains(&c) {
                return Err(shape_err!("invalid control {c} for target {}", gate.target));
            }
        }
        if !is_unitary(&gate.matrix) {
            return Err(shape_err!(
                "payload on qubit {} is not unitary",
                gate.target
            ));
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Bit position of `qubit` in a basis index.
    pub fn bit_of(&self, qubit: usize) -> usize {
        if qubit + 1 == self.width {
            0
        } else {
            qubit + 1
        }
    }

    /// Applies every gate in order to `amps` (length `2^width`).
    pub fn apply(&self, amps: &mut [Complex64]) -> Result<()> {
        if amps.len() != 1usize << self.width {
            return Err(shape_err!(
                "vector of length {} for a {}-qubit circuit",
                amps.len(),
                self.width
            ));
        }
        for gate in &self.gates {
            let target = 1usize << self.bit_of(gate.target);
            let control_mask = gate
                .controls
                .iter()
                .fold(0usize, |mask, &c| mask | 1 << self.bit_of(c));
            let m = &gate.matrix;
            for p in 0..amps.len() {
                if p & target != 0 || p & control_mask != control_mask {
                    continue;
                }
                let (x, y) = (amps[p], amps[p | target]);
                amps[p] = m[0][0] * x + m[0][1] * y;
                amps[p | target] = m[1][0] * x + m[1][1] * y;
            }
        }
        Ok(())
    }
}

/// Dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![real(0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = real(1.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] = value;
    }

    pub fn column(&self, col: usize) -> Vec<Complex64> {
        (0..self.dim).map(|r| self.get(r, col)).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.dim != other.dim {
            return Err(shape_err!(
                "cannot multiply {0}x{0} by {1}x{1}",
                self.dim,
                other.dim
            ));
        }
        let d = self.dim;
        let mut out = Matrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == real(0.0) {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * other.data[k * d + j];
                }
            }
        }
        Ok(out)
    }

    /// Largest entrywise `|self − other|`, or infinity on a size mismatch.
    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }

    pub fn max_imag(&self) -> f64 {
        self.data.iter().fold(0.0, |m, z| m.max(z.im.abs()))
    }
}

/// The gate decomposition of `D_p` over `n + 1` qubits.
pub fn build_partial_diffusion_circuit(n: usize) -> Result<GateList> {
    if n == 0 || n > MAX_BUILD_QUBITS {
        return Err(size_err!(
            "circuit needs 1 <= n <= {MAX_BUILD_QUBITS}, got {n}"
        ));
    }
    let workspace = n;
    let mut list = GateList::new(n + 1)?;
    for q in 0..n {
        list.push(Gate::h(q))?;
    }
    for q in 0..n {
        list.push(Gate::x(q))?;
    }
    list.push(Gate::controlled(workspace, (0..n).collect(), PHASE_U))?;
    list.push(Gate::controlled(workspace, Vec::new(), PHASE_V))?;
    for q in 0..n {
        list.push(Gate::x(q))?;
    }
    for q in 0..n {
        list.push(Gate::h(q))?;
    }
    Ok(list)
}

/// The unitary implemented by `gates`, the product of the gate embeddings in
/// list order (first gate applied first).
pub fn gatelist_to_matrix(gates: &GateList) -> Result<Matrix> {
    if gates.width() > MAX_MATRIX_WIDTH {
        return Err(size_err!(
            "width {} exceeds the matrix limit {MAX_MATRIX_WIDTH}",
            gates.width()
        ));
    }
    let dim = 1usize << gates.width();
    let mut out = Matrix::zeros(dim);
    let mut column = vec![real(0.0); dim];
    for c in 0..dim {
        column.fill(real(0.0));
        column[c] = real(1.0);
        gates.apply(&mut column)?;
        for (r, z) in column.iter().enumerate() {
            out.set(r, c, *z);
        }
    }
    Ok(out)
}

/// `(H^⊗n ⊗ I)(2|0⟩⟨0| − I)(H^⊗n ⊗ I)` written out entrywise: row `r`,
/// column `c` is `2/N` when both are workspace-0 positions, minus `δ_rc`.
pub fn partial_diffusion_matrix(n: usize) -> Result<Matrix> {
    if n == 0 || n >= MAX_MATRIX_WIDTH {
        return Err(size_err!(
            "matrix needs 1 <= n < {MAX_MATRIX_WIDTH}, got {n}"
        ));
    }
    let dim = 2usize << n;
    let weight = 2.0 / (1u64 << n) as f64;
    let mut m = Matrix::zeros(dim);
    for r in 0..dim {
        for c in 0..dim {
            let mut v = if r % 2 == 0 && c % 2 == 0 {
                weight
            } else {
                0.0
            };
            if r == c {
                v -= 1.0;
            }
            m.set(r, c, real(v));
        }
    }
    Ok(m)
}

/// Largest deviation of the gate decomposition from both the operator
/// matrix and the simulator's partial diffusion on every basis vector.
pub fn verify_partial_diffusion(n: usize) -> Result<f64> {
    if n == 0 || n > MAX_VERIFY_QUBITS {
        return Err(size_err!(
            "verification needs 1 <= n <= {MAX_VERIFY_QUBITS}, got {n}"
        ));
    }
    let circuit = gatelist_to_matrix(&build_partial_diffusion_circuit(n)?)?;
    let mut deviation = circuit.max_abs_diff(&partial_diffusion_matrix(n)?);
    let dim = circuit.dim();
    for k in 0..dim {
        let mut basis = vec![real(0.0); dim];
        basis[k] = real(1.0);
        let mut state = StateVector::from_amplitudes(n, basis)?;
        state.apply_partial_diffusion();
        for (r, z) in state.amplitudes().iter().enumerate() {
            deviation = deviation.max((circuit.get(r, k) - z).norm());
        }
    }
    Ok(deviation)
}
