// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("bloch angles out of range: theta={theta} (expected [0, pi]), phi={phi} (expected [0, 2pi))")]
    InvalidAngles { theta: f64, phi: f64 },

    #[error("qubit {qubit} out of range for a {n_qubits}-qubit register")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },

    #[error("unsupported register size {0} (expected 1..={max})", max = crate::state::MAX_QUBITS)]
    UnsupportedQubitCount(usize),

    #[error("control and target are both qubit {0}")]
    SameControlTarget(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state is not normalized (norm^2 = {0})")]
    NotNormalized(f64),

    #[error("amplitude vector contains a non-finite value")]
    NonFinite,

    #[error("invalid qubit selection: {0}")]
    InvalidSelection(String),

    #[error("rotation is not on the unit circle: cos={cos}, sin={sin}")]
    NotUnitRotation { cos: f64, sin: f64 },

    #[error("no real solution: discriminant {0} is negative")]
    NoRealSolution(f64),

    #[error("linear map is singular over GF(2) and cannot be realized reversibly")]
    NotReversible,

    #[error("column contains a don't-care at row {0}")]
    DontCare(usize),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("table-1 row {0} does not exist (expected 1..=12)")]
    InvalidRow(usize),

    #[error("no solved angle set reproduces the optimal cloner output for row {row} ({variant})")]
    MachineMismatch { row: usize, variant: &'static str },
}
