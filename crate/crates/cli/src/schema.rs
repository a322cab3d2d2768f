// SPDX-License-Identifier: Apache-2.0

//! JSON documents emitted with `--json`. Every top-level report carries
//! `"schema": 1`. Complex numbers are `[re, im]` pairs; matrices are row-major
//! nested arrays.

use qclone_core::{Amplitude, CnotGate, CnotProgram, DensityMatrix, Gate, PureState};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

pub type Complex = [f64; 2];

pub fn complex(z: Amplitude) -> Complex {
    [z.re, z.im]
}

pub fn state_amplitudes(psi: &PureState) -> Vec<Complex> {
    psi.amplitudes().iter().copied().map(complex).collect()
}

pub fn matrix(rho: &DensityMatrix) -> Vec<Vec<Complex>> {
    rho.rows()
        .map(|r| r.iter().copied().map(complex).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GateDocument {
    Cnot {
        control: usize,
        target: usize,
        invert_target: bool,
        invert_control: bool,
    },
    Not {
        target: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GateOrder {
    /// First listed gate is applied first.
    Application,
}

/// Serialized [`CnotProgram`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitDocument {
    pub n_qubits: usize,
    pub order: GateOrder,
    pub gates: Vec<GateDocument>,
}

impl CircuitDocument {
    pub fn from_program(prog: &CnotProgram, n_qubits: usize) -> Self {
        let gates = prog
            .gates()
            .iter()
            .map(|g| match *g {
                Gate::Cnot(c) => GateDocument::Cnot {
                    control: c.control,
                    target: c.target,
                    invert_target: c.invert_target,
                    invert_control: c.invert_control,
                },
                Gate::Not { target } => GateDocument::Not { target },
            })
            .collect();
        Self {
            n_qubits,
            order: GateOrder::Application,
            gates,
        }
    }

    pub fn to_program(&self) -> qclone_core::Result<CnotProgram> {
        let mut prog = CnotProgram::new();
        for g in &self.gates {
            match *g {
                GateDocument::Cnot {
                    control,
                    target,
                    invert_target,
                    invert_control,
                } => {
                    let mut c = CnotGate::new(control, target)?;
                    c.invert_target = invert_target;
                    c.invert_control = invert_control;
                    prog.push(c);
                }
                GateDocument::Not { target } => prog.push(Gate::Not { target }),
            }
        }
        Ok(prog)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionDocument {
    /// `"---,+++"`: signs of the three cosines, then the three sines.
    pub signs: String,
    pub angles: [f64; 3],
    pub cos: [f64; 3],
    pub sin: [f64; 3],
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchDocument {
    /// `"minus"`, `"plus"`, or `null` for numerically found solutions.
    pub branch: Option<String>,
    pub method: String,
    pub cos_squared: [f64; 3],
    pub solutions: Vec<SolutionDocument>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub schema: u32,
    pub coefficients: [f64; 4],
    pub normalized: bool,
    pub branches: Vec<BranchDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionDocument {
    /// Values chosen for the don't-cares, row-major, as a `0`/`1` string.
    pub assignment: String,
    /// Output polynomials, e.g. `(x⊕y, x⊕z, x⊕y⊕z)`.
    pub map: String,
    pub matrix: Vec<Vec<u8>>,
    pub affine: Vec<u8>,
    pub notation: String,
    pub verified: bool,
    pub circuit: CircuitDocument,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SynthReport {
    pub schema: u32,
    pub n_bits: usize,
    pub total_completions: usize,
    pub completions: Vec<CompletionDocument>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    pub copy0: f64,
    pub copy1: f64,
    /// Against `2/3 rho_in + 1/3 rho_perp`.
    pub ancilla: f64,
    /// Against the same mixture of the conjugated matrices.
    pub ancilla_conjugated: f64,
    /// Phase-aligned distance from the optimal output state.
    pub output: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CloneReport {
    pub schema: u32,
    pub row: usize,
    pub variant: String,
    pub theta: f64,
    pub phi: f64,
    pub input: Vec<Complex>,
    pub output: Vec<Complex>,
    pub rho0: Vec<Vec<Complex>>,
    pub rho1: Vec<Vec<Complex>>,
    pub rho2: Vec<Vec<Complex>>,
    pub fidelities: [f64; 3],
    pub residuals: Residuals,
    pub circuit: CircuitDocument,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCellDocument {
    pub row: usize,
    pub variant: String,
    pub max_error: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub seed: u64,
    pub inputs: usize,
    pub tolerance: f64,
    pub passed: usize,
    pub cells: Vec<SweepCellDocument>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FidelityRow {
    pub row: usize,
    pub variant: String,
    pub copy0: f64,
    pub copy1: f64,
    pub ancilla: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FidelityReport {
    pub schema: u32,
    pub grid: [usize; 2],
    pub rows: Vec<FidelityRow>,
}
