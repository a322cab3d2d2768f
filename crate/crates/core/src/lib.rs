// SPDX-License-Identifier: Apache-2.0

//! Simulation and synthesis toolkit for the CNOT-based symmetric 1 -> 2
//! quantum cloner.
//!
//! * [`state`], [`density`], [`fidelity`]: state vectors, reduced states and
//!   sphere-averaged fidelities.
//! * [`gates`]: rotations, CNOTs with negations, and CNOT programs.
//! * [`prep`]: angles of the two-qubit preparation chain.
//! * [`synth`]: truth tables, ANF, GF(2) maps and CNOT synthesis.
//! * [`table1`] and [`cloner`]: the twelve tabulated machines and their
//!   verification.

pub mod cloner;
pub mod density;
pub mod error;
pub mod fidelity;
pub mod gates;
pub mod prep;
pub mod state;
pub mod synth;
pub mod table1;

pub use cloner::{
    expected_output, machine_average_fidelities, mix_input, mixture_residual, run_machine,
    verify_table, AverageFidelities, CloneResult, CloningMachine, SweepCell,
};
pub use density::{density_of, partial_trace, state_fidelity, DensityMatrix};
pub use error::{Error, Result};
pub use fidelity::{average_fidelity, BlochGrid};
pub use gates::{
    apply_cnot, apply_gate, apply_program, apply_rotation, BarredControl, CnotGate, CnotProgram,
    Gate, Rotation,
};
pub use prep::{
    eval_prep_equations, prepare_state, residual, solve_angles, solve_branches, AngleTriple,
    Branch, BranchSolution, PrepCoefficients, SignPattern,
};
pub use state::{bloch_state, orthogonal_state, tensor, Amplitude, BlochAngles, PureState};
pub use synth::{
    anf_of, enumerate_completions, is_affine, synthesize, verify_program, AnfPolynomial,
    Completion, LinearMap, TruthTable,
};
pub use table1::{table1_row, table1_rows, Table1Row, Variant};
