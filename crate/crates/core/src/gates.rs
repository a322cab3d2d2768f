// SPDX-License-Identifier: Apache-2.0

//! Real single-qubit rotations, CNOT variants and CNOT programs.
//!
//! All gates act by index arithmetic on the amplitude vector. CNOT programs
//! are stored in application order (first element applied first); the
//! operator-product notation `P21 P02 P10` reads right to left, so it is the
//! reverse of the stored order.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::state::{qubit_mask, Amplitude, PureState, EXACT_TOL};

/// `[[cos, -sin], [sin, cos]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation {
    cos: f64,
    sin: f64,
}

impl Rotation {
    pub const IDENTITY: Rotation = Rotation { cos: 1.0, sin: 0.0 };

    /// Rotation by a quarter turn, `R(pi/2)`. Acts as NOT up to a global sign.
    pub const QUARTER_TURN: Rotation = Rotation { cos: 0.0, sin: 1.0 };

    pub fn new(cos: f64, sin: f64) -> Result<Self> {
        if !cos.is_finite() || !sin.is_finite() || (cos * cos + sin * sin - 1.0).abs() > EXACT_TOL {
            return Err(Error::NotUnitRotation { cos, sin });
        }
        Ok(Self { cos, sin })
    }

    pub fn from_angle(theta: f64) -> Self {
        let (sin, cos) = theta.sin_cos();
        Self { cos, sin }
    }

    pub fn cos(&self) -> f64 {
        self.cos
    }

    pub fn sin(&self) -> f64 {
        self.sin
    }

    pub fn angle(&self) -> f64 {
        self.sin.atan2(self.cos)
    }

    pub fn inverse(&self) -> Self {
        Self {
            cos: self.cos,
            sin: -self.sin,
        }
    }
}

/// A CNOT `P_{control target}` with optional negations.
///
/// `invert_target` flips the target as well (`|x, y> -> |x, x ^ !y>`).
/// `invert_control` negates the control qubit before the CNOT and leaves it
/// negated (`|x, y> -> |!x, !x ^ y>`); this is the reading under which a bar
/// on the control position reproduces the tabulated cloner circuits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CnotGate {
    pub control: usize,
    pub target: usize,
    pub invert_target: bool,
    pub invert_control: bool,
}

impl CnotGate {
    pub fn new(control: usize, target: usize) -> Result<Self> {
        if control == target {
            return Err(Error::SameControlTarget(control));
        }
        Ok(Self {
            control,
            target,
            invert_target: false,
            invert_control: false,
        })
    }

    pub fn with_inverted_target(mut self) -> Self {
        self.invert_target = !self.invert_target;
        self
    }

    pub fn with_inverted_control(mut self) -> Self {
        self.invert_control = !self.invert_control;
        self
    }

    /// CNOT that fires when the control is 0. As a basis permutation this is
    /// identical to a CNOT with inverted target.
    pub fn zero_controlled(control: usize, target: usize) -> Result<Self> {
        Ok(Self::new(control, target)?.with_inverted_target())
    }

    fn validate(&self, n_qubits: usize) -> Result<(usize, usize)> {
        if self.control == self.target {
            return Err(Error::SameControlTarget(self.control));
        }
        Ok((
            qubit_mask(n_qubits, self.control)?,
            qubit_mask(n_qubits, self.target)?,
        ))
    }

    fn map(&self, index: usize, control_mask: usize, target_mask: usize) -> usize {
        let mut out = index;
        if self.invert_control {
            out ^= control_mask;
        }
        if out & control_mask != 0 {
            out ^= target_mask;
        }
        if self.invert_target {
            out ^= target_mask;
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    Cnot(CnotGate),
    /// Classical bit flip of `target`.
    Not {
        target: usize,
    },
}

impl Gate {
    pub fn cnot(control: usize, target: usize) -> Result<Self> {
        CnotGate::new(control, target).map(Gate::Cnot)
    }

    /// Highest qubit index the gate touches.
    pub fn max_qubit(&self) -> usize {
        match self {
            Gate::Cnot(g) => g.control.max(g.target),
            Gate::Not { target } => *target,
        }
    }

    /// Image of basis index `index` on an `n_qubits` register.
    pub fn map_index(&self, index: usize, n_qubits: usize) -> Result<usize> {
        match self {
            Gate::Cnot(g) => {
                let (cm, tm) = g.validate(n_qubits)?;
                Ok(g.map(index, cm, tm))
            }
            Gate::Not { target } => Ok(index ^ qubit_mask(n_qubits, *target)?),
        }
    }
}

impl From<CnotGate> for Gate {
    fn from(g: CnotGate) -> Self {
        Gate::Cnot(g)
    }
}

fn fmt_operand(f: &mut fmt::Formatter<'_>, q: usize, barred: bool) -> fmt::Result {
    if barred {
        write!(f, "!")?;
    }
    write!(f, "{q}")
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::Cnot(g) => {
                let wide = g.control > 9 || g.target > 9;
                write!(f, "P")?;
                if wide {
                    write!(f, "(")?;
                }
                fmt_operand(f, g.control, g.invert_control)?;
                if wide {
                    write!(f, ",")?;
                }
                fmt_operand(f, g.target, g.invert_target)?;
                if wide {
                    write!(f, ")")?;
                }
                Ok(())
            }
            Gate::Not { target } if *target > 9 => write!(f, "N({target})"),
            Gate::Not { target } => write!(f, "N{target}"),
        }
    }
}

/// How a bar over the control index is read when parsing operator notation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BarredControl {
    /// The control qubit is negated and stays negated (`invert_control`).
    Negate,
    /// The CNOT fires on control = 0; the control is left untouched.
    ZeroControlled,
}

/// Ordered gate list, first element applied first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct CnotProgram {
    gates: Vec<Gate>,
}

impl CnotProgram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_gates(gates: Vec<Gate>) -> Self {
        Self { gates }
    }

    pub fn push(&mut self, gate: impl Into<Gate>) {
        self.gates.push(gate.into());
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

    pub fn cnot_count(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| matches!(g, Gate::Cnot(_)))
            .count()
    }

    /// Number of NOT operations, counting standalone NOTs and every bar.
    pub fn inversion_count(&self) -> usize {
        self.gates
            .iter()
            .map(|g| match g {
                Gate::Cnot(c) => c.invert_target as usize + c.invert_control as usize,
                Gate::Not { .. } => 1,
            })
            .sum()
    }

    /// Smallest register the program fits on.
    pub fn min_qubits(&self) -> usize {
        self.gates
            .iter()
            .map(|g| g.max_qubit() + 1)
            .max()
            .unwrap_or(0)
    }

    /// Image of a classical basis index.
    pub fn map_index(&self, index: usize, n_qubits: usize) -> Result<usize> {
        self.gates
            .iter()
            .try_fold(index, |idx, g| g.map_index(idx, n_qubits))
    }

    /// The basis permutation `k -> program(k)` on `n_qubits` qubits.
    pub fn permutation(&self, n_qubits: usize) -> Result<Vec<usize>> {
        (0..1usize << n_qubits)
            .map(|k| self.map_index(k, n_qubits))
            .collect()
    }

    /// Parses operator-product notation such as `P21 P0!2 P!10` (rightmost
    /// factor applied first). Tokens are `P<c><t>` with single-digit operands,
    /// `P(<c>,<t>)` for wider ones, and `N<q>` / `N(<q>)` for a NOT; `!`
    /// before an operand marks a bar.
    pub fn from_product_notation(text: &str, barred_control: BarredControl) -> Result<Self> {
        let mut gates = Vec::new();
        for token in text.split(|c: char| c.is_whitespace() || c == '*' || c == '·') {
            if token.is_empty() {
                continue;
            }
            gates.push(parse_gate(token, barred_control)?);
        }
        gates.reverse();
        Ok(Self { gates })
    }

    /// Operator-product notation, the inverse of [`CnotProgram::from_product_notation`]
    /// with [`BarredControl::Negate`].
    pub fn to_product_notation(&self) -> String {
        if self.gates.is_empty() {
            return "I".to_string();
        }
        self.gates
            .iter()
            .rev()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for CnotProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_product_notation())
    }
}

impl FromStr for CnotProgram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "I" {
            return Ok(Self::new());
        }
        Self::from_product_notation(s, BarredControl::Negate)
    }
}

fn parse_gate(token: &str, barred_control: BarredControl) -> Result<Gate> {
    let err = |message: String| Error::Parse { line: 1, message };
    let mut chars = token.chars();
    let head = chars.next().ok_or_else(|| err("empty gate token".into()))?;
    let rest: &str = chars.as_str();
    let operands = parse_operands(rest).ok_or_else(|| err(format!("malformed gate `{token}`")))?;
    match (head, operands.as_slice()) {
        ('N', [(q, false)]) => Ok(Gate::Not { target: *q }),
        ('P', [(c, cbar), (t, tbar)]) => {
            let mut g = CnotGate::new(*c, *t).map_err(|e| err(format!("`{token}`: {e}")))?;
            if *tbar {
                g = g.with_inverted_target();
            }
            if *cbar {
                g = match barred_control {
                    BarredControl::Negate => g.with_inverted_control(),
                    BarredControl::ZeroControlled => g.with_inverted_target(),
                };
            }
            Ok(Gate::Cnot(g))
        }
        _ => Err(err(format!("malformed gate `{token}`"))),
    }
}

fn parse_operands(s: &str) -> Option<Vec<(usize, bool)>> {
    if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        return inner
            .split(',')
            .map(|part| {
                let part = part.trim();
                let (bar, digits) = match part.strip_prefix('!') {
                    Some(d) => (true, d),
                    None => (false, part),
                };
                digits.parse().ok().map(|q| (q, bar))
            })
            .collect();
    }
    let mut out = Vec::new();
    let mut bar = false;
    for ch in s.chars() {
        match ch {
            '!' if !bar => bar = true,
            d if d.is_ascii_digit() => {
                out.push((d.to_digit(10)? as usize, bar));
                bar = false;
            }
            _ => return None,
        }
    }
    (!bar).then_some(out)
}

/// Applies `r` to `qubit`.
pub fn apply_rotation(state: &PureState, qubit: usize, r: &Rotation) -> Result<PureState> {
    let mask = state.mask(qubit)?;
    let mut amps = state.amplitudes().to_vec();
    for lo in (0..amps.len()).filter(|k| k & mask == 0) {
        let hi = lo | mask;
        let (a0, a1) = (amps[lo], amps[hi]);
        amps[lo] = a0 * r.cos - a1 * r.sin;
        amps[hi] = a0 * r.sin + a1 * r.cos;
    }
    Ok(PureState::from_raw(state.n_qubits(), amps))
}

fn permute(state: &PureState, map: impl Fn(usize) -> usize) -> PureState {
    let src = state.amplitudes();
    let mut amps = vec![Amplitude::new(0.0, 0.0); src.len()];
    for (k, a) in src.iter().enumerate() {
        amps[map(k)] = *a;
    }
    PureState::from_raw(state.n_qubits(), amps)
}

pub fn apply_cnot(state: &PureState, gate: &CnotGate) -> Result<PureState> {
    let (cm, tm) = gate.validate(state.n_qubits())?;
    Ok(permute(state, |k| gate.map(k, cm, tm)))
}

pub fn apply_gate(state: &PureState, gate: &Gate) -> Result<PureState> {
    match gate {
        Gate::Cnot(g) => apply_cnot(state, g),
        Gate::Not { target } => {
            let m = state.mask(*target)?;
            Ok(permute(state, |k| k ^ m))
        }
    }
}

/// Applies every gate in order. The result is a permutation of the input
/// amplitudes.
pub fn apply_program(state: &PureState, prog: &CnotProgram) -> Result<PureState> {
    let perm = prog.permutation(state.n_qubits())?;
    Ok(permute(state, |k| perm[k]))
}
