// SPDX-License-Identifier: Apache-2.0

//! Pure states of small qubit registers.
//!
//! Basis indices are big-endian on qubit labels: the ket `|q0 q1 ... q(n-1)>`
//! lives at index `sum q_i * 2^(n-1-i)`, so qubit 0 is the most significant
//! bit and the leftmost symbol of a written ket.

use std::f64::consts::{PI, TAU};
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Amplitude = Complex64;

/// Largest register the dense representation supports.
pub const MAX_QUBITS: usize = 10;

/// Tolerance for identities that hold exactly in exact arithmetic.
pub const EXACT_TOL: f64 = 1e-12;

/// Tolerance for quadrature-based quantities.
pub const QUADRATURE_TOL: f64 = 1e-6;

/// Polar coordinates of a qubit on the Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochAngles {
    theta: f64,
    phi: f64,
}

impl BlochAngles {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        let ok = theta.is_finite()
            && phi.is_finite()
            && (0.0..=PI).contains(&theta)
            && (0.0..TAU).contains(&phi);
        if ok {
            Ok(Self { theta, phi })
        } else {
            Err(Error::InvalidAngles { theta, phi })
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amps: Vec<Amplitude>,
}

fn qubit_count_for(len: usize) -> Result<usize> {
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::DimensionMismatch {
            expected: len.next_power_of_two().max(2),
            found: len,
        });
    }
    let n = len.trailing_zeros() as usize;
    if n > MAX_QUBITS {
        return Err(Error::UnsupportedQubitCount(n));
    }
    Ok(n)
}

impl PureState {
    /// Builds a state from amplitudes that are already normalized.
    pub fn from_amplitudes(amps: Vec<Amplitude>) -> Result<Self> {
        let n_qubits = qubit_count_for(amps.len())?;
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm = norm_sqr(&amps);
        if (norm - 1.0).abs() > EXACT_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { n_qubits, amps })
    }

    /// Builds a state by rescaling `amps` to unit norm.
    pub fn normalized(mut amps: Vec<Amplitude>) -> Result<Self> {
        qubit_count_for(amps.len())?;
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm = norm_sqr(&amps);
        if norm == 0.0 {
            return Err(Error::NotNormalized(0.0));
        }
        let scale = norm.sqrt().recip();
        for a in &mut amps {
            *a *= scale;
        }
        Self::from_amplitudes(amps)
    }

    /// Computational basis state `|index>` on `n_qubits` qubits.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::UnsupportedQubitCount(n_qubits));
        }
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: index,
            });
        }
        let mut amps = vec![Amplitude::new(0.0, 0.0); dim];
        amps[index] = Amplitude::new(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    /// Equal superposition of all basis states.
    pub fn uniform(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::UnsupportedQubitCount(n_qubits));
        }
        let dim = 1usize << n_qubits;
        let a = Amplitude::new((dim as f64).sqrt().recip(), 0.0);
        Ok(Self {
            n_qubits,
            amps: vec![a; dim],
        })
    }

    /// Trusted constructor for transforms that preserve the norm by construction.
    pub(crate) fn from_raw(n_qubits: usize, amps: Vec<Amplitude>) -> Self {
        debug_assert_eq!(amps.len(), 1 << n_qubits);
        debug_assert!((norm_sqr(&amps) - 1.0).abs() < 1e-9);
        Self { n_qubits, amps }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Amplitude {
        self.amps[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amps)
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &PureState) -> Result<Amplitude> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// States are equal as rays iff `|<a|b>| >= 1 - 1e-12`.
    pub fn equals_up_to_phase(&self, other: &PureState) -> bool {
        self.inner(other)
            .map(|z| z.norm() >= 1.0 - EXACT_TOL)
            .unwrap_or(false)
    }

    /// Largest amplitude deviation after removing the relative global phase.
    pub fn phase_aligned_deviation(&self, other: &PureState) -> Result<f64> {
        let overlap = other.inner(self)?;
        let phase = if overlap.norm() > 0.0 {
            overlap / overlap.norm()
        } else {
            Amplitude::new(1.0, 0.0)
        };
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - phase * b).norm())
            .fold(0.0, f64::max))
    }

    /// Bit mask selecting `qubit` inside a basis index.
    pub(crate) fn mask(&self, qubit: usize) -> Result<usize> {
        qubit_mask(self.n_qubits, qubit)
    }
}

pub(crate) fn qubit_mask(n_qubits: usize, qubit: usize) -> Result<usize> {
    if qubit >= n_qubits {
        return Err(Error::QubitOutOfRange { qubit, n_qubits });
    }
    Ok(1 << (n_qubits - 1 - qubit))
}

fn norm_sqr(amps: &[Amplitude]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum()
}

impl fmt::Display for PureState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, a) in self.amps.iter().enumerate() {
            if a.norm() < EXACT_TOL {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(
                f,
                "({:.6}{:+.6}i)|{:0width$b}>",
                a.re,
                a.im,
                k,
                width = self.n_qubits
            )?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `alpha|0> + beta|1>` with `alpha = e^{i phi} sin(theta/2)` and `beta = cos(theta/2)`.
///
/// Note the parametrization puts the polar angle on `|1>`: `theta = 0` is `|1>`
/// and `theta = pi` is `|0>`.
pub fn bloch_state(angles: &BlochAngles) -> PureState {
    let half = angles.theta / 2.0;
    let alpha = Amplitude::from_polar(half.sin(), angles.phi);
    let beta = Amplitude::new(half.cos(), 0.0);
    PureState::from_raw(1, vec![alpha, beta])
}

/// The state orthogonal to a single qubit, `conj(alpha)|1> - conj(beta)|0>`.
///
/// For real amplitudes this is `alpha|1> - beta|0>`. Conjugation keeps the
/// result orthogonal for complex `alpha`.
pub fn orthogonal_state(psi: &PureState) -> Result<PureState> {
    if psi.n_qubits != 1 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: psi.dim(),
        });
    }
    let alpha = psi.amps[0];
    let beta = psi.amps[1];
    Ok(PureState::from_raw(1, vec![-beta.conj(), alpha.conj()]))
}

/// Tensor product `|a>|b>`; `a` occupies the leading (most significant) qubits.
pub fn tensor(a: &PureState, b: &PureState) -> Result<PureState> {
    let n = a.n_qubits + b.n_qubits;
    if n > MAX_QUBITS {
        return Err(Error::UnsupportedQubitCount(n));
    }
    let amps = a
        .amps
        .iter()
        .flat_map(|x| b.amps.iter().map(move |y| x * y))
        .collect();
    Ok(PureState::from_raw(n, amps))
}
