// SPDX-License-Identifier: Apache-2.0

//! Density matrices, partial traces and state fidelity.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::state::{qubit_mask, Amplitude, PureState, EXACT_TOL, MAX_QUBITS};

/// Dense row-major density matrix on `n_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    entries: Vec<Amplitude>,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity (all to 1e-12).
    pub fn from_entries(n_qubits: usize, entries: Vec<Amplitude>) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::UnsupportedQubitCount(n_qubits));
        }
        let dim = 1usize << n_qubits;
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        let rho = Self { n_qubits, entries };
        if !rho.is_hermitian(EXACT_TOL) {
            return Err(Error::InvalidSelection("matrix is not Hermitian".into()));
        }
        let tr = rho.trace();
        if (tr.re - 1.0).abs() > EXACT_TOL || tr.im.abs() > EXACT_TOL {
            return Err(Error::InvalidSelection(format!(
                "trace is {tr}, expected 1"
            )));
        }
        if rho.min_eigenvalue() < -EXACT_TOL {
            return Err(Error::InvalidSelection(
                "matrix is not positive semidefinite".into(),
            ));
        }
        Ok(rho)
    }

    /// `I / 2^n`.
    pub fn maximally_mixed(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::UnsupportedQubitCount(n_qubits));
        }
        let dim = 1usize << n_qubits;
        let mut entries = vec![Amplitude::new(0.0, 0.0); dim * dim];
        for k in 0..dim {
            entries[k * dim + k] = Amplitude::new(1.0 / dim as f64, 0.0);
        }
        Ok(Self { n_qubits, entries })
    }

    /// `lambda * a + (1 - lambda) * b` for `lambda` in `[0, 1]`.
    pub fn convex_mix(a: &Self, b: &Self, lambda: f64) -> Result<Self> {
        if a.n_qubits != b.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                found: b.dim(),
            });
        }
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidSelection(format!(
                "mixing weight {lambda} outside [0, 1]"
            )));
        }
        let entries = a
            .entries
            .iter()
            .zip(&b.entries)
            .map(|(x, y)| x * lambda + y * (1.0 - lambda))
            .collect();
        Ok(Self {
            n_qubits: a.n_qubits,
            entries,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn get(&self, row: usize, col: usize) -> Amplitude {
        self.entries[row * self.dim() + col]
    }

    pub fn entries(&self) -> &[Amplitude] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Amplitude]> {
        self.entries.chunks(self.dim())
    }

    pub fn trace(&self) -> Amplitude {
        (0..self.dim()).map(|k| self.get(k, k)).sum()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let dim = self.dim();
        (0..dim).all(|r| (r..dim).all(|c| (self.get(r, c) - self.get(c, r).conj()).norm() <= tol))
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let dim = self.dim();
        let m = DMatrix::from_row_slice(dim, dim, &self.entries);
        let mut values: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
        values.sort_by(f64::total_cmp);
        values
    }

    /// Entrywise complex conjugate (equal to the transpose for a Hermitian matrix).
    pub fn conjugate(&self) -> Self {
        Self {
            n_qubits: self.n_qubits,
            entries: self.entries.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().first().copied().unwrap_or(0.0)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

/// `|psi><psi|`.
pub fn density_of(psi: &PureState) -> DensityMatrix {
    let amps = psi.amplitudes();
    let entries = amps
        .iter()
        .flat_map(|a| amps.iter().map(move |b| a * b.conj()))
        .collect();
    DensityMatrix {
        n_qubits: psi.n_qubits(),
        entries,
    }
}

/// Reduced state on the qubits in `keep`, traced over all others.
///
/// The output orders its qubits as listed in `keep`, so `keep = [2, 0]` yields
/// a register whose first qubit is the original qubit 2.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let n = rho.n_qubits;
    if keep.is_empty() {
        return Err(Error::InvalidSelection("no qubits kept".into()));
    }
    let mut kept_masks = Vec::with_capacity(keep.len());
    for &q in keep {
        let m = qubit_mask(n, q)?;
        if kept_masks.contains(&m) {
            return Err(Error::InvalidSelection(format!("qubit {q} listed twice")));
        }
        kept_masks.push(m);
    }
    let traced_masks: Vec<usize> = (0..n)
        .map(|q| 1usize << (n - 1 - q))
        .filter(|m| !kept_masks.contains(m))
        .collect();

    let spread = |local: usize, masks: &[usize]| -> usize {
        let width = masks.len();
        masks
            .iter()
            .enumerate()
            .filter(|(p, _)| local >> (width - 1 - p) & 1 == 1)
            .map(|(_, m)| m)
            .sum()
    };

    let m = keep.len();
    let out_dim = 1usize << m;
    let env: Vec<usize> = (0..1usize << traced_masks.len())
        .map(|t| spread(t, &traced_masks))
        .collect();
    let full_dim = rho.dim();
    let mut entries = vec![Amplitude::new(0.0, 0.0); out_dim * out_dim];
    for r in 0..out_dim {
        let row_base = spread(r, &kept_masks);
        for c in 0..out_dim {
            let col_base = spread(c, &kept_masks);
            entries[r * out_dim + c] = env
                .iter()
                .map(|e| rho.entries[(row_base | e) * full_dim + (col_base | e)])
                .sum();
        }
    }
    Ok(DensityMatrix {
        n_qubits: m,
        entries,
    })
}

/// `<psi|rho|psi>`.
pub fn state_fidelity(rho: &DensityMatrix, psi: &PureState) -> Result<f64> {
    if rho.dim() != psi.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: psi.dim(),
        });
    }
    let amps = psi.amplitudes();
    let value: Amplitude = rho
        .rows()
        .zip(amps)
        .map(|(row, a)| {
            let row_dot: Amplitude = row.iter().zip(amps).map(|(r, b)| r * b).sum();
            a.conj() * row_dot
        })
        .sum();
    Ok(value.re)
}
