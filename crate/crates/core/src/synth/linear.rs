// SPDX-License-Identifier: Apache-2.0

//! Affine maps over GF(2): `x -> M x ^ b`.

use std::fmt;

use crate::error::{Error, Result};
use crate::synth::anf::AnfPolynomial;
use crate::synth::truth_table::{TruthTable, MAX_BITS};

/// Row `i` of `rows` is the bit mask (big-endian, variable `j` at bit
/// `n - 1 - j`) of inputs XORed into output `i`. `affine` uses the same
/// encoding for the constant flips.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearMap {
    n: usize,
    rows: Vec<usize>,
    affine: usize,
}

impl LinearMap {
    pub fn new(n: usize, rows: Vec<usize>, affine: usize) -> Result<Self> {
        if n == 0 || n > MAX_BITS {
            return Err(Error::UnsupportedQubitCount(n));
        }
        if rows.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: rows.len(),
            });
        }
        let full = (1usize << n) - 1;
        if rows.iter().any(|&r| r & !full != 0) || affine & !full != 0 {
            return Err(Error::InvalidSelection(format!("mask wider than {n} bits")));
        }
        Ok(Self { n, rows, affine })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(n, (0..n).map(|i| 1 << (n - 1 - i)).collect(), 0)
    }

    /// Builds the map from one affine polynomial per output.
    pub fn from_anfs(polys: &[AnfPolynomial]) -> Result<Self> {
        let n = polys.len();
        if let Some(p) = polys.iter().find(|p| p.n() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.n(),
            });
        }
        if polys.iter().any(|p| !p.is_affine()) {
            return Err(Error::InvalidSelection(
                "output polynomial has degree above one".into(),
            ));
        }
        let affine = polys
            .iter()
            .enumerate()
            .filter(|(_, p)| p.constant())
            .fold(0, |acc, (i, _)| acc | 1 << (n - 1 - i));
        Self::new(
            n,
            polys.iter().map(AnfPolynomial::linear_mask).collect(),
            affine,
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn affine(&self) -> usize {
        self.affine
    }

    /// Matrix entry `(i, j)`: does input `j` feed output `i`.
    pub fn entry(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> (self.n - 1 - j) & 1 == 1
    }

    pub fn apply(&self, input: usize) -> usize {
        let linear = self.rows.iter().enumerate().fold(0, |acc, (i, &r)| {
            acc | (((r & input).count_ones() as usize & 1) << (self.n - 1 - i))
        });
        linear ^ self.affine
    }

    pub fn rank(&self) -> usize {
        gf2_rank(&self.rows)
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    pub fn to_truth_table(&self) -> TruthTable {
        TruthTable::from_fn(self.n, |k| self.apply(k)).expect("width validated on construction")
    }

    fn output_poly(&self, i: usize) -> AnfPolynomial {
        let r = self.rows[i];
        let mut monomials: Vec<usize> = (0..self.n)
            .map(|j| 1 << (self.n - 1 - j))
            .filter(|m| r & m != 0)
            .collect();
        if self.affine >> (self.n - 1 - i) & 1 == 1 {
            monomials.push(0);
        }
        AnfPolynomial::new(self.n, monomials)
    }
}

pub(crate) fn gf2_rank(rows: &[usize]) -> usize {
    let mut basis: Vec<usize> = Vec::new();
    for &r in rows {
        let reduced = basis.iter().fold(r, |v, &b| v.min(v ^ b));
        if reduced != 0 {
            basis.push(reduced);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

impl fmt::Display for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let outs: Vec<String> = (0..self.n)
            .map(|i| self.output_poly(i).to_string())
            .collect();
        write!(f, "({})", outs.join(", "))
    }
}
