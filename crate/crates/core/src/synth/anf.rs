// SPDX-License-Identifier: Apache-2.0

//! Algebraic normal form (Zhegalkin polynomials) over GF(2).
//!
//! A monomial is stored as a bit mask in the same big-endian encoding as
//! basis indices: variable `i` of `n` is bit `n - 1 - i`. The empty monomial
//! (mask 0) is the constant 1.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::synth::truth_table::Cell;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AnfPolynomial {
    n: usize,
    monomials: BTreeSet<usize>,
}

impl AnfPolynomial {
    pub fn new(n: usize, monomials: impl IntoIterator<Item = usize>) -> Self {
        let mut set = BTreeSet::new();
        for m in monomials {
            debug_assert!(m < 1 << n);
            // x ^ x = 0
            if !set.insert(m) {
                set.remove(&m);
            }
        }
        Self { n, monomials: set }
    }

    /// Möbius (butterfly) transform of a fully specified column.
    pub fn from_bits(column: &[bool]) -> Self {
        assert!(
            column.len().is_power_of_two(),
            "column length must be a power of two"
        );
        let n = column.len().trailing_zeros() as usize;
        let mut coeffs: Vec<bool> = column.to_vec();
        for bit in 0..n {
            let step = 1 << bit;
            for k in 0..coeffs.len() {
                if k & step != 0 {
                    coeffs[k] ^= coeffs[k ^ step];
                }
            }
        }
        let monomials = coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c)
            .map(|(m, _)| m)
            .collect();
        Self { n, monomials }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn monomials(&self) -> &BTreeSet<usize> {
        &self.monomials
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.monomials
            .iter()
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn is_affine(&self) -> bool {
        self.degree() <= 1
    }

    /// Constant term.
    pub fn constant(&self) -> bool {
        self.monomials.contains(&0)
    }

    /// Mask of the degree-one monomials.
    pub fn linear_mask(&self) -> usize {
        self.monomials
            .iter()
            .filter(|m| m.count_ones() == 1)
            .fold(0, |acc, m| acc | m)
    }

    pub fn evaluate(&self, input: usize) -> bool {
        self.monomials.iter().filter(|&&m| input & m == m).count() % 2 == 1
    }

    /// Values on all `2^n` inputs.
    pub fn to_bits(&self) -> Vec<bool> {
        (0..1usize << self.n).map(|k| self.evaluate(k)).collect()
    }

    /// Monomials of degree two or more, rendered.
    pub fn nonlinear_terms(&self) -> Vec<String> {
        self.sorted()
            .into_iter()
            .filter(|m| m.count_ones() > 1)
            .map(|m| monomial_name(self.n, m))
            .collect()
    }

    fn sorted(&self) -> Vec<usize> {
        let mut terms: Vec<usize> = self.monomials.iter().copied().collect();
        // by degree, then by variable order (x before y before z)
        terms.sort_by_key(|m| (m.count_ones(), std::cmp::Reverse(*m)));
        terms
    }
}

/// ANF of a column that must not contain don't-cares.
pub fn anf_of(column: &[Cell]) -> Result<AnfPolynomial> {
    let bits = column
        .iter()
        .enumerate()
        .map(|(row, c)| c.ok_or(Error::DontCare(row)))
        .collect::<Result<Vec<bool>>>()?;
    if !bits.len().is_power_of_two() || bits.len() < 2 {
        return Err(Error::DimensionMismatch {
            expected: bits.len().next_power_of_two().max(2),
            found: bits.len(),
        });
    }
    Ok(AnfPolynomial::from_bits(&bits))
}

pub fn is_affine(p: &AnfPolynomial) -> bool {
    p.is_affine()
}

/// `x`, `y`, `z` for up to three variables, otherwise `x0`, `x1`, ...
pub fn variable_name(n: usize, var: usize) -> String {
    if n <= 3 {
        ["x", "y", "z"][var].to_string()
    } else {
        format!("x{var}")
    }
}

fn monomial_name(n: usize, m: usize) -> String {
    if m == 0 {
        return "1".into();
    }
    (0..n)
        .filter(|v| m >> (n - 1 - v) & 1 == 1)
        .map(|v| variable_name(n, v))
        .collect::<Vec<_>>()
        .join("&")
}

impl fmt::Display for AnfPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomials.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .sorted()
            .into_iter()
            .map(|m| monomial_name(self.n, m))
            .collect();
        f.write_str(&terms.join("⊕"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(bits: &str) -> Vec<Cell> {
        bits.chars()
            .map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect()
    }

    // completed cloner table columns, inputs 000..111
    const P1: &str = "00111100";
    const P2: &str = "01011010";
    const P3: &str = "01101001";

    #[test]
    fn zero_column_is_empty() {
        let p = anf_of(&col("00000000")).unwrap();
        assert!(p.is_zero());
        assert_eq!(p.to_string(), "0");
    }

    #[test]
    fn cloner_columns_are_linear() {
        assert_eq!(anf_of(&col(P1)).unwrap().to_string(), "x⊕y");
        assert_eq!(anf_of(&col(P2)).unwrap().to_string(), "x⊕z");
        assert_eq!(anf_of(&col(P3)).unwrap().to_string(), "x⊕y⊕z");
    }

    #[test]
    fn affinity() {
        let xy = AnfPolynomial::new(3, [0b100, 0b010]);
        assert!(is_affine(&xy));
        let and = AnfPolynomial::new(3, [0b110]);
        assert!(!is_affine(&and));
        assert_eq!(and.to_string(), "x&y");
        assert_eq!(and.nonlinear_terms(), vec!["x&y".to_string()]);
        let not_z = AnfPolynomial::new(3, [0, 0b001]);
        assert!(is_affine(&not_z));
        assert!(not_z.constant());
        assert_eq!(not_z.linear_mask(), 0b001);
        assert_eq!(not_z.to_string(), "1⊕z");
    }

    #[test]
    fn dont_care_is_rejected() {
        assert_eq!(anf_of(&col("0*110000")), Err(Error::DontCare(1)));
    }

    #[test]
    fn evaluation_reproduces_column() {
        for text in [P1, P2, P3, "10010110", "00010111", "11111111"] {
            let c = col(text);
            let p = anf_of(&c).unwrap();
            let back: Vec<Cell> = p.to_bits().into_iter().map(Some).collect();
            assert_eq!(back, c);
        }
    }

    #[test]
    fn duplicate_monomials_cancel() {
        let p = AnfPolynomial::new(2, [0b01, 0b01, 0b10]);
        assert_eq!(p.monomials().len(), 1);
    }
}
