// SPDX-License-Identifier: Apache-2.0

//! Multi-output truth tables with don't-care cells.
//!
//! Text format, one line per input row:
//!
//! ```text
//! # comment
//! 000 -> 000
//! 011 -> ***
//! ```
//!
//! Bits are big-endian: the first character is variable 0 (`x`).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Widest table supported (matches the largest simulated register).
pub const MAX_BITS: usize = crate::state::MAX_QUBITS;

/// `None` is a don't-care.
pub type Cell = Option<bool>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: usize,
    rows: Vec<Vec<Cell>>,
}

impl TruthTable {
    pub fn new(n: usize, rows: Vec<Vec<Cell>>) -> Result<Self> {
        if n == 0 || n > MAX_BITS {
            return Err(Error::UnsupportedQubitCount(n));
        }
        if rows.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: rows.len(),
            });
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        Ok(Self { n, rows })
    }

    /// Complete table of a function on basis indices.
    pub fn from_fn(n: usize, f: impl Fn(usize) -> usize) -> Result<Self> {
        if n == 0 || n > MAX_BITS {
            return Err(Error::UnsupportedQubitCount(n));
        }
        let rows = (0..1usize << n).map(|k| index_to_cells(f(k), n)).collect();
        Ok(Self { n, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn output(&self, input: usize) -> &[Cell] {
        &self.rows[input]
    }

    /// Output value of variable `j` per input row.
    pub fn column(&self, j: usize) -> Vec<Cell> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    /// Output as a basis index when the row has no don't-cares.
    pub fn output_index(&self, input: usize) -> Option<usize> {
        self.rows[input]
            .iter()
            .try_fold(0usize, |acc, c| c.map(|b| acc << 1 | b as usize))
    }

    /// `(row, column)` of every don't-care, row-major.
    pub fn dont_cares(&self) -> Vec<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| {
                row.iter()
                    .enumerate()
                    .filter(|(_, c)| c.is_none())
                    .map(move |(j, _)| (r, j))
            })
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(Option::is_some))
    }

    /// Whether `other` agrees with every specified cell of `self`.
    pub fn is_refined_by(&self, other: &TruthTable) -> bool {
        self.n == other.n
            && self
                .rows
                .iter()
                .zip(&other.rows)
                .all(|(a, b)| a.iter().zip(b).all(|(x, y)| x.is_none() || x == y))
    }

    /// Fills don't-cares in row-major order from `bits`.
    pub fn fill(&self, bits: impl IntoIterator<Item = bool>) -> TruthTable {
        let mut bits = bits.into_iter();
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|c| c.or_else(|| bits.next())).collect())
            .collect();
        TruthTable { n: self.n, rows }
    }
}

pub(crate) fn index_to_cells(index: usize, n: usize) -> Vec<Cell> {
    (0..n)
        .map(|j| Some(index >> (n - 1 - j) & 1 == 1))
        .collect()
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, row) in self.rows.iter().enumerate() {
            let out: String = row
                .iter()
                .map(|c| match c {
                    Some(true) => '1',
                    Some(false) => '0',
                    None => '*',
                })
                .collect();
            writeln!(f, "{:0width$b} -> {out}", k, width = self.n)?;
        }
        Ok(())
    }
}

impl FromStr for TruthTable {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut rows: Vec<Option<Vec<Cell>>> = Vec::new();
        let mut seen = 0usize;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (input, output) = line
                .split_once("->")
                .ok_or_else(|| err("expected `<bits> -> <bits>`".into()))?;
            let (input, output) = (input.trim(), output.trim());
            if input.is_empty() || !input.chars().all(|c| c == '0' || c == '1') {
                return Err(err(format!("input `{input}` must be a string of 0/1")));
            }
            let width = *n.get_or_insert(input.len());
            if width == 0 || width > MAX_BITS {
                return Err(err(format!("unsupported width {width} (max {MAX_BITS})")));
            }
            if rows.is_empty() {
                rows = vec![None; 1 << width];
            }
            if input.len() != width {
                return Err(err(format!(
                    "input has {} bits, expected {width}",
                    input.len()
                )));
            }
            let cells: Vec<Cell> = output
                .chars()
                .map(|c| match c {
                    '0' => Ok(Some(false)),
                    '1' => Ok(Some(true)),
                    '*' => Ok(None),
                    other => Err(err(format!("unexpected output symbol `{other}`"))),
                })
                .collect::<Result<_>>()?;
            if cells.len() != width {
                return Err(err(format!(
                    "output has {} bits, expected {width}",
                    cells.len()
                )));
            }
            let k = usize::from_str_radix(input, 2).expect("validated binary");
            if rows[k].is_some() {
                return Err(err(format!("input {input} listed twice")));
            }
            rows[k] = Some(cells);
            seen += 1;
        }
        let Some(width) = n else {
            return Err(Error::Parse {
                line: 0,
                message: "table has no rows".into(),
            });
        };
        if seen != 1 << width {
            let missing = rows.iter().position(Option::is_none).unwrap_or(0);
            return Err(Error::Parse {
                line: 0,
                message: format!(
                    "missing row for input {:0width$b} ({seen} of {} rows present)",
                    missing,
                    1 << width
                ),
            });
        }
        TruthTable::new(
            width,
            rows.into_iter()
                .map(|r| r.expect("all rows present"))
                .collect(),
        )
    }
}
