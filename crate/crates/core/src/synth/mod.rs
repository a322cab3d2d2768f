// SPDX-License-Identifier: Apache-2.0

//! Boolean synthesis of reversible affine maps into CNOT/NOT programs.
//!
//! Pipeline: [`TruthTable`] with don't-cares, completed by
//! [`enumerate_completions`] into affine reversible [`LinearMap`]s, each
//! turned into a [`CnotProgram`] by [`synthesize`] and checked by
//! [`verify_program`].

pub mod anf;
pub mod linear;
pub mod truth_table;

pub use anf::{anf_of, is_affine, AnfPolynomial};
pub use linear::LinearMap;
pub use truth_table::{Cell, TruthTable};

use crate::error::{Error, Result};
use crate::gates::{CnotGate, CnotProgram, Gate};
use linear::gf2_rank;

/// A fully specified table together with the affine map it encodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Completion {
    pub table: TruthTable,
    pub map: LinearMap,
}

impl Completion {
    /// Values given to the don't-cares of `original`, row-major.
    pub fn assignment(&self, original: &TruthTable) -> Vec<bool> {
        original
            .dont_cares()
            .into_iter()
            .map(|(r, j)| self.table.output(r)[j].expect("completion is complete"))
            .collect()
    }
}

fn parity(x: usize) -> bool {
    x.count_ones() & 1 == 1
}

/// Affine functions `(mask, constant)` agreeing with every fixed cell of a
/// column.
fn affine_candidates(column: &[Cell], n: usize) -> Vec<(usize, bool)> {
    let mut out = Vec::new();
    for mask in 0..1usize << n {
        for constant in [false, true] {
            let fits = column
                .iter()
                .enumerate()
                .all(|(k, c)| c.is_none_or(|b| b == (parity(mask & k) ^ constant)));
            if fits {
                out.push((mask, constant));
            }
        }
    }
    out
}

/// Every way to fill the don't-cares so that all outputs are affine and the
/// whole map is reversible, ordered lexicographically by the filled bits.
pub fn enumerate_completions(table: &TruthTable) -> Vec<Completion> {
    let n = table.n();
    let candidates: Vec<Vec<(usize, bool)>> = (0..n)
        .map(|j| affine_candidates(&table.column(j), n))
        .collect();

    let mut found = Vec::new();
    let mut chosen: Vec<(usize, bool)> = Vec::with_capacity(n);
    search(&candidates, &mut chosen, &mut found);

    let mut completions: Vec<(Vec<bool>, Completion)> = found
        .into_iter()
        .map(|choice| {
            let rows = choice.iter().map(|&(m, _)| m).collect();
            let affine = choice
                .iter()
                .enumerate()
                .filter(|(_, &(_, c))| c)
                .fold(0, |acc, (i, _)| acc | 1 << (n - 1 - i));
            let map = LinearMap::new(n, rows, affine).expect("candidate masks fit");
            let completion = Completion {
                table: map.to_truth_table(),
                map,
            };
            (completion.assignment(table), completion)
        })
        .collect();
    completions.sort_by(|a, b| a.0.cmp(&b.0));
    completions.into_iter().map(|(_, c)| c).collect()
}

fn search(
    candidates: &[Vec<(usize, bool)>],
    chosen: &mut Vec<(usize, bool)>,
    found: &mut Vec<Vec<(usize, bool)>>,
) {
    let depth = chosen.len();
    if depth == candidates.len() {
        found.push(chosen.clone());
        return;
    }
    for &cand in &candidates[depth] {
        chosen.push(cand);
        let masks: Vec<usize> = chosen.iter().map(|&(m, _)| m).collect();
        if gf2_rank(&masks) == masks.len() {
            search(candidates, chosen, found);
        }
        chosen.pop();
    }
}

/// Per-column facts used to explain an empty completion list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnReport {
    pub column: usize,
    /// Number of affine functions consistent with the fixed cells.
    pub affine_fits: usize,
    /// ANF with don't-cares read as 0.
    pub anf: AnfPolynomial,
}

pub fn column_reports(table: &TruthTable) -> Vec<ColumnReport> {
    let n = table.n();
    (0..n)
        .map(|j| {
            let column = table.column(j);
            let zero_filled: Vec<bool> = column.iter().map(|c| c.unwrap_or(false)).collect();
            ColumnReport {
                column: j,
                affine_fits: affine_candidates(&column, n).len(),
                anf: AnfPolynomial::from_bits(&zero_filled),
            }
        })
        .collect()
}

/// CNOT program realizing `map` by Gaussian elimination over GF(2).
///
/// Forward elimination column by column (pivot: lowest row index with a 1),
/// then back-substitution. Constant flips become an inverted target on the
/// last CNOT writing that qubit when nothing reads it afterwards, otherwise a
/// trailing NOT.
pub fn synthesize(map: &LinearMap) -> Result<CnotProgram> {
    let n = map.n();
    let bit = |j: usize| 1usize << (n - 1 - j);
    let mut m = map.rows().to_vec();
    // row operations `row[target] ^= row[control]`, in the order performed
    let mut ops: Vec<(usize, usize)> = Vec::new();

    for col in 0..n {
        if m[col] & bit(col) == 0 {
            let pivot = (col + 1..n)
                .find(|&r| m[r] & bit(col) != 0)
                .ok_or(Error::NotReversible)?;
            m[col] ^= m[pivot];
            ops.push((pivot, col));
        }
        for r in col + 1..n {
            if m[r] & bit(col) != 0 {
                m[r] ^= m[col];
                ops.push((col, r));
            }
        }
    }
    for col in (0..n).rev() {
        for r in 0..col {
            if m[r] & bit(col) != 0 {
                m[r] ^= m[col];
                ops.push((col, r));
            }
        }
    }
    debug_assert!((0..n).all(|i| m[i] == bit(i)));

    let mut gates: Vec<Gate> = ops
        .into_iter()
        .rev()
        .map(|(c, t)| Gate::Cnot(CnotGate::new(c, t).expect("row operations use distinct rows")))
        .collect();

    for i in (0..n).filter(|&i| map.affine() & bit(i) != 0) {
        let last_write = gates
            .iter()
            .rposition(|g| matches!(g, Gate::Cnot(c) if c.target == i));
        let foldable = last_write.filter(|&w| {
            !gates[w + 1..]
                .iter()
                .any(|g| matches!(g, Gate::Cnot(c) if c.control == i))
        });
        match foldable {
            Some(w) => {
                if let Gate::Cnot(c) = &mut gates[w] {
                    c.invert_target = !c.invert_target;
                }
            }
            None => gates.push(Gate::Not { target: i }),
        }
    }
    Ok(CnotProgram::from_gates(gates))
}

/// Classical behavior of `prog` on `n` bits.
pub fn program_truth_table(prog: &CnotProgram, n: usize) -> Result<TruthTable> {
    let perm = prog.permutation(n)?;
    TruthTable::from_fn(n, |k| perm[k])
}

/// Whether `prog` sends every basis input to the table's output; don't-care
/// cells accept either bit.
pub fn verify_program(prog: &CnotProgram, table: &TruthTable) -> bool {
    let Ok(actual) = program_truth_table(prog, table.n()) else {
        return false;
    };
    table.is_refined_by(&actual)
}
