// SPDX-License-Identifier: Apache-2.0

//! The twelve tabulated resource states for the optimal cloner, each with two
//! CNOT circuits and the published `cos^2` and sign columns.
//!
//! Entries are stored as printed. A few printed `cos^2` cells are not
//! solutions of the preparation equations (see `printed_cos2` tests); the
//! solver is the reference for those values.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gates::{BarredControl, CnotProgram};
use crate::prep::{Branch, PrepCoefficients, SignPattern};

pub const ROW_COUNT: usize = 12;

/// Which of the two circuits (and matching sign pattern / `cos^2` sign) of a
/// row is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Upper,
    Lower,
}

impl Variant {
    pub const BOTH: [Variant; 2] = [Variant::Upper, Variant::Lower];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Upper => "upper",
            Variant::Lower => "lower",
        }
    }

    /// Solver branch whose `cos^2` values carry this variant's sign.
    pub fn branch(self) -> Branch {
        match self {
            Variant::Upper => Branch::Minus,
            Variant::Lower => Branch::Plus,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "upper" | "u" => Ok(Variant::Upper),
            "lower" | "l" => Ok(Variant::Lower),
            other => Err(Error::Parse {
                line: 1,
                message: format!("unknown variant `{other}` (expected upper or lower)"),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Surd {
    InvSqrt2,
    Sqrt2Over3,
    InvSqrt5,
    TwoOverSqrt5,
    Sqrt5Over3,
}

impl Surd {
    pub fn value(self) -> f64 {
        match self {
            Surd::InvSqrt2 => 1.0 / 2f64.sqrt(),
            Surd::Sqrt2Over3 => 2f64.sqrt() / 3.0,
            Surd::InvSqrt5 => 1.0 / 5f64.sqrt(),
            Surd::TwoOverSqrt5 => 2.0 / 5f64.sqrt(),
            Surd::Sqrt5Over3 => 5f64.sqrt() / 3.0,
        }
    }

    fn text(self) -> &'static str {
        match self {
            Surd::InvSqrt2 => "1/√2",
            Surd::Sqrt2Over3 => "√2/3",
            Surd::InvSqrt5 => "1/√5",
            Surd::TwoOverSqrt5 => "2/√5",
            Surd::Sqrt5Over3 => "√5/3",
        }
    }
}

/// A printed `cos^2` cell: `½(1 ∓ s)` when `halved`, else `1 ∓ s`.
/// `upper_minus` selects `∓` (upper variant subtracts) over `±`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrintedCos2 {
    pub halved: bool,
    pub upper_minus: bool,
    pub surd: Surd,
}

impl PrintedCos2 {
    pub fn value(&self, variant: Variant) -> f64 {
        let minus = self.upper_minus == (variant == Variant::Upper);
        let s = if minus { -1.0 } else { 1.0 };
        let core = 1.0 + s * self.surd.value();
        if self.halved {
            0.5 * core
        } else {
            core
        }
    }
}

impl fmt::Display for PrintedCos2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pm = if self.upper_minus { '∓' } else { '±' };
        if self.halved {
            write!(f, "½(1{pm}{})", self.surd.text())
        } else {
            write!(f, "1{pm}{}", self.surd.text())
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table1Row {
    pub number: usize,
    /// Coefficients times `sqrt(6)`.
    pub numerators: [u8; 4],
    pub printed_cos2: [PrintedCos2; 3],
    /// Upper, lower.
    pub sign_patterns: [SignPattern; 2],
    /// Operator-product notation, upper and lower.
    pub circuits: [&'static str; 2],
}

impl Table1Row {
    pub fn coefficients(&self) -> PrepCoefficients {
        let s = 6f64.sqrt();
        PrepCoefficients::new(self.numerators.map(|n| n as f64 / s))
            .expect("tabulated coefficients are normalized")
    }

    pub fn sign_pattern(&self, variant: Variant) -> SignPattern {
        self.sign_patterns[variant as usize]
    }

    pub fn notation(&self, variant: Variant) -> &'static str {
        self.circuits[variant as usize]
    }

    /// The row's circuit with a barred control read as a persistent negation.
    pub fn program(&self, variant: Variant) -> CnotProgram {
        self.program_with(variant, BarredControl::Negate)
    }

    pub fn program_with(&self, variant: Variant, barred_control: BarredControl) -> CnotProgram {
        CnotProgram::from_product_notation(self.notation(variant), barred_control)
            .expect("tabulated circuits parse")
    }
}

type RawRow = (
    [u8; 4],
    [(bool, bool, Surd); 3],
    [&'static str; 2],
    [&'static str; 2],
);

// (halved, upper_minus, surd) per cos^2 column.
const H: bool = true;
const ONE: bool = false;
const MP: bool = true;
const PM: bool = false;

const RAW: [RawRow; ROW_COUNT] = [
    (
        [2, 1, 1, 0],
        [
            (H, MP, Surd::InvSqrt2),
            (ONE, MP, Surd::Sqrt2Over3),
            (H, MP, Surd::InvSqrt2),
        ],
        ["---,+++", "+++,+-+"],
        ["P21 P02 P10", "P12 P20 P01"],
    ),
    (
        [2, 1, 0, 1],
        [
            (H, MP, Surd::InvSqrt5),
            (H, MP, Surd::Sqrt5Over3),
            (H, MP, Surd::TwoOverSqrt5),
        ],
        ["+++,-+-", "+++,+++"],
        ["P21 P10 P02", "P10 P20 P02 P01"],
    ),
    (
        [2, 0, 1, 1],
        [
            (H, MP, Surd::InvSqrt5),
            (H, MP, Surd::Sqrt5Over3),
            (H, MP, Surd::InvSqrt5),
        ],
        ["+++,-+-", "+++,+++"],
        ["P12 P01 P20", "P01 P02 P20 P10"],
    ),
    (
        [1, 2, 1, 0],
        [
            (H, PM, Surd::InvSqrt5),
            (H, MP, Surd::Sqrt5Over3),
            (H, MP, Surd::TwoOverSqrt5),
        ],
        ["---,+++", "+++,+-+"],
        ["P20 P10 P01 P0!2", "P21 P10 P0!2"],
    ),
    (
        [1, 2, 0, 1],
        [
            (H, PM, Surd::InvSqrt2),
            (ONE, MP, Surd::Sqrt2Over3),
            (H, MP, Surd::InvSqrt2),
        ],
        ["+++,-+-", "+++,+++"],
        ["P12 P!20 P01", "P21 P0!2 P10"],
    ),
    (
        [1, 1, 2, 0],
        [
            (H, MP, Surd::TwoOverSqrt5),
            (H, MP, Surd::Sqrt5Over3),
            (H, PM, Surd::InvSqrt5),
        ],
        ["---,+++", "+++,+-+"],
        ["P01 P02 P20 P!10", "P12 P0!1 P20"],
    ),
    (
        [1, 1, 0, 2],
        [
            (H, PM, Surd::TwoOverSqrt5),
            (H, MP, Surd::Sqrt5Over3),
            (H, PM, Surd::InvSqrt5),
        ],
        ["+++,-+-", "+++,+++"],
        ["P12 P0!1 P!20", "P01 P02 P!20 P!10"],
    ),
    (
        [1, 0, 2, 1],
        [
            (H, MP, Surd::InvSqrt2),
            (ONE, MP, Surd::Sqrt2Over3),
            (H, PM, Surd::InvSqrt2),
        ],
        ["+++,-+-", "+++,+++"],
        ["P21 P02 P!10", "P12 P20 P0!1"],
    ),
    (
        [1, 0, 1, 2],
        [
            (H, PM, Surd::InvSqrt5),
            (H, MP, Surd::Sqrt5Over3),
            (H, PM, Surd::TwoOverSqrt5),
        ],
        ["+++,-+-", "+++,+++"],
        ["P21 P!10 P0!2", "P20 P10 P0!1 P0!2"],
    ),
    (
        [0, 1, 1, 2],
        [
            (H, PM, Surd::InvSqrt2),
            (ONE, MP, Surd::Sqrt2Over3),
            (H, PM, Surd::InvSqrt2),
        ],
        ["---,+++", "+++,+-+"],
        ["P21 P0!2 P!10", "P12 P!20 P0!1"],
    ),
    (
        [0, 1, 2, 1],
        [
            (H, MP, Surd::InvSqrt5),
            (H, MP, Surd::Sqrt5Over3),
            (H, PM, Surd::TwoOverSqrt5),
        ],
        ["---,+++", "+++,+-+"],
        ["P21 P!10 P02", "P20 P10 P0!1 P02"],
    ),
    (
        [0, 2, 1, 1],
        [
            (H, PM, Surd::TwoOverSqrt5),
            (H, MP, Surd::Sqrt5Over3),
            (H, MP, Surd::InvSqrt5),
        ],
        ["---,+++", "+++,+-+"],
        ["P12 P01 P!20", "P01 P02 P!20 P10"],
    ),
];

/// All twelve rows in published order.
pub fn table1_rows() -> Vec<Table1Row> {
    RAW.iter()
        .enumerate()
        .map(|(i, (numerators, cols, signs, circuits))| Table1Row {
            number: i + 1,
            numerators: *numerators,
            printed_cos2: cols.map(|(halved, upper_minus, surd)| PrintedCos2 {
                halved,
                upper_minus,
                surd,
            }),
            sign_patterns: signs.map(|s| s.parse().expect("tabulated sign patterns parse")),
            circuits: *circuits,
        })
        .collect()
}

/// Row `number` (1-based).
pub fn table1_row(number: usize) -> Result<Table1Row> {
    if !(1..=ROW_COUNT).contains(&number) {
        return Err(Error::InvalidRow(number));
    }
    Ok(table1_rows().swap_remove(number - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::Gate;
    use crate::prep::{residual, solve_angles, solve_branches};
    use crate::state::EXACT_TOL;

    #[test]
    fn row_one_contents() {
        let row = table1_row(1).unwrap();
        assert_eq!(row.numerators, [2, 1, 1, 0]);
        assert_eq!(
            row.program(Variant::Upper).to_product_notation(),
            "P21 P02 P10"
        );
        assert_eq!(
            row.program(Variant::Lower).to_product_notation(),
            "P12 P20 P01"
        );
        assert_eq!(row.sign_pattern(Variant::Upper).to_string(), "---,+++");
        assert_eq!(row.sign_pattern(Variant::Lower).to_string(), "+++,+-+");
        assert_eq!(row.printed_cos2[1].to_string(), "1∓√2/3");
    }

    #[test]
    fn row_two_lower_is_four_gate_machine() {
        let row = table1_row(2).unwrap();
        let lower = row.program(Variant::Lower);
        assert_eq!(lower.cnot_count(), 4);
        assert_eq!(lower.gates()[0], Gate::cnot(0, 1).unwrap());
        // the upper variant needs three CNOTs, two touching the input qubit
        let upper = row.program(Variant::Upper);
        assert_eq!(upper.cnot_count(), 3);
        let touching_input = upper
            .gates()
            .iter()
            .filter(|g| matches!(g, Gate::Cnot(c) if c.control == 0 || c.target == 0))
            .count();
        assert_eq!(touching_input, 2);
    }

    #[test]
    fn row_nine_contents() {
        let row = table1_row(9).unwrap();
        assert_eq!(row.numerators, [1, 0, 1, 2]);
        assert_eq!(row.notation(Variant::Upper), "P21 P!10 P0!2");
        assert_eq!(row.notation(Variant::Lower), "P20 P10 P0!1 P0!2");
    }

    #[test]
    fn rows_are_distinct_permutations() {
        let rows = table1_rows();
        assert_eq!(rows.len(), ROW_COUNT);
        for r in &rows {
            let mut sorted = r.numerators;
            sorted.sort();
            assert!(sorted == [0, 1, 1, 2], "row {}", r.number);
            assert!(
                (r.coefficients().values().iter().map(|x| x * x).sum::<f64>() - 1.0).abs()
                    < EXACT_TOL
            );
        }
        for (i, a) in rows.iter().enumerate() {
            for b in &rows[i + 1..] {
                assert_ne!(a.numerators, b.numerators);
            }
        }
        assert!(table1_row(0).is_err());
        assert!(table1_row(13).is_err());
    }

    #[test]
    fn documented_sign_patterns_solve_their_branch() {
        for row in table1_rows() {
            let branches = solve_branches(&row.coefficients()).unwrap();
            for variant in Variant::BOTH {
                let b = branches
                    .iter()
                    .find(|b| b.branch == Some(variant.branch()))
                    .unwrap();
                assert!(
                    b.triples
                        .iter()
                        .any(|t| t.signs() == row.sign_pattern(variant)),
                    "row {} {variant}",
                    row.number
                );
            }
        }
    }

    #[test]
    fn printed_cos2_mismatches_are_exactly_the_known_cells() {
        let mut mismatches = Vec::new();
        for row in table1_rows() {
            let branches = solve_branches(&row.coefficients()).unwrap();
            for variant in Variant::BOTH {
                let b = branches
                    .iter()
                    .find(|b| b.branch == Some(variant.branch()))
                    .unwrap();
                for col in 0..3 {
                    let printed = row.printed_cos2[col].value(variant);
                    if (printed - b.cos_squared[col]).abs() > EXACT_TOL {
                        mismatches.push((row.number, col, variant));
                    }
                }
            }
        }
        let mut expected = Vec::new();
        for (row, col) in [(1, 1), (3, 0), (5, 1), (8, 1), (10, 1)] {
            for v in Variant::BOTH {
                expected.push((row, col, v));
            }
        }
        mismatches.sort_by_key(|(r, c, v)| (*r, *c, *v as usize));
        assert_eq!(mismatches, expected);
    }

    #[test]
    fn corrected_values_for_mismatched_cells() {
        let s2 = 2f64.sqrt();
        let r5 = 5f64.sqrt();
        for (row, col, upper, lower) in [
            (1, 1, 0.5 - s2 / 3.0, 0.5 + s2 / 3.0),
            (5, 1, 0.5 - s2 / 3.0, 0.5 + s2 / 3.0),
            (8, 1, 0.5 - s2 / 3.0, 0.5 + s2 / 3.0),
            (10, 1, 0.5 - s2 / 3.0, 0.5 + s2 / 3.0),
            (3, 0, 0.5 * (1.0 - 2.0 / r5), 0.5 * (1.0 + 2.0 / r5)),
        ] {
            let branches = solve_branches(&table1_row(row).unwrap().coefficients()).unwrap();
            for (variant, want) in [(Variant::Upper, upper), (Variant::Lower, lower)] {
                let b = branches
                    .iter()
                    .find(|b| b.branch == Some(variant.branch()))
                    .unwrap();
                assert!((b.cos_squared[col] - want).abs() < EXACT_TOL);
            }
        }
    }

    #[test]
    fn every_row_has_solutions() {
        for row in table1_rows() {
            let c = row.coefficients();
            let sols = solve_angles(&c).unwrap();
            assert_eq!(sols.len(), 8, "row {}", row.number);
            assert!(sols.iter().all(|t| residual(t, &c) < 1e-12));
        }
    }
}
