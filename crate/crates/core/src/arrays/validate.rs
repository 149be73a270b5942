//! Checks for the PDA, MRA and cyclic-PDA conditions.
//!
//! Every validator scans deterministically and records the first violation
//! it meets. Pairs of equal symbols are ordered by their row-major cell
//! indices, so the reported pair is the smallest offending one.

use std::fmt;

use serde::Serialize;

use super::stats::{compute_stats, star_block_start};
use super::{CodedArray, Entry};

/// A defining condition of a PDA or MRA.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Condition {
    /// Every column holds the same number of stars.
    A1,
    /// Every integer in `[0, max]` occurs, and at least one integer exists.
    A2,
    /// Every integer occurs at least twice.
    C1,
    /// Every integer occurs the same number of times.
    C1Regular,
    /// Equal integers lie in distinct rows and distinct columns.
    C21,
    /// The crossing cells of two equal integers are stars.
    C22,
    /// Star blocks are cyclically consecutive and shift by `l` per column.
    LCyclic,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Condition::A1 => "A1",
            Condition::A2 => "A2",
            Condition::C1 => "C1",
            Condition::C1Regular => "C1'",
            Condition::C21 => "C2-1",
            Condition::C22 => "C2-2",
            Condition::LCyclic => "l-cyclic",
        };
        f.write_str(name)
    }
}

/// Concrete evidence for a failed condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    CellPair {
        first: (usize, usize),
        second: (usize, usize),
    },
    Column {
        col: usize,
    },
    Cell {
        cell: (usize, usize),
    },
    MissingSymbol {
        symbol: usize,
    },
    NoSymbols,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: Condition,
    pub witness: Witness,
}

/// Outcome of a validator. Conditions that were not examined are `None`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub a1: Option<bool>,
    pub a2: Option<bool>,
    pub c1: Option<bool>,
    pub c1_regular: Option<bool>,
    pub c2_1: Option<bool>,
    pub c2_2: Option<bool>,
    pub l_cyclic: Option<bool>,
    /// `Z`, when every column holds the same number of stars.
    pub star_count: Option<usize>,
    /// `g`, when every symbol has the same multiplicity.
    pub regularity: Option<usize>,
    pub first_violation: Option<Violation>,
}

impl ValidationReport {
    /// True iff every examined condition holds.
    pub fn passed(&self) -> bool {
        self.flags().iter().all(|(_, v)| v.unwrap_or(true))
    }

    /// `A3` is the conjunction of the two crossing conditions.
    pub fn a3(&self) -> Option<bool> {
        Some(self.c2_1? && self.c2_2?)
    }

    pub fn flags(&self) -> [(Condition, Option<bool>); 7] {
        [
            (Condition::A1, self.a1),
            (Condition::A2, self.a2),
            (Condition::C1, self.c1),
            (Condition::C1Regular, self.c1_regular),
            (Condition::C21, self.c2_1),
            (Condition::C22, self.c2_2),
            (Condition::LCyclic, self.l_cyclic),
        ]
    }

    fn fail(&mut self, condition: Condition, witness: Witness) {
        if self.first_violation.is_none() {
            self.first_violation = Some(Violation { condition, witness });
        }
    }
}

struct CrossingScan {
    c2_1: Option<Witness>,
    c2_2: Option<Witness>,
    first: Option<(Condition, Witness)>,
}

/// Examines every pair of equal symbols for the row/column and crossing
/// conditions. Each witness is the smallest violating pair in row-major order.
fn scan_crossings(array: &CodedArray) -> CrossingScan {
    let k = array.cols();
    let index = |(f, c): (usize, usize)| f * k + c;
    let mut best_21: Option<(usize, usize, Witness)> = None;
    let mut best_22: Option<(usize, usize, Witness)> = None;
    for cells in array.occurrences().values() {
        for (i, &a) in cells.iter().enumerate() {
            for &b in &cells[i + 1..] {
                let key = (index(a), index(b));
                let witness = Witness::CellPair {
                    first: a,
                    second: b,
                };
                let slot = if a.0 == b.0 || a.1 == b.1 {
                    &mut best_21
                } else if !array.is_star(a.0, b.1) || !array.is_star(b.0, a.1) {
                    &mut best_22
                } else {
                    continue;
                };
                if slot.as_ref().is_none_or(|(x, y, _)| key < (*x, *y)) {
                    *slot = Some((key.0, key.1, witness));
                }
            }
        }
    }
    let first = match (&best_21, &best_22) {
        (Some(x), Some(y)) if (y.0, y.1) < (x.0, x.1) => Some((Condition::C22, y.2.clone())),
        (Some(x), _) => Some((Condition::C21, x.2.clone())),
        (None, Some(y)) => Some((Condition::C22, y.2.clone())),
        (None, None) => None,
    };
    CrossingScan {
        c2_1: best_21.map(|t| t.2),
        c2_2: best_22.map(|t| t.2),
        first,
    }
}

fn record_crossings(report: &mut ValidationReport, array: &CodedArray) {
    let scan = scan_crossings(array);
    report.c2_1 = Some(scan.c2_1.is_none());
    report.c2_2 = Some(scan.c2_2.is_none());
    if let Some((condition, witness)) = scan.first {
        report.fail(condition, witness);
    }
}

fn check_a1(report: &mut ValidationReport, array: &CodedArray) {
    let stars: Vec<usize> = (0..array.cols())
        .map(|k| array.column(k).filter(|e| e.is_star()).count())
        .collect();
    match stars.iter().position(|&z| z != stars[0]) {
        None => {
            report.a1 = Some(true);
            report.star_count = Some(stars[0]);
        }
        Some(col) => {
            report.a1 = Some(false);
            report.fail(Condition::A1, Witness::Column { col });
        }
    }
}

fn check_a2(report: &mut ValidationReport, array: &CodedArray) {
    let symbols = array.symbols();
    let missing = symbols
        .iter()
        .enumerate()
        .find(|(i, s)| *i != **s)
        .map(|(i, _)| i);
    match (symbols.is_empty(), missing) {
        (true, _) => {
            report.a2 = Some(false);
            report.fail(Condition::A2, Witness::NoSymbols);
        }
        (false, Some(symbol)) => {
            report.a2 = Some(false);
            report.fail(Condition::A2, Witness::MissingSymbol { symbol });
        }
        (false, None) => report.a2 = Some(true),
    }
}

fn check_c1(report: &mut ValidationReport, array: &CodedArray) {
    let stats = compute_stats(array);
    report.regularity = stats.common_g;
    if stats.per_symbol_multiplicity.is_empty() {
        report.c1 = Some(false);
        report.fail(Condition::C1, Witness::NoSymbols);
        return;
    }
    let lonely = array
        .cells()
        .find(|&(_, _, e)| matches!(e, Entry::Symbol(s) if stats.per_symbol_multiplicity[&s] < 2));
    match lonely {
        Some((f, k, _)) => {
            report.c1 = Some(false);
            report.fail(Condition::C1, Witness::Cell { cell: (f, k) });
        }
        None => report.c1 = Some(true),
    }
}

/// MRA check: `C1` then `C2`. Regularity is reported but not required.
pub fn validate_mra(array: &CodedArray) -> ValidationReport {
    let mut report = ValidationReport::default();
    check_c1(&mut report, array);
    record_crossings(&mut report, array);
    report.star_count = compute_stats(array).uniform_stars();
    report
}

/// PDA check: `A1`, `A2`, then `A3` (the two crossing conditions).
pub fn validate_pda(array: &CodedArray) -> ValidationReport {
    let mut report = ValidationReport::default();
    check_a1(&mut report, array);
    check_a2(&mut report, array);
    record_crossings(&mut report, array);
    report.regularity = compute_stats(array).common_g;
    report
}

/// `l`-cyclic `g`-regular PDA check.
///
/// Requires the PDA conditions, a common multiplicity `g >= 2`, cyclically
/// consecutive star blocks, and column `k`'s block starting `l` rows below
/// column `k - 1`'s block.
pub fn validate_l_cyclic(array: &CodedArray, l: usize) -> ValidationReport {
    let mut report = validate_pda(array);
    let regular = report.regularity.is_some_and(|g| g >= 2);
    report.c1_regular = Some(regular);
    if !regular {
        let witness = match array.cells().find(|(_, _, e)| !e.is_star()) {
            Some((f, k, _)) => Witness::Cell { cell: (f, k) },
            None => Witness::NoSymbols,
        };
        report.fail(Condition::C1Regular, witness);
    }

    let f = array.rows();
    let z = report.star_count;
    let bad_col = match (z, star_block_start(array, 0)) {
        (Some(z), _) if z == f => None,
        (Some(_), Some(start)) => (1..array.cols())
            .find(|&k| star_block_start(array, k) != Some((start + k * l) % f)),
        (Some(_), None) => Some(0),
        (None, _) => match report.first_violation.as_ref().map(|v| &v.witness) {
            Some(Witness::Column { col }) => Some(*col),
            _ => Some(0),
        },
    };
    report.l_cyclic = Some(bad_col.is_none());
    if let Some(col) = bad_col {
        report.fail(Condition::LCyclic, Witness::Column { col });
    }
    report
}
