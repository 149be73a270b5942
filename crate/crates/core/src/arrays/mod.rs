//! The star/symbol array shared by PDAs and MRAs.
//!
//! A [`CodedArray`] is an immutable `F x K` grid of [`Entry`] values stored in
//! row-major order. Arrays built by the constructors are always normalized
//! (symbols are exactly `0..S`); arrays parsed from text keep their labels as
//! written so that the PDA "every declared integer occurs" condition can be
//! checked on the raw input.

mod stats;
mod text;
mod truncate;
mod validate;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

pub use stats::{compute_stats, ArrayStats};
pub use text::{parse_array, ParseError};
pub use truncate::{truncate_columns, TruncateError};
pub use validate::{
    validate_l_cyclic, validate_mra, validate_pda, Condition, ValidationReport, Violation,
    Witness,
};

/// One cell of a coded array.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Entry {
    Star,
    Symbol(usize),
}

impl Entry {
    pub fn is_star(self) -> bool {
        matches!(self, Entry::Star)
    }

    pub fn symbol(self) -> Option<usize> {
        match self {
            Entry::Star => None,
            Entry::Symbol(s) => Some(s),
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Star => f.write_str("*"),
            Entry::Symbol(s) => write!(f, "{s}"),
        }
    }
}

/// Errors raised when assembling an array from raw cells.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShapeError {
    #[error("array must have at least one row and one column")]
    Empty,
    #[error("row {row} has {found} entries, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("cannot concatenate arrays with {left} and {right} rows")]
    RowMismatch { left: usize, right: usize },
    #[error("symbol {symbol} + offset {offset} overflows")]
    Overflow { symbol: usize, offset: usize },
}

/// An `F x K` array of stars and non-negative integer symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CodedArray {
    rows: usize,
    cols: usize,
    cells: Vec<Entry>,
    symbol_count: usize,
}

impl CodedArray {
    /// Builds an array from row-major cells.
    pub fn new(rows: usize, cols: usize, cells: Vec<Entry>) -> Result<Self, ShapeError> {
        if rows == 0 || cols == 0 {
            return Err(ShapeError::Empty);
        }
        if cells.len() != rows * cols {
            return Err(ShapeError::Ragged {
                row: cells.len() / cols,
                expected: cols,
                found: cells.len() % cols,
            });
        }
        let mut distinct: Vec<usize> = cells.iter().filter_map(|e| e.symbol()).collect();
        distinct.sort_unstable();
        distinct.dedup();
        Ok(CodedArray {
            rows,
            cols,
            cells,
            symbol_count: distinct.len(),
        })
    }

    /// Builds an array from a list of equally long rows.
    pub fn from_rows(rows: Vec<Vec<Entry>>) -> Result<Self, ShapeError> {
        let height = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        if height == 0 || width == 0 {
            return Err(ShapeError::Empty);
        }
        let mut cells = Vec::with_capacity(height * width);
        for (row, entries) in rows.into_iter().enumerate() {
            if entries.len() != width {
                return Err(ShapeError::Ragged {
                    row,
                    expected: width,
                    found: entries.len(),
                });
            }
            cells.extend(entries);
        }
        CodedArray::new(height, width, cells)
    }

    /// Number of rows `F` (batches).
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns `K` (reducers).
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Number of distinct integer symbols `S`.
    pub fn symbol_count(&self) -> usize {
        self.symbol_count
    }

    pub fn get(&self, row: usize, col: usize) -> Entry {
        assert!(row < self.rows && col < self.cols, "cell ({row},{col}) out of range");
        self.cells[row * self.cols + col]
    }

    pub fn is_star(&self, row: usize, col: usize) -> bool {
        self.get(row, col).is_star()
    }

    pub fn row(&self, row: usize) -> &[Entry] {
        &self.cells[row * self.cols..(row + 1) * self.cols]
    }

    pub fn column(&self, col: usize) -> impl Iterator<Item = Entry> + '_ {
        (0..self.rows).map(move |f| self.get(f, col))
    }

    /// Cells in row-major order as `(row, col, entry)`.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, Entry)> + '_ {
        self.cells
            .iter()
            .enumerate()
            .map(move |(i, &e)| (i / self.cols, i % self.cols, e))
    }

    /// Number of non-star cells.
    pub fn filled_count(&self) -> usize {
        self.cells.iter().filter(|e| !e.is_star()).count()
    }

    /// Positions of every symbol, each list in row-major order.
    pub fn occurrences(&self) -> BTreeMap<usize, Vec<(usize, usize)>> {
        let mut map: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for (f, k, e) in self.cells() {
            if let Entry::Symbol(s) = e {
                map.entry(s).or_default().push((f, k));
            }
        }
        map
    }

    /// Distinct symbols in ascending order.
    pub fn symbols(&self) -> Vec<usize> {
        self.occurrences().into_keys().collect()
    }

    /// Symbols present in a column, ascending.
    pub fn column_symbols(&self, col: usize) -> Vec<usize> {
        let mut symbols: Vec<usize> = self.column(col).filter_map(Entry::symbol).collect();
        symbols.sort_unstable();
        symbols.dedup();
        symbols
    }

    /// Whether the symbols are exactly `0..S`.
    pub fn is_normalized(&self) -> bool {
        self.symbols().iter().enumerate().all(|(i, &s)| i == s)
    }

    /// Relabels symbols onto `0..S`, preserving their relative order.
    pub fn normalized(&self) -> CodedArray {
        let relabel: HashMap<usize, usize> = self
            .symbols()
            .into_iter()
            .enumerate()
            .map(|(new, old)| (old, new))
            .collect();
        let cells = self
            .cells
            .iter()
            .map(|e| match e {
                Entry::Star => Entry::Star,
                Entry::Symbol(s) => Entry::Symbol(relabel[s]),
            })
            .collect();
        CodedArray {
            cells,
            ..self.clone()
        }
    }

    /// Equality up to a bijection between symbol labels: the star positions
    /// coincide and two cells share a symbol in `self` iff they do in `other`.
    pub fn equal_up_to_relabeling(&self, other: &CodedArray) -> bool {
        if self.rows != other.rows || self.cols != other.cols {
            return false;
        }
        let mut forward: HashMap<usize, usize> = HashMap::new();
        let mut backward: HashMap<usize, usize> = HashMap::new();
        for (a, b) in self.cells.iter().zip(&other.cells) {
            match (a, b) {
                (Entry::Star, Entry::Star) => {}
                (Entry::Symbol(x), Entry::Symbol(y)) => {
                    if *forward.entry(*x).or_insert(*y) != *y
                        || *backward.entry(*y).or_insert(*x) != *x
                    {
                        return false;
                    }
                }
                _ => return false,
            }
        }
        true
    }

    /// Keeps the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> CodedArray {
        let mut cells = Vec::with_capacity(self.rows * cols.len());
        for f in 0..self.rows {
            cells.extend(cols.iter().map(|&k| self.get(f, k)));
        }
        CodedArray::new(self.rows, cols.len(), cells).expect("non-empty column selection")
    }

    /// Adds `offset` to every symbol; stars are unchanged.
    pub fn offset_symbols(&self, offset: usize) -> Result<CodedArray, ShapeError> {
        let cells = self
            .cells
            .iter()
            .map(|e| match *e {
                Entry::Star => Ok(Entry::Star),
                Entry::Symbol(s) => s
                    .checked_add(offset)
                    .map(Entry::Symbol)
                    .ok_or(ShapeError::Overflow { symbol: s, offset }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CodedArray {
            cells,
            ..self.clone()
        })
    }

    /// Horizontal concatenation of arrays with equal row counts.
    pub fn hconcat(blocks: &[CodedArray]) -> Result<CodedArray, ShapeError> {
        let first = blocks.first().ok_or(ShapeError::Empty)?;
        let rows = first.rows;
        if let Some(bad) = blocks.iter().find(|b| b.rows != rows) {
            return Err(ShapeError::RowMismatch {
                left: rows,
                right: bad.rows,
            });
        }
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut cells = Vec::with_capacity(rows * cols);
        for f in 0..rows {
            for block in blocks {
                cells.extend_from_slice(block.row(f));
            }
        }
        CodedArray::new(rows, cols, cells)
    }

    /// Serializes to the text format accepted by [`parse_array`].
    pub fn to_text(&self) -> String {
        text::serialize(self)
    }
}

impl fmt::Display for CodedArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
pub(crate) fn grid(rows: &[&str]) -> CodedArray {
    let parsed = rows
        .iter()
        .map(|r| {
            r.split_whitespace()
                .map(|t| {
                    if t == "*" {
                        Entry::Star
                    } else {
                        Entry::Symbol(t.parse().unwrap())
                    }
                })
                .collect()
        })
        .collect();
    CodedArray::from_rows(parsed).unwrap()
}
