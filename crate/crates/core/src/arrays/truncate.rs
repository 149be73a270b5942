use std::collections::BTreeSet;

use super::{compute_stats, CodedArray, Entry};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TruncateError {
    #[error("no columns selected")]
    EmptySelection,
    #[error("column {col} is out of range for an array with {cols} columns")]
    OutOfRange { col: usize, cols: usize },
    #[error("symbol {symbol} would occur only once, at row {row} column {col}")]
    Orphaned {
        symbol: usize,
        row: usize,
        col: usize,
    },
}

/// Restricts `array` to the columns in `keep` (taken in ascending order).
///
/// Succeeds iff every surviving symbol still occurs at least twice; the
/// result is normalized. Column indices in the error refer to the
/// truncated array.
pub fn truncate_columns(
    array: &CodedArray,
    keep: &BTreeSet<usize>,
) -> Result<CodedArray, TruncateError> {
    if keep.is_empty() {
        return Err(TruncateError::EmptySelection);
    }
    if let Some(&col) = keep.iter().find(|&&c| c >= array.cols()) {
        return Err(TruncateError::OutOfRange {
            col,
            cols: array.cols(),
        });
    }
    let cols: Vec<usize> = keep.iter().copied().collect();
    let truncated = array.select_columns(&cols);
    let stats = compute_stats(&truncated);
    let orphan = truncated.cells().find_map(|(row, col, e)| match e {
        Entry::Symbol(symbol) if stats.per_symbol_multiplicity[&symbol] < 2 => {
            Some(TruncateError::Orphaned { symbol, row, col })
        }
        _ => None,
    });
    match orphan {
        Some(err) => Err(err),
        None => Ok(truncated.normalized()),
    }
}
