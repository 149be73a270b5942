use std::collections::HashMap;

use crate::arrays::{CodedArray, Entry};

use super::subsets::lex_subsets;
use super::{binom_usize, ConstructError, MAX_CELLS};

fn mask(subset: &[usize]) -> u64 {
    subset.iter().fold(0, |m, &e| m | (1 << e))
}

pub(crate) fn check_combinatorial(lambda: usize, r: usize, alpha: usize) -> Result<(), ConstructError> {
    if lambda < 2 {
        return Err(ConstructError::LambdaTooSmall { lambda });
    }
    if lambda > 64 {
        return Err(ConstructError::LambdaTooLarge { lambda });
    }
    if alpha == 0 || alpha >= lambda {
        return Err(ConstructError::AlphaOutOfRange {
            alpha,
            max: lambda - 1,
        });
    }
    if r == 0 || r > lambda - alpha {
        return Err(ConstructError::ROutOfRange {
            r,
            max: lambda - alpha,
        });
    }
    Ok(())
}

/// The combinatorial array `D_{Λ,r,α}`.
///
/// Row `T` (an `r`-subset) and column `U` (an `α`-subset), both in
/// lexicographic order, hold a star when `T ∩ U ≠ ∅` and otherwise the
/// lexicographic rank of `T ∪ U` among the `(α+r)`-subsets.
pub fn algorithm1(lambda: usize, r: usize, alpha: usize) -> Result<CodedArray, ConstructError> {
    check_combinatorial(lambda, r, alpha)?;
    let rows = binom_usize(lambda, r)?;
    let cols = binom_usize(lambda, alpha)?;
    if rows.checked_mul(cols).is_none_or(|c| c > MAX_CELLS) {
        return Err(ConstructError::TooLarge);
    }
    let union_rank: HashMap<u64, usize> = lex_subsets(lambda, alpha + r)
        .enumerate()
        .map(|(i, s)| (mask(&s), i))
        .collect();
    let row_masks: Vec<u64> = lex_subsets(lambda, r).map(|s| mask(&s)).collect();
    let col_masks: Vec<u64> = lex_subsets(lambda, alpha).map(|s| mask(&s)).collect();
    let mut cells = Vec::with_capacity(rows * cols);
    for &t in &row_masks {
        for &u in &col_masks {
            cells.push(if t & u != 0 {
                Entry::Star
            } else {
                Entry::Symbol(union_rank[&(t | u)])
            });
        }
    }
    Ok(CodedArray::new(rows, cols, cells).expect("non-empty grid"))
}

/// `P + b`: every symbol increased by `b`, stars untouched.
///
/// # Panics
/// If a shifted symbol overflows `usize`.
pub fn shift_symbols(array: &CodedArray, b: usize) -> CodedArray {
    array
        .offset_symbols(b)
        .expect("symbol offset overflowed usize")
}
