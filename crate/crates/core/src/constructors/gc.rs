use serde::{Deserialize, Serialize};

use crate::arrays::CodedArray;

use super::combinatorial::{algorithm1, shift_symbols};
use super::{binom_usize, ConstructError, MAX_CELLS};

/// Parameters of the generalized combinatorial topology.
///
/// `multiplicities[i]` is `K_{i+1}`: the number of reducers attached to each
/// `(i+1)`-subset of mappers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GcParameters {
    pub mappers: usize,
    pub computation: usize,
    pub multiplicities: Vec<usize>,
}

impl GcParameters {
    pub fn new(
        mappers: usize,
        computation: usize,
        multiplicities: Vec<usize>,
    ) -> Result<Self, ConstructError> {
        let params = GcParameters {
            mappers,
            computation,
            multiplicities,
        };
        params.check()?;
        Ok(params)
    }

    pub fn check(&self) -> Result<(), ConstructError> {
        let (lambda, r) = (self.mappers, self.computation);
        if lambda < 2 {
            return Err(ConstructError::LambdaTooSmall { lambda });
        }
        if lambda > 64 {
            return Err(ConstructError::LambdaTooLarge { lambda });
        }
        if r == 0 || r >= lambda {
            return Err(ConstructError::ROutOfRange { r, max: lambda - 1 });
        }
        if self.multiplicities.len() > lambda - r {
            return Err(ConstructError::MultiplicityLength {
                len: self.multiplicities.len(),
                max: lambda - r,
            });
        }
        if self.multiplicities.iter().all(|&k| k == 0) {
            return Err(ConstructError::NoReducers);
        }
        Ok(())
    }

    /// `K_α` for `α ≥ 1` (zero beyond the stored vector).
    pub fn k(&self, alpha: usize) -> usize {
        alpha
            .checked_sub(1)
            .and_then(|i| self.multiplicities.get(i))
            .copied()
            .unwrap_or(0)
    }

    /// `(α, K_α)` for every `α` with `K_α > 0`, ascending.
    pub fn active(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.multiplicities
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| (i + 1, k))
    }

    /// `K = Σ K_α·C(Λ,α)`.
    pub fn reducer_count(&self) -> Result<usize, ConstructError> {
        self.active().try_fold(0usize, |acc, (alpha, k)| {
            binom_usize(self.mappers, alpha)?
                .checked_mul(k)
                .and_then(|c| acc.checked_add(c))
                .ok_or(ConstructError::TooLarge)
        })
    }

    /// `S = Σ K_α·C(Λ,α+r)`.
    pub fn symbol_count(&self) -> Result<usize, ConstructError> {
        self.active().try_fold(0usize, |acc, (alpha, k)| {
            binom_usize(self.mappers, alpha + self.computation)?
                .checked_mul(k)
                .and_then(|c| acc.checked_add(c))
                .ok_or(ConstructError::TooLarge)
        })
    }
}

/// Concatenates, for ascending `α`, `K_α` copies of `D_{Λ,r,α}`; copy `m`
/// (0-based) of block `α` is offset by `S'_α + m·C(Λ,α+r)` where `S'_α`
/// counts the symbols used by smaller `α`.
pub fn algorithm2(params: &GcParameters) -> Result<CodedArray, ConstructError> {
    params.check()?;
    let (lambda, r) = (params.mappers, params.computation);
    let rows = binom_usize(lambda, r)?;
    let cols = params.reducer_count()?;
    if rows.checked_mul(cols).is_none_or(|c| c > MAX_CELLS) {
        return Err(ConstructError::TooLarge);
    }
    let mut blocks = Vec::new();
    let mut offset = 0usize;
    for (alpha, copies) in params.active() {
        let base = algorithm1(lambda, r, alpha)?;
        let per_copy = binom_usize(lambda, alpha + r)?;
        for _ in 0..copies {
            blocks.push(shift_symbols(&base, offset));
            offset += per_copy;
        }
    }
    Ok(CodedArray::hconcat(&blocks).expect("blocks share the row count"))
}
