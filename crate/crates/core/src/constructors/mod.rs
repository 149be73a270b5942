//! Deterministic array families.
//!
//! - [`algorithm1`]: the combinatorial array `D_{Λ,r,α}` whose rows are the
//!   `r`-subsets and columns the `α`-subsets of `[0, Λ)`.
//! - [`algorithm2`]: horizontal concatenation of offset copies of
//!   combinatorial blocks, one group per `α` with `K_α > 0`.
//! - [`nnc_pda`]: the `r`-cyclic PDA family for the nearest-neighbour
//!   (wrap-around) topology.

mod combinatorial;
mod gc;
mod nnc;
mod subsets;

pub use combinatorial::{algorithm1, shift_symbols};
pub use gc::{algorithm2, GcParameters};
pub use nnc::{nnc_pda, nnc_search, NncShape};
pub use subsets::{binomial, lex_rank, lex_subsets, lex_unrank, SubsetRank};

pub(crate) use combinatorial::check_combinatorial;
pub(crate) use subsets::binom_usize;

/// Largest grid (in cells) any constructor will allocate.
pub const MAX_CELLS: usize = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructError {
    #[error("subset must be non-empty")]
    EmptySubset,
    #[error("element {element} is outside [0, {universe})")]
    ElementOutOfRange { element: usize, universe: usize },
    #[error("element {element} appears more than once")]
    DuplicateElement { element: usize },
    #[error("rank {rank} is outside [0, {total})")]
    RankOutOfRange { rank: usize, total: usize },
    #[error("Lambda must be at least 2, got {lambda}")]
    LambdaTooSmall { lambda: usize },
    #[error("Lambda = {lambda} exceeds the supported maximum of 64")]
    LambdaTooLarge { lambda: usize },
    #[error("alpha must lie in [1, {max}], got {alpha}")]
    AlphaOutOfRange { alpha: usize, max: usize },
    #[error("r must lie in [1, {max}], got {r}")]
    ROutOfRange { r: usize, max: usize },
    #[error("multiplicity vector has {len} entries, at most Lambda - r = {max} allowed")]
    MultiplicityLength { len: usize, max: usize },
    #[error("at least one multiplicity K_alpha must be positive")]
    NoReducers,
    #[error("r must divide Lambda (Lambda = {lambda}, r = {r})")]
    RMustDivideLambda { lambda: usize, r: usize },
    #[error("g = 2*Lambda / (Lambda - (alpha-1)*r) = {numerator}/{denominator} is not an integer")]
    NonIntegralG { numerator: usize, denominator: usize },
    #[error("S = {numerator}/2 is not an integer")]
    OddSymbolNumerator { numerator: usize },
    #[error("no {g}-regular cyclic fill exists for Lambda = {lambda}, r = {r}, alpha = {alpha}")]
    NoCyclicFill {
        lambda: usize,
        r: usize,
        alpha: usize,
        g: usize,
    },
    #[error("search budget of {budget} nodes exhausted")]
    BudgetExhausted { budget: u64 },
    #[error("requested array is too large")]
    TooLarge,
}
