//! Map-Reduce graphs and the array-driven coded shuffle.

mod graph;
mod job;
mod shuffle;

pub use graph::{build_mrg, star_pattern, MapReduceGraph, Topology};
pub use job::{choose_iv_bits, intermediate_value, Bits, JobSpec};
pub use shuffle::{run_job, DecodeReport, Message, ReducerOutcome, ShuffleTranscript};

use crate::arrays::Violation;
use crate::constructors::ConstructError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MapReduceError {
    #[error("array is not a valid MRA: {0:?}")]
    InvalidMra(Option<Violation>),
    #[error("F = {batches} does not divide N = {files}")]
    FilesNotDivisible { files: usize, batches: usize },
    #[error("K = {reducers} does not divide Q = {functions}")]
    FunctionsNotDivisible { functions: usize, reducers: usize },
    #[error("IV width must be at least one bit")]
    ZeroIvBits,
    #[error("symbol {symbol} occurs {g} times but g-1 does not divide {block_bits} bits")]
    PacketNotDivisible {
        symbol: usize,
        g: usize,
        block_bits: usize,
    },
    #[error("reducer {reducer} cannot reach batch {batch}")]
    NotAccessible { reducer: usize, batch: usize },
    #[error("graph needs at least one batch, mapper and reducer")]
    EmptyGraph,
    #[error("mapper {mapper} stores unknown batch {batch}")]
    BatchOutOfRange { mapper: usize, batch: usize },
    #[error("reducer {reducer} links to unknown mapper {mapper}")]
    MapperOutOfRange { reducer: usize, mapper: usize },
    #[error("r must divide Lambda (Lambda = {lambda}, r = {r})")]
    RMustDivideLambda { lambda: usize, r: usize },
    #[error("alpha = {alpha} must lie in [1, Lambda/r) for Lambda = {lambda}, r = {r}")]
    AlphaOutOfRange { lambda: usize, r: usize, alpha: usize },
    #[error(transparent)]
    Parameters(#[from] ConstructError),
}

impl MapReduceError {
    /// True for failures of the shuffle itself rather than of its inputs.
    pub fn is_decode_failure(&self) -> bool {
        matches!(
            self,
            MapReduceError::InvalidMra(_) | MapReduceError::NotAccessible { .. }
        )
    }
}
