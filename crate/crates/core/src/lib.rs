//! Map-Reduce arrays (MRAs), placement delivery arrays (PDAs) and the coded
//! shuffle schemes they induce for multi-access distributed computing.
//!
//! An `F x K` array of stars and integer symbols describes a Map-Reduce job:
//! row `f` is a batch of input files, column `k` is a reducer node, a star at
//! `(f, k)` means reducer `k` can reach batch `f` through its mappers, and each
//! integer symbol is one coded multicast opportunity in the shuffle phase.
//!
//! The crate is organised as:
//!
//! - [`arrays`]: the [`CodedArray`] type, its text format, statistics and the
//!   PDA / MRA / cyclic validators.
//! - [`constructors`]: lexicographic subset ranking and the deterministic array
//!   families (combinatorial, generalized combinatorial, nearest-neighbour).
//! - [`mapreduce`]: Map-Reduce graphs, access patterns and a bit-exact
//!   Map -> Shuffle -> Reduce simulation of the array-driven coded scheme.
//! - [`metrics`]: exact rational load formulas, lower bounds and convex
//!   envelopes.
//! - [`fixtures`]: reference arrays shipped with the crate.

pub mod arrays;
pub mod constructors;
pub mod fixtures;
pub mod mapreduce;
pub mod metrics;

pub use arrays::{
    compute_stats, parse_array, truncate_columns, validate_l_cyclic, validate_mra, validate_pda,
    ArrayStats, CodedArray, Condition, Entry, ValidationReport,
};
pub use constructors::{algorithm1, algorithm2, nnc_pda, shift_symbols, GcParameters};
pub use metrics::{LoadCurve, Rational};
pub use mapreduce::{run_job, JobSpec, MapReduceGraph, Topology};
