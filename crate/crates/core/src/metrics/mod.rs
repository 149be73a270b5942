//! Exact communication loads, lower bounds and load curves.

mod curve;
mod formulas;
mod rational;
mod report;

pub use curve::{lower_convex_envelope, LoadCurve};
pub use formulas::{
    be_corners, be_load, be_lower_bound, be_lower_bound_corners, ct_load, ct_load_parts,
    decimal_value, gc_load, gc_lower_bound, gc_lower_envelope, gc_params_at, load_from_array,
    nnc_load,
};
pub use rational::{ParseRationalError, Rational};
pub use report::{format_kvec, sweep_csv, LoadPoint, LoadReport, SweepSpec, CSV_HEADER};

use crate::arrays::Violation;
use crate::constructors::ConstructError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MetricsError {
    #[error("array is not a valid MRA ({})", describe(.0))]
    InvalidMra(Option<Violation>),
    #[error("alpha = {alpha} is out of range for Lambda = {lambda}")]
    AlphaOutOfRange { lambda: usize, alpha: usize },
    #[error("r must lie in [1, {max}], got {r}")]
    ROutOfRange { r: usize, max: usize },
    #[error("r must divide Lambda (Lambda = {lambda}, r = {r})")]
    RMustDivideLambda { lambda: usize, r: usize },
    #[error("r = {r} lies outside the curve's domain")]
    ROutsideCurve { r: Rational },
    #[error("load curve needs at least one point")]
    EmptyCurve,
    #[error("corner abscissae must increase strictly (at r = {r})")]
    NotIncreasing { r: Rational },
    #[error("two points share r = {r}")]
    DuplicateAbscissa { r: Rational },
    #[error("no admissible parameter point in the sweep")]
    EmptySweep,
    #[error(transparent)]
    Parameters(#[from] ConstructError),
}

fn describe(v: &Option<Violation>) -> String {
    match v {
        Some(v) => format!("{} fails at {:?}", v.condition, v.witness),
        None => "unknown violation".to_string(),
    }
}
