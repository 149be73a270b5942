//! Per-point load reports and CSV sweeps.

use std::fmt::Write as _;

use serde::Serialize;

use crate::constructors::GcParameters;

use super::formulas::{
    be_load, be_lower_bound, ct_load, ct_load_parts, gc_load, gc_lower_bound, gc_params_at,
    nnc_load,
};
use super::{MetricsError, Rational};

/// A point on one of the load curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LoadPoint {
    Be { lambda: usize, alpha: usize, r: Rational },
    Ct { lambda: usize, r: usize, alpha: usize },
    Gc(GcParameters),
    Nnc { lambda: usize, r: usize, alpha: usize },
}

/// Achievable load and lower bound at one parameter point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoadReport {
    pub topology: &'static str,
    #[serde(rename = "Lambda")]
    pub lambda: usize,
    pub r: Rational,
    pub alpha_or_kvec: String,
    pub achievable: Rational,
    /// Unreduced form, where the formula has a natural one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub achievable_unreduced: Option<String>,
    pub lower_bound: Option<Rational>,
}

pub fn format_kvec(kvec: &[usize]) -> String {
    kvec.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

impl LoadPoint {
    pub fn report(&self) -> Result<LoadReport, MetricsError> {
        match self {
            LoadPoint::Be { lambda, alpha, r } => Ok(LoadReport {
                topology: "be",
                lambda: *lambda,
                r: r.clone(),
                alpha_or_kvec: alpha.to_string(),
                achievable: be_load(*lambda, *alpha, r)?,
                achievable_unreduced: None,
                lower_bound: Some(be_lower_bound(*lambda, *alpha, r)?),
            }),
            LoadPoint::Ct { lambda, r, alpha } => {
                let (num, den) = ct_load_parts(*lambda, *r, *alpha)?;
                let single = GcParameters::new(*lambda, *r, single_k(*alpha))?;
                Ok(LoadReport {
                    topology: "ct",
                    lambda: *lambda,
                    r: Rational::from(*r),
                    alpha_or_kvec: alpha.to_string(),
                    achievable: ct_load(*lambda, *r, *alpha)?,
                    achievable_unreduced: Some(format!("{num}/{den}")),
                    lower_bound: Some(gc_lower_bound(&single)?),
                })
            }
            LoadPoint::Gc(params) => Ok(LoadReport {
                topology: "gc",
                lambda: params.mappers,
                r: Rational::from(params.computation),
                alpha_or_kvec: format_kvec(&params.multiplicities),
                achievable: gc_load(params)?,
                achievable_unreduced: None,
                lower_bound: Some(gc_lower_bound(params)?),
            }),
            LoadPoint::Nnc { lambda, r, alpha } => Ok(LoadReport {
                topology: "nnc",
                lambda: *lambda,
                r: Rational::from(*r),
                alpha_or_kvec: alpha.to_string(),
                achievable: nnc_load(*lambda, *r, *alpha)?,
                achievable_unreduced: None,
                lower_bound: None,
            }),
        }
    }
}

fn single_k(alpha: usize) -> Vec<usize> {
    let mut k = vec![0; alpha];
    k[alpha - 1] = 1;
    k
}

/// Which curve a sweep walks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SweepSpec {
    /// Integer corners `r ∈ [1, Λ-α+1]`.
    Be { lambda: usize, alpha: usize },
    /// `r ∈ [1, Λ-α]`.
    Ct { lambda: usize, alpha: usize },
    /// `r ∈ [1, Λ-1]`, skipping points where the truncated vector is empty.
    Gc { lambda: usize, kvec: Vec<usize> },
    /// Every divisor `r` of `Λ` with `α < Λ/r`.
    Nnc { lambda: usize, alpha: usize },
}

impl SweepSpec {
    pub fn points(&self) -> Vec<LoadPoint> {
        match self {
            SweepSpec::Be { lambda, alpha } => (1..=(lambda + 1).saturating_sub(*alpha))
                .map(|r| LoadPoint::Be {
                    lambda: *lambda,
                    alpha: *alpha,
                    r: Rational::from(r),
                })
                .collect(),
            SweepSpec::Ct { lambda, alpha } => (1..=lambda.saturating_sub(*alpha))
                .map(|r| LoadPoint::Ct {
                    lambda: *lambda,
                    r,
                    alpha: *alpha,
                })
                .collect(),
            SweepSpec::Gc { lambda, kvec } => (1..*lambda)
                .filter_map(|r| gc_params_at(*lambda, kvec, r))
                .map(LoadPoint::Gc)
                .collect(),
            SweepSpec::Nnc { lambda, alpha } => (1..=*lambda)
                .filter(|r| lambda % r == 0 && *alpha >= 1 && *alpha < lambda / r)
                .map(|r| LoadPoint::Nnc {
                    lambda: *lambda,
                    r,
                    alpha: *alpha,
                })
                .collect(),
        }
    }

    pub fn run(&self) -> Result<Vec<LoadReport>, MetricsError> {
        let points = self.points();
        if points.is_empty() {
            return Err(MetricsError::EmptySweep);
        }
        points.iter().map(LoadPoint::report).collect()
    }
}

pub const CSV_HEADER: &str = "topology,Lambda,r,alpha_or_Kvec,L_achievable,L_lower_bound,\
L_achievable_decimal,L_lower_bound_decimal";

/// CSV rendering; rationals as `num/den` plus 6-place decimals.
pub fn sweep_csv(rows: &[LoadReport]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        let bound = row.lower_bound.as_ref();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            row.topology,
            row.lambda,
            row.r
                .to_integer()
                .map_or_else(|| row.r.to_string(), |r| r.to_string()),
            row.alpha_or_kvec,
            row.achievable,
            bound.map(ToString::to_string).unwrap_or_default(),
            row.achievable.to_decimal(6),
            bound.map(|b| b.to_decimal(6)).unwrap_or_default(),
        );
    }
    out
}
