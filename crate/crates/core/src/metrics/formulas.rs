//! Closed-form loads and lower bounds, all in exact arithmetic.

use num_bigint::BigInt;
use num_integer::binomial;

use crate::arrays::{compute_stats, validate_mra, CodedArray};
use crate::constructors::GcParameters;

use super::curve::LoadCurve;
use super::{MetricsError, Rational};

pub(crate) fn binom(n: usize, k: usize) -> BigInt {
    if k > n {
        BigInt::from(0)
    } else {
        binomial(BigInt::from(n), BigInt::from(k))
    }
}

fn frac(num: BigInt, den: BigInt) -> Rational {
    Rational::new(num, den)
}

/// Load of the coded shuffle driven by an MRA:
/// `S/(KF) + Σ_g S_g / (KF(g-1))`.
pub fn load_from_array(array: &CodedArray) -> Result<Rational, MetricsError> {
    let report = validate_mra(array);
    if !report.passed() {
        return Err(MetricsError::InvalidMra(report.first_violation));
    }
    let stats = compute_stats(array);
    let kf = BigInt::from(array.rows() * array.cols());
    let s = BigInt::from(stats.symbol_count());
    let coded: Rational = stats
        .multiplicity_histogram
        .iter()
        .map(|(&g, &sg)| frac(BigInt::from(sg), &kf * BigInt::from(g - 1)))
        .sum();
    Ok(frac(s, kf.clone()) + coded)
}

fn check_be(lambda: usize, alpha: usize) -> Result<(), MetricsError> {
    if lambda < 2 || alpha == 0 || alpha >= lambda {
        return Err(MetricsError::AlphaOutOfRange { lambda, alpha });
    }
    Ok(())
}

fn be_corner(lambda: usize, alpha: usize, r: usize) -> Rational {
    let den = binom(lambda, r) * (binom(r + alpha, r) - 1);
    frac(binom(lambda - alpha, r), den)
}

fn be_bound_corner(lambda: usize, alpha: usize, r: usize) -> Rational {
    frac(
        binom(lambda, r + alpha),
        binom(lambda, r) * binom(lambda, alpha),
    )
}

/// Corner points `(r, L_BE(r))` for `r = 1, …, Λ-α+1`.
pub fn be_corners(lambda: usize, alpha: usize) -> Result<LoadCurve, MetricsError> {
    check_be(lambda, alpha)?;
    LoadCurve::new(
        (1..=lambda - alpha + 1)
            .map(|r| (Rational::from(r), be_corner(lambda, alpha, r)))
            .collect(),
    )
}

/// Corner points of the BE lower bound over the same range of `r`.
pub fn be_lower_bound_corners(lambda: usize, alpha: usize) -> Result<LoadCurve, MetricsError> {
    check_be(lambda, alpha)?;
    LoadCurve::new(
        (1..=lambda - alpha + 1)
            .map(|r| (Rational::from(r), be_bound_corner(lambda, alpha, r)))
            .collect(),
    )
}

fn evaluate(curve: LoadCurve, r: &Rational) -> Result<Rational, MetricsError> {
    curve
        .evaluate(r)
        .ok_or_else(|| MetricsError::ROutsideCurve { r: r.clone() })
}

/// BE load at any `r` in `[1, Λ-α+1]`, linear between integer corners.
pub fn be_load(lambda: usize, alpha: usize, r: &Rational) -> Result<Rational, MetricsError> {
    evaluate(be_corners(lambda, alpha)?, r)
}

/// BE lower bound `C(Λ,r+α) / (C(Λ,r)·C(Λ,α))`, linear between corners.
pub fn be_lower_bound(lambda: usize, alpha: usize, r: &Rational) -> Result<Rational, MetricsError> {
    evaluate(be_lower_bound_corners(lambda, alpha)?, r)
}

/// Nearest-neighbour load `(Λ-αr)(Λ-(α-1)r) / (Λ(Λ+(α-1)r))`.
pub fn nnc_load(lambda: usize, r: usize, alpha: usize) -> Result<Rational, MetricsError> {
    if r == 0 || r > lambda || !lambda.is_multiple_of(r) {
        return Err(MetricsError::RMustDivideLambda { lambda, r });
    }
    if alpha == 0 || alpha >= lambda / r {
        return Err(MetricsError::AlphaOutOfRange { lambda, alpha });
    }
    let (l, r, a) = (lambda as i64, r as i64, alpha as i64);
    Ok(Rational::new(
        (l - a * r) * (l - (a - 1) * r),
        l * (l + (a - 1) * r),
    ))
}

fn check_ct(lambda: usize, r: usize, alpha: usize) -> Result<(), MetricsError> {
    check_be(lambda, alpha)?;
    if r == 0 || r > lambda - alpha {
        return Err(MetricsError::ROutOfRange {
            r,
            max: lambda - alpha,
        });
    }
    Ok(())
}

/// Unreduced numerator and denominator of [`ct_load`].
pub fn ct_load_parts(lambda: usize, r: usize, alpha: usize) -> Result<(BigInt, BigInt), MetricsError> {
    check_ct(lambda, r, alpha)?;
    Ok((
        binom(lambda - alpha, r),
        binom(lambda, r) * (binom(r + alpha, r) - 1),
    ))
}

/// Combinatorial-topology load `C(Λ-α,r) / (C(Λ,r)(C(r+α,r)-1))`.
pub fn ct_load(lambda: usize, r: usize, alpha: usize) -> Result<Rational, MetricsError> {
    let (num, den) = ct_load_parts(lambda, r, alpha)?;
    Ok(frac(num, den))
}

fn reducer_total(params: &GcParameters) -> BigInt {
    params
        .active()
        .map(|(alpha, k)| BigInt::from(k) * binom(params.mappers, alpha))
        .sum()
}

/// Generalized combinatorial load
/// `(1/K) Σ_α K_α·C(Λ-r,α) / (C(r+α,r)-1)`.
pub fn gc_load(params: &GcParameters) -> Result<Rational, MetricsError> {
    params.check()?;
    let (lambda, r) = (params.mappers, params.computation);
    let k = reducer_total(params);
    let sum: Rational = params
        .active()
        .map(|(alpha, ka)| {
            frac(
                BigInt::from(ka) * binom(lambda - r, alpha),
                binom(r + alpha, r) - 1,
            )
        })
        .sum();
    Ok(sum / Rational::new(k, 1))
}

/// Lower bound
/// `Σ K_α C(Λ-r,α) / (K · Σ K_α (C(Λ,α) - C(Λ-r,α)))`.
pub fn gc_lower_bound(params: &GcParameters) -> Result<Rational, MetricsError> {
    params.check()?;
    let (lambda, r) = (params.mappers, params.computation);
    let k = reducer_total(params);
    let (num, den) = params.active().fold(
        (BigInt::from(0), BigInt::from(0)),
        |(num, den), (alpha, ka)| {
            let ka = BigInt::from(ka);
            let missing = binom(lambda - r, alpha);
            (
                num + &ka * &missing,
                den + ka * (binom(lambda, alpha) - missing),
            )
        },
    );
    Ok(frac(num, k * den))
}

/// `K`-vector restricted to `α ≤ Λ - r`, or `None` if nothing survives.
pub fn gc_params_at(lambda: usize, kvec: &[usize], r: usize) -> Option<GcParameters> {
    if r == 0 || r >= lambda {
        return None;
    }
    let kept: Vec<usize> = kvec.iter().take(lambda - r).copied().collect();
    GcParameters::new(lambda, r, kept).ok()
}

/// Lower convex envelope of the bound over integer `r ∈ [1, Λ-1]`, with the
/// same `K`-vector truncated to `α ≤ Λ - r` at each `r`. Points where the
/// truncated vector is all zero are skipped.
pub fn gc_lower_envelope(lambda: usize, kvec: &[usize]) -> Result<LoadCurve, MetricsError> {
    let points = (1..lambda)
        .filter_map(|r| gc_params_at(lambda, kvec, r).map(|p| (r, p)))
        .map(|(r, p)| Ok((Rational::from(r), gc_lower_bound(&p)?)))
        .collect::<Result<Vec<_>, MetricsError>>()?;
    super::curve::lower_convex_envelope(&points)
}

/// `value` rounded to `places` decimals, as a float for tolerance checks.
pub fn decimal_value(value: &Rational, places: usize) -> f64 {
    value
        .to_decimal(places)
        .parse()
        .expect("to_decimal emits a plain decimal")
}
