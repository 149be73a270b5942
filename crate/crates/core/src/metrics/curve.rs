use serde::Serialize;

use super::{MetricsError, Rational};

/// Piecewise-linear curve through corner points with strictly increasing `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoadCurve {
    corners: Vec<(Rational, Rational)>,
}

impl LoadCurve {
    pub fn new(corners: Vec<(Rational, Rational)>) -> Result<Self, MetricsError> {
        if corners.is_empty() {
            return Err(MetricsError::EmptyCurve);
        }
        if let Some(w) = corners.windows(2).find(|w| w[0].0 >= w[1].0) {
            return Err(MetricsError::NotIncreasing { r: w[1].0.clone() });
        }
        Ok(LoadCurve { corners })
    }

    pub fn corners(&self) -> &[(Rational, Rational)] {
        &self.corners
    }

    /// Value at `r`, or `None` outside `[r_first, r_last]`.
    pub fn evaluate(&self, r: &Rational) -> Option<Rational> {
        let first = self.corners.first()?;
        let last = self.corners.last()?;
        if r < &first.0 || r > &last.0 {
            return None;
        }
        if let Some((_, l)) = self.corners.iter().find(|(x, _)| x == r) {
            return Some(l.clone());
        }
        let right = self.corners.iter().position(|(x, _)| x > r)?;
        let (x0, y0) = &self.corners[right - 1];
        let (x1, y1) = &self.corners[right];
        let t = &(r - x0) / &(x1 - x0);
        Some(y0 + &(&t * &(y1 - y0)))
    }
}

/// `(b - a) × (c - a)`; negative for a clockwise turn.
fn cross(a: &(Rational, Rational), b: &(Rational, Rational), c: &(Rational, Rational)) -> Rational {
    &(&(&b.0 - &a.0) * &(&c.1 - &a.1)) - &(&(&b.1 - &a.1) * &(&c.0 - &a.0))
}

/// Greatest convex minorant of `points`, as its corner points.
///
/// Collinear interior points are dropped; the resulting curve is unchanged.
pub fn lower_convex_envelope(points: &[(Rational, Rational)]) -> Result<LoadCurve, MetricsError> {
    let mut sorted = points.to_vec();
    sorted.sort();
    if let Some(w) = sorted.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(MetricsError::DuplicateAbscissa { r: w[0].0.clone() });
    }
    let mut hull: Vec<(Rational, Rational)> = Vec::with_capacity(sorted.len());
    for p in sorted {
        while hull.len() >= 2 {
            let n = hull.len();
            if cross(&hull[n - 2], &hull[n - 1], &p) <= Rational::zero() {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    LoadCurve::new(hull)
}
