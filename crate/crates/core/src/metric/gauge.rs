use thiserror::Error;

use super::space::{FiniteMetricSpace, MetricError, Triangle};
use crate::scalar::{cmp, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GaugeError<S: Scalar> {
    #[error("gauge must start at the breakpoint (0, 0)")]
    NotAnchored,
    #[error("gauge is not nondecreasing at breakpoint {index}")]
    GaugeNotMonotone { index: usize },
    #[error("gauge maps d({i},{j}) to a non-positive value")]
    NonPositive { i: usize, j: usize },
    #[error("transformed distances are not a metric: triangle {0}")]
    ResultNotMetric(Triangle<S>),
}

/// A nondecreasing piecewise-linear function on `[0, inf)` with `f(0) = 0`.
///
/// Between breakpoints the function interpolates linearly; past the last
/// breakpoint it continues with the slope of the last segment.
#[derive(Clone, Debug, PartialEq)]
pub struct Gauge<S> {
    breakpoints: Vec<(S, S)>,
}

impl<S: Scalar> Gauge<S> {
    pub fn new(breakpoints: Vec<(S, S)>) -> Result<Self, GaugeError<S>> {
        match breakpoints.first() {
            Some((t, v)) if t.is_zero() && v.is_zero() => {}
            _ => return Err(GaugeError::NotAnchored),
        }
        for (index, w) in breakpoints.windows(2).enumerate() {
            if w[1].0 <= w[0].0 || w[1].1 < w[0].1 {
                return Err(GaugeError::GaugeNotMonotone { index: index + 1 });
            }
        }
        Ok(Gauge { breakpoints })
    }

    pub fn identity() -> Self {
        Gauge {
            breakpoints: vec![(S::zero(), S::zero()), (S::one(), S::one())],
        }
    }

    /// The gauge that breaks a triangle with sides `a <= b < c`: identity up
    /// to `b`, then linear with slope `2b / (c - b)`, so `f(c) = 3b`.
    pub fn separating(b: &S, c: &S) -> Result<Self, GaugeError<S>> {
        let three_b = S::from_i64(3) * b.clone();
        Self::new(vec![(S::zero(), S::zero()), (b.clone(), b.clone()), (c.clone(), three_b)])
    }

    pub fn breakpoints(&self) -> &[(S, S)] {
        &self.breakpoints
    }

    pub fn eval(&self, t: &S) -> S {
        let bp = &self.breakpoints;
        if bp.len() == 1 {
            return S::zero();
        }
        let seg = match bp.iter().position(|(x, _)| x >= t) {
            Some(0) => return S::zero(),
            Some(k) => k,
            None => bp.len() - 1,
        };
        let (t0, f0) = &bp[seg - 1];
        let (t1, f1) = &bp[seg];
        let slope = (f1.clone() - f0.clone()) / (t1.clone() - t0.clone());
        f0.clone() + slope * (t.clone() - t0.clone())
    }
}

/// Replaces every distance `d` with `g(d)`.
///
/// When `g(d)` is not a metric the offending triangle is returned; that
/// certifies the input was not ultrametric.
pub fn apply_gauge<S: Scalar>(
    space: &FiniteMetricSpace<S>,
    g: &Gauge<S>,
) -> Result<FiniteMetricSpace<S>, GaugeError<S>> {
    let mapped = space.map_unchecked(|d| g.eval(d));
    if let Some((i, j)) = mapped.pairs().find(|&(i, j)| !mapped.d(i, j).is_positive()) {
        return Err(GaugeError::NonPositive { i, j });
    }
    match FiniteMetricSpace::new(mapped.labels().to_vec(), mapped.rows()) {
        Ok(s) => Ok(s),
        Err(MetricError::TriangleViolation { i, j, k }) => {
            Err(GaugeError::ResultNotMetric(Triangle::new(&mapped, i, j, k)))
        }
        Err(other) => unreachable!("a gauge preserves symmetry and the diagonal: {other}"),
    }
}

/// The gauge that exposes a non-ultrametric triangle, built from its sides.
pub fn separating_gauge_for<S: Scalar>(tri: &Triangle<S>) -> Option<Gauge<S>> {
    let [_, b, c] = &tri.sides;
    if cmp(b, c).is_lt() {
        Gauge::separating(b, c).ok()
    } else {
        None
    }
}
