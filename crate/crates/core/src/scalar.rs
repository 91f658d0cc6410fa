//! Scalar types usable as distances.
//!
//! Every algorithm in this crate is written against [`Scalar`]. The exact
//! instantiations ([`BigRational`], `Ratio<i64>`, `Ratio<i128>`) certify
//! equalities such as the isosceles condition of an ultrametric triangle;
//! `f32`/`f64` are supported for exploratory use only.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, ToPrimitive};

/// An ordered field element used for distances.
pub trait Scalar: Num + Clone + PartialOrd + Debug + Display + Send + Sync + 'static {
    /// True when `+ - * /` and comparisons are exact.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;

    /// Largest integer `k` with `k <= self`, when representable.
    fn floor_i64(&self) -> Option<i64>;

    fn to_f64_lossy(&self) -> f64;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    fn is_positive(&self) -> bool {
        *self > Self::zero()
    }
}

macro_rules! impl_float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_i64(v: i64) -> Self {
                v as $t
            }

            fn floor_i64(&self) -> Option<i64> {
                let f = self.floor();
                if f.is_finite() && f >= i64::MIN as $t && f <= i64::MAX as $t {
                    Some(f as i64)
                } else {
                    None
                }
            }

            fn to_f64_lossy(&self) -> f64 {
                *self as f64
            }
        }
    };
}

impl_float_scalar!(f32);
impl_float_scalar!(f64);

macro_rules! impl_ratio_scalar {
    ($t:ty) => {
        impl Scalar for Ratio<$t> {
            const EXACT: bool = true;

            fn from_i64(v: i64) -> Self {
                Ratio::from_integer(<$t>::from(v))
            }

            fn floor_i64(&self) -> Option<i64> {
                self.floor().to_integer().to_i64()
            }

            fn to_f64_lossy(&self) -> f64 {
                self.to_f64().unwrap_or(f64::NAN)
            }
        }
    };
}

impl_ratio_scalar!(i64);
impl_ratio_scalar!(i128);

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(BigInt::from(v))
    }

    fn floor_i64(&self) -> Option<i64> {
        self.floor().to_integer().to_i64()
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

/// Total comparison for values that are known to be comparable.
///
/// Panics on incomparable values (NaN), which a validated space never holds.
pub(crate) fn cmp<S: Scalar>(a: &S, b: &S) -> Ordering {
    a.partial_cmp(b).expect("distance values must be comparable")
}

pub(crate) fn max_of<S: Scalar>(a: &S, b: &S) -> S {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

pub(crate) fn min_of<S: Scalar>(a: &S, b: &S) -> S {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}
