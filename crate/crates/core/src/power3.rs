//! Powers of three carried by exponent.

use std::fmt;

use crate::scalar::Scalar;

/// The value `3^e`, or zero.
///
/// Ordered by value: `Zero` is least, then by exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ThreePower {
    Zero,
    Pow(i64),
}

impl ThreePower {
    pub fn exponent(self) -> Option<i64> {
        match self {
            ThreePower::Zero => None,
            ThreePower::Pow(e) => Some(e),
        }
    }

    /// Expands to a scalar by repeated multiplication.
    pub fn value<S: Scalar>(self) -> S {
        match self {
            ThreePower::Zero => S::zero(),
            ThreePower::Pow(e) => pow3(e),
        }
    }

    /// The least `3^n` with `3^(n-1) < d <= 3^n`. `None` unless `d > 0`.
    ///
    /// Found by stepping the exponent, never through logarithms, so exact
    /// powers of three map to themselves.
    pub fn ceil_of<S: Scalar>(d: &S) -> Option<ThreePower> {
        if !d.is_positive() {
            return None;
        }
        let three = S::from_i64(3);
        let mut e = 0i64;
        let mut p = S::one();
        if *d > p {
            while *d > p {
                p = p * three.clone();
                e += 1;
            }
        } else {
            loop {
                let lower = p.clone() / three.clone();
                if *d > lower || !lower.is_positive() {
                    break;
                }
                p = lower;
                e -= 1;
            }
        }
        Some(ThreePower::Pow(e))
    }

    /// `Some` exactly when `d` is zero or an exact power of three.
    pub fn exact<S: Scalar>(d: &S) -> Option<ThreePower> {
        if d.is_zero() {
            return Some(ThreePower::Zero);
        }
        let p = Self::ceil_of(d)?;
        (p.value::<S>() == *d).then_some(p)
    }
}

fn pow3<S: Scalar>(e: i64) -> S {
    let three = S::from_i64(3);
    let mut acc = S::one();
    for _ in 0..e.unsigned_abs() {
        acc = acc * three.clone();
    }
    if e < 0 {
        S::one() / acc
    } else {
        acc
    }
}

impl fmt::Display for ThreePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThreePower::Zero => write!(f, "0"),
            ThreePower::Pow(e) => write!(f, "3^{e}"),
        }
    }
}
