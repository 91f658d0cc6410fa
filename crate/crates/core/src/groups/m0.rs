use rayon::prelude::*;

use super::{CyclicSumSpec, GroupElement, GroupError};
use crate::Rational;

/// Longest digit string whose image fits in a `u128`.
pub const M0_MAX_ENCODE_LEN: usize = 80;
/// Largest `max_len` accepted by [`m0_distortion_check`]; the work grows like `4^max_len`.
pub const M0_MAX_CHECK_LEN: usize = 20;

/// `f(p) = sum 2 p_i 3^(i-1)` over a sum of copies of `Z_2`.
pub fn m0_encode(spec: &CyclicSumSpec, p: &GroupElement) -> Result<u128, GroupError> {
    if p.len() > M0_MAX_ENCODE_LEN {
        return Err(GroupError::TooLong {
            len: p.len(),
            limit: M0_MAX_ENCODE_LEN,
        });
    }
    let orders = spec.orders(p.len());
    if let Some(i) = orders.iter().position(|&a| a != 2) {
        return Err(GroupError::NotBinarySpec(i + 1));
    }
    p.validate(spec)?;
    m0_encode_digits(p.digits())
}

/// [`m0_encode`] over `Z_2^inf`.
pub fn m0_encode_digits(digits: &[u64]) -> Result<u128, GroupError> {
    if digits.len() > M0_MAX_ENCODE_LEN {
        return Err(GroupError::TooLong {
            len: digits.len(),
            limit: M0_MAX_ENCODE_LEN,
        });
    }
    let mut value = 0u128;
    let mut power = 1u128;
    for (i, &p) in digits.iter().enumerate() {
        if p > 1 {
            return Err(GroupError::DigitOutOfRange {
                index: i + 1,
                digit: p,
                order: Some(2),
            });
        }
        value += 2 * p as u128 * power;
        if i + 1 < digits.len() {
            power *= 3;
        }
    }
    Ok(value)
}

fn encode_mask(mask: u64) -> u128 {
    let mut value = 0u128;
    let mut power = 2u128;
    let mut m = mask;
    while m != 0 {
        if m & 1 == 1 {
            value += power;
        }
        power *= 3;
        m >>= 1;
    }
    value
}

fn mask_digits(mask: u64) -> Vec<u64> {
    GroupElement::new((0..64 - mask.leading_zeros()).map(|i| (mask >> i) & 1).collect())
        .digits()
        .to_vec()
}

fn ternary_is_cantor(mut v: u128) -> bool {
    while v != 0 {
        if v % 3 == 1 {
            return false;
        }
        v /= 3;
    }
    true
}

/// One pair with its filtration distance and image gap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairWitness {
    pub p: Vec<u64>,
    pub q: Vec<u64>,
    pub n: u64,
    pub gap: u128,
    /// `3^(n-1) < gap < 3^n`
    pub sharp: bool,
    /// `3^n <= gap <= 3^(n+1)`
    pub printed: bool,
}

impl PairWitness {
    fn of(p: u64, q: u64) -> Self {
        let n = (64 - (p ^ q).leading_zeros()) as u64;
        let gap = encode_mask(p).abs_diff(encode_mask(q));
        let lo = 3u128.pow(n as u32 - 1);
        PairWitness {
            p: mask_digits(p),
            q: mask_digits(q),
            n,
            gap,
            sharp: lo < gap && gap < 3 * lo,
            printed: 3 * lo <= gap && gap <= 9 * lo,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct M0Report {
    pub max_len: usize,
    pub elements: u64,
    pub pairs: u64,
    /// Every image has ternary digits in {0, 2}.
    pub digits_ok: bool,
    pub injective: bool,
    /// Every pair satisfies `3^(n-1) < |f p - f q| < 3^n`.
    pub sharp_bound: bool,
    pub first_sharp_failure: Option<PairWitness>,
    /// Extremes of `|f p - f q| / 3^n` over all pairs.
    pub min_ratio: Option<Rational>,
    pub max_ratio: Option<Rational>,
    /// Whether `3^n <= |f p - f q| <= 3^(n+1)` held on every pair.
    pub printed_bound: bool,
    pub first_printed_failure: Option<PairWitness>,
    /// The pair `[1,0,1]`, `[1,1]`, when `max_len >= 3`.
    pub recorded_witness: Option<PairWitness>,
}

impl M0Report {
    pub fn pass(&self) -> bool {
        self.digits_ok && self.injective && self.sharp_bound
    }
}

#[derive(Clone, Copy, Default)]
struct Tally {
    pairs: u64,
    zero_gap: bool,
    sharp_fail: Option<(u64, u64)>,
    printed_fail: Option<(u64, u64)>,
    // ratios gap / 3^n as (gap, 3^n)
    min: Option<(u128, u128)>,
    max: Option<(u128, u128)>,
}

fn first(a: Option<(u64, u64)>, b: Option<(u64, u64)>) -> Option<(u64, u64)> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn pick(a: Option<(u128, u128)>, b: Option<(u128, u128)>, want_less: bool) -> Option<(u128, u128)> {
    match (a, b) {
        (Some(x), Some(y)) => {
            let less = y.0 * x.1 < x.0 * y.1;
            Some(if less == want_less && y.0 * x.1 != x.0 * y.1 { y } else { x })
        }
        (x, None) => x,
        (None, y) => y,
    }
}

impl Tally {
    fn merge(self, o: Tally) -> Tally {
        Tally {
            pairs: self.pairs + o.pairs,
            zero_gap: self.zero_gap || o.zero_gap,
            sharp_fail: first(self.sharp_fail, o.sharp_fail),
            printed_fail: first(self.printed_fail, o.printed_fail),
            min: pick(self.min, o.min, true),
            max: pick(self.max, o.max, false),
        }
    }
}

/// Checks the map on every pair of distinct elements of length at most
/// `max_len`: Cantor digits, injectivity and `3^(n-1) < |f p - f q| < 3^n`
/// with `n = d_L(p, q)`. Also records whether the bound shifted up by one
/// power of 3 holds, which it does not.
pub fn m0_distortion_check(max_len: usize) -> Result<M0Report, GroupError> {
    if max_len > M0_MAX_CHECK_LEN {
        return Err(GroupError::TooLong {
            len: max_len,
            limit: M0_MAX_CHECK_LEN,
        });
    }
    let count = 1u64 << max_len;
    let digits_ok = (0..count).into_par_iter().all(|m| ternary_is_cantor(encode_mask(m)));
    let images: Vec<u128> = (0..count).map(encode_mask).collect();
    let tally = (0..count)
        .into_par_iter()
        .map(|p| {
            let mut t = Tally::default();
            for q in p + 1..count {
                t.pairs += 1;
                let n = 64 - (p ^ q).leading_zeros();
                let gap = images[p as usize].abs_diff(images[q as usize]);
                let hi = 3u128.pow(n);
                let lo = hi / 3;
                if gap == 0 {
                    t.zero_gap = true;
                }
                if !(lo < gap && gap < hi) && t.sharp_fail.is_none() {
                    t.sharp_fail = Some((p, q));
                }
                if !(hi <= gap && gap <= 3 * hi) && t.printed_fail.is_none() {
                    t.printed_fail = Some((p, q));
                }
                t.min = pick(t.min, Some((gap, hi)), true);
                t.max = pick(t.max, Some((gap, hi)), false);
            }
            t
        })
        .reduce(Tally::default, Tally::merge);
    let ratio = |r: Option<(u128, u128)>| {
        r.map(|(a, b)| Rational::new(a.into(), b.into()))
    };
    Ok(M0Report {
        max_len,
        elements: count,
        pairs: tally.pairs,
        digits_ok,
        injective: !tally.zero_gap,
        sharp_bound: tally.sharp_fail.is_none(),
        first_sharp_failure: tally.sharp_fail.map(|(p, q)| PairWitness::of(p, q)),
        min_ratio: ratio(tally.min),
        max_ratio: ratio(tally.max),
        printed_bound: tally.printed_fail.is_none(),
        first_printed_failure: tally.printed_fail.map(|(p, q)| PairWitness::of(p, q)),
        recorded_witness: (max_len >= 3).then(|| PairWitness::of(0b101, 0b011)),
    })
}
