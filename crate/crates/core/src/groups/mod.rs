//! Direct sums of cyclic groups with the filtration metric `d_L`, isometric
//! embeddings between them, Sylow numbers and the ternary Cantor map.
//!
//! The filtration is by the subgroups `G_i` spanned by the first `i`
//! summands, so `d_L(p, q)` is the last index where the digit strings differ.

mod m0;
mod spec;
mod sylow;

use thiserror::Error;

use crate::metric::FiniteMetricSpace;
use crate::scalar::Scalar;

pub use m0::{m0_distortion_check, m0_encode, m0_encode_digits, M0Report, M0_MAX_CHECK_LEN, M0_MAX_ENCODE_LEN, PairWitness};
pub use spec::{CyclicSumSpec, GroupElement, Multiplicity};
pub use sylow::{is_prime, prime_factors, protasov_equivalent, sylow_number, ProtasovReport, SylowNumber, SylowRow};

/// Largest ball [`group_ball`] will materialize.
pub const MAX_BALL_POINTS: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("block {block}: order {order} is below 2")]
    InvalidOrder { block: usize, order: u64 },
    #[error("block {0}: multiplicity must be positive")]
    ZeroMultiplicity(usize),
    #[error("two infinite blocks of order {0}")]
    DuplicateInfiniteBlock(u64),
    #[error("digit {digit} at position {index} is out of range{}", match .order { Some(a) => format!(" for Z{a}"), None => " (no such summand)".to_string() })]
    DigitOutOfRange { index: usize, digit: u64, order: Option<u64> },
    #[error("radius must be at least 1")]
    ZeroRadius,
    #[error("radius {radius} exceeds the {available} summands of the spec")]
    RadiusExceedsSpec { radius: usize, available: usize },
    #[error("ball has {points} points, more than the limit {limit}")]
    BallTooLarge { points: u128, limit: u64 },
    #[error("index condition fails at summand {0}: source order exceeds target order")]
    IndexConditionFails(usize),
    #[error("digit map {0} must be injective, fix 0 and land in range")]
    BadInjection(usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("summand {0} is not of order 2")]
    NotBinarySpec(usize),
    #[error("length {len} exceeds the limit {limit}")]
    TooLong { len: usize, limit: usize },
}

/// `d_L(p, q)`: `max(|p|, |q|)` when the lengths differ, otherwise the last
/// index where the digits differ; 0 when `p = q`.
pub fn d_filtration(spec: &CyclicSumSpec, p: &GroupElement, q: &GroupElement) -> Result<u64, GroupError> {
    p.validate(spec)?;
    q.validate(spec)?;
    Ok(d_filtration_unchecked(p, q))
}

pub(crate) fn d_filtration_unchecked(p: &GroupElement, q: &GroupElement) -> u64 {
    if p.len() != q.len() {
        return p.len().max(q.len()) as u64;
    }
    (1..=p.len()).rev().find(|&i| p.digit(i) != q.digit(i)).unwrap_or(0) as u64
}

/// The finite subgroup `G_r` with its filtration metric.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupBall<S> {
    pub orders: Vec<u64>,
    pub elements: Vec<GroupElement>,
    pub space: FiniteMetricSpace<S>,
}

impl<S> GroupBall<S> {
    /// Position of an element whose digits fit the ball; the first digit varies fastest.
    pub fn index_of(&self, e: &GroupElement) -> Option<usize> {
        if e.len() > self.orders.len() {
            return None;
        }
        let mut idx = 0u64;
        let mut stride = 1u64;
        for (i, &a) in self.orders.iter().enumerate() {
            let p = e.digit(i + 1);
            if p >= a {
                return None;
            }
            idx += p * stride;
            stride *= a;
        }
        Some(idx as usize)
    }
}

fn ball_orders(spec: &CyclicSumSpec, radius: usize) -> Result<Vec<u64>, GroupError> {
    if radius == 0 {
        return Err(GroupError::ZeroRadius);
    }
    let orders = spec.orders(radius);
    if orders.len() < radius {
        return Err(GroupError::RadiusExceedsSpec {
            radius,
            available: orders.len(),
        });
    }
    let points = orders.iter().map(|&a| a as u128).product::<u128>();
    if points > MAX_BALL_POINTS as u128 {
        return Err(GroupError::BallTooLarge {
            points,
            limit: MAX_BALL_POINTS,
        });
    }
    Ok(orders)
}

fn enumerate(orders: &[u64]) -> Vec<GroupElement> {
    let total: u64 = orders.iter().product();
    (0..total)
        .map(|mut code| {
            GroupElement::new(
                orders
                    .iter()
                    .map(|&a| {
                        let p = code % a;
                        code /= a;
                        p
                    })
                    .collect(),
            )
        })
        .collect()
}

/// Materializes `G_r`, the first `radius` summands, labelled by digit strings.
pub fn group_ball<S: Scalar>(spec: &CyclicSumSpec, radius: usize) -> Result<GroupBall<S>, GroupError> {
    let orders = ball_orders(spec, radius)?;
    let elements = enumerate(&orders);
    let labels = elements.iter().map(|e| e.to_string()).collect();
    let space = FiniteMetricSpace::from_fn_unchecked(labels, |i, j| {
        S::from_i64(d_filtration_unchecked(&elements[i], &elements[j]) as i64)
    });
    Ok(GroupBall { orders, elements, space })
}

/// An injection of `G_r` into `H_r` built digitwise.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupEmbedding<S> {
    pub source: GroupBall<S>,
    pub target: GroupBall<S>,
    /// `digit_maps[i][p]` is the image of digit `p` at position `i + 1`.
    pub digit_maps: Vec<Vec<u64>>,
    /// `assignment[x]` is the target index of source point `x`.
    pub assignment: Vec<usize>,
    pub bijective: bool,
}

/// Embeds `G_r` into `H_r` isometrically when `a_i(G) <= a_i(H)` for `i <= r`.
///
/// Each digit position gets an injection `Z_{a_i} -> Z_{b_i}` fixing 0,
/// by default the inclusion of digits `0..a_i`.
pub fn group_isometric_embedding<S: Scalar>(
    g: &CyclicSumSpec,
    h: &CyclicSumSpec,
    radius: usize,
    digit_maps: Option<Vec<Vec<u64>>>,
) -> Result<GroupEmbedding<S>, GroupError> {
    let a = ball_orders(g, radius)?;
    let b = h.orders(radius);
    if b.len() < radius {
        return Err(GroupError::RadiusExceedsSpec {
            radius,
            available: b.len(),
        });
    }
    if let Some(i) = (0..radius).find(|&i| a[i] > b[i]) {
        return Err(GroupError::IndexConditionFails(i + 1));
    }
    let maps = match digit_maps {
        Some(m) => m,
        None => a.iter().map(|&ai| (0..ai).collect()).collect(),
    };
    if maps.len() != radius {
        return Err(GroupError::BadInjection(maps.len().min(radius) + 1));
    }
    for (i, m) in maps.iter().enumerate() {
        let mut seen = m.clone();
        seen.sort_unstable();
        seen.dedup();
        let ok = m.len() as u64 == a[i] && m[0] == 0 && seen.len() == m.len() && m.iter().all(|&v| v < b[i]);
        if !ok {
            return Err(GroupError::BadInjection(i + 1));
        }
    }
    let source = group_ball::<S>(g, radius)?;
    let target = group_ball::<S>(h, radius)?;
    let assignment = source
        .elements
        .iter()
        .map(|e| {
            let image = GroupElement::new((1..=radius).map(|i| maps[i - 1][e.digit(i) as usize]).collect());
            target.index_of(&image).expect("digit maps land in the target ball")
        })
        .collect();
    let bijective = source.elements.len() == target.elements.len();
    Ok(GroupEmbedding {
        source,
        target,
        digit_maps: maps,
        assignment,
        bijective,
    })
}

/// First pair `(x, y)` where `map` changes the distance, if any.
pub fn isometry_defect<S: Scalar>(
    source: &FiniteMetricSpace<S>,
    target: &FiniteMetricSpace<S>,
    map: &[usize],
) -> Option<(usize, usize)> {
    source.pairs().find(|&(x, y)| source.d(x, y) != target.d(map[x], map[y]))
}

/// Recovers the index sequence `[G_i : G_{i-1}]` from the filtration metric
/// alone: `G_i` is the closed ball of radius `i` about the identity.
/// `None` if the distances are not integers or the ball sizes do not divide.
pub fn filtration_indices<S: Scalar>(space: &FiniteMetricSpace<S>, identity: usize) -> Option<Vec<u64>> {
    let mut radii = Vec::with_capacity(space.len());
    for x in 0..space.len() {
        let d = space.d(identity, x);
        let k = d.floor_i64()?;
        if S::from_i64(k) != *d || k < 0 {
            return None;
        }
        radii.push(k as u64);
    }
    let top = radii.iter().copied().max().unwrap_or(0);
    let mut indices = Vec::new();
    let mut prev = 1u64;
    for i in 1..=top {
        let size = radii.iter().filter(|&&r| r <= i).count() as u64;
        if size % prev != 0 || size == prev {
            return None;
        }
        indices.push(size / prev);
        prev = size;
    }
    Some(indices)
}
