//! Lipschitz retractions of finite ultrametric spaces onto subsets.
//!
//! Points are ordered by unit annuli around a base point, outer annuli
//! first. Each point is sent to the first point, in that order, among the
//! subset points within `delta` times its distance to the subset. For
//! `delta > 1` with `delta^2 < lambda` the result is `lambda`-Lipschitz.

use thiserror::Error;

use crate::metric::{is_ultrametric, FiniteMetricSpace, PointedSpace, Triangle};
use crate::scalar::{cmp, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RetractError<S: Scalar> {
    #[error("space is not ultrametric: triangle {0}")]
    NotUltrametric(Triangle<S>),
    #[error("subset is empty")]
    EmptySubset,
    #[error("subset index {0} out of range")]
    SubsetOutOfRange(usize),
    #[error("need delta > 1 and delta^2 < lambda (delta = {delta}, lambda = {lambda})")]
    BadParameters { delta: S, lambda: S },
    #[error("lambda must exceed 1, got {0}")]
    LambdaTooSmall(S),
    #[error("maps need equal lengths: {expected} source points, {got} images")]
    MapLength { expected: usize, got: usize },
    #[error("distance to base point has no integer part")]
    UnboundedAnnulus,
}

/// Annulus order around a base point: points of annulus `k` (with
/// `k <= d(x, base) < k + 1`) precede those of any lower annulus; inside an
/// annulus, input index order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnulusOrder {
    /// Point indices, least first.
    pub order: Vec<usize>,
    /// `rank[x]` is the position of `x` in `order`.
    pub rank: Vec<usize>,
    /// Annulus number of each point.
    pub annulus: Vec<i64>,
}

pub fn annulus_order<S: Scalar>(space: &PointedSpace<S>) -> Result<AnnulusOrder, RetractError<S>> {
    let s = space.space();
    let base = space.base();
    let annulus = (0..s.len())
        .map(|x| s.d(x, base).floor_i64().ok_or(RetractError::UnboundedAnnulus))
        .collect::<Result<Vec<_>, _>>()?;
    let mut order: Vec<usize> = (0..s.len()).collect();
    order.sort_by(|&a, &b| annulus[b].cmp(&annulus[a]).then(a.cmp(&b)));
    let mut rank = vec![0; s.len()];
    for (pos, &x) in order.iter().enumerate() {
        rank[x] = pos;
    }
    Ok(AnnulusOrder { order, rank, annulus })
}

/// A retraction onto `subset` with the parameters it was built from.
#[derive(Clone, Debug, PartialEq)]
pub struct RetractionMap<S> {
    pub space: PointedSpace<S>,
    /// Sorted, deduplicated subset indices.
    pub subset: Vec<usize>,
    pub delta: S,
    pub lambda: S,
    /// `assignment[x]` is the image of `x`.
    pub assignment: Vec<usize>,
}

/// A `delta` strictly between 1 and `sqrt(lambda)`.
///
/// Bisection on `[1, lambda]` finds a rational `r > 1` with `r^2 < lambda`;
/// the midpoint of `1` and `r` is returned.
pub fn default_delta<S: Scalar>(lambda: &S) -> Result<S, RetractError<S>> {
    let one = S::one();
    if *lambda <= one {
        return Err(RetractError::LambdaTooSmall(lambda.clone()));
    }
    let two = S::from_i64(2);
    let mut lo = one.clone();
    let mut hi = lambda.clone();
    for step in 0..512 {
        let mid = (lo.clone() + hi.clone()) / two.clone();
        if mid.clone() * mid.clone() < *lambda {
            lo = mid;
        } else {
            hi = mid;
        }
        if step >= 16 && lo > one {
            break;
        }
    }
    let delta = (one.clone() + lo) / two;
    if delta > one && delta.clone() * delta.clone() < *lambda {
        Ok(delta)
    } else {
        Err(RetractError::BadParameters {
            delta,
            lambda: lambda.clone(),
        })
    }
}

/// Builds the annulus-order retraction of an ultrametric space onto `subset`.
pub fn lipschitz_retraction<S: Scalar>(
    space: &PointedSpace<S>,
    subset: &[usize],
    lambda: &S,
    delta: &S,
) -> Result<RetractionMap<S>, RetractError<S>> {
    let s = space.space();
    if let Some(t) = is_ultrametric(s).triangle {
        return Err(RetractError::NotUltrametric(t));
    }
    if subset.is_empty() {
        return Err(RetractError::EmptySubset);
    }
    if let Some(&bad) = subset.iter().find(|&&a| a >= s.len()) {
        return Err(RetractError::SubsetOutOfRange(bad));
    }
    if !(*delta > S::one() && delta.clone() * delta.clone() < *lambda) {
        return Err(RetractError::BadParameters {
            delta: delta.clone(),
            lambda: lambda.clone(),
        });
    }
    let mut subset = subset.to_vec();
    subset.sort_unstable();
    subset.dedup();

    let order = annulus_order(space)?;
    let assignment = (0..s.len())
        .map(|x| {
            let reach = delta.clone() * s.dist_to_set(x, &subset).expect("subset is nonempty");
            subset
                .iter()
                .copied()
                .filter(|&a| *s.d(x, a) <= reach)
                .min_by_key(|&a| order.rank[a])
                .expect("a nearest subset point is always within reach")
        })
        .collect();
    Ok(RetractionMap {
        space: space.clone(),
        subset,
        delta: delta.clone(),
        lambda: lambda.clone(),
        assignment,
    })
}

impl<S: Scalar> RetractionMap<S> {
    pub fn audited_constant(&self) -> S {
        let s = self.space.space();
        audit_lipschitz(s, s, &self.assignment).expect("assignment covers the space")
    }

    pub fn fixes_subset(&self) -> bool {
        self.subset.iter().all(|&a| self.assignment[a] == a)
    }
}

/// Least Lipschitz constant of `map: source -> target`, i.e. the largest
/// `d(f x, f y) / d(x, y)`. Zero for constant maps and single points.
pub fn audit_lipschitz<S: Scalar>(
    source: &FiniteMetricSpace<S>,
    target: &FiniteMetricSpace<S>,
    map: &[usize],
) -> Result<S, RetractError<S>> {
    if map.len() != source.len() {
        return Err(RetractError::MapLength {
            expected: source.len(),
            got: map.len(),
        });
    }
    if let Some(&bad) = map.iter().find(|&&y| y >= target.len()) {
        return Err(RetractError::SubsetOutOfRange(bad));
    }
    let mut best = S::zero();
    for (x, y) in source.pairs() {
        let stretched = target.d(map[x], map[y]);
        if stretched.is_zero() {
            continue;
        }
        let ratio = stretched.clone() / source.d(x, y).clone();
        if ratio > best {
            best = ratio;
        }
    }
    Ok(best)
}

/// Smallest Lipschitz constant over every retraction onto `subset`, with a
/// retraction attaining it. Tries all `|A|^|X \ A|` assignments, so it is
/// only usable on tiny inputs; `None` if the search exceeds `max_assignments`.
pub fn best_retraction_brute_force<S: Scalar>(
    space: &FiniteMetricSpace<S>,
    subset: &[usize],
    max_assignments: u64,
) -> Option<(S, Vec<usize>)> {
    if subset.is_empty() {
        return None;
    }
    let free: Vec<usize> = (0..space.len()).filter(|x| !subset.contains(x)).collect();
    let total = (subset.len() as u64).checked_pow(free.len() as u32)?;
    if total > max_assignments {
        return None;
    }
    let mut map: Vec<usize> = (0..space.len()).collect();
    let mut best: Option<(S, Vec<usize>)> = None;
    for code in 0..total {
        let mut c = code;
        for &x in &free {
            map[x] = subset[(c % subset.len() as u64) as usize];
            c /= subset.len() as u64;
        }
        let k = audit_lipschitz(space, space, &map).expect("map is total");
        if best.as_ref().is_none_or(|(b, _)| cmp(&k, b).is_lt()) {
            best = Some((k, map.clone()));
        }
    }
    best
}

/// The sequence `x_1, ..., x_n` with `d(x_1, x_k) = 1 + 1/k` and
/// `d(x_j, x_k) = max(1 + 1/j, 1 + 1/k)` for `j, k >= 2`, based at `x_1`,
/// together with the subset `{x_2, ..., x_n}`.
///
/// In the infinite sequence no retraction onto the tail is 1-Lipschitz, since
/// `x_1` has no nearest tail point. A finite truncation does have one.
pub fn tail_sequence_example<S: Scalar>(n: usize) -> (PointedSpace<S>, Vec<usize>) {
    assert!(n >= 2, "the example needs x_1 and at least one tail point");
    let gap = |k: usize| S::one() + S::from_ratio(1, k as i64 + 1);
    let labels = (1..=n).map(|k| format!("x{k}")).collect();
    let space = FiniteMetricSpace::from_fn_unchecked(labels, |i, j| {
        if i == 0 || j == 0 {
            gap(i.max(j))
        } else {
            crate::scalar::max_of(&gap(i), &gap(j))
        }
    });
    (PointedSpace::new(space, 0).expect("x_1 exists"), (1..n).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn r(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    /// p, q, r with d(p,q)=1 and d(p,r)=d(q,r)=3, based at p.
    fn pqr() -> PointedSpace<Rational> {
        let d = [[0, 1, 3], [1, 0, 3], [3, 3, 0]];
        let s = FiniteMetricSpace::from_fn(vec!["p".into(), "q".into(), "r".into()], |i, j| r(d[i][j])).unwrap();
        PointedSpace::new(s, 0).unwrap()
    }

    #[test]
    fn annulus_order_examples() {
        assert_eq!(annulus_order(&pqr()).unwrap().order, vec![2, 1, 0]);

        let flat = FiniteMetricSpace::from_fn(vec!["a".into(), "b".into(), "c".into()], |_, _| r(2)).unwrap();
        let o = annulus_order(&PointedSpace::new(flat, 0).unwrap()).unwrap();
        assert_eq!(o.order, vec![1, 2, 0]);

        let single = FiniteMetricSpace::new(vec!["a".into()], vec![vec![r(0)]]).unwrap();
        assert_eq!(annulus_order(&PointedSpace::new(single, 0).unwrap()).unwrap().order, vec![0]);
    }

    #[test]
    fn retraction_of_pqr() {
        let map = lipschitz_retraction(&pqr(), &[1, 2], &r(2), &q(7, 5)).unwrap();
        assert_eq!(map.assignment, vec![1, 1, 2]);
        assert!(map.fixes_subset());
        assert_eq!(map.audited_constant(), r(1));
    }

    #[test]
    fn retraction_onto_everything_is_identity() {
        let map = lipschitz_retraction(&pqr(), &[0, 1, 2], &r(2), &q(7, 5)).unwrap();
        assert_eq!(map.assignment, vec![0, 1, 2]);
    }

    #[test]
    fn parameter_checks() {
        assert!(matches!(
            lipschitz_retraction(&pqr(), &[], &r(2), &q(7, 5)),
            Err(RetractError::EmptySubset)
        ));
        assert!(matches!(
            lipschitz_retraction(&pqr(), &[1], &r(2), &r(1)),
            Err(RetractError::BadParameters { .. })
        ));
        assert!(matches!(
            lipschitz_retraction(&pqr(), &[1], &r(2), &q(3, 2)),
            Err(RetractError::BadParameters { .. })
        ));
        let line = FiniteMetricSpace::from_fn(vec!["a".into(), "b".into(), "c".into()], |i, j| {
            r((i as i64 - j as i64).abs())
        })
        .unwrap();
        assert!(matches!(
            lipschitz_retraction(&PointedSpace::new(line, 0).unwrap(), &[1], &r(2), &q(7, 5)),
            Err(RetractError::NotUltrametric(_))
        ));
    }

    #[test]
    fn default_delta_is_admissible() {
        for lambda in [q(3, 2), r(2), r(4), q(101, 100)] {
            let d = default_delta(&lambda).unwrap();
            assert!(d > r(1) && d.clone() * d < lambda);
        }
        assert!(matches!(default_delta(&r(1)), Err(RetractError::LambdaTooSmall(_))));
    }

    #[test]
    fn audit_examples() {
        let s = pqr();
        let sp = s.space();
        assert_eq!(audit_lipschitz(sp, sp, &[0, 1, 2]).unwrap(), r(1));
        assert_eq!(audit_lipschitz(sp, sp, &[2, 2, 2]).unwrap(), r(0));
        assert!(matches!(audit_lipschitz(sp, sp, &[0, 1]), Err(RetractError::MapLength { .. })));
    }

    #[test]
    fn tail_example_is_ultrametric_and_retracts() {
        let (space, tail) = tail_sequence_example::<Rational>(10);
        assert!(is_ultrametric(space.space()).verdict);
        assert_eq!(space.space().d(0, 1), &q(3, 2));
        assert_eq!(space.space().d(2, 4), &q(4, 3));

        let map = lipschitz_retraction(&space, &tail, &q(3, 2), &q(6, 5)).unwrap();
        assert!(map.fixes_subset());
        assert!(map.audited_constant() <= q(3, 2));
        assert!(matches!(
            lipschitz_retraction(&space, &tail, &r(1), &q(6, 5)),
            Err(RetractError::BadParameters { .. })
        ));
    }

    #[test]
    fn finite_tail_truncations_admit_a_one_lipschitz_retraction() {
        // sending x_1 to the last tail point stretches nothing
        for n in 3..=6 {
            let (space, tail) = tail_sequence_example::<Rational>(n);
            let (best, map) = best_retraction_brute_force(space.space(), &tail, 1 << 16).unwrap();
            assert_eq!(best, r(1));
            assert_eq!(map[0], n - 1);
        }
    }
}
