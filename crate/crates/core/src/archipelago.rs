//! Archipelagos: wedges of cones over uniform islands.
//!
//! Island `i` has `n_i` points pairwise at distance `m_i`, all at distance
//! `k_i = m_1 + ... + m_i` from a common hub (one more in strict mode).
//! Island profiles `(n, N, S)` are read back from the metric alone and serve
//! as fingerprints of finite truncations.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::metric::{cone, metric_wedge, uniform_space, FiniteMetricSpace, PointedSpace};
use crate::scalar::{cmp, Scalar};
use crate::DisjointSets;

/// Largest archipelago [`build_archipelago`] will materialize.
pub const MAX_ARCHIPELAGO_POINTS: u64 = 5000;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ArchipelagoError {
    #[error("plan is empty")]
    EmptyPlan,
    #[error("lambda entries must be at least 2, got {0}")]
    BadLambda(u64),
    #[error("island {0}: size is not in lambda")]
    SizeNotInLambda(usize),
    #[error("island {0}: diameter is below the size")]
    DiameterTooSmall(usize),
    #[error("archipelago would have {points} points, more than the limit {limit}")]
    TooLarge { points: u64, limit: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IslandSpec {
    pub size: u64,
    pub diameter: u64,
    pub separation: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Island {
    pub spec: IslandSpec,
    /// Point indices, ascending.
    pub points: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Archipelago<S> {
    /// Based at the hub, which is point 0.
    pub space: PointedSpace<S>,
    pub islands: Vec<Island>,
}

impl<S: Scalar> Archipelago<S> {
    /// The profile the construction should produce.
    pub fn planned_profile(&self) -> IslandProfile<S> {
        IslandProfile::new(
            self.islands
                .iter()
                .map(|is| ProfileEntry {
                    size: is.spec.size as usize,
                    diameter: S::from_i64(is.spec.diameter as i64),
                    separation: S::from_i64(is.spec.separation as i64),
                })
                .collect(),
        )
    }

    /// Island containing point `x`, if `x` is not the hub.
    pub fn island_of(&self, x: usize) -> Option<usize> {
        self.islands.iter().position(|is| is.points.binary_search(&x).is_ok())
    }
}

/// Builds the archipelago for `plan = [(n_i, m_i)]`.
pub fn build_archipelago<S: Scalar>(
    lambda: &BTreeSet<u64>,
    plan: &[(u64, u64)],
    strict: bool,
) -> Result<Archipelago<S>, ArchipelagoError> {
    if plan.is_empty() {
        return Err(ArchipelagoError::EmptyPlan);
    }
    if let Some(&bad) = lambda.iter().find(|&&l| l < 2) {
        return Err(ArchipelagoError::BadLambda(bad));
    }
    for (i, &(n, m)) in plan.iter().enumerate() {
        if !lambda.contains(&n) {
            return Err(ArchipelagoError::SizeNotInLambda(i + 1));
        }
        if m < n {
            return Err(ArchipelagoError::DiameterTooSmall(i + 1));
        }
    }
    let points = plan
        .iter()
        .try_fold(1u64, |acc, &(n, _)| acc.checked_add(n))
        .filter(|&p| p <= MAX_ARCHIPELAGO_POINTS)
        .ok_or(ArchipelagoError::TooLarge {
            points: plan.iter().fold(1u64, |acc, &(n, _)| acc.saturating_add(n)),
            limit: MAX_ARCHIPELAGO_POINTS,
        })?;

    let hub = FiniteMetricSpace::from_fn_unchecked(vec!["hub".to_string()], |_, _| S::zero());
    let mut parts = vec![PointedSpace::new(hub, 0).expect("one point")];
    let mut islands = Vec::with_capacity(plan.len());
    let mut running = 0u64;
    let mut next = 1usize;
    for (i, &(n, m)) in plan.iter().enumerate() {
        running += m;
        let k = running + u64::from(strict);
        let labels = (0..n).map(|p| format!("i{}.{p}", i + 1)).collect();
        let island = uniform_space(labels, &S::from_i64(m as i64)).expect("m >= n >= 2");
        parts.push(cone(&island, &S::from_i64(k as i64), true).expect("k >= m is the island diameter"));
        islands.push(Island {
            spec: IslandSpec {
                size: n,
                diameter: m,
                separation: k,
            },
            points: (next..next + n as usize).collect(),
        });
        next += n as usize;
    }
    let space = metric_wedge(&parts).expect("parts are nonempty");
    debug_assert_eq!(space.space().len() as u64, points);
    Ok(Archipelago { space, islands })
}

/// `(n, N, S)`: island size, internal diameter, hub distance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileEntry<S> {
    pub size: usize,
    pub diameter: S,
    pub separation: S,
}

/// A multiset of island triples, kept sorted so that equality is multiset equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IslandProfile<S> {
    pub entries: Vec<ProfileEntry<S>>,
}

impl<S: Scalar> IslandProfile<S> {
    pub fn new(mut entries: Vec<ProfileEntry<S>>) -> Self {
        entries.sort_by(|a, b| {
            cmp(&a.separation, &b.separation)
                .then_with(|| cmp(&a.diameter, &b.diameter))
                .then(a.size.cmp(&b.size))
        });
        IslandProfile { entries }
    }

    /// Island size -> number of islands of that size.
    pub fn size_counts(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for e in &self.entries {
            *out.entry(e.size).or_insert(0) += 1;
        }
        out
    }

    /// Distinct island diameters, ascending.
    pub fn diameter_spectrum(&self) -> Vec<S> {
        let mut v: Vec<S> = self.entries.iter().map(|e| e.diameter.clone()).collect();
        v.sort_by(cmp);
        v.dedup();
        v
    }
}

/// Why a pointed space does not decompose as an archipelago.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShapeDefect {
    /// A class with one point: its neighbours are no closer than the hub.
    SingletonIsland { point: usize },
    /// Two points of one class that the rule does not relate directly.
    InternalRelation { a: usize, b: usize },
    /// Points of one class at different hub distances.
    HubDistance { a: usize, b: usize },
    /// Internal distances of a class are not all equal.
    NonUniform { a: usize, b: usize },
    /// Points of different classes not at `max(S_i, S_j)`.
    CrossDistance { a: usize, b: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("not archipelago shaped: {defects:?}")]
pub struct NotArchipelagoShaped<S: Scalar> {
    /// The profile of the classes the rule produced, defects included.
    pub degraded: IslandProfile<S>,
    pub classes: Vec<Vec<usize>>,
    pub defects: Vec<ShapeDefect>,
}

/// Reads islands off a pointed space: non-hub `x`, `y` share an island iff
/// `d(x, y) < d(x, hub)`.
pub fn island_profile<S: Scalar>(space: &PointedSpace<S>) -> Result<IslandProfile<S>, NotArchipelagoShaped<S>> {
    let s = space.space();
    let hub = space.base();
    let others: Vec<usize> = (0..s.len()).filter(|&x| x != hub).collect();
    let related = |x: usize, y: usize| s.d(x, y) < s.d(x, hub);

    let mut sets = DisjointSets::new(s.len());
    for (a, &x) in others.iter().enumerate() {
        for &y in &others[a + 1..] {
            if related(x, y) || related(y, x) {
                sets.union(x, y);
            }
        }
    }
    let classes: Vec<Vec<usize>> = sets.classes().into_iter().filter(|c| !c.contains(&hub)).collect();
    let mut class_of = vec![usize::MAX; s.len()];
    for (c, members) in classes.iter().enumerate() {
        for &x in members {
            class_of[x] = c;
        }
    }

    let mut defects = Vec::new();
    let mut entries = Vec::with_capacity(classes.len());
    for members in &classes {
        let x0 = members[0];
        if members.len() == 1 {
            defects.push(ShapeDefect::SingletonIsland { point: x0 });
        }
        let mut diameter = S::zero();
        for (a, &x) in members.iter().enumerate() {
            if s.d(x, hub) != s.d(x0, hub) {
                defects.push(ShapeDefect::HubDistance { a: x0, b: x });
            }
            for &y in &members[a + 1..] {
                if !(related(x, y) && related(y, x)) {
                    defects.push(ShapeDefect::InternalRelation { a: x, b: y });
                }
                if members.len() > 1 && s.d(x, y) != s.d(members[0], members[1]) {
                    defects.push(ShapeDefect::NonUniform { a: x, b: y });
                }
                if s.d(x, y) > &diameter {
                    diameter = s.d(x, y).clone();
                }
            }
        }
        entries.push(ProfileEntry {
            size: members.len(),
            diameter,
            separation: s.d(x0, hub).clone(),
        });
    }
    for (a, &x) in others.iter().enumerate() {
        for &y in &others[a + 1..] {
            if class_of[x] != class_of[y] {
                let expected = crate::scalar::max_of(s.d(x, hub), s.d(y, hub));
                if *s.d(x, y) != expected {
                    defects.push(ShapeDefect::CrossDistance { a: x, b: y });
                }
            }
        }
    }
    let profile = IslandProfile::new(entries);
    if defects.is_empty() {
        Ok(profile)
    } else {
        Err(NotArchipelagoShaped {
            degraded: profile,
            classes,
            defects,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FingerprintVerdict {
    /// The sets of island sizes differ.
    Distinct,
    /// Same island sizes; finite truncations cannot tell more.
    IndistinguishableAtTruncation,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FingerprintReport<S> {
    pub sizes_left: BTreeMap<usize, usize>,
    pub sizes_right: BTreeMap<usize, usize>,
    pub only_left: Vec<usize>,
    pub only_right: Vec<usize>,
    pub diameters_left: Vec<S>,
    pub diameters_right: Vec<S>,
    pub verdict: FingerprintVerdict,
}

/// Compares the sets of island sizes. Counts and diameters are reported but
/// do not affect the verdict, since any finite count is a truncation artifact.
pub fn fingerprint_compare<S: Scalar>(a: &IslandProfile<S>, b: &IslandProfile<S>) -> FingerprintReport<S> {
    let sizes_left = a.size_counts();
    let sizes_right = b.size_counts();
    let only_left: Vec<usize> = sizes_left.keys().filter(|k| !sizes_right.contains_key(k)).copied().collect();
    let only_right: Vec<usize> = sizes_right.keys().filter(|k| !sizes_left.contains_key(k)).copied().collect();
    let verdict = if only_left.is_empty() && only_right.is_empty() {
        FingerprintVerdict::IndistinguishableAtTruncation
    } else {
        FingerprintVerdict::Distinct
    };
    FingerprintReport {
        diameters_left: a.diameter_spectrum(),
        diameters_right: b.diameter_spectrum(),
        sizes_left,
        sizes_right,
        only_left,
        only_right,
        verdict,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BallShape {
    /// Equal to the ball of the same radius about the hub.
    HubBall,
    Singleton,
    /// Exactly the island of the center.
    Island,
    /// None of the above; never happens for generated archipelagos.
    Unclassified,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BallEntry<S> {
    pub center: usize,
    pub radius: S,
    pub shape: BallShape,
    pub cardinality: usize,
    /// `max(R, |B(hub, R)|)`
    pub capacity: S,
    pub within_capacity: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BallAuditReport<S> {
    pub entries: Vec<BallEntry<S>>,
    pub pass: bool,
}

/// Classifies closed balls `B(x, R)`: each is the hub ball of radius `R`,
/// the singleton `{x}`, or the island of `x`. An island ball has at most
/// `R` points, so every ball has at most `max(R, |B(hub, R)|)` points.
/// Out-of-range centers are skipped.
pub fn ball_audit<S: Scalar>(arch: &Archipelago<S>, samples: &[(usize, S)]) -> BallAuditReport<S> {
    let s = arch.space.space();
    let hub = arch.space.base();
    let ball = |x: usize, r: &S| -> Vec<usize> { (0..s.len()).filter(|&y| s.d(x, y) <= r).collect() };
    let mut entries = Vec::with_capacity(samples.len());
    for (center, radius) in samples {
        if *center >= s.len() {
            continue;
        }
        let got = ball(*center, radius);
        let hub_ball = ball(hub, radius);
        let island = arch.island_of(*center).map(|i| &arch.islands[i].points);
        let shape = if got == hub_ball {
            BallShape::HubBall
        } else if got == [*center] {
            BallShape::Singleton
        } else if island.is_some_and(|pts| *pts == got) {
            BallShape::Island
        } else {
            BallShape::Unclassified
        };
        let hub_count = S::from_i64(hub_ball.len() as i64);
        let capacity = if *radius > hub_count { radius.clone() } else { hub_count };
        let cardinality = got.len();
        let within_capacity = match shape {
            BallShape::Island => S::from_i64(cardinality as i64) <= *radius,
            _ => S::from_i64(cardinality as i64) <= capacity,
        };
        entries.push(BallEntry {
            center: *center,
            radius: radius.clone(),
            shape,
            cardinality,
            capacity,
            within_capacity,
        });
    }
    let pass = entries
        .iter()
        .all(|e| e.within_capacity && e.shape != BallShape::Unclassified);
    BallAuditReport { entries, pass }
}
