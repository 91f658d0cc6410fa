//! Scale structure of a finite metric space.
//!
//! At a scale `S` two points are linked when `d <= S`; the classes of the
//! generated equivalence are the S-components. The chain-infimum metric
//! `rho(x, z)` (least possible largest link over chains from `x` to `z`) is
//! the subdominant ultrametric, and the growth of component diameters
//! across scales gives the dimension-zero certificate `(m, D)`.

use thiserror::Error;

use crate::metric::FiniteMetricSpace;
use crate::mst;
use crate::scalar::{cmp, max_of, Scalar};
use crate::union_find::DisjointSets;

/// Default point-count cap for the brute-force chain oracle.
pub const DEFAULT_ORACLE_LIMIT: usize = 8;

/// Environment variable overriding [`DEFAULT_ORACLE_LIMIT`].
pub const ORACLE_LIMIT_ENV: &str = "ULTRAZERO_ORACLE_LIMIT";

pub fn oracle_limit_from_env() -> usize {
    std::env::var(ORACLE_LIMIT_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ORACLE_LIMIT)
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ScaleError {
    #[error("scale must be positive")]
    NonPositiveScale,
    #[error("inputs describe different spaces: {0}")]
    InputMismatch(String),
    #[error("oracle limited to {limit} points, space has {len}")]
    OracleSizeExceeded { len: usize, limit: usize },
    #[error("point index {0} out of range")]
    PointOutOfRange(usize),
}

/// S-components of a space at one scale.
#[derive(Clone, Debug, PartialEq)]
pub struct Partition<S> {
    pub scale: S,
    /// Sorted index lists, ordered by least member.
    pub blocks: Vec<Vec<usize>>,
}

pub fn s_components<S: Scalar>(space: &FiniteMetricSpace<S>, scale: &S) -> Result<Partition<S>, ScaleError> {
    if !scale.is_positive() {
        return Err(ScaleError::NonPositiveScale);
    }
    let mut ds = DisjointSets::new(space.len());
    for (i, j) in space.pairs() {
        if space.d(i, j) <= scale {
            ds.union(i, j);
        }
    }
    Ok(Partition {
        scale: scale.clone(),
        blocks: ds.classes(),
    })
}

/// Diameter of a block of points.
pub fn block_diameter<S: Scalar>(space: &FiniteMetricSpace<S>, block: &[usize]) -> S {
    let mut best = S::zero();
    for (a, &i) in block.iter().enumerate() {
        for &j in &block[a + 1..] {
            if *space.d(i, j) > best {
                best = space.d(i, j).clone();
            }
        }
    }
    best
}

/// The subdominant ultrametric and the spanning tree that realizes it.
#[derive(Clone, Debug, PartialEq)]
pub struct SubdominantResult<S> {
    pub rho: FiniteMetricSpace<S>,
    /// Minimum spanning tree edges `(i, j, weight)` with `i < j`.
    pub spanning_edges: Vec<(usize, usize, S)>,
}

/// `rho(x, z)`: the largest edge on the minimum-spanning-tree path from `x`
/// to `z`. This is the minimax chain value and the largest ultrametric
/// below `d`.
pub fn subdominant_ultrametric<S: Scalar>(space: &FiniteMetricSpace<S>) -> SubdominantResult<S> {
    let n = space.len();
    let tree = mst::prim(space);
    let mut rho = vec![vec![S::zero(); n]; n];
    for (x, row) in rho.iter_mut().enumerate() {
        let pm = tree.path_max_from(x);
        for (z, slot) in row.iter_mut().enumerate() {
            if let Some(v) = &pm.max[z] {
                *slot = v.clone();
            }
        }
    }
    let rho = FiniteMetricSpace::from_fn_unchecked(space.labels().to_vec(), |i, j| rho[i][j].clone());
    SubdominantResult {
        rho,
        spanning_edges: tree.edges,
    }
}

/// Multiplicative constant `m` and the component-diameter step function `D`.
#[derive(Clone, Debug, PartialEq)]
pub struct Dim0Certificate<S> {
    pub m: S,
    /// `(S, D(S))` at every distinct positive distance, `S` ascending.
    pub table: Vec<(S, S)>,
}

impl<S: Scalar> Dim0Certificate<S> {
    /// `D(s)`: constant between listed scales, zero below the first.
    pub fn control(&self, s: &S) -> S {
        self.table
            .iter()
            .take_while(|(scale, _)| scale <= s)
            .last()
            .map(|(_, d)| d.clone())
            .unwrap_or_else(S::zero)
    }

    /// Generalized inverse `min { S : D(S) >= t }`.
    pub fn inverse(&self, t: &S) -> Option<S> {
        self.table.iter().find(|(_, d)| d >= t).map(|(s, _)| s.clone())
    }
}

/// Computes `D(S)` (largest S-component diameter) at every realized
/// distance and `m = max D(S) / S`.
///
/// Components are merged Kruskal-style in distance order; the diameter of a
/// merged component is the larger of the two old diameters and the largest
/// cross distance, so the whole table costs O(n^2 log n).
pub fn dim0_certificate<S: Scalar>(space: &FiniteMetricSpace<S>) -> Dim0Certificate<S> {
    let n = space.len();
    if n < 2 {
        return Dim0Certificate {
            m: S::one(),
            table: Vec::new(),
        };
    }
    let mut edges: Vec<(usize, usize)> = space.pairs().collect();
    edges.sort_by(|a, b| cmp(space.d(a.0, a.1), space.d(b.0, b.1)));

    let mut ds = DisjointSets::new(n);
    let mut members: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    let mut diam: Vec<S> = vec![S::zero(); n];
    let mut largest = S::zero();
    let mut table: Vec<(S, S)> = Vec::new();
    let mut m = S::zero();

    let mut k = 0;
    while k < edges.len() {
        let scale = space.d(edges[k].0, edges[k].1).clone();
        while k < edges.len() && *space.d(edges[k].0, edges[k].1) == scale {
            let (i, j) = edges[k];
            let (ri, rj) = (ds.find(i), ds.find(j));
            if ri != rj {
                let mut merged = max_of(&diam[ri], &diam[rj]);
                for &a in &members[ri] {
                    for &b in &members[rj] {
                        if *space.d(a, b) > merged {
                            merged = space.d(a, b).clone();
                        }
                    }
                }
                let root = ds.union(ri, rj).expect("roots differ");
                let other = if root == ri { rj } else { ri };
                let moved = std::mem::take(&mut members[other]);
                members[root].extend(moved);
                if merged > largest {
                    largest = merged.clone();
                }
                diam[root] = merged;
            }
            k += 1;
        }
        let ratio = largest.clone() / scale.clone();
        if ratio > m {
            m = ratio;
        }
        table.push((scale, largest.clone()));
    }
    Dim0Certificate { m, table }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundKind {
    /// `d / (2m) <= rho <= d`
    Lipschitz,
    /// `D^-1(d) / 2 <= rho <= d`
    Uniform,
}

/// A pair breaking `lhs <= mid <= rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundViolation<S> {
    pub pair: (usize, usize),
    pub bound: BoundKind,
    pub lhs: S,
    pub mid: S,
    pub rhs: S,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScaleReport<S> {
    pub pass: bool,
    pub checked_pairs: usize,
    pub violations: Vec<BoundViolation<S>>,
}

/// Checks `d/(2m) <= rho <= d` and `D^-1(d)/2 <= rho <= d` on every pair.
pub fn verify_scale_bounds<S: Scalar>(
    space: &FiniteMetricSpace<S>,
    result: &SubdominantResult<S>,
    cert: &Dim0Certificate<S>,
) -> Result<ScaleReport<S>, ScaleError> {
    if space.labels() != result.rho.labels() {
        return Err(ScaleError::InputMismatch("subdominant labels differ from the space".into()));
    }
    let two = S::from_i64(2);
    let two_m = two.clone() * cert.m.clone();
    let mut violations = Vec::new();
    let mut checked = 0;
    for (i, j) in space.pairs() {
        checked += 1;
        let d = space.d(i, j);
        let rho = result.rho.d(i, j);
        let nagata = d.clone() / two_m.clone();
        if !(nagata <= *rho && rho <= d) {
            violations.push(BoundViolation {
                pair: (i, j),
                bound: BoundKind::Lipschitz,
                lhs: nagata,
                mid: rho.clone(),
                rhs: d.clone(),
            });
        }
        let inv = cert.inverse(d).ok_or_else(|| {
            ScaleError::InputMismatch(format!("certificate does not reach distance {d}"))
        })?;
        let uniform = inv / two.clone();
        if !(uniform <= *rho && rho <= d) {
            violations.push(BoundViolation {
                pair: (i, j),
                bound: BoundKind::Uniform,
                lhs: uniform,
                mid: rho.clone(),
                rhs: d.clone(),
            });
        }
    }
    Ok(ScaleReport {
        pass: violations.is_empty(),
        checked_pairs: checked,
        violations,
    })
}

/// Minimax chain value between `x` and `z` by enumerating every simple
/// chain. Exponential; refuses spaces larger than `limit`.
pub fn chain_minimax_oracle<S: Scalar>(
    space: &FiniteMetricSpace<S>,
    x: usize,
    z: usize,
    limit: usize,
) -> Result<S, ScaleError> {
    let n = space.len();
    if n > limit {
        return Err(ScaleError::OracleSizeExceeded { len: n, limit });
    }
    for p in [x, z] {
        if p >= n {
            return Err(ScaleError::PointOutOfRange(p));
        }
    }
    if x == z {
        return Ok(S::zero());
    }
    let mut best: Option<S> = None;
    let mut visited = vec![false; n];
    visited[x] = true;
    walk(space, x, z, None, &mut visited, &mut best);
    Ok(best.expect("the direct link is a chain"))
}

fn walk<S: Scalar>(
    space: &FiniteMetricSpace<S>,
    at: usize,
    target: usize,
    link_max: Option<S>,
    visited: &mut [bool],
    best: &mut Option<S>,
) {
    for next in 0..space.len() {
        if visited[next] {
            continue;
        }
        let step = space.d(at, next);
        let m = match &link_max {
            None => step.clone(),
            Some(v) => max_of(v, step),
        };
        if next == target {
            if best.as_ref().is_none_or(|b| m < *b) {
                *best = Some(m);
            }
            continue;
        }
        visited[next] = true;
        walk(space, next, target, Some(m), visited, best);
        visited[next] = false;
    }
}
