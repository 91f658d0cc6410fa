use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::mst;
use crate::scalar::{cmp, Scalar};

/// Rejection reasons for a candidate distance matrix. Indices refer to the
/// label list.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("{labels} labels but {rows} matrix rows")]
    ShapeMismatch { labels: usize, rows: usize },
    #[error("row {row} has {len} entries, expected {expected}")]
    RaggedRow { row: usize, len: usize, expected: usize },
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("d({i},{i}) is not zero")]
    NonZeroDiagonal { i: usize },
    #[error("d({i},{j}) differs from d({j},{i})")]
    NonSymmetric { i: usize, j: usize },
    #[error("d({i},{j}) is not positive")]
    NegativeOrZeroOffDiagonal { i: usize, j: usize },
    #[error("triangle inequality fails: d({i},{k}) > d({i},{j}) + d({j},{k})")]
    TriangleViolation { i: usize, j: usize, k: usize },
    #[error("base point {base} out of range for {len} points")]
    BaseOutOfRange { base: usize, len: usize },
}

impl MetricError {
    /// Same message with point names substituted for indices.
    pub fn render(&self, labels: &[String]) -> String {
        let l = |i: &usize| labels.get(*i).cloned().unwrap_or_else(|| format!("#{i}"));
        match self {
            MetricError::NonZeroDiagonal { i } => format!("NonZeroDiagonal: d({0},{0}) is not zero", l(i)),
            MetricError::NonSymmetric { i, j } => {
                format!("NonSymmetric: d({0},{1}) differs from d({1},{0})", l(i), l(j))
            }
            MetricError::NegativeOrZeroOffDiagonal { i, j } => {
                format!("NegativeOrZeroOffDiagonal: d({},{}) is not positive", l(i), l(j))
            }
            MetricError::TriangleViolation { i, j, k } => format!(
                "TriangleViolation({a},{b},{c}): d({a},{c}) > d({a},{b}) + d({b},{c})",
                a = l(i),
                b = l(j),
                c = l(k)
            ),
            MetricError::DuplicateLabel(name) => format!("DuplicateLabel: {name:?}"),
            other => other.to_string(),
        }
    }
}

/// Labeled points with a validated distance matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteMetricSpace<S> {
    labels: Vec<String>,
    dist: Vec<S>,
}

impl<S: Scalar> FiniteMetricSpace<S> {
    /// Validates a labeled matrix against the metric axioms.
    ///
    /// Checks run in a fixed order (shape, labels, diagonal, symmetry,
    /// positivity, triangle inequality) and the first failure is reported
    /// with its witnessing indices.
    pub fn new(labels: Vec<String>, rows: Vec<Vec<S>>) -> Result<Self, MetricError> {
        let n = labels.len();
        if rows.len() != n {
            return Err(MetricError::ShapeMismatch { labels: n, rows: rows.len() });
        }
        if let Some((row, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(MetricError::RaggedRow { row, len: r.len(), expected: n });
        }
        let space = FiniteMetricSpace {
            labels,
            dist: rows.into_iter().flatten().collect(),
        };
        space.check_labels()?;
        space.check_axioms()?;
        Ok(space)
    }

    /// Builds a space from a distance function over `0..labels.len()`.
    pub fn from_fn(labels: Vec<String>, f: impl Fn(usize, usize) -> S) -> Result<Self, MetricError> {
        let space = Self::from_fn_unchecked(labels, f);
        space.check_labels()?;
        space.check_axioms()?;
        Ok(space)
    }

    /// For constructions whose output is a metric by proof.
    pub(crate) fn from_fn_unchecked(labels: Vec<String>, f: impl Fn(usize, usize) -> S) -> Self {
        let n = labels.len();
        let mut dist = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                dist.push(if i == j { S::zero() } else { f(i, j) });
            }
        }
        FiniteMetricSpace { labels, dist }
    }

    fn check_labels(&self) -> Result<(), MetricError> {
        let mut seen = HashSet::with_capacity(self.labels.len());
        for l in &self.labels {
            if !seen.insert(l.as_str()) {
                return Err(MetricError::DuplicateLabel(l.clone()));
            }
        }
        Ok(())
    }

    fn check_axioms(&self) -> Result<(), MetricError> {
        let n = self.len();
        for i in 0..n {
            if !self.d(i, i).is_zero() {
                return Err(MetricError::NonZeroDiagonal { i });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.d(i, j) != self.d(j, i) {
                    return Err(MetricError::NonSymmetric { i, j });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && !self.d(i, j).is_positive() {
                    return Err(MetricError::NegativeOrZeroOffDiagonal { i: i.min(j), j: i.max(j) });
                }
            }
        }
        // The ultrametric inequality implies the triangle inequality, and it
        // is decidable in O(n^2); only fall back to the cubic scan otherwise.
        if is_ultrametric(self).verdict {
            return Ok(());
        }
        for i in 0..n {
            for k in i + 1..n {
                for j in 0..n {
                    if j == i || j == k {
                        continue;
                    }
                    if *self.d(i, k) > self.d(i, j).clone() + self.d(j, k).clone() {
                        return Err(MetricError::TriangleViolation { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> &S {
        &self.dist[i * self.len() + j]
    }

    pub fn row(&self, i: usize) -> &[S] {
        let n = self.len();
        &self.dist[i * n..(i + 1) * n]
    }

    pub fn rows(&self) -> Vec<Vec<S>> {
        (0..self.len()).map(|i| self.row(i).to_vec()).collect()
    }

    /// Unordered pairs `(i, j)` with `i < j`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
    }

    /// Largest distance; zero for fewer than two points.
    pub fn diameter(&self) -> S {
        let mut best = S::zero();
        for v in &self.dist {
            if *v > best {
                best = v.clone();
            }
        }
        best
    }

    /// Distinct off-diagonal values, ascending.
    pub fn distinct_distances(&self) -> Vec<S> {
        let mut vals: Vec<S> = self.pairs().map(|(i, j)| self.d(i, j).clone()).collect();
        vals.sort_by(cmp);
        vals.dedup();
        vals
    }

    /// Least distance from `x` to any point of `subset`.
    pub fn dist_to_set(&self, x: usize, subset: &[usize]) -> Option<S> {
        subset
            .iter()
            .map(|&a| self.d(x, a))
            .min_by(|a, b| cmp(*a, *b))
            .cloned()
    }

    /// Induced subspace on `points`, in the given order.
    pub fn subspace(&self, points: &[usize]) -> Self {
        let labels = points.iter().map(|&i| self.labels[i].clone()).collect();
        Self::from_fn_unchecked(labels, |a, b| self.d(points[a], points[b]).clone())
    }

    /// Same distances under new names.
    pub fn relabel(&self, labels: Vec<String>) -> Result<Self, MetricError> {
        if labels.len() != self.len() {
            return Err(MetricError::ShapeMismatch { labels: labels.len(), rows: self.len() });
        }
        let out = FiniteMetricSpace { labels, dist: self.dist.clone() };
        out.check_labels()?;
        Ok(out)
    }

    /// Applies `f` to every off-diagonal entry without revalidating.
    pub(crate) fn map_unchecked(&self, f: impl Fn(&S) -> S) -> Self {
        Self::from_fn_unchecked(self.labels.clone(), |i, j| f(self.d(i, j)))
    }
}

/// A triangle with its vertices in index order and its side lengths ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangle<S> {
    pub vertices: [usize; 3],
    pub sides: [S; 3],
}

impl<S: Scalar> Triangle<S> {
    pub fn new(space: &FiniteMetricSpace<S>, a: usize, b: usize, c: usize) -> Self {
        let mut vertices = [a, b, c];
        vertices.sort_unstable();
        let [i, j, k] = vertices;
        let mut sides = [space.d(i, j).clone(), space.d(j, k).clone(), space.d(i, k).clone()];
        sides.sort_by(cmp);
        Triangle { vertices, sides }
    }

    /// The two largest sides agree.
    pub fn is_isosceles_at_top(&self) -> bool {
        self.sides[1] == self.sides[2]
    }
}

impl<S: fmt::Display> fmt::Display for Triangle<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [i, j, k] = self.vertices;
        let [a, b, c] = &self.sides;
        write!(f, "({i},{j},{k}) with sides {a} <= {b} <= {c}")
    }
}

/// Outcome of an ultrametricity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UltraWitness<S> {
    pub verdict: bool,
    /// A triangle whose largest side strictly exceeds the other two.
    pub triangle: Option<Triangle<S>>,
}

impl<S> UltraWitness<S> {
    fn pass() -> Self {
        UltraWitness { verdict: true, triangle: None }
    }
}

/// Decides ultrametricity in O(n^2).
///
/// A metric is ultrametric exactly when it equals its bottleneck distance on
/// a minimum spanning tree. When some pair `(x, z)` has a tree path whose
/// heaviest edge is shorter than `d(x, z)`, walking the path from `x` until
/// the distance from `x` first reaches `d(x, z)` yields a triangle whose
/// largest side is strict.
pub fn is_ultrametric<S: Scalar>(space: &FiniteMetricSpace<S>) -> UltraWitness<S> {
    let n = space.len();
    if n < 3 {
        return UltraWitness::pass();
    }
    let tree = mst::prim(space);
    for x in 0..n {
        let pm = tree.path_max_from(x);
        for z in x + 1..n {
            let bottleneck = pm.max[z].as_ref().expect("tree spans the space");
            let target = space.d(x, z);
            if bottleneck < target {
                let path = pm.path_to(z);
                let j = path
                    .iter()
                    .position(|&v| space.d(x, v) >= target)
                    .expect("path ends at z");
                debug_assert!(j >= 2);
                let tri = Triangle::new(space, x, path[j - 1], path[j]);
                debug_assert!(!tri.is_isosceles_at_top());
                return UltraWitness { verdict: false, triangle: Some(tri) };
            }
        }
    }
    UltraWitness::pass()
}

/// Definitional check: scans every triangle `i < j < k` and reports the first
/// whose two largest sides differ.
pub fn is_ultrametric_exhaustive<S: Scalar>(space: &FiniteMetricSpace<S>) -> UltraWitness<S> {
    let n = space.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let tri = Triangle::new(space, i, j, k);
                if !tri.is_isosceles_at_top() {
                    return UltraWitness { verdict: false, triangle: Some(tri) };
                }
            }
        }
    }
    UltraWitness::pass()
}

/// A metric space with a distinguished base point.
#[derive(Clone, Debug, PartialEq)]
pub struct PointedSpace<S> {
    space: FiniteMetricSpace<S>,
    base: usize,
}

impl<S: Scalar> PointedSpace<S> {
    pub fn new(space: FiniteMetricSpace<S>, base: usize) -> Result<Self, MetricError> {
        if base >= space.len() {
            return Err(MetricError::BaseOutOfRange { base, len: space.len() });
        }
        Ok(PointedSpace { space, base })
    }

    pub fn space(&self) -> &FiniteMetricSpace<S> {
        &self.space
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn into_parts(self) -> (FiniteMetricSpace<S>, usize) {
        (self.space, self.base)
    }
}
