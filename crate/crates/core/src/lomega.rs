//! The universal ultrametric space of eventually-blank symbol sequences.
//!
//! A point is a sequence indexed by the integers whose entries are blank
//! (symbol `0`) below some index. Two points are at distance `3^-m` where
//! `m` is the first index at which they differ. Every finite ultrametric
//! space whose distances are powers of three embeds isometrically, one
//! point at a time; every finite ultrametric space embeds with distortion
//! below 3 after rounding distances up to powers of three.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::metric::{is_ultrametric, quantize_3adic, ConstructError, FiniteMetricSpace, Triangle};
use crate::power3::ThreePower;
use crate::scalar::Scalar;

/// A finitely supported point. Only non-blank entries are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LOmegaPoint {
    support: BTreeMap<i64, u64>,
}

impl LOmegaPoint {
    pub fn blank() -> Self {
        Self::default()
    }

    /// Builds a point from `(index, symbol)` entries; blank entries are dropped.
    pub fn from_entries(entries: impl IntoIterator<Item = (i64, u64)>) -> Self {
        let support = entries.into_iter().filter(|&(_, s)| s != 0).collect();
        LOmegaPoint { support }
    }

    pub fn symbol(&self, index: i64) -> u64 {
        self.support.get(&index).copied().unwrap_or(0)
    }

    /// Non-blank entries in index order.
    pub fn entries(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.support.iter().map(|(&i, &s)| (i, s))
    }

    fn set(&mut self, index: i64, symbol: u64) {
        if symbol == 0 {
            self.support.remove(&index);
        } else {
            self.support.insert(index, symbol);
        }
    }

    /// Entries strictly below `index`.
    fn prefix_below(&self, index: i64) -> Self {
        LOmegaPoint {
            support: self.support.range(..index).map(|(&i, &s)| (i, s)).collect(),
        }
    }
}

/// `3^-m` for the first index `m` where the points differ; zero if equal.
pub fn mu(p: &LOmegaPoint, q: &LOmegaPoint) -> ThreePower {
    let mut a = p.support.iter().peekable();
    let mut b = q.support.iter().peekable();
    loop {
        match (a.peek(), b.peek()) {
            (None, None) => return ThreePower::Zero,
            (Some(&(&i, _)), None) | (None, Some(&(&i, _))) => return ThreePower::Pow(-i),
            (Some(&(&i, &s)), Some(&(&j, &t))) => {
                if i < j {
                    return ThreePower::Pow(-i);
                }
                if j < i {
                    return ThreePower::Pow(-j);
                }
                if s != t {
                    return ThreePower::Pow(-i);
                }
                a.next();
                b.next();
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LOmegaError<S: Scalar> {
    #[error("distance {value} between points {i} and {j} is not a power of 3")]
    NotThreePowerValued { i: usize, j: usize, value: S },
    #[error("space is not ultrametric: triangle {0}")]
    NotUltrametric(Triangle<S>),
    #[error("distance {value} to anchor {anchor} is not a power of 3")]
    AnchorNotThreePower { anchor: usize, value: S },
    #[error("new point is not ultrametric against anchors {0} and {1}")]
    ExtensionNotUltrametric(usize, usize),
    #[error("embedded images disagree with the source at pair ({0}, {1})")]
    NotIsometric(usize, usize),
    #[error("extended point misses its distance to anchor {0}")]
    ExtensionMismatch(usize),
    #[error("insertion order is not a permutation of the points")]
    BadOrder,
}

/// How an embedding relates source distances to `mu`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EmbeddingMode {
    /// `mu = d` exactly.
    Isometric,
    /// `d <= mu < 3d`.
    BiLipschitz3,
}

/// Images of a finite space in the universal space.
#[derive(Clone, Debug, PartialEq)]
pub struct LOmegaEmbedding<S> {
    pub source: FiniteMetricSpace<S>,
    pub images: Vec<LOmegaPoint>,
    pub mode: EmbeddingMode,
}

/// Pair count and the largest `mu / d` seen while auditing an embedding.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddingDigest<S> {
    pub checked_pairs: usize,
    pub max_ratio: S,
}

impl<S: Scalar> LOmegaEmbedding<S> {
    /// Audits every pair against the mode's guarantee.
    pub fn verify(&self) -> Result<EmbeddingDigest<S>, LOmegaError<S>> {
        let three = S::from_i64(3);
        let mut max_ratio = S::zero();
        let mut checked = 0;
        for (i, j) in self.source.pairs() {
            let d = self.source.d(i, j);
            let m: S = mu(&self.images[i], &self.images[j]).value();
            let ok = match self.mode {
                EmbeddingMode::Isometric => m == *d,
                EmbeddingMode::BiLipschitz3 => *d <= m && m < three.clone() * d.clone(),
            };
            if !ok {
                return Err(LOmegaError::NotIsometric(i, j));
            }
            let ratio = m / d.clone();
            if ratio > max_ratio {
                max_ratio = ratio;
            }
            checked += 1;
        }
        Ok(EmbeddingDigest {
            checked_pairs: checked,
            max_ratio,
        })
    }
}

/// One step of the inductive embedding.
///
/// `anchors` lists `(source index, image, d(x, anchor))` for the points
/// already embedded. With `d(x, A) = 3^-n` and `A_x` the anchors at that
/// distance, the new point copies the image of the lowest-indexed member of
/// `A_x` below index `n`, takes a symbol at `n` unused by every member of
/// `A_x`, and is blank above `n`.
pub fn extend_one_point<S: Scalar>(anchors: &[(usize, &LOmegaPoint, S)]) -> Result<LOmegaPoint, LOmegaError<S>> {
    let mut exps = Vec::with_capacity(anchors.len());
    for &(src, _, ref d) in anchors {
        match ThreePower::exact(d) {
            Some(ThreePower::Pow(e)) => exps.push(e),
            _ => {
                return Err(LOmegaError::AnchorNotThreePower {
                    anchor: src,
                    value: d.clone(),
                })
            }
        }
    }
    // every triangle through the new point must be isosceles at the top
    for a in 0..anchors.len() {
        for b in a + 1..anchors.len() {
            let ab = mu(anchors[a].1, anchors[b].1);
            let mut sides = [ThreePower::Pow(exps[a]), ThreePower::Pow(exps[b]), ab];
            sides.sort();
            if sides[1] != sides[2] {
                return Err(LOmegaError::ExtensionNotUltrametric(anchors[a].0, anchors[b].0));
            }
        }
    }
    let with_exps: Vec<(usize, &LOmegaPoint, i64)> =
        anchors.iter().zip(&exps).map(|(&(s, p, _), &e)| (s, p, e)).collect();
    let z = extend_by_exponents(&with_exps);
    for (k, &(src, img, _)) in anchors.iter().enumerate() {
        if mu(&z, img) != ThreePower::Pow(exps[k]) {
            return Err(LOmegaError::ExtensionMismatch(src));
        }
    }
    Ok(z)
}

fn extend_by_exponents(anchors: &[(usize, &LOmegaPoint, i64)]) -> LOmegaPoint {
    let Some(nearest) = anchors.iter().map(|a| a.2).min() else {
        return LOmegaPoint::blank();
    };
    let n = -nearest;
    let closest: Vec<&(usize, &LOmegaPoint, i64)> = anchors.iter().filter(|a| a.2 == nearest).collect();
    let (_, b, _) = closest
        .iter()
        .min_by_key(|a| a.0)
        .expect("at least one nearest anchor");
    let fresh = 1 + closest.iter().map(|a| a.1.symbol(n)).max().unwrap_or(0);
    let mut z = b.prefix_below(n);
    z.set(n, fresh);
    assert!(
        closest.iter().all(|a| a.1.symbol(n) != fresh),
        "fresh symbol collides at index {n}"
    );
    z
}

fn three_power_exponents<S: Scalar>(space: &FiniteMetricSpace<S>) -> Result<Vec<i64>, LOmegaError<S>> {
    let n = space.len();
    let mut exps = vec![0i64; n * n];
    for (i, j) in space.pairs() {
        match ThreePower::exact(space.d(i, j)) {
            Some(ThreePower::Pow(e)) => {
                exps[i * n + j] = e;
                exps[j * n + i] = e;
            }
            _ => {
                return Err(LOmegaError::NotThreePowerValued {
                    i,
                    j,
                    value: space.d(i, j).clone(),
                })
            }
        }
    }
    Ok(exps)
}

/// Isometric embedding of a 3^n-valued ultrametric space, inserting points
/// in label order.
pub fn embed_3n_valued<S: Scalar>(space: &FiniteMetricSpace<S>) -> Result<LOmegaEmbedding<S>, LOmegaError<S>> {
    let order: Vec<usize> = (0..space.len()).collect();
    embed_3n_valued_in_order(space, &order)
}

/// As [`embed_3n_valued`], inserting points in the given order.
pub fn embed_3n_valued_in_order<S: Scalar>(
    space: &FiniteMetricSpace<S>,
    order: &[usize],
) -> Result<LOmegaEmbedding<S>, LOmegaError<S>> {
    let n = space.len();
    let mut seen = vec![false; n];
    if order.len() != n || order.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true)) {
        return Err(LOmegaError::BadOrder);
    }
    let exps = three_power_exponents(space)?;
    if let Some(t) = is_ultrametric(space).triangle {
        return Err(LOmegaError::NotUltrametric(t));
    }
    let mut images: Vec<Option<LOmegaPoint>> = vec![None; n];
    let mut placed: Vec<usize> = Vec::with_capacity(n);
    for &x in order {
        let anchors: Vec<(usize, &LOmegaPoint, i64)> = placed
            .iter()
            .map(|&a| (a, images[a].as_ref().expect("placed"), exps[x * n + a]))
            .collect();
        let z = extend_by_exponents(&anchors);
        images[x] = Some(z);
        placed.push(x);
    }
    let embedding = LOmegaEmbedding {
        source: space.clone(),
        images: images.into_iter().map(|p| p.expect("every point placed")).collect(),
        mode: EmbeddingMode::Isometric,
    };
    embedding.verify()?;
    Ok(embedding)
}

/// Quantizes an ultrametric space to powers of three and embeds the result;
/// `d <= mu < 3d` on every pair of the original space.
pub fn embed_ultrametric<S: Scalar>(space: &FiniteMetricSpace<S>) -> Result<LOmegaEmbedding<S>, LOmegaError<S>> {
    let quantized = quantize_3adic(space).map_err(|e| match e {
        ConstructError::NotUltrametric(t) => LOmegaError::NotUltrametric(t),
        other => unreachable!("quantization only rejects non-ultrametric input: {other}"),
    })?;
    let inner = embed_3n_valued(&quantized)?;
    let embedding = LOmegaEmbedding {
        source: space.clone(),
        images: inner.images,
        mode: EmbeddingMode::BiLipschitz3,
    };
    embedding.verify()?;
    Ok(embedding)
}

/// The `mu` distance matrix of a list of points, labeled `p0, p1, ...`.
pub fn mu_space<S: Scalar>(points: &[LOmegaPoint]) -> Option<FiniteMetricSpace<S>> {
    let labels = (0..points.len()).map(|i| format!("p{i}")).collect();
    FiniteMetricSpace::from_fn(labels, |i, j| mu(&points[i], &points[j]).value()).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn r(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    fn space(d: &[&[i64]]) -> FiniteMetricSpace<Rational> {
        let labels = (0..d.len()).map(|i| format!("s{i}")).collect();
        FiniteMetricSpace::from_fn(labels, |i, j| r(d[i][j])).unwrap()
    }

    #[test]
    fn mu_examples() {
        let p = LOmegaPoint::from_entries([(0, 1)]);
        assert_eq!(mu(&p, &LOmegaPoint::blank()), ThreePower::Pow(0));
        assert_eq!(mu(&p, &p), ThreePower::Zero);
        let a = LOmegaPoint::from_entries([(-1, 1)]);
        let b = LOmegaPoint::from_entries([(-1, 1), (2, 3)]);
        assert_eq!(mu(&a, &b), ThreePower::Pow(-2));
        assert_eq!(mu(&a, &b).value::<Rational>(), Rational::from_ratio(1, 9));
    }

    #[test]
    fn blank_entries_are_not_stored() {
        let p = LOmegaPoint::from_entries([(3, 0), (1, 2)]);
        assert_eq!(p.entries().collect::<Vec<_>>(), vec![(1, 2)]);
        assert_eq!(p, LOmegaPoint::from_entries([(1, 2)]));
    }

    #[test]
    fn extend_single_anchor() {
        let a = LOmegaPoint::blank();
        let z = extend_one_point(&[(0, &a, r(1))]).unwrap();
        assert_eq!(z, LOmegaPoint::from_entries([(0, 1)]));
        assert_eq!(mu(&z, &a), ThreePower::Pow(0));
    }

    #[test]
    fn extend_two_anchors_at_three() {
        let a = LOmegaPoint::blank();
        let b = LOmegaPoint::from_entries([(0, 1)]);
        let z = extend_one_point(&[(0, &a, r(3)), (1, &b, r(3))]).unwrap();
        assert_eq!(z, LOmegaPoint::from_entries([(-1, 1)]));
        assert_eq!(mu(&z, &a).value::<Rational>(), r(3));
        assert_eq!(mu(&z, &b).value::<Rational>(), r(3));
    }

    #[test]
    fn extend_rejects_bad_distances() {
        let a = LOmegaPoint::blank();
        assert!(matches!(
            extend_one_point(&[(0, &a, r(2))]),
            Err(LOmegaError::AnchorNotThreePower { anchor: 0, .. })
        ));
        let b = LOmegaPoint::from_entries([(0, 1)]);
        // sides 1, 3, 9 cannot form an ultrametric triangle
        assert_eq!(
            extend_one_point(&[(0, &a, r(3)), (1, &b, r(9))]),
            Err(LOmegaError::ExtensionNotUltrametric(0, 1))
        );
    }

    #[test]
    fn embed_examples() {
        let e = embed_3n_valued(&space(&[&[0, 9], &[9, 0]])).unwrap();
        assert_eq!(e.images[0], LOmegaPoint::blank());
        assert_eq!(e.images[1], LOmegaPoint::from_entries([(-2, 1)]));
        assert_eq!(mu(&e.images[0], &e.images[1]).value::<Rational>(), r(9));

        let single = embed_3n_valued(&space(&[&[0]])).unwrap();
        assert_eq!(single.images, vec![LOmegaPoint::blank()]);

        let tri = space(&[&[0, 1, 3], &[1, 0, 3], &[3, 3, 0]]);
        let e3 = embed_3n_valued(&tri).unwrap();
        assert_eq!(mu_space::<Rational>(&e3.images).unwrap().rows(), tri.rows());
        assert_eq!(e3.verify().unwrap().checked_pairs, 3);
    }

    #[test]
    fn embed_rejects_inputs() {
        assert!(matches!(
            embed_3n_valued(&space(&[&[0, 2], &[2, 0]])),
            Err(LOmegaError::NotThreePowerValued { i: 0, j: 1, .. })
        ));
        let equilateral = space(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]);
        assert!(embed_3n_valued(&equilateral).is_ok());
        assert_eq!(embed_3n_valued_in_order(&equilateral, &[0, 0, 1]).unwrap_err(), LOmegaError::BadOrder);
        let line = space(&[&[0, 1, 2], &[1, 0, 1], &[2, 1, 0]]);
        assert!(matches!(embed_ultrametric(&line), Err(LOmegaError::NotUltrametric(_))));
    }

    #[test]
    fn bilipschitz_examples() {
        let e = embed_ultrametric(&space(&[&[0, 2], &[2, 0]])).unwrap();
        assert_eq!(mu(&e.images[0], &e.images[1]).value::<Rational>(), r(3));
        assert_eq!(e.mode, EmbeddingMode::BiLipschitz3);

        let half = |v: i64| Rational::from_ratio(v, 2);
        let d = [[0, 1, 3], [1, 0, 3], [3, 3, 0]];
        let scaled = FiniteMetricSpace::from_fn((0..3).map(|i| format!("s{i}")).collect(), |i, j| half(d[i][j])).unwrap();
        let e2 = embed_ultrametric(&scaled).unwrap();
        let digest = e2.verify().unwrap();
        assert_eq!(digest.max_ratio, r(2));
        assert_eq!(mu(&e2.images[0], &e2.images[1]).value::<Rational>(), r(1));
        assert_eq!(mu(&e2.images[0], &e2.images[2]).value::<Rational>(), r(3));
    }

    #[test]
    fn bilipschitz_on_3n_input_matches_isometric() {
        let tri = space(&[&[0, 1, 3], &[1, 0, 3], &[3, 3, 0]]);
        assert_eq!(embed_ultrametric(&tri).unwrap().images, embed_3n_valued(&tri).unwrap().images);
        assert_eq!(embed_ultrametric(&tri).unwrap().verify().unwrap().max_ratio, r(1));
    }
}
