use std::collections::HashSet;

use thiserror::Error;

use super::space::{is_ultrametric, FiniteMetricSpace, PointedSpace, Triangle};
use crate::power3::ThreePower;
use crate::scalar::{max_of, min_of, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ConstructError<S: Scalar> {
    #[error("scale must be positive, got {0}")]
    NonPositiveScale(S),
    #[error("input is not ultrametric: triangle {0}")]
    NotUltrametric(Triangle<S>),
    #[error("cone height {height} is below the admissible bound for diameter {diameter}")]
    ConeHeightTooSmall { height: S, diameter: S },
    #[error("a wedge needs at least one part")]
    EmptyWedge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truncation {
    /// `min(d, eps)`: bounded by `eps`.
    Small,
    /// `max(d, eps)`: `eps`-discrete.
    Large,
}

/// Caps (`Small`) or floors (`Large`) every off-diagonal distance at `eps`.
pub fn scale_truncate<S: Scalar>(
    space: &FiniteMetricSpace<S>,
    eps: &S,
    mode: Truncation,
) -> Result<FiniteMetricSpace<S>, ConstructError<S>> {
    if !eps.is_positive() {
        return Err(ConstructError::NonPositiveScale(eps.clone()));
    }
    Ok(match mode {
        Truncation::Small => space.map_unchecked(|d| min_of(d, eps)),
        Truncation::Large => space.map_unchecked(|d| max_of(d, eps)),
    })
}

/// Rounds each distance of an ultrametric up to the next power of three:
/// `3^(n-1) < d <= 3^n` becomes `3^n`.
///
/// The rounding is nondecreasing, so the output stays ultrametric and
/// satisfies `d <= out < 3d`.
pub fn quantize_3adic<S: Scalar>(space: &FiniteMetricSpace<S>) -> Result<FiniteMetricSpace<S>, ConstructError<S>> {
    if let Some(t) = is_ultrametric(space).triangle {
        return Err(ConstructError::NotUltrametric(t));
    }
    Ok(space.map_unchecked(|d| {
        ThreePower::ceil_of(d)
            .expect("off-diagonal distances are positive")
            .value()
    }))
}

/// Glues pointed spaces at their base points.
///
/// The output lists the first part unchanged, followed by the non-base
/// points of each later part in order; the first part's base is the hub.
/// Points of different parts are at distance `max(d(z, base), d(z', base'))`.
/// Labels are kept when they stay distinct, and otherwise every non-hub
/// label is prefixed with its part index (`"2.x"`).
pub fn metric_wedge<S: Scalar>(parts: &[PointedSpace<S>]) -> Result<PointedSpace<S>, ConstructError<S>> {
    let first = parts.first().ok_or(ConstructError::EmptyWedge)?;
    if parts.len() == 1 {
        return Ok(first.clone());
    }
    // (part, local index) for each output point
    let mut origin: Vec<(usize, usize)> = (0..first.space().len()).map(|i| (0, i)).collect();
    for (p, part) in parts.iter().enumerate().skip(1) {
        origin.extend((0..part.space().len()).filter(|&i| i != part.base()).map(|i| (p, i)));
    }
    let hub = first.base();
    let plain: Vec<String> = origin
        .iter()
        .map(|&(p, i)| parts[p].space().label(i).to_string())
        .collect();
    let distinct = plain.iter().collect::<HashSet<_>>().len() == plain.len();
    let labels = if distinct {
        plain
    } else {
        origin
            .iter()
            .enumerate()
            .map(|(k, &(p, i))| {
                let l = parts[p].space().label(i);
                if k == hub {
                    l.to_string()
                } else {
                    format!("{p}.{l}")
                }
            })
            .collect()
    };
    let to_base = |p: usize, i: usize| parts[p].space().d(i, parts[p].base());
    let space = FiniteMetricSpace::from_fn_unchecked(labels, |a, b| {
        let (pa, ia) = origin[a];
        let (pb, ib) = origin[b];
        if pa == pb {
            parts[pa].space().d(ia, ib).clone()
        } else if a == hub {
            to_base(pb, ib).clone()
        } else if b == hub {
            to_base(pa, ia).clone()
        } else {
            max_of(to_base(pa, ia), to_base(pb, ib))
        }
    });
    Ok(PointedSpace::new(space, hub).expect("hub index is in range"))
}

/// Adds a vertex at distance `height` from every point; the vertex becomes
/// the base point and is appended last.
///
/// `height` must exceed the diameter; `allow_equal` also admits
/// `height == diameter`.
pub fn cone<S: Scalar>(
    space: &FiniteMetricSpace<S>,
    height: &S,
    allow_equal: bool,
) -> Result<PointedSpace<S>, ConstructError<S>> {
    let diameter = space.diameter();
    let ok = height.is_positive() && (*height > diameter || (allow_equal && *height == diameter));
    if !ok {
        return Err(ConstructError::ConeHeightTooSmall {
            height: height.clone(),
            diameter,
        });
    }
    let mut vertex = String::from("v");
    while space.index_of(&vertex).is_some() {
        vertex.push('\'');
    }
    let n = space.len();
    let mut labels = space.labels().to_vec();
    labels.push(vertex);
    let out = FiniteMetricSpace::from_fn_unchecked(labels, |i, j| {
        if i == n || j == n {
            height.clone()
        } else {
            space.d(i, j).clone()
        }
    });
    Ok(PointedSpace::new(out, n).expect("vertex index is in range"))
}

/// `n` points, all pairwise at distance `m`.
pub fn uniform_space<S: Scalar>(labels: Vec<String>, m: &S) -> Result<FiniteMetricSpace<S>, ConstructError<S>> {
    if !m.is_positive() {
        return Err(ConstructError::NonPositiveScale(m.clone()));
    }
    Ok(FiniteMetricSpace::from_fn_unchecked(labels, |_, _| m.clone()))
}
