//! Embedding an arbitrary finite metric space into `L_omega`.
//!
//! The space is replaced by its subdominant ultrametric `rho`, which
//! satisfies `d / (2m) <= rho <= d`; `2m * rho` is rounded up to powers of
//! three and embedded isometrically. The composite satisfies
//! `d <= mu <= 6m * d` on every pair.

use crate::lomega::{embed_3n_valued, mu, LOmegaEmbedding, LOmegaError};
use crate::metric::{quantize_3adic, FiniteMetricSpace};
use crate::scalar::Scalar;
use crate::scale::{dim0_certificate, subdominant_ultrametric, Dim0Certificate, SubdominantResult};

/// Per-pair comparison of `mu` with the source distance.
#[derive(Clone, Debug, PartialEq)]
pub struct DistortionAudit<S> {
    pub checked_pairs: usize,
    /// Extremes of `mu / d`; `None` with fewer than two points.
    pub min_ratio: Option<S>,
    pub max_ratio: Option<S>,
    /// `6m`
    pub bound: S,
    /// First pair outside `d <= mu <= bound * d`.
    pub first_violation: Option<(usize, usize)>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct UniversalEmbedding<S> {
    pub certificate: Dim0Certificate<S>,
    pub subdominant: SubdominantResult<S>,
    /// The isometric embedding of the quantized `2m * rho`.
    pub inner: LOmegaEmbedding<S>,
    pub audit: DistortionAudit<S>,
}

pub fn embed_universal<S: Scalar>(space: &FiniteMetricSpace<S>) -> Result<UniversalEmbedding<S>, LOmegaError<S>> {
    let certificate = dim0_certificate(space);
    let subdominant = subdominant_ultrametric(space);
    let two_m = S::from_i64(2) * certificate.m.clone();
    let scaled = subdominant.rho.map_unchecked(|r| two_m.clone() * r.clone());
    let quantized = quantize_3adic(&scaled).expect("scaled subdominant is ultrametric");
    let inner = embed_3n_valued(&quantized)?;

    let bound = S::from_i64(6) * certificate.m.clone();
    let mut audit = DistortionAudit {
        checked_pairs: 0,
        min_ratio: None,
        max_ratio: None,
        bound: bound.clone(),
        first_violation: None,
        pass: true,
    };
    for (i, j) in space.pairs() {
        let d = space.d(i, j);
        let m: S = mu(&inner.images[i], &inner.images[j]).value();
        if !(*d <= m && m <= bound.clone() * d.clone()) && audit.first_violation.is_none() {
            audit.first_violation = Some((i, j));
            audit.pass = false;
        }
        let ratio = m / d.clone();
        if audit.min_ratio.as_ref().is_none_or(|r| ratio < *r) {
            audit.min_ratio = Some(ratio.clone());
        }
        if audit.max_ratio.as_ref().is_none_or(|r| ratio > *r) {
            audit.max_ratio = Some(ratio);
        }
        audit.checked_pairs += 1;
    }
    Ok(UniversalEmbedding {
        certificate,
        subdominant,
        inner,
        audit,
    })
}
