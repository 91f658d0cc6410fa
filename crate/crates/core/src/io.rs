//! JSON wire formats.
//!
//! Rationals travel as strings, `"p/q"` or an integer, so files stay exact;
//! plain JSON integers are also accepted on input. Points are referred to
//! by label. Every wire type round-trips through `serde_json`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::archipelago::{
    Archipelago, BallAuditReport, BallShape, FingerprintReport, FingerprintVerdict, Island, IslandProfile, IslandSpec,
    NotArchipelagoShaped, ProfileEntry, ShapeDefect,
};
use crate::groups::{CyclicSumSpec, GroupError, M0Report, Multiplicity, PairWitness, ProtasovReport, SylowNumber};
use crate::lomega::{EmbeddingDigest, EmbeddingMode, LOmegaEmbedding, LOmegaPoint};
use crate::metric::{FiniteMetricSpace, MetricError, PointedSpace, Triangle, UltraWitness};
use crate::pipeline::UniversalEmbedding;
use crate::retract::RetractionMap;
use crate::scale::{BoundKind, Dim0Certificate, Partition, ScaleReport, SubdominantResult};
use crate::Rational;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad rational {0:?}: expected \"p/q\" or an integer")]
    BadRational(String),
    #[error("invalid metric: {0}")]
    Metric(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("invalid group spec: {0}")]
    Group(#[from] GroupError),
    #[error("{0}")]
    Invalid(String),
}

/// Parses `"p/q"` (`q > 0`) or an integer into lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational, IoError> {
    let bad = || IoError::BadRational(s.to_string());
    let int = |t: &str| -> Result<BigInt, IoError> {
        let digits = t.strip_prefix('-').unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        t.parse::<BigInt>().map_err(|_| bad())
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(int(s)?)),
        Some((p, q)) => {
            let q = int(q)?;
            if q <= BigInt::from(0) {
                return Err(bad());
            }
            Ok(Rational::new(int(p)?, q))
        }
    }
}

/// A rational on the wire.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Q(pub Rational);

impl From<Rational> for Q {
    fn from(r: Rational) -> Self {
        Q(r)
    }
}

impl From<&Rational> for Q {
    fn from(r: &Rational) -> Self {
        Q(r.clone())
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for Q {
    fn serialize<Se: Serializer>(&self, s: Se) -> Result<Se::Ok, Se::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Q;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational as \"p/q\", an integer string, or a JSON integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Q, E> {
                parse_rational(v).map(Q).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Q, E> {
                Ok(Q(Rational::from_integer(v.into())))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Q, E> {
                Ok(Q(Rational::from_integer(v.into())))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Q, E> {
                Err(E::custom(format!("floating-point number {v} is not exact; write it as \"p/q\"")))
            }
        }
        d.deserialize_any(V)
    }
}

fn q_rows(space: &FiniteMetricSpace<Rational>) -> Vec<Vec<Q>> {
    space.rows().into_iter().map(|r| r.into_iter().map(Q).collect()).collect()
}

fn label_of(space: &FiniteMetricSpace<Rational>, i: usize) -> String {
    space.label(i).to_string()
}

fn index_of(space: &FiniteMetricSpace<Rational>, label: &str) -> Result<usize, IoError> {
    space.index_of(label).ok_or_else(|| IoError::UnknownLabel(label.to_string()))
}

/// Resolves labels to indices.
pub fn indices_of(space: &FiniteMetricSpace<Rational>, labels: &[String]) -> Result<Vec<usize>, IoError> {
    labels.iter().map(|l| index_of(space, l)).collect()
}

// ---------------------------------------------------------------- metric files

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IslandFile {
    pub size: u64,
    pub diameter: u64,
    pub separation: u64,
    pub points: Vec<String>,
}

/// `{"labels": [...], "dist": [[...]]}`, optionally with a base point label
/// and archipelago island annotations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricFile {
    pub labels: Vec<String>,
    pub dist: Vec<Vec<Q>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub islands: Option<Vec<IslandFile>>,
}

impl MetricFile {
    pub fn from_space(space: &FiniteMetricSpace<Rational>) -> Self {
        MetricFile {
            labels: space.labels().to_vec(),
            dist: q_rows(space),
            base: None,
            islands: None,
        }
    }

    pub fn from_pointed(space: &PointedSpace<Rational>) -> Self {
        let mut f = Self::from_space(space.space());
        f.base = Some(label_of(space.space(), space.base()));
        f
    }

    pub fn from_archipelago(arch: &Archipelago<Rational>) -> Self {
        let mut f = Self::from_pointed(&arch.space);
        f.islands = Some(
            arch.islands
                .iter()
                .map(|is| IslandFile {
                    size: is.spec.size,
                    diameter: is.spec.diameter,
                    separation: is.spec.separation,
                    points: is.points.iter().map(|&p| label_of(arch.space.space(), p)).collect(),
                })
                .collect(),
        );
        f
    }

    /// Validates the matrix; metric axiom failures come back as [`MetricError`].
    pub fn to_space(&self) -> Result<FiniteMetricSpace<Rational>, MetricError> {
        FiniteMetricSpace::new(
            self.labels.clone(),
            self.dist.iter().map(|r| r.iter().map(|q| q.0.clone()).collect()).collect(),
        )
    }

    /// Base point: `override_label`, else the file's `base`, else the first point.
    pub fn to_pointed(&self, override_label: Option<&str>) -> Result<PointedSpace<Rational>, IoError> {
        let space = self.to_space().map_err(|e| IoError::Metric(e.render(&self.labels)))?;
        if space.is_empty() {
            return Err(IoError::Invalid("a pointed space needs at least one point".into()));
        }
        let base = match override_label.or(self.base.as_deref()) {
            Some(l) => index_of(&space, l)?,
            None => 0,
        };
        Ok(PointedSpace::new(space, base).expect("index resolved from labels"))
    }

    pub fn to_archipelago(&self) -> Result<Archipelago<Rational>, IoError> {
        let space = self.to_pointed(None)?;
        let islands = self
            .islands
            .as_ref()
            .ok_or_else(|| IoError::Invalid("file has no island annotations".into()))?
            .iter()
            .map(|is| {
                let mut points = indices_of(space.space(), &is.points)?;
                points.sort_unstable();
                Ok(Island {
                    spec: IslandSpec {
                        size: is.size,
                        diameter: is.diameter,
                        separation: is.separation,
                    },
                    points,
                })
            })
            .collect::<Result<Vec<_>, IoError>>()?;
        Ok(Archipelago { space, islands })
    }
}

pub fn read_metric_file(json: &str) -> Result<MetricFile, IoError> {
    Ok(serde_json::from_str(json)?)
}

// ---------------------------------------------------------------- reports

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateReport {
    pub valid: bool,
    pub points: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleFile {
    pub vertices: [String; 3],
    /// Ascending.
    pub sides: [Q; 3],
}

impl TriangleFile {
    pub fn from_triangle(space: &FiniteMetricSpace<Rational>, t: &Triangle<Rational>) -> Self {
        TriangleFile {
            vertices: t.vertices.map(|v| label_of(space, v)),
            sides: t.sides.clone().map(Q),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UltraCheckReport {
    pub ultrametric: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<TriangleFile>,
}

impl UltraCheckReport {
    pub fn new(space: &FiniteMetricSpace<Rational>, w: &UltraWitness<Rational>) -> Self {
        UltraCheckReport {
            ultrametric: w.verdict,
            witness: w.triangle.as_ref().map(|t| TriangleFile::from_triangle(space, t)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionFile {
    pub scale: Q,
    pub blocks: Vec<Vec<String>>,
}

impl PartitionFile {
    pub fn new(space: &FiniteMetricSpace<Rational>, p: &Partition<Rational>) -> Self {
        PartitionFile {
            scale: Q(p.scale.clone()),
            blocks: p
                .blocks
                .iter()
                .map(|b| b.iter().map(|&i| label_of(space, i)).collect())
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdominantFile {
    pub labels: Vec<String>,
    pub dist: Vec<Vec<Q>>,
    /// Minimum spanning tree edges `[a, b, weight]`.
    pub spanning_tree: Vec<(String, String, Q)>,
}

impl SubdominantFile {
    pub fn new(res: &SubdominantResult<Rational>) -> Self {
        SubdominantFile {
            labels: res.rho.labels().to_vec(),
            dist: q_rows(&res.rho),
            spanning_tree: res
                .spanning_edges
                .iter()
                .map(|(i, j, w)| (label_of(&res.rho, *i), label_of(&res.rho, *j), Q(w.clone())))
                .collect(),
        }
    }
}

/// `{"m": ..., "table": [[S, D(S)], ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub m: Q,
    pub table: Vec<(Q, Q)>,
}

impl CertificateFile {
    pub fn new(c: &Dim0Certificate<Rational>) -> Self {
        CertificateFile {
            m: Q(c.m.clone()),
            table: c.table.iter().map(|(s, d)| (Q(s.clone()), Q(d.clone()))).collect(),
        }
    }

    pub fn to_certificate(&self) -> Dim0Certificate<Rational> {
        Dim0Certificate {
            m: self.m.0.clone(),
            table: self.table.iter().map(|(s, d)| (s.0.clone(), d.0.clone())).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationFile {
    pub pair: (String, String),
    /// `"lipschitz"` (`d/(2m) <= rho <= d`) or `"uniform"` (`D^-1(d)/2 <= rho <= d`).
    pub bound: String,
    pub lhs: Q,
    pub mid: Q,
    pub rhs: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub pass: bool,
    pub checked_pairs: usize,
    pub violations: Vec<ViolationFile>,
}

impl VerificationReport {
    pub fn new(space: &FiniteMetricSpace<Rational>, r: &ScaleReport<Rational>) -> Self {
        VerificationReport {
            pass: r.pass,
            checked_pairs: r.checked_pairs,
            violations: r
                .violations
                .iter()
                .map(|v| ViolationFile {
                    pair: (label_of(space, v.pair.0), label_of(space, v.pair.1)),
                    bound: match v.bound {
                        BoundKind::Lipschitz => "lipschitz",
                        BoundKind::Uniform => "uniform",
                    }
                    .to_string(),
                    lhs: Q(v.lhs.clone()),
                    mid: Q(v.mid.clone()),
                    rhs: Q(v.rhs.clone()),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointFile {
    pub label: String,
    /// Nonzero symbols `[index, symbol]`, index ascending.
    pub support: Vec<(i64, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigestFile {
    pub checked_pairs: usize,
    pub max_ratio: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingFile {
    /// `"isometric"` or `"bilipschitz3"`.
    pub mode: String,
    pub points: Vec<PointFile>,
    pub verification: DigestFile,
}

fn point_files(space: &FiniteMetricSpace<Rational>, images: &[LOmegaPoint]) -> Vec<PointFile> {
    images
        .iter()
        .enumerate()
        .map(|(i, p)| PointFile {
            label: label_of(space, i),
            support: p.entries().collect(),
        })
        .collect()
}

impl EmbeddingFile {
    pub fn new(e: &LOmegaEmbedding<Rational>, digest: &EmbeddingDigest<Rational>) -> Self {
        EmbeddingFile {
            mode: match e.mode {
                EmbeddingMode::Isometric => "isometric",
                EmbeddingMode::BiLipschitz3 => "bilipschitz3",
            }
            .to_string(),
            points: point_files(&e.source, &e.images),
            verification: DigestFile {
                checked_pairs: digest.checked_pairs,
                max_ratio: Q(digest.max_ratio.clone()),
            },
        }
    }

    pub fn images(&self) -> Vec<LOmegaPoint> {
        self.points
            .iter()
            .map(|p| LOmegaPoint::from_entries(p.support.iter().copied()))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniversalFile {
    pub m: Q,
    pub bound: Q,
    pub checked_pairs: usize,
    pub min_ratio: Option<Q>,
    pub max_ratio: Option<Q>,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_violation: Option<(String, String)>,
    pub points: Vec<PointFile>,
}

impl UniversalFile {
    pub fn new(source: &FiniteMetricSpace<Rational>, u: &UniversalEmbedding<Rational>) -> Self {
        UniversalFile {
            m: Q(u.certificate.m.clone()),
            bound: Q(u.audit.bound.clone()),
            checked_pairs: u.audit.checked_pairs,
            min_ratio: u.audit.min_ratio.clone().map(Q),
            max_ratio: u.audit.max_ratio.clone().map(Q),
            pass: u.audit.pass,
            first_violation: u
                .audit
                .first_violation
                .map(|(i, j)| (label_of(source, i), label_of(source, j))),
            points: point_files(source, &u.inner.images),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RetractionFile {
    pub base: String,
    pub subset: Vec<String>,
    pub delta: Q,
    pub lambda: Q,
    pub assignment: BTreeMap<String, String>,
    pub audited_constant: Q,
    pub fixes_subset: bool,
}

impl RetractionFile {
    pub fn new(r: &RetractionMap<Rational>) -> Self {
        let s = r.space.space();
        RetractionFile {
            base: label_of(s, r.space.base()),
            subset: r.subset.iter().map(|&a| label_of(s, a)).collect(),
            delta: Q(r.delta.clone()),
            lambda: Q(r.lambda.clone()),
            assignment: r
                .assignment
                .iter()
                .enumerate()
                .map(|(x, &y)| (label_of(s, x), label_of(s, y)))
                .collect(),
            audited_constant: Q(r.audited_constant()),
            fixes_subset: r.fixes_subset(),
        }
    }
}

// ---------------------------------------------------------------- groups

/// A multiplicity on the wire: a positive integer or `"inf"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MultiplicityFile {
    Count(u64),
    Word(String),
}

/// `{"summands": [[order, multiplicity-or-"inf"], ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpecFile {
    pub summands: Vec<(u64, MultiplicityFile)>,
}

impl MultiplicityFile {
    fn to_multiplicity(&self) -> Result<Multiplicity, IoError> {
        match self {
            MultiplicityFile::Count(k) => Ok(Multiplicity::Finite(*k)),
            MultiplicityFile::Word(w) if w == "inf" => Ok(Multiplicity::Infinite),
            MultiplicityFile::Word(w) => Err(IoError::Invalid(format!("multiplicity {w:?} is neither a count nor \"inf\""))),
        }
    }
}

impl GroupSpecFile {
    pub fn new(spec: &CyclicSumSpec) -> Self {
        GroupSpecFile {
            summands: spec
                .summands()
                .iter()
                .map(|&(a, m)| {
                    (
                        a,
                        match m {
                            Multiplicity::Finite(k) => MultiplicityFile::Count(k),
                            Multiplicity::Infinite => MultiplicityFile::Word("inf".into()),
                        },
                    )
                })
                .collect(),
        }
    }

    pub fn to_spec(&self) -> Result<CyclicSumSpec, IoError> {
        let summands = self
            .summands
            .iter()
            .map(|(a, m)| Ok((*a, m.to_multiplicity()?)))
            .collect::<Result<Vec<_>, IoError>>()?;
        Ok(CyclicSumSpec::new(summands)?)
    }
}

pub fn read_group_spec(json: &str) -> Result<CyclicSumSpec, IoError> {
    serde_json::from_str::<GroupSpecFile>(json)?.to_spec()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SylowFile {
    pub prime: u64,
    /// `p^k` written out, or `"inf"`.
    pub value: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent: Option<u64>,
}

impl SylowFile {
    pub fn new(prime: u64, s: &SylowNumber) -> Self {
        match s {
            SylowNumber::Finite { exponent, .. } => SylowFile {
                prime,
                value: num_traits::pow(num_bigint::BigUint::from(prime), *exponent as usize).to_string(),
                exponent: Some(*exponent),
            },
            SylowNumber::Infinite => SylowFile {
                prime,
                value: "inf".into(),
                exponent: None,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProtasovRow {
    pub prime: u64,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProtasovFile {
    pub equivalent: bool,
    pub witness: Option<u64>,
    pub table: Vec<ProtasovRow>,
}

impl ProtasovFile {
    pub fn new(r: &ProtasovReport) -> Self {
        ProtasovFile {
            equivalent: r.equivalent,
            witness: r.witness,
            table: r
                .table
                .iter()
                .map(|row| ProtasovRow {
                    prime: row.prime,
                    left: SylowFile::new(row.prime, &row.left).value,
                    right: SylowFile::new(row.prime, &row.right).value,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairFile {
    pub p: Vec<u64>,
    pub q: Vec<u64>,
    pub n: u64,
    /// `|f(p) - f(q)|` as a decimal string.
    pub gap: String,
    pub sharp: bool,
    pub printed: bool,
}

impl PairFile {
    pub fn new(w: &PairWitness) -> Self {
        PairFile {
            p: w.p.clone(),
            q: w.q.clone(),
            n: w.n,
            gap: w.gap.to_string(),
            sharp: w.sharp,
            printed: w.printed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct M0CheckFile {
    pub max_len: usize,
    pub elements: u64,
    pub pairs: u64,
    pub pass: bool,
    pub digits_ok: bool,
    pub injective: bool,
    pub sharp_bound: bool,
    pub first_sharp_failure: Option<PairFile>,
    pub min_ratio: Option<Q>,
    pub max_ratio: Option<Q>,
    pub printed_bound: bool,
    pub first_printed_failure: Option<PairFile>,
    pub recorded_witness: Option<PairFile>,
}

impl M0CheckFile {
    pub fn new(r: &M0Report) -> Self {
        M0CheckFile {
            max_len: r.max_len,
            elements: r.elements,
            pairs: r.pairs,
            pass: r.pass(),
            digits_ok: r.digits_ok,
            injective: r.injective,
            sharp_bound: r.sharp_bound,
            first_sharp_failure: r.first_sharp_failure.as_ref().map(PairFile::new),
            min_ratio: r.min_ratio.clone().map(Q),
            max_ratio: r.max_ratio.clone().map(Q),
            printed_bound: r.printed_bound,
            first_printed_failure: r.first_printed_failure.as_ref().map(PairFile::new),
            recorded_witness: r.recorded_witness.as_ref().map(PairFile::new),
        }
    }
}

// ---------------------------------------------------------------- archipelagos

/// `{"lambda": [...], "plan": [[n, m], ...], "strict": bool}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlanFile {
    pub lambda: BTreeSet<u64>,
    pub plan: Vec<(u64, u64)>,
    #[serde(default)]
    pub strict: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectFile {
    pub kind: String,
    pub points: Vec<String>,
}

/// Island triples `[n, N, S]`; `defects` is present when the input was not
/// archipelago shaped and the triples are the degraded profile.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileFile {
    pub islands: Vec<(usize, Q, Q)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub defects: Option<Vec<DefectFile>>,
}

impl ProfileFile {
    pub fn new(p: &IslandProfile<Rational>) -> Self {
        ProfileFile {
            islands: p
                .entries
                .iter()
                .map(|e| (e.size, Q(e.diameter.clone()), Q(e.separation.clone())))
                .collect(),
            defects: None,
        }
    }

    pub fn degraded(space: &FiniteMetricSpace<Rational>, e: &NotArchipelagoShaped<Rational>) -> Self {
        let mut f = Self::new(&e.degraded);
        let names = |v: &[usize]| v.iter().map(|&i| label_of(space, i)).collect();
        f.defects = Some(
            e.defects
                .iter()
                .map(|d| {
                    let (kind, pts) = match d {
                        ShapeDefect::SingletonIsland { point } => ("singleton_island", vec![*point]),
                        ShapeDefect::InternalRelation { a, b } => ("internal_relation", vec![*a, *b]),
                        ShapeDefect::HubDistance { a, b } => ("hub_distance", vec![*a, *b]),
                        ShapeDefect::NonUniform { a, b } => ("non_uniform", vec![*a, *b]),
                        ShapeDefect::CrossDistance { a, b } => ("cross_distance", vec![*a, *b]),
                    };
                    DefectFile {
                        kind: kind.into(),
                        points: names(&pts),
                    }
                })
                .collect(),
        );
        f
    }

    pub fn to_profile(&self) -> IslandProfile<Rational> {
        IslandProfile::new(
            self.islands
                .iter()
                .map(|(n, d, s)| ProfileEntry {
                    size: *n,
                    diameter: d.0.clone(),
                    separation: s.0.clone(),
                })
                .collect(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FingerprintFile {
    /// `"distinct"` or `"indistinguishable_at_truncation"`.
    pub verdict: String,
    pub sizes_left: BTreeMap<usize, usize>,
    pub sizes_right: BTreeMap<usize, usize>,
    pub only_left: Vec<usize>,
    pub only_right: Vec<usize>,
    pub diameters_left: Vec<Q>,
    pub diameters_right: Vec<Q>,
}

impl FingerprintFile {
    pub fn new(r: &FingerprintReport<Rational>) -> Self {
        FingerprintFile {
            verdict: match r.verdict {
                FingerprintVerdict::Distinct => "distinct",
                FingerprintVerdict::IndistinguishableAtTruncation => "indistinguishable_at_truncation",
            }
            .into(),
            sizes_left: r.sizes_left.clone(),
            sizes_right: r.sizes_right.clone(),
            only_left: r.only_left.clone(),
            only_right: r.only_right.clone(),
            diameters_left: r.diameters_left.iter().map(Q::from).collect(),
            diameters_right: r.diameters_right.iter().map(Q::from).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallFile {
    pub center: String,
    pub radius: Q,
    /// `"hub_ball"`, `"singleton"`, `"island"` or `"unclassified"`.
    pub shape: String,
    pub cardinality: usize,
    pub capacity: Q,
    pub within_capacity: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallAuditFile {
    pub pass: bool,
    /// Largest ball seen at each radius.
    pub capacity: Vec<(Q, usize)>,
    pub balls: Vec<BallFile>,
}

pub fn shape_name(s: BallShape) -> &'static str {
    match s {
        BallShape::HubBall => "hub_ball",
        BallShape::Singleton => "singleton",
        BallShape::Island => "island",
        BallShape::Unclassified => "unclassified",
    }
}

impl BallAuditFile {
    pub fn new(space: &FiniteMetricSpace<Rational>, r: &BallAuditReport<Rational>) -> Self {
        let mut capacity: BTreeMap<Q, usize> = BTreeMap::new();
        for e in &r.entries {
            let slot = capacity.entry(Q(e.radius.clone())).or_insert(0);
            *slot = (*slot).max(e.cardinality);
        }
        BallAuditFile {
            pass: r.pass,
            capacity: capacity.into_iter().collect(),
            balls: r
                .entries
                .iter()
                .map(|e| BallFile {
                    center: label_of(space, e.center),
                    radius: Q(e.radius.clone()),
                    shape: shape_name(e.shape).into(),
                    cardinality: e.cardinality,
                    capacity: Q(e.capacity.clone()),
                    within_capacity: e.within_capacity,
                })
                .collect(),
        }
    }
}
