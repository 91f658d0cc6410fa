//! Exact computation with finite metric spaces of dimension zero at all
//! scales.
//!
//! The algorithms are generic over [`Scalar`]; the aliases below fix the
//! exact rational instantiation used by the file formats and the CLI.
//!
//! - [`metric`]: validation, ultrametricity, gauges, quantization, wedges, cones
//! - [`scale`]: S-components, subdominant ultrametric, dimension-zero certificates
//! - [`lomega`]: the universal ultrametric space and embeddings into it
//! - [`retract`]: Lipschitz retractions of ultrametric spaces
//! - [`groups`]: direct sums of cyclic groups, Sylow numbers, the ternary Cantor map
//! - [`archipelago`]: wedges of cones over uniform islands
//! - [`pipeline`]: end-to-end embedding of arbitrary finite spaces
//! - [`io`]: JSON wire formats

pub mod archipelago;
pub mod gen;
pub mod groups;
pub mod io;
pub mod lomega;
pub mod metric;
mod mst;
pub mod pipeline;
pub mod power3;
pub mod retract;
pub mod scalar;
pub mod scale;
mod union_find;

pub use num_rational::BigRational;
pub use power3::ThreePower;
pub use scalar::Scalar;
pub use union_find::DisjointSets;

/// Exact rational distances.
pub type Rational = BigRational;
pub type MetricSpace = metric::FiniteMetricSpace<Rational>;
pub type PointedMetricSpace = metric::PointedSpace<Rational>;
pub type Certificate = scale::Dim0Certificate<Rational>;
pub type Subdominant = scale::SubdominantResult<Rational>;
pub type Embedding = lomega::LOmegaEmbedding<Rational>;
pub type Retraction = retract::RetractionMap<Rational>;
pub type RationalArchipelago = archipelago::Archipelago<Rational>;
