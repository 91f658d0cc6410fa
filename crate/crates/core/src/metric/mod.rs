//! Finite metric spaces: validation, ultrametricity, gauges, 3-adic
//! quantization, wedges and cones.

mod construct;
mod gauge;
mod space;

pub use construct::{cone, metric_wedge, quantize_3adic, scale_truncate, uniform_space, ConstructError, Truncation};
pub use gauge::{apply_gauge, separating_gauge_for, Gauge, GaugeError};
pub use space::{
    is_ultrametric, is_ultrametric_exhaustive, FiniteMetricSpace, MetricError, PointedSpace, Triangle, UltraWitness,
};
