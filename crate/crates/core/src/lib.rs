//! Metric linear combinations of compact sets and the metric analogues of
//! classical linear approximation operators for set-valued functions.
//!
//! One-dimensional sets are exact unions of closed intervals; sets in
//! higher dimensions are finite point clouds.

// `!(x > 0.0)` also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod chains;
pub mod error;
pub mod operators;
pub mod random;
pub mod sets;
pub mod svf;
pub mod tolerance;
pub mod verify;

pub use chains::{
    metric_average, metric_chains, metric_linear_combination, metric_pairs, ChainSet, MetricChain,
    MetricPair, PairSet, Witness,
};
pub use error::{Error, Result};
pub use operators::{
    apply_metric_operator, apply_minkowski_operator, decasteljau_ma_bernstein, OperatorKind, OperatorSpec,
};
pub use sets::{minkowski_combination, CompactSet, Interval, IntervalUnion, PointCloud};
pub use svf::{Partition, SampledSvf, SetFunction};
pub use tolerance::Tolerance;
