use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("a compact set must contain at least one point")]
    EmptySet,
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("set representations differ (interval union vs point cloud)")]
    KindMismatch,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),
    #[error("non-finite value encountered")]
    NonFinite,
    #[error("{value} lies outside the domain [{lo}, {hi}]")]
    Domain { value: f64, lo: f64, hi: f64 },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("operation requires a uniform partition")]
    NonUniformPartition,
    #[error("unsupported operator: {0}")]
    UnsupportedOperator(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
