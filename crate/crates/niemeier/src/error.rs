use thiserror::Error;

use crate::fourier::IndexMatrix;

/// Errors shared across the lattice, enumeration and modular-form layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid root component: {0}")]
    InvalidComponent(String),

    #[error("glue label {label} out of range for {component}")]
    GlueLabelOutOfRange { component: String, label: u32 },

    #[error("lattice validation failed for {name}: {violation}")]
    LatticeValidation { name: String, violation: String },

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("arithmetic overflow in scaled enumeration: {0}")]
    EnumerationOverflow(String),

    #[error("coefficient query outside the covered box: {0}")]
    OutOfBox(IndexMatrix),

    #[error("insufficient input coverage: {0}")]
    InsufficientCoverage(String),

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u8, u8),

    #[error("weight mismatch invalidates Sturm reasoning: {0} vs {1}")]
    WeightMismatch(i64, i64),

    #[error("coefficient at {t} is not {modulus}-integral")]
    NotIntegralMod { t: IndexMatrix, modulus: u64 },

    #[error("non-integral coefficient at {t}: {value}")]
    NonIntegralCoefficient { t: IndexMatrix, value: String },

    #[error("{0} is not a fundamental discriminant")]
    NotFundamentalDiscriminant(i64),

    #[error("unknown lattice name: {0}")]
    UnknownLattice(String),

    #[error("repeated interpolation node h = {0}")]
    RepeatedNode(i64),

    #[error("consistency error: {0}")]
    Consistency(String),

    #[error("cache error: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
