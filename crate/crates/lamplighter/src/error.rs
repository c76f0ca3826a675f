use thiserror::Error;

/// Errors produced by the exact and Monte Carlo computations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("operation on the zero polynomial is undefined")]
    ZeroPolynomial,

    #[error("division by the zero polynomial")]
    DivisionByZeroPolynomial,

    #[error("enumeration cap of {cap} animals exceeded at size {size}")]
    EnumerationCap { cap: u64, size: u32 },

    #[error("{what} supports at most {limit} vertices, got {got}")]
    GraphSizeCap {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("supercritical parameters: p = 1/{m} is not below the critical value 1/{k}")]
    Supercritical { k: u32, m: u32 },

    #[error("percolation parameter {p} is not below the critical value {p_critical}")]
    SupercriticalGeneral { p: String, p_critical: String },

    #[error("denominator is not invertible modulo the given polynomial; common factor: {factor}")]
    NonInvertibleDenominator { factor: String },

    #[error("cluster exceeded the vertex cap of {cap}")]
    ClusterCap { cap: u64 },

    #[error("{aborts} of {samples} samples hit the cluster cap, above the allowed rate {max_rate}")]
    CapAbortRate {
        aborts: u64,
        samples: u64,
        max_rate: f64,
    },

    #[error(
        "matching nullity {matching_nu} disagrees with rank nullity {rank_nu} \
         on a cluster of size {size}; this falsifies the cycle-length condition"
    )]
    MatchingRankMismatch {
        size: usize,
        matching_nu: u64,
        rank_nu: u64,
    },

    #[error("graph is not bipartite (odd cycle through vertex {witness})")]
    NotBipartite { witness: usize },

    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
