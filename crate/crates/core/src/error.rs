use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("lattice needs at least 2 sites, got {0}")]
    TooFewSites(usize),

    #[error("expected {expected} bonds, got {got}")]
    BadLength { expected: usize, got: usize },

    #[error("bond profile is not parity symmetric: bond {bond} differs from bond {mirror}")]
    NonParitySymmetric { bond: usize, mirror: usize },

    #[error("bond {bond} has a negative amplitude")]
    NegativeAmplitude { bond: usize },

    #[error("bond {bond} has mixing amplitude larger than the preserving amplitude (|x| > s)")]
    MixingExceedsPreserving { bond: usize },

    #[error("non-finite coefficient in {0}")]
    NonFinite(&'static str),

    #[error("impurity site {m} outside 1..={max}")]
    ImpurityOutOfRange { m: usize, max: usize },

    #[error("impurity site {m} is the center of an odd lattice (m = N+1-m)")]
    CenterImpurity { m: usize },

    #[error("gain scale must be finite and non-negative, got {0}")]
    NegativeGain(f64),

    #[error("matrix dimension {got} does not match expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix dimension {dim} exceeds the eigensolver cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("matrix contains non-finite entries")]
    NonFiniteMatrix,

    #[error("lattice mixes tau_x and tau_z content and cannot be split into two sectors")]
    NotDecomposable,

    #[error("QR iteration did not converge after {iterations} sweeps")]
    NoConvergence { iterations: usize },

    #[error("residual requested for a zero vector")]
    ZeroVector,

    #[error("gain direction is the zero matrix")]
    ZeroDirection,

    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),

    #[error("ring arms outside the formula regime: symmetric difference {symmetric}, antisymmetric difference {antisymmetric}")]
    OutOfRegime { symmetric: f64, antisymmetric: f64 },

    #[error("could not start worker pool: {0}")]
    WorkerPool(String),

    #[error("no broken spectrum found up to gain {cap}")]
    NoUpperBracket { cap: f64 },
}
