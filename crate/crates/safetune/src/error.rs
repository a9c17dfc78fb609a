//! Crate-wide error type.

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Kernel/input dimensionality does not match the configuration.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Gram matrix could not be factorized even after jitter; reports the
    /// closest pair of inputs, which is almost always a near-duplicate.
    #[error(
        "degenerate GP model: Gram matrix not positive definite after jitter; \
         nearest input pair is #{i} and #{j} (correlation {corr:.6})"
    )]
    DegenerateModel { i: usize, j: usize, corr: f64 },

    /// Monotone confidence intervals became disjoint, which signals a
    /// mis-specified noise variance or confidence multiplier.
    #[error(
        "model inconsistency at cell {cell} (bin {bin}): cached lower bound {lower} \
         exceeds new upper bound {upper}"
    )]
    DisjointBounds {
        cell: usize,
        bin: u32,
        lower: f64,
        upper: f64,
    },

    /// Observation value was NaN or infinite.
    #[error("non-finite observation rejected: {0}")]
    NonFiniteObservation(f64),

    /// A contract precondition was violated by the caller.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Invalid experiment configuration or reference profile.
    #[error("config error: {0}")]
    Config(String),

    /// Plant episode failed (numerical blowup) at the given loop iteration.
    #[error("plant episode aborted at iteration {iteration}: {reason}")]
    EpisodeAborted { iteration: u64, reason: String },

    /// Grid oracle found no feasible cell; thresholds are miscalibrated.
    #[error("grid oracle: no feasible cell under kappa1={kappa1}, kappa2={kappa2}")]
    EmptyFeasibleSet { kappa1: f64, kappa2: f64 },

    #[error("artifact schema error: missing column `{0}`")]
    MissingColumn(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
