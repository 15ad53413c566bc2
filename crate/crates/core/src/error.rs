use thiserror::Error;

use crate::dynamics::CollisionEvent;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("points {i} and {j} are {distance:e} apart, below the minimum separation {min_separation:e}")]
    DegenerateConfiguration {
        i: usize,
        j: usize,
        distance: f64,
        min_separation: f64,
    },
    #[error("a configuration needs at least {min} points, got {found}")]
    TooFewPoints { min: usize, found: usize },
    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("{routine} did not converge within {iterations} iterations")]
    ConvergenceFailure { routine: &'static str, iterations: usize },
    #[error("the Pfaffian is only defined for even dimension, got {0}")]
    OddDimension(usize),
    #[error("configuration matrix of size {n} has a trivial nullspace; no fixed equilibrium exists")]
    NoEquilibrium { n: usize },
    #[error("strength vector is identically zero")]
    ZeroStrengths,
    #[error("spectrum has no nonzero singular values")]
    EmptySpectrum,
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("sink collapse at t = {collapse_time}; requested t = {t}")]
    CollapseReached { t: f64, collapse_time: f64 },
    #[error("integration aborted: {0}")]
    CollisionAbort(CollisionEvent),
    #[error("evaluation point is {distance:e} from singularity {index}")]
    SingularPoint { index: usize, distance: f64 },
    #[error("total strength vanishes; far field is undefined")]
    UndefinedFarField,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
