use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GaudinError {
    #[error("root iteration did not converge after {attempts} attempts")]
    NonConvergence { attempts: usize },

    #[error("poles at distance {distance:e} are closer than the dedup tolerance")]
    PoleCollision { distance: f64 },

    #[error("evaluation point is within {distance:e} of a pole")]
    PoleEvaluation { distance: f64 },

    #[error("evaluation sites are not pairwise distinct (gap {gap:e})")]
    DegenerateSites { gap: f64 },

    #[error("coordinates coincide (gap {gap:e}) at level {level}")]
    CoincidentCoordinates { level: usize, gap: f64 },

    #[error("found {found} critical orbits, expected {expected}")]
    CountMismatch { found: usize, expected: usize },

    #[error("the two critical points lie in the same orbit")]
    SameOrbit,

    #[error("space is not in the Schubert cell: {0}")]
    NotInCell(String),

    #[error("Wronskian of the tail f_{tail}.. has degree {found}, expected {expected}")]
    DegreeDrop { tail: usize, found: isize, expected: usize },

    #[error("Wronskian vanishes identically")]
    SingularWronskian,

    #[error("kernel has dimension {found}, expected {expected}")]
    KernelDimension { found: usize, expected: usize },

    #[error("tensor space of dimension {dim} exceeds the supported cap {cap}")]
    TooLarge { dim: usize, cap: usize },

    #[error("integer overflow in q-series arithmetic")]
    Overflow,

    #[error("series is not invertible (constant term {0})")]
    NotUnit(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, GaudinError>;
