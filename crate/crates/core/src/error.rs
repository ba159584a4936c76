use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("matrix is singular within tolerance")]
    SingularMatrix,
    #[error("Jacobi eigenvalue iteration did not converge after {sweeps} sweeps")]
    ConvergenceFailure { sweeps: usize },
    #[error("matrix is not positive definite (min eigenvalue {min_eigenvalue:e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("origin is not an interior point of the hull")]
    OriginNotInterior,
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("center is not interior: constraint {index} has slack {slack:e}")]
    CenterNotInterior { index: usize, slack: f64 },
    #[error("enumeration of {count} subsets exceeds the cap of {cap}")]
    EnumerationTooLarge { count: u128, cap: u128 },
    #[error("body is degenerate (volume {volume:e})")]
    DegenerateBody { volume: f64 },
    #[error("no nondegenerate simplex exists among the input vectors")]
    DegenerateInput,
    #[error("center verification failed with margin {margin:e}")]
    CenterVerificationFailed { margin: f64 },
    #[error("point is not in the convex hull")]
    NotMember,
    #[error("certificate violated: {0}")]
    CertificateViolated(String),
    #[error("input does not contain the unit ball (inscribed radius {radius})")]
    InputLacksUnitBall { radius: f64 },
    #[error("vectors do not span the space")]
    SpanFailure,
    #[error("strip maximization value {value} is below the trace {trace}")]
    PropositionViolated { value: f64, trace: f64 },
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("instance generation failed after {rounds} rounds")]
    GenerationFailed { rounds: usize },
}

pub type Result<T, E = GeometryError> = std::result::Result<T, E>;
