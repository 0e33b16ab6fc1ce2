use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),
    #[error("pole on or inside the evaluation domain at {0}")]
    Pole(String),
    #[error("bisection did not converge: {0}")]
    NonConvergence(String),
    #[error("degenerate target: {0}")]
    DegenerateTarget(String),
    #[error("matrix is scalar, no mu-reduction needed")]
    ScalarMatrix,
    #[error("function vanishes identically")]
    ZeroFunction,
    #[error("denominator has a root in the closed disc at {0}")]
    PoleInDisc(String),
    #[error("denominator vanishes identically")]
    ZeroDenominator,
    #[error("function is not rational: {0}")]
    NotRational(String),
    #[error("singular pencil: I - P22 X is not invertible (sigma_min = {0:e})")]
    SingularPencil(f64),
    #[error("gramian inequality violated by {0:e}")]
    GramianViolation(f64),
    #[error("completion is not contractive: norm = {0}")]
    ContractionViolation(f64),
    #[error("rank tolerance violated: {0}")]
    RankTolerance(String),
    #[error("value leaves the symmetrized bidisc: {0}")]
    NotInGamma(String),
    #[error("value leaves the tetrablock: {0}")]
    NotInTetrablock(String),
    #[error("family is not in the Schur class of the bidisc: {0}")]
    NotSchurBidisc(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("interpolant misses node {node}: residual {residual:e}")]
    InterpolantMismatch { node: usize, residual: f64 },
    #[error("F21 vanishes at node {0}")]
    DegenerateF21(usize),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("synthesized function misses node {node}: residual {residual:e}")]
    NodeMismatch { node: usize, residual: f64 },
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("unitary extension unavailable: gramian deficit {0:e}")]
    UnitaryExtension(f64),
    #[error("certificate rejected: {0}")]
    CertificateRejected(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
