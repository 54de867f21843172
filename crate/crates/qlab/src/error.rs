use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("k={k} does not give a primitive root of order {n}")]
    NonPrimitive { n: usize, k: usize },
    #[error("root order {0} is below 3")]
    OrderTooSmall(usize),
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error("duplicate abscissa in interpolation samples")]
    DuplicateAbscissa,
    #[error("the zero polynomial has no roots")]
    ZeroPolynomial,
    #[error("eigensolver did not converge within {0} iterations")]
    NoConvergence(usize),
    #[error("cyclic parameters are not allowed at even root order")]
    EvenParityCyclic,
    #[error("hypersurface residual {0:e} exceeds bound")]
    HypersurfaceViolation(f64),
    #[error("mu = 1 is excluded")]
    DegenerateMu,
    #[error("mu branch continuation met a double root")]
    AmbiguousBranch,
    #[error("point lies in the discriminant set")]
    DiscriminantPoint,
    #[error("no reversal coordinate matches the central values")]
    NoSolution,
    #[error("evaluation parameter must be nonzero")]
    ZeroEvaluationParameter,
    #[error("operation requires an odd root order")]
    EvenParity,
    #[error("spectral parameter hits a pole of the R-matrix")]
    PoleAtZ,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no intertwiner for a cyclic representation at even root order")]
    EvenCyclic,
    #[error("degenerate square-root branch")]
    BranchDegenerate,
    #[error("representations are not isomorphic")]
    NotIsomorphic,
    #[error("pole in shifted parameters")]
    PoleInParams,
    #[error("chain length must be even")]
    OddChain,
    #[error("law precondition violated: {0}")]
    LawPreconditionViolated(String),
    #[error("operator couples sectors (coupling {0:e})")]
    NotBlockDiagonal(f64),
    #[error("operators do not commute (residual {0:e})")]
    NonCommuting(f64),
    #[error("eigenvector drifts across samples (residual {0:e})")]
    EigvecDrift(f64),
    #[error("eigenvalue curve vanishes identically")]
    ZeroCurve,
    #[error("eigenvalue curve vanishes at the evaluation point")]
    DivisionByZeroCurve,
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

pub type Result<T> = std::result::Result<T, Error>;
