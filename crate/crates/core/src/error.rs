use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("modulus must be >= 1")]
    InvalidModulus,
    #[error("basis vectors are linearly dependent over Q")]
    DependentBasis,
    #[error("gram matrix must be symmetric of size rank x rank")]
    InvalidGram,
    #[error("lattice carries no gram matrix")]
    MissingGram,
    #[error("basis vector {0} of the candidate sublattice is outside the ambient lattice")]
    NotASublattice(usize),
    #[error("n must be >= 1")]
    NonpositiveN,
    #[error("operation requires a class of degree zero")]
    NonzeroDegree,
    #[error("trace is only defined for endomorphisms (source = target)")]
    NotAnEndomorphism,
    #[error("composition mismatch: target of the first map must equal source of the second")]
    CompositionMismatch,
    #[error("cm parameters require m >= 1 and d <= -1")]
    InvalidCmParameters,
    #[error("unknown graded piece label `{0}`")]
    UnknownGradedPiece(String),
    #[error("pushforward needs equal second and third factor curves, found `{0}` and `{1}`")]
    MismatchedFactorCurves(String, String),
    #[error("torsion point has order {found}, expected {expected}")]
    TorsionOrderMismatch { found: String, expected: String },
    #[error("tensor class denominator must be >= 1")]
    InvalidDenominator,
}
