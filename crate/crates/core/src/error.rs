use thiserror::Error;

use crate::triples::TripleError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("series constant term is not 1")]
    NonUnitConstant,
    #[error("inexact division by {0}")]
    InexactDivision(String),
    #[error("operator index out of range: ({i}, {j}) for length {len}")]
    IndexOutOfRange { i: usize, j: usize, len: usize },
    #[error("plain evaluation of a term with a nonzero sign vector")]
    SignedPlainEvaluation,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid rho sequence: {0}")]
    InvalidRho(String),
    #[error("lambda is not rho-strict: {0}")]
    NotRhoStrict(String),
    #[error("lambda is not a strict partition")]
    NotStrict,
    #[error("rho does not satisfy rho_j = j - 1 for j <= r = {0}")]
    RhoRankMismatch(usize),
    #[error("sign entries must lie in {{-1, 0, 1}}")]
    InvalidSign,
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("no series assigned to entry {0}")]
    MissingEntry(usize),
    #[error("symbol kind mismatch: {0}")]
    KindMismatch(String),
    #[error("truncation order {order} is below the required degree {needed}")]
    TruncationTooLow { order: usize, needed: usize },
    #[error("infeasible root model: {0}")]
    InfeasibleRootModel(String),
    #[error("signed permutation recipe conflict: {0}")]
    RecipeConflict(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Triple(#[from] TripleError),
}

pub type Result<T> = std::result::Result<T, Error>;
