use thiserror::Error;

/// Errors raised by the order, lattice and grading routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Shape(String),
    #[error("table is not commutative at (i={i}, j={j})")]
    NotCommutative { i: usize, j: usize },
    #[error("table is not associative at (i={i}, j={j}, k={k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("identity vector does not act as identity on basis element {i}")]
    BadIdentity { i: usize },
    #[error("order is not reduced (nilradical has rank {nil_rank})")]
    NotReduced { nil_rank: usize },
    #[error("ideal is not saturated; quotient has torsion")]
    TorsionQuotient,
    #[error("sum of sublattices has infinite index")]
    InfiniteIndex,
    #[error("generic element failed to separate the embeddings")]
    DegenerateSplitting,
    #[error("precision exhausted at {bits} bits: {cause}")]
    PrecisionExhausted { bits: u32, cause: String },
    #[error("inner product sign is ambiguous at the current precision")]
    AmbiguousSign,
    #[error("enumeration exceeded the budget of {cap} vectors")]
    EnumerationBudgetExceeded { cap: usize },
    #[error("Gram matrix is not symmetric at ({i}, {j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("Gram matrix is not positive definite (leading minor {k})")]
    NotPositiveDefinite { k: usize },
    #[error("presented group is infinite")]
    InfiniteGroup,
    #[error("decomposition check failed: {0}")]
    DecompositionFailed(String),
    #[error("grading verification failed: {0}")]
    VerificationFailed(String),
    #[error("no morphism: {0}")]
    NoMorphism(String),
    #[error("piece for {0} lies in no target piece or in several")]
    AmbiguousMorphism(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

impl Error {
    /// Failures that can come from a numerical misjudgement and may go
    /// away at a higher working precision.
    pub fn is_retryable(&self) -> bool {
        matches!(
            self,
            Error::DegenerateSplitting
                | Error::PrecisionExhausted { .. }
                | Error::AmbiguousSign
                | Error::InfiniteGroup
                | Error::DecompositionFailed(_)
                | Error::VerificationFailed(_)
                | Error::InternalInconsistency(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
