use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("carrier of size {size} exceeds the cap of {cap} elements")]
    SizeCapExceeded { size: u128, cap: usize },
    #[error("modulus is not monic after reduction into the base ring")]
    NonMonicModulus,
    #[error("invalid ring specification: {0}")]
    InvalidSpec(String),
    #[error("ring axiom violated: {0}")]
    AxiomViolated(String),
    #[error("invalid monoid table: {0}")]
    InvalidMonoid(String),
    #[error("element index {index} out of range for carrier of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("subsets belong to different monoids")]
    SubsetParentMismatch,
    #[error("cannot compose: target of the inner map is not the source of the outer map")]
    CompositionMismatch,
    #[error("not a monoid homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("search budget of {budget} nodes exceeded")]
    SearchBudgetExceeded { budget: u64 },
    #[error("homomorphism does not live on the multiplicative monoids of the given rings")]
    MonoidRingMismatch,
    #[error("matrix entry ({row}, {col}) has the wrong source or target")]
    EntrySignatureMismatch { row: usize, col: usize },
    #[error("row {row}: images of columns {col_a} and {col_b} do not commute")]
    CentralityViolation { row: usize, col_a: usize, col_b: usize },
    #[error("matrices belong to different product contexts")]
    ContextMismatch,
    #[error("map is not an endomorphism of the product monoid")]
    NotAnEndomorphism,
    #[error("matrices are not mutually inverse")]
    NotAnInversePair,
    #[error("factor {factor} is not a D-ring which is a total ring of fractions")]
    HypothesisViolated { factor: usize },
    #[error("no zero-preserving index found for row {row}")]
    NoIndexFound { row: usize },
    #[error("automorphism computations disagree: {0}")]
    MethodDisagreement(String),
    #[error("self-check failed: {0}")]
    SelfCheckFailed(String),
}

impl Error {
    /// True for errors caused by a configured cap or search budget.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::SizeCapExceeded { .. } | Error::SearchBudgetExceeded { .. }
        )
    }
}
