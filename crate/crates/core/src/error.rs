use alloc::string::String;

use crate::strings::DescriptorViolation;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NotPrime(u32),
    #[error("characteristic {0} is too large (must be below 65536)")]
    CharacteristicTooLarge(u32),
    #[error("truncation must be at least 1")]
    ZeroTruncation,
    #[error("ring truncation {have} is smaller than the nilpotency degree {needed}")]
    TruncationTooSmall { have: usize, needed: usize },
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("operation is only defined in {0} mode")]
    WrongMode(&'static str),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("coefficient {value} is not reduced modulo {p}")]
    UnreducedEntry { value: u64, p: u32 },
    #[error("subspace is not closed under the ring action: {0}")]
    NotAnIdeal(String),
    #[error("subspace is not invariant under X and Y")]
    NotInvariant,
    #[error("predicate requires a proper submodule")]
    NotProper,
    #[error("{what}: {required} exceeds the budget of {limit}")]
    BudgetExceeded { what: &'static str, required: u128, limit: u128 },
    #[error("invalid chain descriptor: {0}")]
    InvalidDescriptor(DescriptorViolation),
    #[error("infinite branch requires an explicit truncation")]
    InfiniteWithoutTruncation,
    #[error("invalid identification: {0}")]
    InvalidIdentification(String),
    #[error("block-cycle: out of classification lists")]
    BlockCycle,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{kind} has no finite shadow ({claim})")]
    NotTruncatable { kind: &'static str, claim: &'static str },
    #[error("invalid module: {0}")]
    InvalidModule(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}
