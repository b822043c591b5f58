//! Error type shared by the whole crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p = {0} is not an odd prime")]
    NotAnOddPrime(u64),
    #[error("residue degree f must be at least 1")]
    ZeroResidueDegree,
    #[error("{what} does not fit in 64 bits")]
    Overflow { what: &'static str },
    #[error("expected {expected} exponents at level {level}, got {got}")]
    ExponentCount {
        level: u64,
        expected: usize,
        got: usize,
    },
    #[error("operands live over different base fields")]
    FieldMismatch,
    #[error("representation needs at least one component")]
    EmptyRepresentation,
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("rank-{rank} component requires minimal conductor >= {min}, got {got}")]
    MinimalConductorTooSmall { rank: u64, min: u64, got: u64 },
    #[error("rank-1 components carry minimal conductor 0, got {0}")]
    Rank1MinimalConductor(u64),
    #[error(
        "minimal central character of conductor {omega} is too ramified: \
         rank {rank} times {omega} exceeds minimal conductor {minimal}"
    )]
    CentralCharacterTooRamified { rank: u64, omega: u64, minimal: u64 },
    #[error("component {0} carries no minimal central character")]
    MissingCentralCharacter(usize),
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("conductor {conductor} is below the minimum {min} for rank {rank}")]
    ConductorBelowMinimum { conductor: u64, min: u64, rank: u64 },
    #[error("enumerating {needed} characters exceeds the configured limit {limit}")]
    ResourceLimit { needed: u64, limit: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
