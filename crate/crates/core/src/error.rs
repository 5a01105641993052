use alloc::string::String;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid Cartan data: {0}")]
    InvalidCartan(String),
    #[error("unknown Cartan type `{0}`")]
    UnknownCartanType(String),
    #[error("dimension mismatch: expected rank {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("coefficient rings differ: n = {left} vs n = {right}")]
    CoverMismatch { left: u32, right: u32 },
    #[error("unsupported cover degree {0}")]
    UnsupportedCover(u32),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("coweight {0} is not dominant")]
    NotDominant(String),
    #[error("{0} is not a coroot")]
    NotACoroot(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("element {0} has support outside the sublattice Λ₀")]
    OutsideLambda0(String),
    #[error("denominator is not expansible along the requested direction: {0}")]
    Inexpansible(String),
    #[error("numeric specialization needs a Gauss sum table for n = {0}")]
    MissingGaussTable(u32),
    #[error("residue-field oracle configuration rejected: {0}")]
    OracleConfig(String),
    #[error("requested point lies beyond the exactly expanded slice: {0}")]
    BeyondCutoff(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
