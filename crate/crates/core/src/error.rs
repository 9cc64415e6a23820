use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Which gluing multiplier failed its membership requirement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Multiplier {
    A1,
    A2,
}

impl std::fmt::Display for Multiplier {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Multiplier::A1 => f.write_str("a1"),
            Multiplier::A2 => f.write_str("a2"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("generator {0} is not positive")]
    NonPositiveGenerator(i64),
    #[error("generators have gcd {gcd}, not a numerical semigroup")]
    NotCoprime { gcd: i64 },
    #[error("Frobenius number {frobenius} exceeds the supported limit {limit}")]
    TooLarge { frobenius: i64, limit: i64 },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("modulus {0} is not a nonzero element of the semigroup")]
    ModulusNotInSemigroup(i64),
    #[error("delta-set intersection changed inside the stability guard (last change at a = {last_change})")]
    NonStabilized { last_change: i64 },
    #[error("operands live in different ambient semigroups")]
    AmbientMismatch,
    #[error("{0} is not a gap of the semigroup")]
    NotAGap(i64),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("step {0} lies in the semigroup")]
    StepInSemigroup(i64),
    #[error("sequence is not in the sequence semigroup")]
    NotInSequenceSemigroup,
    #[error("invalid sequence: {0}")]
    InvalidSequence(String),
    #[error("semigroup is not symmetric")]
    NotSymmetric,
    #[error("no irreducible sequence with step {step} found up to {bound}, but (0,{step}) is Huneke-Wiegand in <{generators:?}>")]
    BoundInsufficient { generators: Vec<i64>, step: i64, bound: i64 },
    #[error("multiplier {which} = {value} is not in the other factor")]
    MembershipViolated { which: Multiplier, value: i64 },
    #[error("multipliers {a1} and {a2} are not coprime")]
    NotCoprimeMultipliers { a1: i64, a2: i64 },
    #[error("multiplier {0} is not positive")]
    InvalidMultiplier(i64),
    #[error("witness construction exhausted its cases: {0}")]
    CaseExhausted(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable name used in CLI error payloads.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptyGenerators => "EmptyGenerators",
            Error::NonPositiveGenerator(_) => "NonPositiveGenerator",
            Error::NotCoprime { .. } => "NotCoprime",
            Error::TooLarge { .. } => "TooLarge",
            Error::InternalInconsistency(_) => "InternalInconsistency",
            Error::ModulusNotInSemigroup(_) => "ModulusNotInSemigroup",
            Error::NonStabilized { .. } => "NonStabilized",
            Error::AmbientMismatch => "AmbientMismatch",
            Error::NotAGap(_) => "NotAGap",
            Error::HypothesisViolated(_) => "HypothesisViolated",
            Error::StepInSemigroup(_) => "StepInSemigroup",
            Error::NotInSequenceSemigroup => "NotInSemigroup",
            Error::InvalidSequence(_) => "InvalidSequence",
            Error::NotSymmetric => "NotSymmetric",
            Error::BoundInsufficient { .. } => "BoundInsufficient",
            Error::MembershipViolated { .. } => "MembershipViolated",
            Error::NotCoprimeMultipliers { .. } => "NotCoprimeMultipliers",
            Error::InvalidMultiplier(_) => "InvalidMultiplier",
            Error::CaseExhausted(_) => "CaseExhausted",
            Error::Parse(_) => "Parse",
            Error::Io(_) => "Io",
        }
    }
}
