use thiserror::Error;

/// Malformed input: bad alternative sets, rankings, ranges or profiles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("alternative set must contain at least one point")]
    EmptyAlternatives,
    #[error("alternative points must be strictly increasing (position {0})")]
    NotIncreasing(usize),
    #[error("ranking is not a permutation of the {0} alternatives")]
    NotPermutation(usize),
    #[error("ranking is not single-{0}")]
    WrongShape(&'static str),
    #[error("alternative index {0} is outside the alternative set")]
    UnknownAlternative(usize),
    #[error("location {0} is not an alternative")]
    UnknownLocation(String),
    #[error("comparison needs two distinct alternatives")]
    SameAlternative,
    #[error("range must be a nonempty subset of the alternatives")]
    EmptyRange,
    #[error("{0} is not a member of the range")]
    OutsideRange(String),
    #[error("pair ({0}, {1}) is not contiguous in the range")]
    NotContiguous(String, String),
    #[error("element {0} does not belong to this ordered range")]
    ForeignElement(String),
    #[error("agent ids must partition 1..={n}: {detail}")]
    BadRoster { n: usize, detail: String },
    #[error("too many agents ({0}); at most 32 are supported")]
    TooManyAgents(usize),
    #[error("profile has {got} preferences for {expected} agents")]
    ProfileLength { expected: usize, got: usize },
    #[error("agent {agent} has a {got} preference but is registered as {expected}")]
    KindMismatch {
        agent: usize,
        expected: &'static str,
        got: &'static str,
    },
    #[error("expected {expected} {what} but got {got}")]
    VectorLength {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("coalition {0} mentions an agent outside the roster")]
    CoalitionOutOfRoster(String),
    #[error("coalition family is not an antichain: {0} contains {1}")]
    NotAntichain(String, String),
    #[error("outcome table has {got} entries, expected {expected}")]
    TableSize { expected: usize, got: usize },
    #[error("{0}")]
    Format(String),
}

/// Raised by the exhaustive routines when an instance exceeds the size guards.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("instance too large: {what} is {actual}, limit is {limit}")]
pub struct SizeGuard {
    pub what: &'static str,
    pub actual: usize,
    pub limit: usize,
}
