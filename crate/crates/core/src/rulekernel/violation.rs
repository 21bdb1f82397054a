use thiserror::Error;

/// A structural condition broken by a rule description. Element and
/// coalition fields are pre-rendered with locations and 1-based agent ids.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("interior: range point {0} is missing from r_omega")]
    InteriorMissing(String),
    #[error("coalition membership: {coalition} at {element} names agents outside the peaked set")]
    ForeignAgents { element: String, coalition: String },
    #[error(
        "nestedness: coalition {coalition} wins at {lower} but not at the later element {upper}"
    )]
    NotNested {
        lower: String,
        upper: String,
        coalition: String,
    },
    #[error(
        "endpoint: the range maximum is not in r_omega, so the empty coalition must win at {0}"
    )]
    EmptyMissingAtLast(String),
    #[error("endpoint: the empty coalition wins at {0}, before the last element of r_omega")]
    EmptyTooEarly(String),
    #[error("endpoint: the empty coalition wins at {0} although the range maximum is in r_omega")]
    EmptyWithMaxPresent(String),
    #[error("totality: the whole peaked set must win at the last element {0}")]
    NotTotal(String),
    #[error("reachability: no vector of peaks selects {0}")]
    Unreachable(String),
    #[error("left-decisive sets: pair {0} of r_omega has no left-decisive family")]
    MissingDecider(String),
    #[error("left-decisive sets: family given for {0}, which is not a pair of r_omega")]
    StrayDecider(String),
    #[error("left-decisive sets: coalition {coalition} for {pair} has no dipped agent")]
    NoDippedAgent { pair: String, coalition: String },
    #[error(
        "left-decisive sets: coalition {coalition} for {pair} names agents outside the roster"
    )]
    OutsideRoster { pair: String, coalition: String },
    #[error("left-decisive sets: newly winning coalition {block} at {pair} is not the peaked part of any left-decisive set")]
    UncoveredBlock { pair: String, block: String },
    #[error(
        "left-decisive sets: peaked part of {coalition} can never occur when {pair} is preselected"
    )]
    UnrealisablePeakedPart { pair: String, coalition: String },
    #[error("no dipped agents: r_omega may not contain the pair {0}")]
    PairWithoutDipped(String),
    #[error("empty peaked set: omega_empty must be given")]
    MissingOmegaEmpty,
    #[error("empty peaked set: the first step must be the constant {0} with the empty coalition winning")]
    EmptyPeakedShape(String),
    #[error("empty peaked set: omega_empty is only meaningful when there are no peaked agents")]
    StrayOmegaEmpty,
}

impl Violation {
    /// Short name of the broken condition.
    pub fn condition(&self) -> &'static str {
        match self {
            Violation::InteriorMissing(_) => "interior",
            Violation::ForeignAgents { .. } => "coalition membership",
            Violation::NotNested { .. } => "nestedness",
            Violation::EmptyMissingAtLast(_)
            | Violation::EmptyTooEarly(_)
            | Violation::EmptyWithMaxPresent(_) => "endpoint",
            Violation::NotTotal(_) => "totality",
            Violation::Unreachable(_) => "reachability",
            Violation::MissingDecider(_)
            | Violation::StrayDecider(_)
            | Violation::NoDippedAgent { .. }
            | Violation::OutsideRoster { .. }
            | Violation::UncoveredBlock { .. }
            | Violation::UnrealisablePeakedPart { .. } => "left-decisive sets",
            Violation::PairWithoutDipped(_) => "no dipped agents",
            Violation::MissingOmegaEmpty
            | Violation::EmptyPeakedShape(_)
            | Violation::StrayOmegaEmpty => "empty peaked set",
        }
    }
}
