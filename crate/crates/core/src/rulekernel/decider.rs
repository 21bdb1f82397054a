//! Second step: choosing between two neighbouring range alternatives by
//! voting over collections of left-decisive sets.

use crate::extorder::ExtElem;
use crate::location::Location;
use crate::prefdomain::{AgentRoster, AlternativeSet, RestrictedProfile};

use super::coalition::{Coalition, MonotoneFamily};
use super::lcs::LeftCoalitionSystem;
use super::violation::Violation;

/// Minimal coalitions over all agents that force the left alternative of
/// `pair` when every member prefers it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LeftDecisiveFamily {
    pair: ExtElem,
    winning: MonotoneFamily,
}

impl LeftDecisiveFamily {
    /// `pair` must be an `ExtElem::Pair`.
    pub fn new(pair: ExtElem, winning: MonotoneFamily) -> Self {
        assert!(pair.is_pair(), "left-decisive families belong to pairs");
        Self { pair, winning }
    }

    pub fn pair(&self) -> ExtElem {
        self.pair
    }

    pub fn winning(&self) -> &MonotoneFamily {
        &self.winning
    }

    /// Agents preferring the left alternative `l` to the right one `r`.
    ///
    /// A peaked agent does so iff its restricted peak is at most `l`, a dipped
    /// one iff its restricted dip is at least `r`; no range point lies
    /// strictly between the two.
    pub fn left_supporters(&self, roster: &AgentRoster, rp: &RestrictedProfile) -> Coalition {
        let (l, r) = (self.pair.lower(), self.pair.upper());
        let peaked = roster
            .peaked()
            .iter()
            .zip(&rp.peaks)
            .filter(|&(_, &p)| p <= l)
            .map(|(&i, _)| i);
        let dipped = roster
            .dipped()
            .iter()
            .zip(&rp.dips)
            .filter(|&(_, &d)| d >= r)
            .map(|(&j, _)| j);
        Coalition::of(peaked.chain(dipped))
    }

    /// Left alternative if the supporters contain a left-decisive set.
    pub fn decide(&self, roster: &AgentRoster, rp: &RestrictedProfile) -> usize {
        if self.winning.contains(self.left_supporters(roster, rp)) {
            self.pair.lower()
        } else {
            self.pair.upper()
        }
    }
}

pub(crate) fn validate_decider<T: Location>(
    decider: &LeftDecisiveFamily,
    lcs: &LeftCoalitionSystem,
    roster: &AgentRoster,
    x: &AlternativeSet<T>,
) -> Vec<Violation> {
    let pair = decider.pair.label(x);
    let everyone = Coalition::all(roster.n());
    let peaked_all = Coalition::of(roster.peaked().iter().copied());
    let dipped_all = Coalition::of(roster.dipped().iter().copied());
    let upper = lcs.family(decider.pair).cloned().unwrap_or_default();
    let below = lcs.below_pair(decider.pair);
    let mut out = Vec::new();

    for &c in decider.winning.minimal_sets() {
        if !c.is_subset_of(everyone) {
            out.push(Violation::OutsideRoster {
                pair: pair.clone(),
                coalition: c.to_string(),
            });
            continue;
        }
        if c.intersection(dipped_all).is_empty() {
            out.push(Violation::NoDippedAgent {
                pair: pair.clone(),
                coalition: c.to_string(),
            });
        }
        let part = c.intersection(peaked_all);
        if !upper.contains(part) || below.contains(part) {
            out.push(Violation::UnrealisablePeakedPart {
                pair: pair.clone(),
                coalition: c.to_string(),
            });
        }
    }

    for block in upper.minimal_beyond(&below, peaked_all) {
        let covered = decider
            .winning
            .minimal_sets()
            .iter()
            .any(|c| c.intersection(peaked_all) == block);
        if !covered {
            out.push(Violation::UncoveredBlock {
                pair: pair.clone(),
                block: block.to_string(),
            });
        }
    }
    out
}
