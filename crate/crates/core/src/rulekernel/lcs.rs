//! Left coalition systems and the generalized median voter function they
//! induce on the peaked agents.

use crate::error::ValidationError;
use crate::extorder::{ExtElem, ExtOrder, Range};
use crate::location::Location;
use crate::prefdomain::{AgentRoster, AlternativeSet};

use super::coalition::{Coalition, MonotoneFamily};
use super::violation::Violation;

/// One winning-coalition family per element of `r_omega`, kept sorted by the
/// interleaved order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LeftCoalitionSystem {
    order: ExtOrder,
    elements: Vec<ExtElem>,
    positions: Vec<usize>,
    families: Vec<MonotoneFamily>,
}

impl LeftCoalitionSystem {
    pub fn new(
        order: ExtOrder,
        entries: Vec<(ExtElem, MonotoneFamily)>,
    ) -> Result<Self, ValidationError> {
        if entries.is_empty() {
            return Err(ValidationError::Format("r_omega must not be empty".into()));
        }
        let mut keyed = entries
            .into_iter()
            .map(|(e, f)| Ok((order.position(e)?, e, f)))
            .collect::<Result<Vec<_>, ValidationError>>()?;
        keyed.sort_by_key(|(p, _, _)| *p);
        if let Some(w) = keyed.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(ValidationError::Format(format!(
                "r_omega lists {:?} twice",
                w[0].1
            )));
        }
        let (positions, elements, families) = keyed.into_iter().fold(
            (Vec::new(), Vec::new(), Vec::new()),
            |(mut p, mut e, mut f), (pos, el, fam)| {
                p.push(pos);
                e.push(el);
                f.push(fam);
                (p, e, f)
            },
        );
        Ok(Self {
            order,
            elements,
            positions,
            families,
        })
    }

    pub fn order(&self) -> &ExtOrder {
        &self.order
    }

    pub fn range(&self) -> &Range {
        self.order.range()
    }

    /// `r_omega`, ascending.
    pub fn r_omega(&self) -> &[ExtElem] {
        &self.elements
    }

    pub fn families(&self) -> &[MonotoneFamily] {
        &self.families
    }

    pub fn entries(&self) -> impl Iterator<Item = (ExtElem, &MonotoneFamily)> {
        self.elements.iter().copied().zip(&self.families)
    }

    pub fn family(&self, e: ExtElem) -> Option<&MonotoneFamily> {
        self.elements
            .iter()
            .position(|&x| x == e)
            .map(|k| &self.families[k])
    }

    pub fn contains(&self, e: ExtElem) -> bool {
        self.elements.contains(&e)
    }

    pub fn last(&self) -> ExtElem {
        self.elements[self.elements.len() - 1]
    }

    /// The family that a pair's newly winning coalitions are measured
    /// against: that of its left endpoint when present, otherwise nothing.
    pub fn below_pair(&self, pair: ExtElem) -> MonotoneFamily {
        self.family(ExtElem::Alt(pair.lower()))
            .cloned()
            .unwrap_or_default()
    }

    /// Left-set at each element, for the given peaks (roster order).
    fn left_set(&self, roster: &AgentRoster, peak_positions: &[usize], at: usize) -> Coalition {
        roster
            .peaked()
            .iter()
            .zip(peak_positions)
            .filter(|&(_, &p)| p <= at)
            .fold(Coalition::EMPTY, |acc, (&i, _)| acc.with(i))
    }

    /// The generalized median voter function: the first element of `r_omega`
    /// whose left-set is winning there.
    pub fn select(&self, roster: &AgentRoster, peaks: &[usize]) -> Option<ExtElem> {
        let pos: Vec<usize> = peaks.iter().map(|&p| self.order.alt_position(p)).collect();
        self.positions
            .iter()
            .zip(&self.families)
            .zip(&self.elements)
            .find(|((&at, fam), _)| fam.contains(self.left_set(roster, &pos, at)))
            .map(|(_, &e)| e)
    }

    /// Whether `e` is the outcome of the first step for some vector of peaks.
    fn reachable(&self, k: usize, peaked_all: Coalition) -> bool {
        if self.families[..k].iter().any(|f| f.contains_empty()) {
            return false;
        }
        let fam = &self.families[k];
        match self.elements[k] {
            ExtElem::Alt(x) if x == self.range().max() => fam.contains(peaked_all),
            ExtElem::Alt(_) => !fam.is_empty(),
            pair @ ExtElem::Pair(..) => {
                let below = self.below_pair(pair);
                peaked_all
                    .subsets()
                    .any(|c| fam.contains(c) && !below.contains(c))
            }
        }
    }
}

/// Checks every structural condition on a left coalition system. An empty
/// list means the system is valid.
pub fn validate_lcs<T: Location>(
    lcs: &LeftCoalitionSystem,
    roster: &AgentRoster,
    omega: &Range,
    x: &AlternativeSet<T>,
) -> Result<Vec<Violation>, ValidationError> {
    if lcs.range() != omega {
        return Err(ValidationError::Format(
            "left coalition system is built on a different range".into(),
        ));
    }
    let label = |e: ExtElem| e.label(x);
    let peaked_all = Coalition::of(roster.peaked().iter().copied());
    let mut out = Vec::new();

    for z in omega.interior() {
        if !lcs.contains(ExtElem::Alt(z)) {
            out.push(Violation::InteriorMissing(x.point(z).to_string()));
        }
    }

    for (e, fam) in lcs.entries() {
        for &c in fam.minimal_sets() {
            if !c.is_subset_of(peaked_all) {
                out.push(Violation::ForeignAgents {
                    element: label(e),
                    coalition: c.to_string(),
                });
            }
        }
    }

    for k in 1..lcs.elements.len() {
        if let Some(c) = lcs.families[k - 1].first_missing_from(&lcs.families[k]) {
            out.push(Violation::NotNested {
                lower: label(lcs.elements[k - 1]),
                upper: label(lcs.elements[k]),
                coalition: c.to_string(),
            });
        }
    }

    let last = lcs.elements.len() - 1;
    let max_present = lcs.contains(ExtElem::Alt(omega.max()));
    // With no peaked agents the empty coalition is the whole peaked set and
    // the single family must contain it.
    let nobody = roster.peaked().is_empty();
    for (k, fam) in lcs.families.iter().enumerate() {
        if !fam.contains_empty() {
            continue;
        }
        if !max_present && k < last {
            out.push(Violation::EmptyTooEarly(label(lcs.elements[k])));
        } else if max_present && !nobody {
            out.push(Violation::EmptyWithMaxPresent(label(lcs.elements[k])));
        }
    }
    if !max_present && !lcs.families[last].contains_empty() {
        out.push(Violation::EmptyMissingAtLast(label(lcs.elements[last])));
    }

    if !lcs.families[last].contains(peaked_all) {
        out.push(Violation::NotTotal(label(lcs.elements[last])));
    }

    for k in 0..lcs.elements.len() {
        if !lcs.reachable(k, peaked_all) {
            out.push(Violation::Unreachable(label(lcs.elements[k])));
        }
    }
    Ok(out)
}
