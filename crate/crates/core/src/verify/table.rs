use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::error::ValidationError;
use crate::extorder::Range;
use crate::location::Location;
use crate::prefdomain::{AgentRoster, RestrictedProfile};
use crate::rulekernel::RuleSpec;

use super::space::ProfileSpace;

/// Outcomes over the restricted-profile grid `grid^n`: agent `i` reports a
/// grid point (a restricted peak if peaked, a restricted dip if dipped).
/// Entries are ordered lexicographically with agent 1 most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RuleTable {
    m: usize,
    roster: AgentRoster,
    grid: Range,
    outcomes: Vec<usize>,
}

impl RuleTable {
    pub fn new(
        m: usize,
        roster: AgentRoster,
        grid: Range,
        outcomes: Vec<usize>,
    ) -> Result<Self, ValidationError> {
        if grid.max() >= m {
            return Err(ValidationError::UnknownAlternative(grid.max()));
        }
        let expected = grid.len().pow(roster.n() as u32);
        if outcomes.len() != expected {
            return Err(ValidationError::TableSize {
                expected,
                got: outcomes.len(),
            });
        }
        if let Some(&bad) = outcomes.iter().find(|&&o| o >= m) {
            return Err(ValidationError::UnknownAlternative(bad));
        }
        Ok(Self {
            m,
            roster,
            grid,
            outcomes,
        })
    }

    /// Tabulates a rule over its own range.
    pub fn of_rule<T: Location>(rule: &RuleSpec<T>) -> Self {
        let roster = rule.roster().clone();
        let grid = rule.omega().clone();
        let len = grid.len().pow(roster.n() as u32);
        let mut table = Self {
            m: rule.alternatives().len(),
            roster,
            grid,
            outcomes: Vec::new(),
        };
        table.outcomes = (0..len)
            .into_par_iter()
            .map(|idx| rule.evaluate_trusted(&table.restricted_profile(idx)))
            .collect();
        table
    }

    pub fn alternatives(&self) -> usize {
        self.m
    }

    pub fn roster(&self) -> &AgentRoster {
        &self.roster
    }

    pub fn grid(&self) -> &Range {
        &self.grid
    }

    pub fn outcomes(&self) -> &[usize] {
        &self.outcomes
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    /// Grid positions reported by each agent at `index`.
    pub fn coordinates(&self, index: usize) -> Vec<usize> {
        let k = self.grid.len();
        let n = self.roster.n();
        let mut coords = vec![0; n];
        let mut rest = index;
        for i in (0..n).rev() {
            coords[i] = rest % k;
            rest /= k;
        }
        coords
    }

    pub fn index_of_coordinates(&self, coords: &[usize]) -> usize {
        coords.iter().fold(0, |acc, &c| acc * self.grid.len() + c)
    }

    pub fn restricted_profile(&self, index: usize) -> RestrictedProfile {
        let coords = self.coordinates(index);
        let point = |i: usize| self.grid.members()[coords[i]];
        RestrictedProfile::new(
            self.roster.peaked().iter().map(|&i| point(i)).collect(),
            self.roster.dipped().iter().map(|&j| point(j)).collect(),
        )
    }

    pub fn index_of(&self, rp: &RestrictedProfile) -> Result<usize, ValidationError> {
        let mut coords = vec![0; self.roster.n()];
        let slots = self
            .roster
            .peaked()
            .iter()
            .zip(&rp.peaks)
            .chain(self.roster.dipped().iter().zip(&rp.dips));
        for (&agent, &x) in slots {
            coords[agent] = self
                .grid
                .position(x)
                .ok_or_else(|| ValidationError::OutsideRange(format!("alternative #{x}")))?;
        }
        Ok(self.index_of_coordinates(&coords))
    }

    pub fn outcome(&self, rp: &RestrictedProfile) -> Result<usize, ValidationError> {
        if rp.peaks.len() != self.roster.peaked().len()
            || rp.dips.len() != self.roster.dipped().len()
        {
            return Err(ValidationError::ProfileLength {
                expected: self.roster.n(),
                got: rp.peaks.len() + rp.dips.len(),
            });
        }
        Ok(self.outcomes[self.index_of(rp)?])
    }

    /// Alternatives attained somewhere in the table.
    pub fn range(&self) -> Range {
        range_of_outcomes(&self.outcomes, self.m)
    }

    /// The outcome at every full profile of `space`, reading each agent's
    /// report as its best (peaked) or worst (dipped) grid point.
    pub fn expand(&self, space: Arc<ProfileSpace>) -> Result<FullTable, ValidationError> {
        if space.alternatives() != self.m || space.roster() != &self.roster {
            return Err(ValidationError::Format(
                "profile space differs from the table's alternatives or roster".into(),
            ));
        }
        let restriction = space.restriction(&self.grid);
        let n = self.roster.n();
        let k = self.grid.len();
        let outcomes = (0..space.len())
            .into_par_iter()
            .map(|idx| {
                let cell = (0..n).fold(0, |acc, i| acc * k + restriction[i][space.digit(idx, i)]);
                self.outcomes[cell]
            })
            .collect();
        Ok(FullTable { space, outcomes })
    }

    /// Expansion over every alternative.
    pub fn expand_full(&self) -> FullTable {
        let space = Arc::new(ProfileSpace::new(self.roster.clone(), self.m));
        self.expand(space).expect("same roster and alternatives")
    }
}

/// Attained outcomes; `outcomes` must be nonempty.
pub fn range_of_outcomes(outcomes: &[usize], m: usize) -> Range {
    let mut seen = vec![false; m];
    for &o in outcomes {
        seen[o] = true;
    }
    let members = (0..m).filter(|&x| seen[x]).collect();
    Range::new(members, m).expect("tables are nonempty")
}

/// The set of alternatives a tabulated rule attains.
pub fn range_of(table: &RuleTable) -> Range {
    table.range()
}

/// Two full profiles with equal restrictions to the range but different
/// outcomes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("profiles #{first} and #{second} agree on the range but have outcomes #{first_outcome} and #{second_outcome}")]
pub struct RestrictionConflict {
    pub first: usize,
    pub second: usize,
    pub first_outcome: usize,
    pub second_outcome: usize,
}

/// Outcome at every full profile of a [`ProfileSpace`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullTable {
    space: Arc<ProfileSpace>,
    outcomes: Vec<usize>,
}

impl FullTable {
    pub fn new(space: Arc<ProfileSpace>, outcomes: Vec<usize>) -> Result<Self, ValidationError> {
        if outcomes.len() != space.len() {
            return Err(ValidationError::TableSize {
                expected: space.len(),
                got: outcomes.len(),
            });
        }
        if let Some(&bad) = outcomes.iter().find(|&&o| o >= space.alternatives()) {
            return Err(ValidationError::UnknownAlternative(bad));
        }
        Ok(Self { space, outcomes })
    }

    pub fn space(&self) -> &Arc<ProfileSpace> {
        &self.space
    }

    pub fn outcomes(&self) -> &[usize] {
        &self.outcomes
    }

    pub fn into_outcomes(self) -> Vec<usize> {
        self.outcomes
    }

    pub fn range(&self) -> Range {
        range_of_outcomes(&self.outcomes, self.space.alternatives())
    }

    /// The table over `grid`, provided outcomes only depend on the agents'
    /// best and worst grid points.
    pub fn restrict(&self, grid: &Range) -> Result<RuleTable, RestrictionConflict> {
        let restriction = self.space.restriction(grid);
        let n = self.space.roster().n();
        let k = grid.len();
        let cells = k.pow(n as u32);
        let mut witness: Vec<Option<usize>> = vec![None; cells];
        for (idx, &o) in self.outcomes.iter().enumerate() {
            let cell = (0..n).fold(0, |acc, i| {
                acc * k + restriction[i][self.space.digit(idx, i)]
            });
            match witness[cell] {
                None => witness[cell] = Some(idx),
                Some(first) if self.outcomes[first] != o => {
                    return Err(RestrictionConflict {
                        first,
                        second: idx,
                        first_outcome: self.outcomes[first],
                        second_outcome: o,
                    })
                }
                Some(_) => {}
            }
        }
        let outcomes = witness
            .into_iter()
            .map(|w| self.outcomes[w.expect("every grid cell is realised by some profile")])
            .collect();
        Ok(RuleTable {
            m: self.space.alternatives(),
            roster: self.space.roster().clone(),
            grid: grid.clone(),
            outcomes,
        })
    }
}
