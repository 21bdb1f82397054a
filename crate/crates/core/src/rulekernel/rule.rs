use thiserror::Error;

use crate::error::ValidationError;
use crate::extorder::{ExtElem, Range};
use crate::location::Location;
use crate::prefdomain::{AgentRoster, AlternativeSet, Profile, RestrictedProfile};

use super::coalition::MonotoneFamily;
use super::decider::{validate_decider, LeftDecisiveFamily};
use super::lcs::{validate_lcs, LeftCoalitionSystem};
use super::violation::Violation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error("{} structural violation(s); first: {}", .0.len(), .0[0])]
    Invalid(Vec<Violation>),
    #[error("no element of r_omega is selected for these peaks")]
    NoSelection,
    #[error("first step selects {selected}, not the pair {requested}")]
    PairMismatch { requested: String, selected: String },
}

/// A rule from the characterized family: a range, a left coalition system on
/// `r_omega`, and one left-decisive family per pair in `r_omega`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RuleSpec<T> {
    x: AlternativeSet<T>,
    roster: AgentRoster,
    omega: Range,
    lcs: LeftCoalitionSystem,
    deciders: Vec<LeftDecisiveFamily>,
    omega_empty: Option<ExtElem>,
}

impl<T: Location> RuleSpec<T> {
    /// Validates every structural condition. Whether the rule actually
    /// attains all of `omega` is a property of its outcome table and is
    /// checked by [`crate::verify::range_of`].
    pub fn new(
        x: AlternativeSet<T>,
        roster: AgentRoster,
        omega: Range,
        lcs: LeftCoalitionSystem,
        mut deciders: Vec<LeftDecisiveFamily>,
        omega_empty: Option<ExtElem>,
    ) -> Result<Self, RuleError> {
        if omega.max() >= x.len() {
            return Err(ValidationError::UnknownAlternative(omega.max()).into());
        }
        let order = omega.ext_order();
        for d in &deciders {
            order.check(d.pair())?;
        }
        if let Some(e) = omega_empty {
            order.check(e)?;
        }
        deciders.sort_by_key(|d| order.position(d.pair()).expect("checked above"));
        if let Some(w) = deciders.windows(2).find(|w| w[0].pair() == w[1].pair()) {
            return Err(ValidationError::Format(format!(
                "two left-decisive families for {}",
                w[0].pair().label(&x)
            ))
            .into());
        }
        let rule = Self {
            x,
            roster,
            omega,
            lcs,
            deciders,
            omega_empty,
        };
        let violations = rule.violations()?;
        if violations.is_empty() {
            Ok(rule)
        } else {
            Err(RuleError::Invalid(violations))
        }
    }

    /// Rule for an empty peaked set: constant, or a binary vote between a
    /// pair of neighbouring range points.
    pub fn without_peaked(
        x: AlternativeSet<T>,
        roster: AgentRoster,
        omega: Range,
        omega_empty: ExtElem,
        winning: Option<MonotoneFamily>,
    ) -> Result<Self, RuleError> {
        let lcs = LeftCoalitionSystem::new(
            omega.ext_order(),
            vec![(omega_empty, MonotoneFamily::everything())],
        )?;
        let deciders = winning
            .map(|w| vec![LeftDecisiveFamily::new(omega_empty, w)])
            .unwrap_or_default();
        Self::new(x, roster, omega, lcs, deciders, Some(omega_empty))
    }

    fn violations(&self) -> Result<Vec<Violation>, ValidationError> {
        let x = &self.x;
        let mut out = validate_lcs(&self.lcs, &self.roster, &self.omega, x)?;

        if self.roster.peaked().is_empty() {
            match self.omega_empty {
                None => out.push(Violation::MissingOmegaEmpty),
                Some(e) => {
                    let shaped = self.lcs.r_omega() == [e]
                        && self.lcs.families()[0] == MonotoneFamily::everything();
                    if !shaped {
                        out.push(Violation::EmptyPeakedShape(e.label(x)));
                    }
                }
            }
        } else if self.omega_empty.is_some() {
            out.push(Violation::StrayOmegaEmpty);
        }

        for &e in self.lcs.r_omega().iter().filter(|e| e.is_pair()) {
            if self.roster.dipped().is_empty() {
                out.push(Violation::PairWithoutDipped(e.label(x)));
            }
            if self.decider(e).is_none() {
                out.push(Violation::MissingDecider(e.label(x)));
            }
        }
        for d in &self.deciders {
            if !self.lcs.contains(d.pair()) {
                out.push(Violation::StrayDecider(d.pair().label(x)));
            } else {
                out.extend(validate_decider(d, &self.lcs, &self.roster, x));
            }
        }
        Ok(out)
    }

    pub fn alternatives(&self) -> &AlternativeSet<T> {
        &self.x
    }

    pub fn roster(&self) -> &AgentRoster {
        &self.roster
    }

    pub fn omega(&self) -> &Range {
        &self.omega
    }

    pub fn lcs(&self) -> &LeftCoalitionSystem {
        &self.lcs
    }

    pub fn r_omega(&self) -> &[ExtElem] {
        self.lcs.r_omega()
    }

    pub fn deciders(&self) -> &[LeftDecisiveFamily] {
        &self.deciders
    }

    pub fn decider(&self, pair: ExtElem) -> Option<&LeftDecisiveFamily> {
        self.deciders.iter().find(|d| d.pair() == pair)
    }

    pub fn omega_empty(&self) -> Option<ExtElem> {
        self.omega_empty
    }

    /// First step: the generalized median voter function at `peaks`.
    pub fn first_step(&self, peaks: &[usize]) -> Result<ExtElem, RuleError> {
        let rp = RestrictedProfile::new(
            peaks.to_vec(),
            vec![self.omega.min(); self.roster.dipped().len()],
        );
        rp.check(&self.roster, &self.omega, &self.x)?;
        self.lcs
            .select(&self.roster, peaks)
            .ok_or(RuleError::NoSelection)
    }

    /// Second step for `pair`, which must be what the first step selects.
    pub fn binary_decide(&self, pair: ExtElem, rp: &RestrictedProfile) -> Result<usize, RuleError> {
        rp.check(&self.roster, &self.omega, &self.x)?;
        let selected = self
            .lcs
            .select(&self.roster, &rp.peaks)
            .ok_or(RuleError::NoSelection)?;
        let mismatch = || RuleError::PairMismatch {
            requested: pair.label(&self.x),
            selected: selected.label(&self.x),
        };
        if selected != pair {
            return Err(mismatch());
        }
        let decider = self.decider(pair).ok_or_else(mismatch)?;
        Ok(decider.decide(&self.roster, rp))
    }

    /// Outcome (an alternative index) at a restricted profile.
    pub fn evaluate(&self, rp: &RestrictedProfile) -> Result<usize, RuleError> {
        rp.check(&self.roster, &self.omega, &self.x)?;
        self.try_evaluate(rp)
    }

    fn try_evaluate(&self, rp: &RestrictedProfile) -> Result<usize, RuleError> {
        match self
            .lcs
            .select(&self.roster, &rp.peaks)
            .ok_or(RuleError::NoSelection)?
        {
            ExtElem::Alt(a) => Ok(a),
            pair => Ok(self
                .decider(pair)
                .expect("validated rules have a decider for every pair")
                .decide(&self.roster, rp)),
        }
    }

    /// Outcome at a full profile; only its Ω-restricted peaks and dips matter.
    pub fn evaluate_full(&self, profile: &Profile) -> Result<usize, RuleError> {
        if profile.prefs().len() != self.roster.n() {
            return Err(ValidationError::ProfileLength {
                expected: self.roster.n(),
                got: profile.prefs().len(),
            }
            .into());
        }
        for (agent, pref) in profile.prefs().iter().enumerate() {
            if pref.ranking().len() != self.x.len() {
                return Err(ValidationError::NotPermutation(self.x.len()).into());
            }
            let expected = self.roster.kind_of(agent);
            if pref.kind() != expected {
                return Err(ValidationError::KindMismatch {
                    agent: agent + 1,
                    expected: expected.label(),
                    got: pref.kind().label(),
                }
                .into());
            }
        }
        self.try_evaluate(&profile.restricted(&self.roster, &self.omega))
    }

    /// Evaluation without input checks, for callers that build restricted
    /// profiles from the range themselves.
    pub(crate) fn evaluate_trusted(&self, rp: &RestrictedProfile) -> usize {
        self.try_evaluate(rp)
            .expect("validated rules select an element")
    }
}
