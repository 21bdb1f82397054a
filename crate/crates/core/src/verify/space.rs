use crate::error::ValidationError;
use crate::extorder::Range;
use crate::prefdomain::{enumerate_domain, AgentRoster, Preference, PreferenceKind, Profile};

/// Every full profile of a roster over `m` alternatives, indexed in mixed
/// radix with agent 1 as the most significant digit. A digit is a position in
/// the agent's (lexicographically sorted) preference domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileSpace {
    roster: AgentRoster,
    m: usize,
    peaked: Vec<Preference>,
    dipped: Vec<Preference>,
    strides: Vec<usize>,
    len: usize,
}

impl ProfileSpace {
    pub fn new(roster: AgentRoster, m: usize) -> Self {
        let peaked = enumerate_domain(PreferenceKind::Peaked, m);
        let dipped = enumerate_domain(PreferenceKind::Dipped, m);
        let radix = peaked.len();
        let n = roster.n();
        let mut strides = vec![1; n];
        for i in (0..n.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * radix;
        }
        let len = radix.pow(n as u32);
        Self {
            roster,
            m,
            peaked,
            dipped,
            strides,
            len,
        }
    }

    pub fn roster(&self) -> &AgentRoster {
        &self.roster
    }

    pub fn alternatives(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Size of every agent's domain (both kinds have 2^(m-1) members).
    pub fn radix(&self) -> usize {
        self.peaked.len()
    }

    pub fn stride(&self, agent: usize) -> usize {
        self.strides[agent]
    }

    pub fn domain(&self, kind: PreferenceKind) -> &[Preference] {
        match kind {
            PreferenceKind::Peaked => &self.peaked,
            PreferenceKind::Dipped => &self.dipped,
        }
    }

    #[inline]
    pub fn digit(&self, index: usize, agent: usize) -> usize {
        index / self.strides[agent] % self.radix()
    }

    #[inline]
    pub fn with_digit(&self, index: usize, agent: usize, digit: usize) -> usize {
        index - self.digit(index, agent) * self.strides[agent] + digit * self.strides[agent]
    }

    #[inline]
    pub fn pref(&self, index: usize, agent: usize) -> &Preference {
        &self.domain(self.roster.kind_of(agent))[self.digit(index, agent)]
    }

    pub fn profile(&self, index: usize) -> Profile {
        let prefs = (0..self.roster.n())
            .map(|i| self.pref(index, i).clone())
            .collect();
        Profile::new(&self.roster, prefs).expect("domain members match the roster")
    }

    pub fn index_of(&self, profile: &Profile) -> Result<usize, ValidationError> {
        if profile.prefs().len() != self.roster.n() {
            return Err(ValidationError::ProfileLength {
                expected: self.roster.n(),
                got: profile.prefs().len(),
            });
        }
        let mut index = 0;
        for (i, pref) in profile.prefs().iter().enumerate() {
            let domain = self.domain(self.roster.kind_of(i));
            let digit = domain
                .binary_search_by(|p| p.ranking().cmp(pref.ranking()))
                .map_err(|_| ValidationError::NotPermutation(self.m))?;
            index += digit * self.strides[i];
        }
        Ok(index)
    }

    /// For each agent and digit, the Ω-restricted peak or dip as a position
    /// in `grid`.
    pub fn restriction(&self, grid: &Range) -> Vec<Vec<usize>> {
        (0..self.roster.n())
            .map(|i| {
                let kind = self.roster.kind_of(i);
                self.domain(kind)
                    .iter()
                    .map(|p| {
                        let x = match kind {
                            PreferenceKind::Peaked => p.best_in(grid),
                            PreferenceKind::Dipped => p.worst_in(grid),
                        };
                        grid.position(x).expect("best_in returns range members")
                    })
                    .collect()
            })
            .collect()
    }
}
