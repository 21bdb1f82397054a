//! Alternatives on a line and the single-peaked / single-dipped preference
//! domains over them.
//!
//! Preferences are explicit best-to-worst permutations of alternative
//! *indices*; the locations themselves only matter for ordering and I/O.

use serde::{Deserialize, Serialize};

use crate::error::ValidationError;
use crate::extorder::Range;
use crate::location::Location;

/// A finite, strictly increasing set of locations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlternativeSet<T> {
    points: Vec<T>,
}

impl<T: Location> AlternativeSet<T> {
    pub fn new(points: Vec<T>) -> Result<Self, ValidationError> {
        if points.is_empty() {
            return Err(ValidationError::EmptyAlternatives);
        }
        if let Some(i) = points.windows(2).position(|w| w[0] >= w[1]) {
            return Err(ValidationError::NotIncreasing(i + 1));
        }
        Ok(Self { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> &[T] {
        &self.points
    }

    pub fn point(&self, index: usize) -> &T {
        &self.points[index]
    }

    pub fn index_of(&self, location: &T) -> Option<usize> {
        self.points.binary_search(location).ok()
    }

    pub fn require_index(&self, location: &T) -> Result<usize, ValidationError> {
        self.index_of(location)
            .ok_or_else(|| ValidationError::UnknownLocation(location.to_string()))
    }

    /// Translates a ranking given in locations into alternative indices.
    pub fn ranking_indices(&self, ranking: &[T]) -> Result<Vec<usize>, ValidationError> {
        ranking.iter().map(|x| self.require_index(x)).collect()
    }

    /// The range containing every alternative.
    pub fn full_range(&self) -> Range {
        Range::full(self.len())
    }

    pub fn range_of(&self, locations: &[T]) -> Result<Range, ValidationError> {
        let members = locations
            .iter()
            .map(|x| self.require_index(x))
            .collect::<Result<Vec<_>, _>>()?;
        Range::new(members, self.len())
    }
}

/// Agent `i` (0-based) is either peaked or dipped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PreferenceKind {
    Peaked,
    Dipped,
}

impl PreferenceKind {
    pub fn label(self) -> &'static str {
        match self {
            PreferenceKind::Peaked => "peaked",
            PreferenceKind::Dipped => "dipped",
        }
    }

    pub fn mirror(self) -> Self {
        match self {
            PreferenceKind::Peaked => PreferenceKind::Dipped,
            PreferenceKind::Dipped => PreferenceKind::Peaked,
        }
    }
}

/// Partition of agents `0..n` into the peaked set A and the dipped set D.
///
/// Ids are 0-based in memory; JSON and display use 1-based ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AgentRoster {
    n: usize,
    peaked: Vec<usize>,
    dipped: Vec<usize>,
}

impl AgentRoster {
    pub const MAX_AGENTS: usize = 32;

    pub fn new(mut peaked: Vec<usize>, mut dipped: Vec<usize>) -> Result<Self, ValidationError> {
        let n = peaked.len() + dipped.len();
        if n > Self::MAX_AGENTS {
            return Err(ValidationError::TooManyAgents(n));
        }
        peaked.sort_unstable();
        dipped.sort_unstable();
        let mut seen = vec![false; n];
        for &i in peaked.iter().chain(&dipped) {
            if i >= n {
                return Err(ValidationError::BadRoster {
                    n,
                    detail: format!("id {} out of range", i + 1),
                });
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(ValidationError::BadRoster {
                    n,
                    detail: format!("id {} listed twice", i + 1),
                });
            }
        }
        Ok(Self { n, peaked, dipped })
    }

    /// Builds a roster from 1-based ids.
    pub fn from_ids(peaked: &[usize], dipped: &[usize]) -> Result<Self, ValidationError> {
        let shift = |ids: &[usize]| -> Result<Vec<usize>, ValidationError> {
            ids.iter()
                .map(|&id| {
                    id.checked_sub(1).ok_or(ValidationError::BadRoster {
                        n: peaked.len() + dipped.len(),
                        detail: "ids start at 1".into(),
                    })
                })
                .collect()
        };
        Self::new(shift(peaked)?, shift(dipped)?)
    }

    /// `a` peaked agents followed by `d` dipped agents.
    pub fn split(a: usize, d: usize) -> Self {
        Self::new((0..a).collect(), (a..a + d).collect()).expect("split roster is a partition")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn peaked(&self) -> &[usize] {
        &self.peaked
    }

    pub fn dipped(&self) -> &[usize] {
        &self.dipped
    }

    pub fn kind_of(&self, agent: usize) -> PreferenceKind {
        if self.peaked.binary_search(&agent).is_ok() {
            PreferenceKind::Peaked
        } else {
            PreferenceKind::Dipped
        }
    }

    pub fn peaked_ids(&self) -> Vec<usize> {
        self.peaked.iter().map(|i| i + 1).collect()
    }

    pub fn dipped_ids(&self) -> Vec<usize> {
        self.dipped.iter().map(|i| i + 1).collect()
    }
}

fn is_invertible(ranking: &[usize], m: usize) -> bool {
    if ranking.len() != m {
        return false;
    }
    let mut seen = vec![false; m];
    ranking
        .iter()
        .all(|&x| x < m && !std::mem::replace(&mut seen[x], true))
}

/// Every prefix of the ranking must be an interval grown one step at a time
/// around the first element.
fn grows_as_interval<'a>(mut order: impl Iterator<Item = &'a usize>) -> bool {
    let Some(&first) = order.next() else {
        return true;
    };
    let (mut lo, mut hi) = (first, first);
    for &x in order {
        if lo > 0 && x == lo - 1 {
            lo = x;
        } else if x == hi + 1 {
            hi = x;
        } else {
            return false;
        }
    }
    true
}

/// Whether `ranking` (best to worst, over indices `0..m`) is single-peaked.
pub fn is_single_peaked(ranking: &[usize], m: usize) -> Result<bool, ValidationError> {
    if !is_invertible(ranking, m) {
        return Err(ValidationError::NotPermutation(m));
    }
    Ok(grows_as_interval(ranking.iter()))
}

/// Whether `ranking` is single-dipped: read worst-first it grows from the dip.
pub fn is_single_dipped(ranking: &[usize], m: usize) -> Result<bool, ValidationError> {
    if !is_invertible(ranking, m) {
        return Err(ValidationError::NotPermutation(m));
    }
    Ok(grows_as_interval(ranking.iter().rev()))
}

/// A strict single-peaked or single-dipped order over alternative indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Preference {
    kind: PreferenceKind,
    ranking: Vec<usize>,
    rank: Vec<usize>,
}

impl Preference {
    pub fn new(
        kind: PreferenceKind,
        ranking: Vec<usize>,
        m: usize,
    ) -> Result<Self, ValidationError> {
        let shaped = match kind {
            PreferenceKind::Peaked => is_single_peaked(&ranking, m)?,
            PreferenceKind::Dipped => is_single_dipped(&ranking, m)?,
        };
        if !shaped {
            return Err(ValidationError::WrongShape(match kind {
                PreferenceKind::Peaked => "peaked",
                PreferenceKind::Dipped => "dipped",
            }));
        }
        Ok(Self::from_valid(kind, ranking))
    }

    pub fn from_locations<T: Location>(
        kind: PreferenceKind,
        ranking: &[T],
        x: &AlternativeSet<T>,
    ) -> Result<Self, ValidationError> {
        Self::new(kind, x.ranking_indices(ranking)?, x.len())
    }

    fn from_valid(kind: PreferenceKind, ranking: Vec<usize>) -> Self {
        let mut rank = vec![0; ranking.len()];
        for (pos, &x) in ranking.iter().enumerate() {
            rank[x] = pos;
        }
        Self {
            kind,
            ranking,
            rank,
        }
    }

    pub fn kind(&self) -> PreferenceKind {
        self.kind
    }

    pub fn ranking(&self) -> &[usize] {
        &self.ranking
    }

    /// Position of `x` in the ranking; 0 is best.
    pub fn rank_of(&self, x: usize) -> usize {
        self.rank[x]
    }

    /// Strict preference of `x` over `y`.
    pub fn prefers(&self, x: usize, y: usize) -> Result<bool, ValidationError> {
        let m = self.rank.len();
        for z in [x, y] {
            if z >= m {
                return Err(ValidationError::UnknownAlternative(z));
            }
        }
        if x == y {
            return Err(ValidationError::SameAlternative);
        }
        Ok(self.rank[x] < self.rank[y])
    }

    /// Unchecked variant for hot loops; `x == y` yields `false`.
    #[inline]
    pub fn strictly_prefers(&self, x: usize, y: usize) -> bool {
        self.rank[x] < self.rank[y]
    }

    /// The best alternative. Meaningful as a peak only for peaked preferences.
    pub fn top(&self) -> usize {
        self.ranking[0]
    }

    /// The worst alternative (the dip of a dipped preference).
    pub fn bottom(&self) -> usize {
        *self.ranking.last().expect("rankings are nonempty")
    }

    /// Best member of `omega` under this ranking.
    pub fn best_in(&self, omega: &Range) -> usize {
        *self
            .ranking
            .iter()
            .find(|&&x| omega.contains(x))
            .expect("ranges are nonempty")
    }

    /// Worst member of `omega` under this ranking.
    pub fn worst_in(&self, omega: &Range) -> usize {
        *self
            .ranking
            .iter()
            .rev()
            .find(|&&x| omega.contains(x))
            .expect("ranges are nonempty")
    }

    /// Reversing a single-peaked order gives a single-dipped one and back.
    pub fn reversed(&self) -> Self {
        let mut ranking = self.ranking.clone();
        ranking.reverse();
        Self::from_valid(self.kind.mirror(), ranking)
    }
}

/// Ω-restricted peak: the best alternative of `omega`.
pub fn restricted_peak(pref: &Preference, omega: &Range) -> Result<usize, ValidationError> {
    if pref.kind() != PreferenceKind::Peaked {
        return Err(ValidationError::WrongShape("peaked"));
    }
    check_range_fits(pref, omega)?;
    Ok(pref.best_in(omega))
}

/// Ω-restricted dip: the worst alternative of `omega`.
pub fn restricted_dip(pref: &Preference, omega: &Range) -> Result<usize, ValidationError> {
    if pref.kind() != PreferenceKind::Dipped {
        return Err(ValidationError::WrongShape("dipped"));
    }
    check_range_fits(pref, omega)?;
    Ok(pref.worst_in(omega))
}

fn check_range_fits(pref: &Preference, omega: &Range) -> Result<(), ValidationError> {
    match omega.members().last() {
        Some(&hi) if hi < pref.ranking().len() => Ok(()),
        Some(&hi) => Err(ValidationError::UnknownAlternative(hi)),
        None => Err(ValidationError::EmptyRange),
    }
}

/// All preferences of `kind` over `m` alternatives, lexicographic by ranking.
pub fn enumerate_domain(kind: PreferenceKind, m: usize) -> Vec<Preference> {
    fn grow(lo: usize, hi: usize, m: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == m {
            out.push(prefix.clone());
            return;
        }
        if lo > 0 {
            prefix.push(lo - 1);
            grow(lo - 1, hi, m, prefix, out);
            prefix.pop();
        }
        if hi + 1 < m {
            prefix.push(hi + 1);
            grow(lo, hi + 1, m, prefix, out);
            prefix.pop();
        }
    }

    let mut rankings = Vec::with_capacity(1 << m.saturating_sub(1));
    for peak in 0..m {
        let mut prefix = vec![peak];
        grow(peak, peak, m, &mut prefix, &mut rankings);
    }
    if kind == PreferenceKind::Dipped {
        for r in &mut rankings {
            r.reverse();
        }
    }
    rankings.sort();
    rankings
        .into_iter()
        .map(|r| Preference::from_valid(kind, r))
        .collect()
}

/// One preference per agent, kinds agreeing with the roster.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Profile {
    prefs: Vec<Preference>,
}

impl Profile {
    pub fn new(roster: &AgentRoster, prefs: Vec<Preference>) -> Result<Self, ValidationError> {
        if prefs.len() != roster.n() {
            return Err(ValidationError::ProfileLength {
                expected: roster.n(),
                got: prefs.len(),
            });
        }
        for (agent, pref) in prefs.iter().enumerate() {
            let expected = roster.kind_of(agent);
            if pref.kind() != expected {
                return Err(ValidationError::KindMismatch {
                    agent: agent + 1,
                    expected: expected.label(),
                    got: pref.kind().label(),
                });
            }
        }
        if let Some(first) = prefs.first() {
            let m = first.ranking().len();
            if prefs.iter().any(|p| p.ranking().len() != m) {
                return Err(ValidationError::NotPermutation(m));
            }
        }
        Ok(Self { prefs })
    }

    pub fn prefs(&self) -> &[Preference] {
        &self.prefs
    }

    pub fn pref(&self, agent: usize) -> &Preference {
        &self.prefs[agent]
    }

    /// Ω-restricted peaks of A and dips of D, in roster order.
    pub fn restricted(&self, roster: &AgentRoster, omega: &Range) -> RestrictedProfile {
        RestrictedProfile {
            peaks: roster
                .peaked()
                .iter()
                .map(|&i| self.prefs[i].best_in(omega))
                .collect(),
            dips: roster
                .dipped()
                .iter()
                .map(|&j| self.prefs[j].worst_in(omega))
                .collect(),
        }
    }
}

/// Ω-restricted peaks (one per peaked agent) and dips (one per dipped agent),
/// as alternative indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RestrictedProfile {
    pub peaks: Vec<usize>,
    pub dips: Vec<usize>,
}

impl RestrictedProfile {
    pub fn new(peaks: Vec<usize>, dips: Vec<usize>) -> Self {
        Self { peaks, dips }
    }

    pub fn from_locations<T: Location>(
        x: &AlternativeSet<T>,
        peaks: &[T],
        dips: &[T],
    ) -> Result<Self, ValidationError> {
        Ok(Self {
            peaks: x.ranking_indices(peaks)?,
            dips: x.ranking_indices(dips)?,
        })
    }

    /// Checks lengths against the roster and membership in `omega`.
    pub fn check<T: Location>(
        &self,
        roster: &AgentRoster,
        omega: &Range,
        x: &AlternativeSet<T>,
    ) -> Result<(), ValidationError> {
        if self.peaks.len() != roster.peaked().len() {
            return Err(ValidationError::VectorLength {
                what: "peaks",
                expected: roster.peaked().len(),
                got: self.peaks.len(),
            });
        }
        if self.dips.len() != roster.dipped().len() {
            return Err(ValidationError::VectorLength {
                what: "dips",
                expected: roster.dipped().len(),
                got: self.dips.len(),
            });
        }
        for &v in self.peaks.iter().chain(&self.dips) {
            if v >= x.len() {
                return Err(ValidationError::UnknownAlternative(v));
            }
            if !omega.contains(v) {
                return Err(ValidationError::OutsideRange(x.point(v).to_string()));
            }
        }
        Ok(())
    }
}
