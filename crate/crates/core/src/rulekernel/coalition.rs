use std::fmt;

/// A set of agents, as a bitmask over 0-based agent ids.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coalition(u32);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    pub const fn from_bits(bits: u32) -> Self {
        Self(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub fn of(members: impl IntoIterator<Item = usize>) -> Self {
        Self(members.into_iter().fold(0, |acc, i| acc | 1 << i))
    }

    /// Every agent in `0..n`.
    pub fn all(n: usize) -> Self {
        if n >= 32 {
            Self(u32::MAX)
        } else {
            Self((1u32 << n) - 1)
        }
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub const fn contains(self, agent: usize) -> bool {
        self.0 >> agent & 1 == 1
    }

    pub const fn with(self, agent: usize) -> Self {
        Self(self.0 | 1 << agent)
    }

    pub const fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn union(self, other: Self) -> Self {
        Self(self.0 | other.0)
    }

    pub const fn intersection(self, other: Self) -> Self {
        Self(self.0 & other.0)
    }

    pub fn members(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    /// 1-based ids, as used in files and messages.
    pub fn ids(self) -> Vec<usize> {
        self.members().map(|i| i + 1).collect()
    }

    pub fn from_ids(ids: &[usize]) -> Option<Self> {
        ids.iter()
            .try_fold(0u32, |acc, &id| {
                (1..=32).contains(&id).then(|| acc | 1 << (id - 1))
            })
            .map(Self)
    }

    /// All subsets of `self`, starting with the empty set.
    pub fn subsets(self) -> impl Iterator<Item = Coalition> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(Coalition(cur))
        })
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, id) in self.ids().into_iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{id}")?;
        }
        f.write_str("}")
    }
}

/// An upward-closed family of coalitions, stored as its antichain of minimal
/// members. Membership is "contains some minimal coalition".
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonotoneFamily {
    minimal: Vec<Coalition>,
}

impl MonotoneFamily {
    /// The family with no coalitions at all.
    pub fn none() -> Self {
        Self::default()
    }

    /// Every coalition (the empty one is winning).
    pub fn everything() -> Self {
        Self {
            minimal: vec![Coalition::EMPTY],
        }
    }

    /// Upward closure of `generators`.
    pub fn generated_by(generators: impl IntoIterator<Item = Coalition>) -> Self {
        let mut sets: Vec<Coalition> = generators.into_iter().collect();
        sets.sort_by_key(|c| (c.len(), c.bits()));
        sets.dedup();
        let mut minimal: Vec<Coalition> = Vec::with_capacity(sets.len());
        for c in sets {
            if !minimal.iter().any(|m| m.is_subset_of(c)) {
                minimal.push(c);
            }
        }
        minimal.sort();
        Self { minimal }
    }

    /// Accepts `sets` only if no member contains another.
    pub fn from_antichain(sets: Vec<Coalition>) -> Result<Self, (Coalition, Coalition)> {
        for (i, &a) in sets.iter().enumerate() {
            for (j, &b) in sets.iter().enumerate() {
                if i != j && a.is_subset_of(b) {
                    return Err((b, a));
                }
            }
        }
        let mut minimal = sets;
        minimal.sort();
        Ok(Self { minimal })
    }

    pub fn minimal_sets(&self) -> &[Coalition] {
        &self.minimal
    }

    pub fn is_empty(&self) -> bool {
        self.minimal.is_empty()
    }

    pub fn contains(&self, c: Coalition) -> bool {
        self.minimal.iter().any(|m| m.is_subset_of(c))
    }

    pub fn contains_empty(&self) -> bool {
        self.minimal.first() == Some(&Coalition::EMPTY)
    }

    /// Every coalition of `self` also belongs to `other`.
    pub fn is_subfamily_of(&self, other: &Self) -> bool {
        self.minimal.iter().all(|&c| other.contains(c))
    }

    /// First minimal coalition of `self` missing from `other`.
    pub fn first_missing_from(&self, other: &Self) -> Option<Coalition> {
        self.minimal.iter().copied().find(|&c| !other.contains(c))
    }

    /// Union of all minimal coalitions.
    pub fn support(&self) -> Coalition {
        self.minimal
            .iter()
            .fold(Coalition::EMPTY, |acc, &c| acc.union(c))
    }

    /// Minimal coalitions (within subsets of `universe`) that belong to
    /// `self` but not to `lower`.
    pub fn minimal_beyond(&self, lower: &Self, universe: Coalition) -> Vec<Coalition> {
        let fresh: Vec<Coalition> = universe
            .subsets()
            .filter(|&c| self.contains(c) && !lower.contains(c))
            .collect();
        let mut out: Vec<Coalition> = fresh
            .iter()
            .copied()
            .filter(|&c| !fresh.iter().any(|&d| d != c && d.is_subset_of(c)))
            .collect();
        out.sort();
        out
    }
}
