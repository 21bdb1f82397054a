//! The extended outcome set Ω ∪ Ω²_C: the range plus every pair of
//! neighbouring range points, interleaved as `x < (x,y) < y`.

use crate::error::ValidationError;
use crate::location::Location;
use crate::prefdomain::AlternativeSet;

/// A nonempty, strictly increasing set of alternative indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Range {
    members: Vec<usize>,
}

impl Range {
    /// `members` are alternative indices below `m`; they are sorted and
    /// deduplicated here.
    pub fn new(mut members: Vec<usize>, m: usize) -> Result<Self, ValidationError> {
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return Err(ValidationError::EmptyRange);
        }
        if let Some(&bad) = members.iter().find(|&&x| x >= m) {
            return Err(ValidationError::UnknownAlternative(bad));
        }
        Ok(Self { members })
    }

    pub fn full(m: usize) -> Self {
        assert!(m > 0, "ranges are nonempty");
        Self {
            members: (0..m).collect(),
        }
    }

    pub fn singleton(x: usize) -> Self {
        Self { members: vec![x] }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn position(&self, x: usize) -> Option<usize> {
        self.members.binary_search(&x).ok()
    }

    pub fn min(&self) -> usize {
        self.members[0]
    }

    pub fn max(&self) -> usize {
        self.members[self.members.len() - 1]
    }

    /// The range minus its two endpoints.
    pub fn interior(&self) -> Vec<usize> {
        if self.members.len() <= 2 {
            return Vec::new();
        }
        self.members[1..self.members.len() - 1].to_vec()
    }

    /// Neighbouring pairs of the range, left to right.
    pub fn contiguous_pairs(&self) -> Vec<ExtElem> {
        self.members
            .windows(2)
            .map(|w| ExtElem::Pair(w[0], w[1]))
            .collect()
    }

    pub fn ext_order(&self) -> ExtOrder {
        ExtOrder::new(self.clone())
    }

    pub fn locations<T: Location>(&self, x: &AlternativeSet<T>) -> Vec<T> {
        self.members.iter().map(|&i| x.point(i).clone()).collect()
    }
}

/// An outcome of the first step: one alternative, or two neighbouring range
/// alternatives left open for the second step. Indices refer to the
/// alternative set, so equal elements compare equal across orders built on
/// the same range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtElem {
    Alt(usize),
    Pair(usize, usize),
}

impl ExtElem {
    pub fn is_pair(self) -> bool {
        matches!(self, ExtElem::Pair(..))
    }

    /// Smallest alternative of the element.
    pub fn lower(self) -> usize {
        match self {
            ExtElem::Alt(x) | ExtElem::Pair(x, _) => x,
        }
    }

    pub fn upper(self) -> usize {
        match self {
            ExtElem::Alt(x) | ExtElem::Pair(_, x) => x,
        }
    }

    /// `2` or `(2,3)`.
    pub fn label<T: Location>(self, x: &AlternativeSet<T>) -> String {
        match self {
            ExtElem::Alt(a) => x.point(a).to_string(),
            ExtElem::Pair(a, b) => format!("({},{})", x.point(a), x.point(b)),
        }
    }

    /// Map key used in rule files: `2` or `2-3`.
    pub fn key<T: Location>(self, x: &AlternativeSet<T>) -> String {
        match self {
            ExtElem::Alt(a) => x.point(a).to_string(),
            ExtElem::Pair(a, b) => format!("{}-{}", x.point(a), x.point(b)),
        }
    }

    /// Inverse of [`ExtElem::key`]. Negative locations are handled by trying
    /// every `-` as the separator.
    pub fn parse_key<T: Location>(
        key: &str,
        x: &AlternativeSet<T>,
    ) -> Result<Self, ValidationError> {
        let key = key.trim();
        if let Some(v) = T::parse_location(key) {
            return Ok(ExtElem::Alt(x.require_index(&v)?));
        }
        for (i, _) in key.match_indices('-').filter(|&(i, _)| i > 0) {
            if let (Some(a), Some(b)) = (
                T::parse_location(&key[..i]),
                T::parse_location(&key[i + 1..]),
            ) {
                return Ok(ExtElem::Pair(x.require_index(&a)?, x.require_index(&b)?));
            }
        }
        Err(ValidationError::Format(format!(
            "cannot read `{key}` as an outcome key"
        )))
    }
}

/// Ω ∪ Ω²_C sorted by the interleaved order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtOrder {
    range: Range,
    elements: Vec<ExtElem>,
}

impl ExtOrder {
    pub fn new(range: Range) -> Self {
        let mut elements = Vec::with_capacity(2 * range.len() - 1);
        for (k, &x) in range.members().iter().enumerate() {
            if k > 0 {
                elements.push(ExtElem::Pair(range.members()[k - 1], x));
            }
            elements.push(ExtElem::Alt(x));
        }
        Self { range, elements }
    }

    pub fn range(&self) -> &Range {
        &self.range
    }

    pub fn elements(&self) -> &[ExtElem] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index of `e` in the sorted sequence: `Alt` of the k-th range point sits
    /// at 2k and the pair after it at 2k+1.
    pub fn position(&self, e: ExtElem) -> Result<usize, ValidationError> {
        let foreign = || ValidationError::ForeignElement(format!("{e:?}"));
        match e {
            ExtElem::Alt(x) => self.range.position(x).map(|k| 2 * k).ok_or_else(foreign),
            ExtElem::Pair(x, y) => {
                let k = self.range.position(x).ok_or_else(foreign)?;
                match self.range.members().get(k + 1) {
                    Some(&next) if next == y => Ok(2 * k + 1),
                    _ => Err(foreign()),
                }
            }
        }
    }

    /// Position of a range alternative; panics if `x` is not in the range.
    #[inline]
    pub fn alt_position(&self, x: usize) -> usize {
        2 * self
            .range
            .position(x)
            .expect("alternative outside the range")
    }

    pub fn leq_star(&self, a: ExtElem, b: ExtElem) -> Result<bool, ValidationError> {
        Ok(self.position(a)? <= self.position(b)?)
    }

    pub fn lt_star(&self, a: ExtElem, b: ExtElem) -> Result<bool, ValidationError> {
        Ok(self.position(a)? < self.position(b)?)
    }

    /// Checks that `e` is an element of this order, pairs included.
    pub fn check(&self, e: ExtElem) -> Result<(), ValidationError> {
        self.position(e).map(|_| ())
    }
}
