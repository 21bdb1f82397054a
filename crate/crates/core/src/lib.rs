//! Strategy-proof facility location on a line when some agents have
//! single-peaked and others single-dipped preferences.
//!
//! Rules are described by a [`RuleSpec`]: a generalized median voter
//! function over the range and the pairs of neighbouring range points,
//! followed by a binary vote whenever a pair is preselected. The [`verify`]
//! module holds brute-force oracles for strategy-proofness, group
//! strategy-proofness and efficiency, and the exhaustive tools that
//! decompose and enumerate rules on small instances.
//!
//! Locations are exact: anything implementing [`Location`] (the primitive
//! integers, `Ratio<i64>`). [`IntRuleSpec`] and [`RationalRuleSpec`] name the
//! two common instantiations.

pub mod error;
pub mod extorder;
pub mod fixtures;
pub mod json;
pub mod location;
pub mod prefdomain;
pub mod rulekernel;
pub mod verify;

pub use error::{SizeGuard, ValidationError};
pub use extorder::{ExtElem, ExtOrder, Range};
pub use location::Location;
pub use prefdomain::{
    enumerate_domain, is_single_dipped, is_single_peaked, restricted_dip, restricted_peak,
    AgentRoster, AlternativeSet, Preference, PreferenceKind, Profile, RestrictedProfile,
};
pub use rulekernel::{
    validate_lcs, Coalition, LeftCoalitionSystem, LeftDecisiveFamily, MonotoneFamily, RuleError,
    RuleSpec, Violation,
};

pub type Rational = num_rational::Ratio<i64>;

pub type IntAlternativeSet = AlternativeSet<i64>;
pub type IntRuleSpec = RuleSpec<i64>;
pub type RationalAlternativeSet = AlternativeSet<Rational>;
pub type RationalRuleSpec = RuleSpec<Rational>;
