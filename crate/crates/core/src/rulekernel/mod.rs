//! Rule descriptions: left coalition systems over the peaked agents and
//! left-decisive families for the pairs they may preselect.

mod coalition;
mod decider;
mod lcs;
mod rule;
mod violation;

pub use coalition::{Coalition, MonotoneFamily};
pub use decider::LeftDecisiveFamily;
pub use lcs::{validate_lcs, LeftCoalitionSystem};
pub use rule::{RuleError, RuleSpec};
pub use violation::Violation;
