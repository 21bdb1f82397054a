//! Brute-force oracles over outcome tables, and the exhaustive routines that
//! relate strategy-proof tables to rule descriptions on small instances.
//!
//! Rules enter as a [`RuleTable`] (outcomes over restricted profiles) or a
//! [`FullTable`] (outcomes over every full profile of a [`ProfileSpace`]).
//! The manipulation and efficiency oracles work on full tables.

mod decompose;
mod enumerate;
mod exhaustive;
mod oracles;
mod properties;
mod space;
mod table;

pub use decompose::{decompose, decompose_table, DecomposeError};
pub use enumerate::{enumerate_rulespecs, Enumeration, Limits};
pub use exhaustive::{exhaustive_theorem_check, strategy_proof_tables, GroupScope, TheoremReport};
pub use oracles::{
    is_group_strategy_proof, is_pareto_efficient, is_strategy_proof, ManipulationWitness,
    ParetoWitness,
};
pub use properties::{
    check_range_structure, first_steps, outcomes_by_peak_vector, StructureViolation,
};
pub use space::ProfileSpace;
pub use table::{range_of, range_of_outcomes, FullTable, RestrictionConflict, RuleTable};
