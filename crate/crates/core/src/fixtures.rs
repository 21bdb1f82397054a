//! A worked six-agent rule on four alternatives, used throughout the tests,
//! the CLI `--seed-example1` flag and the README.

use crate::extorder::ExtElem;
use crate::prefdomain::{AgentRoster, AlternativeSet};
use crate::rulekernel::{
    Coalition, LeftCoalitionSystem, LeftDecisiveFamily, MonotoneFamily, RuleSpec,
};

/// X = Ω = {1,2,3,4}; agents 1-3 single-peaked, 4-6 single-dipped.
///
/// r_ω = {1, 2, (2,3), 3, 4}. Any two peaked agents win at 1 and 2, any one
/// at (2,3), 3 and 4. Between 2 and 3 the left-decisive sets are the
/// three-agent coalitions with exactly one peaked member.
pub fn example1() -> RuleSpec<i64> {
    let x = AlternativeSet::new(vec![1, 2, 3, 4]).expect("increasing");
    let roster = AgentRoster::split(3, 3);
    let omega = x.full_range();
    let peaked = Coalition::of([0, 1, 2]);
    let everyone = Coalition::all(6);
    let at_least = |k: u32| MonotoneFamily::generated_by(peaked.subsets().filter(|c| c.len() == k));
    let lcs = LeftCoalitionSystem::new(
        omega.ext_order(),
        vec![
            (ExtElem::Alt(0), at_least(2)),
            (ExtElem::Alt(1), at_least(2)),
            (ExtElem::Pair(1, 2), at_least(1)),
            (ExtElem::Alt(2), at_least(1)),
            (ExtElem::Alt(3), at_least(1)),
        ],
    )
    .expect("elements of the order");
    let w = everyone
        .subsets()
        .filter(|c| c.len() == 3 && c.intersection(peaked).len() == 1);
    let decider = LeftDecisiveFamily::new(ExtElem::Pair(1, 2), MonotoneFamily::generated_by(w));
    RuleSpec::new(x, roster, omega, lcs, vec![decider], None).expect("the worked rule is valid")
}

/// The same rule as a rule file.
pub const EXAMPLE1_JSON: &str = r#"{
  "X": [1, 2, 3, 4],
  "omega": [1, 2, 3, 4],
  "peaked": [1, 2, 3],
  "dipped": [4, 5, 6],
  "r_omega": [1, 2, [2, 3], 3, 4],
  "L": {
    "1": [[1, 2], [1, 3], [2, 3]],
    "2": [[1, 2], [1, 3], [2, 3]],
    "2-3": [[1], [2], [3]],
    "3": [[1], [2], [3]],
    "4": [[1], [2], [3]]
  },
  "W": {
    "2-3": [[1, 4, 5], [1, 4, 6], [1, 5, 6], [2, 4, 5], [2, 4, 6], [2, 5, 6], [3, 4, 5], [3, 4, 6], [3, 5, 6]]
  }
}"#;
