//! Recovers a rule description from a strategy-proof outcome table.
//!
//! The range is read off the table. Each vector of peaks fixes the first
//! step; the winning families are generated by the left-sets of the peak
//! vectors that select each element, accumulated along the order, and the
//! left-decisive sets are the minimal supporter sets of profiles where the
//! left alternative of a pair wins. The result is recomposed and compared
//! with the input.

use thiserror::Error;

use crate::extorder::{ExtElem, Range};
use crate::location::Location;
use crate::prefdomain::AlternativeSet;
use crate::rulekernel::{
    Coalition, LeftCoalitionSystem, LeftDecisiveFamily, MonotoneFamily, RuleError, RuleSpec,
};

use super::properties::{check_range_structure, StructureViolation};
use super::table::{FullTable, RuleTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error(transparent)]
    Structure(#[from] StructureViolation),
    #[error("reconstructed rule is invalid: {0}")]
    Invalid(#[from] RuleError),
    #[error("reconstructed rule differs from the table at restricted profile #{index}: table {expected}, rule {got}")]
    Mismatch {
        index: usize,
        expected: String,
        got: String,
    },
}

/// Decomposes a table over full profiles.
pub fn decompose<T: Location>(
    table: &FullTable,
    x: &AlternativeSet<T>,
) -> Result<RuleSpec<T>, DecomposeError> {
    assert_eq!(
        table.space().alternatives(),
        x.len(),
        "table and alternative set disagree"
    );
    let steps = check_range_structure(table, x)?;
    let omega = table.range();
    let restricted = table
        .restrict(&omega)
        .expect("checked with the range structure");
    let rule = assemble(&restricted, &omega, &steps, x)?;

    let recomposed = RuleTable::of_rule(&rule);
    if let Some(index) =
        (0..restricted.len()).find(|&i| recomposed.outcomes()[i] != restricted.outcomes()[i])
    {
        return Err(DecomposeError::Mismatch {
            index,
            expected: x.point(restricted.outcomes()[index]).to_string(),
            got: x.point(recomposed.outcomes()[index]).to_string(),
        });
    }
    Ok(rule)
}

/// Decomposes a table over restricted profiles by first expanding it to
/// every full profile over the table's alternatives.
pub fn decompose_table<T: Location>(
    table: &RuleTable,
    x: &AlternativeSet<T>,
) -> Result<RuleSpec<T>, DecomposeError> {
    decompose(&table.expand_full(), x)
}

fn assemble<T: Location>(
    table: &RuleTable,
    omega: &Range,
    steps: &[(Vec<usize>, ExtElem)],
    x: &AlternativeSet<T>,
) -> Result<RuleSpec<T>, DecomposeError> {
    let roster = table.roster();
    let order = omega.ext_order();
    let k = omega.len();
    let peak_key = |idx: usize| {
        let coords = table.coordinates(idx);
        roster
            .peaked()
            .iter()
            .fold(0, |acc, &i| acc * k + coords[i])
    };

    let mut r_omega: Vec<ExtElem> = steps.iter().map(|(_, e)| *e).collect();
    r_omega.sort_by_key(|&e| order.position(e).expect("first steps lie in the order"));
    r_omega.dedup();

    // W*: supporters of the left alternative wherever it wins after a pair.
    let decider_of = |pair: ExtElem| {
        let probe = LeftDecisiveFamily::new(pair, MonotoneFamily::none());
        let supporters = (0..table.len()).filter_map(|idx| {
            let (_, step) = &steps[peak_key(idx)];
            (*step == pair && table.outcomes()[idx] == pair.lower())
                .then(|| probe.left_supporters(roster, &table.restricted_profile(idx)))
        });
        LeftDecisiveFamily::new(pair, MonotoneFamily::generated_by(supporters))
    };

    if roster.peaked().is_empty() {
        let e = r_omega[0];
        let winning = e.is_pair().then(|| decider_of(e).winning().clone());
        return Ok(RuleSpec::without_peaked(
            x.clone(),
            roster.clone(),
            omega.clone(),
            e,
            winning,
        )?);
    }

    let mut generators: Vec<Coalition> = Vec::new();
    let mut entries = Vec::with_capacity(r_omega.len());
    for &alpha in &r_omega {
        let at = order.position(alpha).expect("in order");
        for (peaks, e) in steps {
            if *e == alpha {
                let left = roster
                    .peaked()
                    .iter()
                    .zip(peaks)
                    .filter(|&(_, &p)| 2 * p <= at)
                    .map(|(&i, _)| i);
                generators.push(Coalition::of(left));
            }
        }
        entries.push((
            alpha,
            MonotoneFamily::generated_by(generators.iter().copied()),
        ));
    }
    let lcs = LeftCoalitionSystem::new(order, entries).expect("elements come from the order");
    let deciders = r_omega
        .iter()
        .filter(|e| e.is_pair())
        .map(|&e| decider_of(e))
        .collect();
    Ok(RuleSpec::new(
        x.clone(),
        roster.clone(),
        omega.clone(),
        lcs,
        deciders,
        None,
    )?)
}
