//! Exhaustive manipulation and dominance checks over full profiles.
//!
//! Every search scans in a fixed lexicographic order and reports the first
//! hit in that order, so witnesses are reproducible regardless of how rayon
//! schedules the work.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::json::{preference_to_json, profile_to_json};
use crate::location::Location;
use crate::prefdomain::{AlternativeSet, Preference, Profile};
use crate::rulekernel::Coalition;

use super::space::ProfileSpace;
use super::table::FullTable;

/// Profile `profile` (truthful), coalition `deviators`, and the profile they
/// move to. Every deviator strictly prefers `after` to `before`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManipulationWitness {
    pub profile: Profile,
    pub deviators: Coalition,
    /// Reported preferences of the deviators, in increasing agent order.
    pub deviation: Vec<Preference>,
    pub before: usize,
    pub after: usize,
}

impl ManipulationWitness {
    fn new(
        space: &ProfileSpace,
        truth: usize,
        deviators: Coalition,
        lie: usize,
        before: usize,
        after: usize,
    ) -> Self {
        Self {
            profile: space.profile(truth),
            deviators,
            deviation: deviators
                .members()
                .map(|i| space.pref(lie, i).clone())
                .collect(),
            before,
            after,
        }
    }

    pub fn to_json<T: Location>(&self, x: &AlternativeSet<T>) -> Value {
        json!({
            "profile": profile_to_json(&self.profile, x),
            "deviators": self.deviators.ids(),
            "deviation": self.deviation.iter().map(|p| preference_to_json(p, x)).collect::<Vec<_>>(),
            "before": x.point(self.before).to_json(),
            "after": x.point(self.after).to_json(),
        })
    }
}

/// A profile at which every agent strictly prefers `dominating` to the
/// chosen `outcome`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParetoWitness {
    pub profile: Profile,
    pub outcome: usize,
    pub dominating: usize,
}

impl ParetoWitness {
    pub fn to_json<T: Location>(&self, x: &AlternativeSet<T>) -> Value {
        json!({
            "profile": profile_to_json(&self.profile, x),
            "outcome": x.point(self.outcome).to_json(),
            "dominating": x.point(self.dominating).to_json(),
        })
    }
}

/// Checks every profile, agent and same-kind misreport.
pub fn is_strategy_proof(table: &FullTable) -> Result<(), ManipulationWitness> {
    let space = table.space();
    let out = table.outcomes();
    let n = space.roster().n();
    let radix = space.radix();
    let hit = (0..space.len()).into_par_iter().find_map_first(|idx| {
        let before = out[idx];
        for i in 0..n {
            let truth = space.digit(idx, i);
            let pref = space.pref(idx, i);
            for d in (0..radix).filter(|&d| d != truth) {
                let lie = space.with_digit(idx, i, d);
                if pref.strictly_prefers(out[lie], before) {
                    return Some((idx, i, lie));
                }
            }
        }
        None
    });
    match hit {
        None => Ok(()),
        Some((idx, i, lie)) => Err(ManipulationWitness::new(
            space,
            idx,
            Coalition::of([i]),
            lie,
            out[idx],
            out[lie],
        )),
    }
}

/// Checks every coalition and joint same-kind misreport. Singletons come
/// first, so a table that is not strategy-proof yields the same witness as
/// [`is_strategy_proof`].
pub fn is_group_strategy_proof(table: &FullTable) -> Result<(), ManipulationWitness> {
    is_strategy_proof(table)?;
    let space = table.space();
    let n = space.roster().n();
    let mut coalitions: Vec<Coalition> = Coalition::all(n)
        .subsets()
        .filter(|c| c.len() >= 2)
        .collect();
    coalitions.sort_by_key(|c| (c.len(), c.bits()));
    for s in coalitions {
        if let Some(w) = coalition_witness(table, s) {
            return Err(w);
        }
    }
    Ok(())
}

fn coalition_witness(table: &FullTable, s: Coalition) -> Option<ManipulationWitness> {
    let space = table.space();
    let out = table.outcomes();
    let m = space.alternatives();
    let members: Vec<usize> = s.members().collect();
    let radix = space.radix();
    // Offsets of every joint report of `s`, first member most significant.
    let combos = radix.pow(members.len() as u32);
    let offsets: Vec<usize> = (0..combos)
        .map(|c| {
            let mut rest = c;
            let mut off = 0;
            for &i in members.iter().rev() {
                off += rest % radix * space.stride(i);
                rest /= radix;
            }
            off
        })
        .collect();
    let is_base = |idx: usize| members.iter().all(|&i| space.digit(idx, i) == 0);

    let hit = (0..space.len())
        .into_par_iter()
        .filter(|&idx| is_base(idx))
        .find_map_first(|base| {
            let mut reach: Vec<Option<usize>> = vec![None; m];
            for &off in &offsets {
                let o = out[base + off];
                if reach[o].is_none() {
                    reach[o] = Some(base + off);
                }
            }
            for &off in &offsets {
                let truth = base + off;
                let before = out[truth];
                for (after, lie) in reach
                    .iter()
                    .enumerate()
                    .filter_map(|(x, l)| l.map(|l| (x, l)))
                {
                    if after != before
                        && members
                            .iter()
                            .all(|&i| space.pref(truth, i).strictly_prefers(after, before))
                    {
                        return Some((truth, lie));
                    }
                }
            }
            None
        });
    hit.map(|(truth, lie)| ManipulationWitness::new(space, truth, s, lie, out[truth], out[lie]))
}

/// Looks for a profile where some alternative beats the outcome for everyone.
pub fn is_pareto_efficient(table: &FullTable) -> Result<(), ParetoWitness> {
    let space = table.space();
    let out = table.outcomes();
    let n = space.roster().n();
    let m = space.alternatives();
    let hit = (0..space.len()).into_par_iter().find_map_first(|idx| {
        let o = out[idx];
        (0..m)
            .find(|&x| x != o && (0..n).all(|i| space.pref(idx, i).strictly_prefers(x, o)))
            .map(|x| (idx, x))
    });
    match hit {
        None => Ok(()),
        Some((idx, x)) => Err(ParetoWitness {
            profile: space.profile(idx),
            outcome: out[idx],
            dominating: x,
        }),
    }
}
