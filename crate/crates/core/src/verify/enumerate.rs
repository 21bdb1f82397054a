//! Every rule of the characterized family on a tiny instance.

use std::collections::HashSet;

use crate::error::SizeGuard;
use crate::extorder::{ExtElem, Range};
use crate::location::Location;
use crate::prefdomain::{AgentRoster, AlternativeSet};
use crate::rulekernel::{
    validate_lcs, Coalition, LeftCoalitionSystem, LeftDecisiveFamily, MonotoneFamily, RuleSpec,
};

use super::table::RuleTable;

/// Size guards for the exhaustive routines. The defaults keep every search
/// within seconds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest alternative set (exhaustive check) or range (enumeration).
    pub max_alternatives: usize,
    pub max_agents: usize,
    /// Largest number of full profiles an exhaustive check may tabulate.
    pub max_profiles: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_alternatives: 3,
            max_agents: 4,
            max_profiles: 64,
        }
    }
}

impl Limits {
    pub(crate) fn check(
        &self,
        what: &'static str,
        actual: usize,
        limit: usize,
    ) -> Result<(), SizeGuard> {
        if actual > limit {
            Err(SizeGuard {
                what,
                actual,
                limit,
            })
        } else {
            Ok(())
        }
    }
}

/// Rules found by [`enumerate_rulespecs`].
#[derive(Debug, Clone)]
pub struct Enumeration<T> {
    /// Valid descriptions attaining the whole range, before merging those
    /// with identical outcome tables.
    pub raw_count: usize,
    /// One description per distinct outcome table, in discovery order.
    pub rules: Vec<RuleSpec<T>>,
}

/// All upward-closed families of subsets of `universe`, the empty family
/// included.
fn upsets(universe: Coalition) -> Vec<MonotoneFamily> {
    let subsets: Vec<Coalition> = universe.subsets().collect();
    let slot = |c: Coalition| subsets.iter().position(|&s| s == c).expect("subset");
    let agents: Vec<usize> = universe.members().collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << subsets.len() {
        let member = |c: Coalition| mask >> slot(c) & 1 == 1;
        let closed = subsets
            .iter()
            .filter(|&&c| member(c))
            .all(|&c| agents.iter().all(|&i| member(c.with(i))));
        if closed {
            out.push(MonotoneFamily::generated_by(
                subsets.iter().copied().filter(|&c| member(c)),
            ));
        }
    }
    out
}

/// Antichains of `candidates` containing, for each block, a member whose
/// peaked part is that block.
fn decider_families(
    candidates: &[Coalition],
    blocks: &[Coalition],
    peaked: Coalition,
) -> Vec<MonotoneFamily> {
    fn extend(
        start: usize,
        chosen: &mut Vec<Coalition>,
        candidates: &[Coalition],
        blocks: &[Coalition],
        peaked: Coalition,
        out: &mut Vec<MonotoneFamily>,
    ) {
        let covered = blocks
            .iter()
            .all(|&b| chosen.iter().any(|c| c.intersection(peaked) == b));
        if covered && !chosen.is_empty() {
            out.push(
                MonotoneFamily::from_antichain(chosen.clone()).expect("antichain by construction"),
            );
        }
        for k in start..candidates.len() {
            let c = candidates[k];
            if chosen
                .iter()
                .all(|&d| !d.is_subset_of(c) && !c.is_subset_of(d))
            {
                chosen.push(c);
                extend(k + 1, chosen, candidates, blocks, peaked, out);
                chosen.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(0, &mut Vec::new(), candidates, blocks, peaked, &mut out);
    out
}

/// Enumerates every valid rule description with range exactly `omega`,
/// keeping one description per distinct outcome table.
pub fn enumerate_rulespecs<T: Location>(
    x: &AlternativeSet<T>,
    omega: &Range,
    roster: &AgentRoster,
    limits: &Limits,
) -> Result<Enumeration<T>, SizeGuard> {
    limits.check("range size", omega.len(), limits.max_alternatives)?;
    limits.check("agent count", roster.n(), limits.max_agents)?;

    let order = omega.ext_order();
    let peaked = Coalition::of(roster.peaked().iter().copied());
    let everyone = Coalition::all(roster.n());

    let mut systems: Vec<LeftCoalitionSystem> = Vec::new();
    if roster.peaked().is_empty() {
        for &e in order.elements() {
            let lcs =
                LeftCoalitionSystem::new(order.clone(), vec![(e, MonotoneFamily::everything())])
                    .expect("element of the order");
            systems.push(lcs);
        }
    } else {
        let families = upsets(peaked);
        let interior: Vec<ExtElem> = omega.interior().into_iter().map(ExtElem::Alt).collect();
        let optional: Vec<ExtElem> = order
            .elements()
            .iter()
            .copied()
            .filter(|e| !interior.contains(e))
            .collect();
        for choice in 0u32..1 << optional.len() {
            let r_omega: Vec<ExtElem> = order
                .elements()
                .iter()
                .copied()
                .filter(|e| {
                    interior.contains(e)
                        || optional
                            .iter()
                            .position(|o| o == e)
                            .is_some_and(|k| choice >> k & 1 == 1)
                })
                .collect();
            if r_omega.is_empty() {
                continue;
            }
            let max_present = r_omega.contains(&ExtElem::Alt(omega.max()));
            // The empty coalition wins only at the last element, and only
            // when the range maximum is missing from r_omega.
            let allowed = |k: usize, f: &MonotoneFamily| {
                f.contains_empty() == (!max_present && k + 1 == r_omega.len())
            };
            let mut chain: Vec<usize> = Vec::new();
            chains(&families, &r_omega, &allowed, &mut chain, &mut |chain| {
                let entries = r_omega
                    .iter()
                    .copied()
                    .zip(chain.iter().map(|&i| families[i].clone()))
                    .collect();
                let lcs = LeftCoalitionSystem::new(order.clone(), entries)
                    .expect("elements of the order");
                let ok = validate_lcs(&lcs, roster, omega, x)
                    .map(|v| v.is_empty())
                    .unwrap_or(false);
                if ok {
                    systems.push(lcs);
                }
            });
        }
    }

    let mut raw_count = 0;
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut rules = Vec::new();
    for lcs in systems {
        let pairs: Vec<ExtElem> = lcs
            .r_omega()
            .iter()
            .copied()
            .filter(|e| e.is_pair())
            .collect();
        let options: Vec<Vec<MonotoneFamily>> = pairs
            .iter()
            .map(|&pair| {
                let upper = lcs.family(pair).cloned().unwrap_or_default();
                let lower = lcs.below_pair(pair);
                let candidates: Vec<Coalition> = everyone
                    .subsets()
                    .filter(|&c| {
                        let part = c.intersection(peaked);
                        c != part && upper.contains(part) && !lower.contains(part)
                    })
                    .collect();
                decider_families(&candidates, &upper.minimal_beyond(&lower, peaked), peaked)
            })
            .collect();
        let omega_empty = roster.peaked().is_empty().then(|| lcs.r_omega()[0]);

        let mut pick = vec![0usize; pairs.len()];
        'product: loop {
            if options.iter().all(|o| !o.is_empty()) {
                let deciders = pairs
                    .iter()
                    .zip(&pick)
                    .zip(&options)
                    .map(|((&p, &k), opts)| LeftDecisiveFamily::new(p, opts[k].clone()))
                    .collect();
                if let Ok(rule) = RuleSpec::new(
                    x.clone(),
                    roster.clone(),
                    omega.clone(),
                    lcs.clone(),
                    deciders,
                    omega_empty,
                ) {
                    let table = RuleTable::of_rule(&rule);
                    if table.range() == *omega {
                        raw_count += 1;
                        if seen.insert(table.outcomes().to_vec()) {
                            rules.push(rule);
                        }
                    }
                }
            } else {
                break;
            }
            for slot in (0..pick.len()).rev() {
                pick[slot] += 1;
                if pick[slot] < options[slot].len() {
                    continue 'product;
                }
                pick[slot] = 0;
            }
            break;
        }
    }
    Ok(Enumeration { raw_count, rules })
}

/// Nested chains of families along `r_omega`, each allowed at its position.
fn chains(
    families: &[MonotoneFamily],
    r_omega: &[ExtElem],
    allowed: &dyn Fn(usize, &MonotoneFamily) -> bool,
    chain: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    let k = chain.len();
    if k == r_omega.len() {
        emit(chain);
        return;
    }
    for (i, f) in families.iter().enumerate() {
        if !allowed(k, f) {
            continue;
        }
        if let Some(&prev) = chain.last() {
            if !families[prev].is_subfamily_of(f) {
                continue;
            }
        }
        chain.push(i);
        chains(families, r_omega, allowed, chain, emit);
        chain.pop();
    }
}
