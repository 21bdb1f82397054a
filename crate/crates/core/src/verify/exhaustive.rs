//! Classifies every outcome function on a tiny instance and compares the
//! strategy-proof ones with the characterized family.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::SizeGuard;
use crate::extorder::Range;
use crate::json::rule_to_json;
use crate::location::Location;
use crate::prefdomain::{AgentRoster, AlternativeSet};

use super::decompose::decompose;
use super::enumerate::{enumerate_rulespecs, Limits};
use super::oracles::{is_group_strategy_proof, is_strategy_proof};
use super::space::ProfileSpace;
use super::table::{FullTable, RuleTable};

/// Candidate counts up to this size are also checked one by one, without
/// pruning, as a cross-check of the pruned search.
const UNPRUNED_LIMIT: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupScope {
    /// Every candidate table went through the group check.
    AllCandidates,
    /// Only the strategy-proof tables did; the rest fail it trivially.
    StrategyProofTables,
}

#[derive(Debug, Clone)]
pub struct TheoremReport {
    pub instance: Value,
    /// Functions from full profiles to alternatives; `None` if the count
    /// does not fit in 128 bits.
    pub candidates: Option<u128>,
    pub sp_count: usize,
    pub gsp_count: usize,
    pub gsp_scope: GroupScope,
    pub characterized_count: usize,
    /// Valid rule descriptions before merging identical tables.
    pub raw_spec_count: usize,
    pub decomposed_count: usize,
    pub witnesses: Vec<Value>,
    /// The strategy-proof tables, in lexicographic order of outcomes.
    pub sp_tables: Vec<FullTable>,
}

impl TheoremReport {
    /// The strategy-proof, group strategy-proof and characterized sets
    /// coincide and nothing went wrong on the way.
    pub fn holds(&self) -> bool {
        self.witnesses.is_empty()
            && self.sp_count == self.gsp_count
            && self.sp_count == self.characterized_count
    }

    pub fn to_json(&self) -> Value {
        json!({
            "instance": self.instance,
            "candidates": match self.candidates {
                Some(c) => u64::try_from(c).map(Value::from).unwrap_or_else(|_| Value::String(c.to_string())),
                None => Value::String("more than 2^128".into()),
            },
            "sp_count": self.sp_count,
            "gsp_count": self.gsp_count,
            "gsp_scope": match self.gsp_scope {
                GroupScope::AllCandidates => "all candidates",
                GroupScope::StrategyProofTables => "strategy-proof tables",
            },
            "characterized_count": self.characterized_count,
            "raw_spec_count": self.raw_spec_count,
            "decomposed_count": self.decomposed_count,
            "holds": self.holds(),
            "witnesses": self.witnesses,
        })
    }
}

/// Every strategy-proof function from full profiles to alternatives, found by
/// depth-first assignment in profile order. A partial table is abandoned as
/// soon as two assigned profiles differing in one agent's report admit a
/// profitable misreport either way.
pub fn strategy_proof_tables(space: &ProfileSpace) -> Vec<Vec<usize>> {
    let n = space.roster().n();
    let m = space.alternatives();
    // For each profile, its already-assigned unilateral neighbours and the
    // deviating agent.
    let earlier: Vec<Vec<(usize, usize)>> = (0..space.len())
        .map(|idx| {
            (0..n)
                .flat_map(|i| (0..space.digit(idx, i)).map(move |d| (i, d)))
                .map(|(i, d)| (space.with_digit(idx, i, d), i))
                .collect()
        })
        .collect();
    let consistent = |out: &[usize], idx: usize| {
        earlier[idx].iter().all(|&(j, i)| {
            !space.pref(idx, i).strictly_prefers(out[j], out[idx])
                && !space.pref(j, i).strictly_prefers(out[idx], out[j])
        })
    };

    let search = |prefix: Vec<usize>| -> Vec<Vec<usize>> {
        let mut found = Vec::new();
        let mut out = prefix.clone();
        out.resize(space.len(), 0);
        let start = prefix.len();
        if start == space.len() {
            found.push(out);
            return found;
        }
        // Iterative DFS: `out[pos]` is the value being tried at depth `pos`.
        let mut pos = start;
        out[pos] = 0;
        loop {
            if out[pos] < m {
                if consistent(&out, pos) {
                    if pos + 1 == space.len() {
                        found.push(out.clone());
                        out[pos] += 1;
                    } else {
                        pos += 1;
                        out[pos] = 0;
                    }
                } else {
                    out[pos] += 1;
                }
            } else {
                if pos == start {
                    break;
                }
                pos -= 1;
                out[pos] += 1;
            }
        }
        found
    };

    // Split on the first few profiles so the branches can run in parallel.
    let split = space.len().min(2);
    let mut prefixes: Vec<Vec<usize>> = vec![Vec::new()];
    for depth in 0..split {
        prefixes = prefixes
            .into_iter()
            .flat_map(|p| (0..m).map(move |v| [p.clone(), vec![v]].concat()))
            .filter(|p| {
                let mut out = p.clone();
                out.resize(space.len(), 0);
                consistent(&out, depth)
            })
            .collect();
    }
    prefixes.into_par_iter().flat_map_iter(search).collect()
}

/// Runs the whole comparison on alternatives `x` with the given roster.
pub fn exhaustive_theorem_check<T: Location>(
    x: &AlternativeSet<T>,
    roster: &AgentRoster,
    limits: &Limits,
) -> Result<TheoremReport, SizeGuard> {
    let m = x.len();
    limits.check("alternative count", m, limits.max_alternatives)?;
    limits.check("agent count", roster.n(), limits.max_agents)?;
    let space = Arc::new(ProfileSpace::new(roster.clone(), m));
    limits.check("full profile count", space.len(), limits.max_profiles)?;

    let candidates = (m as u128).checked_pow(space.len() as u32);
    let mut witnesses = Vec::new();
    let table_json =
        |outcomes: &[usize]| Value::Array(outcomes.iter().map(|&o| x.point(o).to_json()).collect());

    let sp: Vec<Vec<usize>> = strategy_proof_tables(&space);
    let sp_set: HashSet<&Vec<usize>> = sp.iter().collect();
    let sp_tables: Vec<FullTable> = sp
        .iter()
        .map(|o| FullTable::new(space.clone(), o.clone()).expect("outcomes in range"))
        .collect();

    let (gsp_count, gsp_scope) = if let Some(count) = candidates
        .and_then(|c| u64::try_from(c).ok())
        .filter(|&c| c <= UNPRUNED_LIMIT)
    {
        let verdicts: Vec<(Vec<usize>, bool, bool)> = (0..count)
            .into_par_iter()
            .map(|code| {
                let mut rest = code;
                let mut outcomes = vec![0; space.len()];
                for slot in outcomes.iter_mut().rev() {
                    *slot = (rest % m as u64) as usize;
                    rest /= m as u64;
                }
                let table = FullTable::new(space.clone(), outcomes).expect("outcomes in range");
                let sp_ok = is_strategy_proof(&table).is_ok();
                let gsp_ok = is_group_strategy_proof(&table).is_ok();
                (table.into_outcomes(), sp_ok, gsp_ok)
            })
            .collect();
        for (outcomes, sp_ok, _) in &verdicts {
            if *sp_ok != sp_set.contains(outcomes) {
                witnesses.push(json!({
                    "kind": "pruned search disagrees with the direct check",
                    "table": table_json(outcomes),
                }));
            }
        }
        for (outcomes, sp_ok, gsp_ok) in &verdicts {
            if sp_ok != gsp_ok {
                witnesses.push(json!({ "kind": "strategy-proof but not group strategy-proof", "table": table_json(outcomes) }));
            }
        }
        (
            verdicts.iter().filter(|v| v.2).count(),
            GroupScope::AllCandidates,
        )
    } else {
        let verdicts: Vec<Option<Value>> = sp_tables
            .par_iter()
            .map(|t| {
                is_group_strategy_proof(t).err().map(|w| {
                    json!({
                        "kind": "strategy-proof but not group strategy-proof",
                        "table": table_json(t.outcomes()),
                        "manipulation": w.to_json(x),
                    })
                })
            })
            .collect();
        let failures = verdicts.iter().flatten().count();
        witnesses.extend(verdicts.into_iter().flatten());
        (sp_tables.len() - failures, GroupScope::StrategyProofTables)
    };

    let decomposed: Vec<Result<(), Value>> = sp_tables
        .par_iter()
        .map(|t| {
            decompose(t, x).map(|_| ()).map_err(|e| {
                json!({ "kind": "strategy-proof table does not decompose", "table": table_json(t.outcomes()), "reason": e.to_string() })
            })
        })
        .collect();
    let decomposed_count = decomposed.iter().filter(|r| r.is_ok()).count();
    witnesses.extend(decomposed.into_iter().filter_map(Result::err));

    let mut raw_spec_count = 0;
    let mut characterized: BTreeSet<Vec<usize>> = BTreeSet::new();
    for members in
        (1u32..1 << m).map(|mask| (0..m).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>())
    {
        let omega = Range::new(members, m).expect("nonempty subset");
        let found = enumerate_rulespecs(x, &omega, roster, limits)?;
        raw_spec_count += found.raw_count;
        for rule in &found.rules {
            let table = RuleTable::of_rule(rule)
                .expand(space.clone())
                .expect("same space");
            if let Err(w) = is_strategy_proof(&table) {
                witnesses.push(json!({
                    "kind": "characterized rule is not strategy-proof",
                    "rule": rule_to_json(rule),
                    "manipulation": w.to_json(x),
                }));
            }
            characterized.insert(table.into_outcomes());
        }
    }

    for t in &sp {
        if !characterized.contains(t) {
            witnesses.push(json!({ "kind": "strategy-proof table outside the characterized family", "table": table_json(t) }));
        }
    }
    for t in &characterized {
        if !sp_set.contains(t) {
            witnesses.push(json!({ "kind": "characterized table missing from the strategy-proof set", "table": table_json(t) }));
        }
    }

    Ok(TheoremReport {
        instance: json!({
            "X": Value::Array(x.points().iter().map(|p| p.to_json()).collect()),
            "peaked": roster.peaked_ids(),
            "dipped": roster.dipped_ids(),
        }),
        candidates,
        sp_count: sp.len(),
        gsp_count,
        gsp_scope,
        characterized_count: characterized.len(),
        raw_spec_count,
        decomposed_count,
        witnesses,
        sp_tables,
    })
}
