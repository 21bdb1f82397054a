//! Test-side oracles written straight from the definitions, without the
//! library's indexed profile spaces, plus a random generator of valid rules.

#![allow(dead_code)]

use peakdip::{
    AgentRoster, AlternativeSet, Coalition, ExtElem, LeftCoalitionSystem, LeftDecisiveFamily,
    MonotoneFamily, Preference, PreferenceKind, Profile, Range, RuleSpec,
};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// All permutations of `0..m` in lexicographic order.
pub fn permutations(m: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                go(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

/// Pairwise definition: on each side of the top, closer alternatives are
/// strictly better.
pub fn single_peaked(ranking: &[usize]) -> bool {
    let mut rank = vec![0; ranking.len()];
    for (r, &x) in ranking.iter().enumerate() {
        rank[x] = r;
    }
    let top = ranking[0];
    (0..ranking.len()).all(|x| {
        (0..ranking.len()).all(|y| {
            let same_side_closer = (x < y && y <= top) || (top <= y && y < x);
            !same_side_closer || rank[y] < rank[x]
        })
    })
}

pub fn single_dipped(ranking: &[usize]) -> bool {
    let reversed: Vec<usize> = ranking.iter().rev().copied().collect();
    single_peaked(&reversed)
}

pub fn domain(kind: PreferenceKind, m: usize) -> Vec<Vec<usize>> {
    permutations(m)
        .into_iter()
        .filter(|r| match kind {
            PreferenceKind::Peaked => single_peaked(r),
            PreferenceKind::Dipped => single_dipped(r),
        })
        .collect()
}

/// A profile as one ranking per agent.
pub type RawProfile = Vec<Vec<usize>>;

/// Every profile, agent 1 varying slowest.
pub fn profiles(roster: &AgentRoster, m: usize) -> Vec<RawProfile> {
    let mut out: Vec<RawProfile> = vec![Vec::new()];
    for i in 0..roster.n() {
        let dom = domain(roster.kind_of(i), m);
        out = out
            .into_iter()
            .flat_map(|p| {
                dom.iter().map(move |r| {
                    let mut q = p.clone();
                    q.push(r.clone());
                    q
                })
            })
            .collect();
    }
    out
}

pub fn prefers(ranking: &[usize], x: usize, y: usize) -> bool {
    ranking.iter().position(|&z| z == x) < ranking.iter().position(|&z| z == y)
}

/// Positions of profiles differing from `p` only in agent `i`'s ranking.
fn differs_only_in(p: &RawProfile, q: &RawProfile) -> Option<usize> {
    let diff: Vec<usize> = (0..p.len()).filter(|&i| p[i] != q[i]).collect();
    (diff.len() == 1).then(|| diff[0])
}

/// Strategy-proofness checked pair by pair over `profiles`.
pub fn naive_strategy_proof(profiles: &[RawProfile], outcomes: &[usize]) -> bool {
    for (a, p) in profiles.iter().enumerate() {
        for (b, q) in profiles.iter().enumerate() {
            if let Some(i) = differs_only_in(p, q) {
                if prefers(&p[i], outcomes[b], outcomes[a]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Group strategy-proofness: no coalition can jointly reach an outcome that
/// all its members strictly prefer.
pub fn naive_group_strategy_proof(profiles: &[RawProfile], outcomes: &[usize]) -> bool {
    for (a, p) in profiles.iter().enumerate() {
        for (b, q) in profiles.iter().enumerate() {
            let movers: Vec<usize> = (0..p.len()).filter(|&i| p[i] != q[i]).collect();
            if !movers.is_empty()
                && movers
                    .iter()
                    .all(|&i| prefers(&p[i], outcomes[b], outcomes[a]))
            {
                return false;
            }
        }
    }
    true
}

pub fn naive_pareto_efficient(profiles: &[RawProfile], outcomes: &[usize], m: usize) -> bool {
    profiles
        .iter()
        .zip(outcomes)
        .all(|(p, &o)| !(0..m).any(|x| x != o && p.iter().all(|r| prefers(r, x, o))))
}

/// Strategy-proof tables by plain backtracking: each new profile is checked
/// against every earlier profile that differs in one agent.
pub fn naive_sp_tables(profiles: &[RawProfile], m: usize) -> Vec<Vec<usize>> {
    let neighbours: Vec<Vec<(usize, usize)>> = (0..profiles.len())
        .map(|a| {
            (0..a)
                .filter_map(|b| differs_only_in(&profiles[a], &profiles[b]).map(|i| (b, i)))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut table = Vec::with_capacity(profiles.len());
    fn go(
        profiles: &[RawProfile],
        neighbours: &[Vec<(usize, usize)>],
        m: usize,
        table: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let a = table.len();
        if a == profiles.len() {
            out.push(table.clone());
            return;
        }
        for v in 0..m {
            let ok = neighbours[a].iter().all(|&(b, i)| {
                !prefers(&profiles[a][i], table[b], v) && !prefers(&profiles[b][i], v, table[b])
            });
            if ok {
                table.push(v);
                go(profiles, neighbours, m, table, out);
                table.pop();
            }
        }
    }
    go(profiles, &neighbours, m, &mut table, &mut out);
    out
}

/// Best (peaked) or worst (dipped) member of `omega` under a ranking.
pub fn restricted(kind: PreferenceKind, ranking: &[usize], omega: &[usize]) -> usize {
    let mut it: Box<dyn Iterator<Item = &usize>> = match kind {
        PreferenceKind::Peaked => Box::new(ranking.iter()),
        PreferenceKind::Dipped => Box::new(ranking.iter().rev()),
    };
    *it.find(|x| omega.contains(x)).unwrap()
}

/// Generates a random valid rule with |Ω| ≤ 4 over at most four
/// alternatives and at most six agents that attains all of Ω. Invalid
/// draws are rejected and redrawn.
pub fn random_rule(rng: &mut ChaCha8Rng) -> RuleSpec<i64> {
    loop {
        if let Some(rule) = try_random_rule(rng) {
            return rule;
        }
    }
}

fn random_subset(rng: &mut ChaCha8Rng, of: Coalition) -> Coalition {
    Coalition::of(of.members().filter(|_| rng.random_bool(0.5)))
}

fn try_random_rule(rng: &mut ChaCha8Rng) -> Option<RuleSpec<i64>> {
    let m = rng.random_range(2..=4usize);
    let mut locs: Vec<i64> = (0..m).map(|_| rng.random_range(-20..20)).collect();
    locs.sort();
    locs.dedup();
    let x = AlternativeSet::new(locs).ok()?;
    let m = x.len();
    let members: Vec<usize> = (0..m).filter(|_| rng.random_bool(0.85)).collect();
    // Singleton ranges are rare on purpose: every such rule is constant.
    if members.len() < 2 && rng.random_bool(0.9) {
        return None;
    }
    let omega = Range::new(members, m).ok()?;

    let n = rng.random_range(1..=6usize);
    let a = rng.random_range(0..=n.min(4));
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(rng);
    let roster = AgentRoster::new(ids[..a].to_vec(), ids[a..].to_vec()).ok()?;
    let peaked = Coalition::of(roster.peaked().iter().copied());
    let dipped = Coalition::of(roster.dipped().iter().copied());
    let order = omega.ext_order();

    let random_decider = |rng: &mut ChaCha8Rng, pair: ExtElem, lcs: &LeftCoalitionSystem| {
        let upper = lcs.family(pair).cloned().unwrap_or_default();
        let lower = lcs.below_pair(pair);
        let mut sets: Vec<Coalition> = upper
            .minimal_beyond(&lower, peaked)
            .into_iter()
            .map(|b| {
                let mut d = random_subset(rng, dipped);
                if d.is_empty() {
                    let pick = roster.dipped()[rng.random_range(0..roster.dipped().len())];
                    d = Coalition::of([pick]);
                }
                b.union(d)
            })
            .collect();
        for _ in 0..rng.random_range(0..3) {
            let c = random_subset(rng, peaked).union(random_subset(rng, dipped));
            let part = c.intersection(peaked);
            if c != part && upper.contains(part) && !lower.contains(part) {
                sets.push(c);
            }
        }
        LeftDecisiveFamily::new(pair, MonotoneFamily::generated_by(sets))
    };

    let rule = if a == 0 {
        let e = order.elements()[rng.random_range(0..order.len())];
        let lcs = LeftCoalitionSystem::new(order.clone(), vec![(e, MonotoneFamily::everything())])
            .ok()?;
        let winning = (e.is_pair() && !roster.dipped().is_empty())
            .then(|| random_decider(rng, e, &lcs).winning().clone());
        RuleSpec::without_peaked(x, roster.clone(), omega.clone(), e, winning).ok()?
    } else {
        let interior = omega.interior();
        let r_omega: Vec<ExtElem> = order
            .elements()
            .iter()
            .copied()
            .filter(|&e| match e {
                ExtElem::Alt(z) if interior.contains(&z) => true,
                ExtElem::Pair(..) if roster.dipped().is_empty() => false,
                _ => rng.random_bool(0.6),
            })
            .collect();
        if r_omega.is_empty() {
            return None;
        }
        let max_present = r_omega.contains(&ExtElem::Alt(omega.max()));
        let mut gens: Vec<Coalition> = Vec::new();
        let mut entries = Vec::new();
        for (k, &e) in r_omega.iter().enumerate() {
            let last = k + 1 == r_omega.len();
            // Add at least one coalition the family so far does not contain,
            // otherwise the new element could never be selected.
            let current = MonotoneFamily::generated_by(gens.iter().copied());
            let fresh: Vec<Coalition> = peaked
                .subsets()
                .filter(|&c| !c.is_empty() && !current.contains(c))
                .collect();
            if let Some(&c) = fresh.get(rng.random_range(0..fresh.len().max(1))) {
                gens.push(c);
            }
            if rng.random_bool(0.3) {
                let c = random_subset(rng, peaked);
                if !c.is_empty() {
                    gens.push(c);
                }
            }
            let family = if last && !max_present {
                MonotoneFamily::everything()
            } else if last {
                gens.push(peaked);
                MonotoneFamily::generated_by(gens.iter().copied())
            } else {
                MonotoneFamily::generated_by(gens.iter().copied())
            };
            entries.push((e, family));
        }
        let lcs = LeftCoalitionSystem::new(order.clone(), entries).ok()?;
        let deciders = r_omega
            .iter()
            .filter(|e| e.is_pair())
            .map(|&e| random_decider(rng, e, &lcs))
            .collect();
        RuleSpec::new(x, roster.clone(), omega.clone(), lcs, deciders, None).ok()?
    };
    (peakdip::verify::RuleTable::of_rule(&rule).range() == omega).then_some(rule)
}

pub fn to_profile(roster: &AgentRoster, raw: &RawProfile, m: usize) -> Profile {
    let prefs = raw
        .iter()
        .enumerate()
        .map(|(i, r)| Preference::new(roster.kind_of(i), r.clone(), m).unwrap())
        .collect();
    Profile::new(roster, prefs).unwrap()
}

/// Outcome of `rule` at every profile of `profiles`.
pub fn rule_outcomes<T: peakdip::Location>(
    rule: &RuleSpec<T>,
    profiles: &[RawProfile],
) -> Vec<usize> {
    let m = rule.alternatives().len();
    profiles
        .iter()
        .map(|p| {
            rule.evaluate_full(&to_profile(rule.roster(), p, m))
                .unwrap()
        })
        .collect()
}

/// Strategy-proofness over the product of per-agent `domains`, profiles
/// numbered with agent 1 varying slowest. Each profile is compared with every
/// unilateral misreport.
pub fn sp_by_deviation(domains: &[Vec<Vec<usize>>], outcomes: &[usize]) -> bool {
    let n = domains.len();
    let mut strides = vec![1usize; n];
    for i in (0..n.saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * domains[i + 1].len();
    }
    (0..outcomes.len()).all(|idx| {
        (0..n).all(|i| {
            let own = idx / strides[i] % domains[i].len();
            let base = idx - own * strides[i];
            (0..domains[i].len()).all(|lie| {
                !prefers(
                    &domains[i][own],
                    outcomes[base + lie * strides[i]],
                    outcomes[idx],
                )
            })
        })
    })
}
