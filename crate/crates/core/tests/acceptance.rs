//! Acceptance run. Prints one PASS/FAIL line per criterion and exits non-zero
//! if any fails. Every tolerance is an exact comparison or a wall-clock
//! budget pinned below.

mod common;

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::RawProfile;
use peakdip::fixtures::example1;
use peakdip::verify::{
    decompose, decompose_table, enumerate_rulespecs, exhaustive_theorem_check,
    is_group_strategy_proof, is_pareto_efficient, is_strategy_proof, FullTable, GroupScope, Limits,
    ProfileSpace, RuleTable,
};
use peakdip::{
    enumerate_domain, AgentRoster, AlternativeSet, ExtElem, Preference, PreferenceKind, Profile,
    Range, RestrictedProfile,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const EXAMPLE_EVAL_BUDGET: Duration = Duration::from_secs(1);
const EXAMPLE_SP_BUDGET: Duration = Duration::from_secs(120);
const SMALL_CHECK_BUDGET: Duration = Duration::from_secs(1);
const PRUNED_CHECK_BUDGET: Duration = Duration::from_secs(600);

/// Strategy-proof table counts, computed once by the oracles and frozen.
const SP_COUNT_X2_A1_D1: usize = 6;
const SP_COUNT_X3_A1_D1: usize = 19;

const RANDOM_SPECS: usize = 40;
const RANDOM_SEED: u64 = 0x5eed_0001;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, budget: Duration) -> Result<(), String> {
    let spent = start.elapsed();
    ensure(spent < budget, || {
        format!("took {spent:?}, budget {budget:?}")
    })
}

fn xs(points: &[i64]) -> AlternativeSet<i64> {
    AlternativeSet::new(points.to_vec()).unwrap()
}

/// Library profile index for each locally enumerated profile.
fn index_map(space: &ProfileSpace, profiles: &[RawProfile]) -> Vec<usize> {
    let m = space.alternatives();
    profiles
        .iter()
        .map(|p| {
            space
                .index_of(&common::to_profile(space.roster(), p, m))
                .unwrap()
        })
        .collect()
}

/// A table in local profile order.
fn local_outcomes(table: &FullTable, map: &[usize]) -> Vec<usize> {
    map.iter().map(|&i| table.outcomes()[i]).collect()
}

/// Strategy-proof tables of one instance, together with what is needed to
/// re-examine them.
struct Instance {
    x: AlternativeSet<i64>,
    roster: AgentRoster,
    profiles: Vec<RawProfile>,
    map: Vec<usize>,
    tables: Vec<FullTable>,
}

fn characterized_tables(
    x: &AlternativeSet<i64>,
    roster: &AgentRoster,
    profiles: &[RawProfile],
) -> BTreeSet<Vec<usize>> {
    let m = x.len();
    let mut out = BTreeSet::new();
    for mask in 1u32..1 << m {
        let omega = Range::new((0..m).filter(|&i| mask >> i & 1 == 1).collect(), m).unwrap();
        for rule in enumerate_rulespecs(x, &omega, roster, &Limits::default())
            .unwrap()
            .rules
        {
            out.insert(common::rule_outcomes(&rule, profiles));
        }
    }
    out
}

fn exhaustive_instance(
    points: &[i64],
    frozen: usize,
    budget: Duration,
    all_candidates: bool,
) -> Result<(String, Instance), String> {
    let start = Instant::now();
    let x = xs(points);
    let m = x.len();
    let roster = AgentRoster::split(1, 1);
    let report =
        exhaustive_theorem_check(&x, &roster, &Limits::default()).map_err(|e| e.to_string())?;
    within(start, budget)?;

    let profiles = common::profiles(&roster, m);
    let space = report
        .sp_tables
        .first()
        .map(|t| t.space().clone())
        .ok_or("no strategy-proof tables")?;
    let map = index_map(&space, &profiles);
    let expected_candidates = (m as u128).pow(profiles.len() as u32);
    ensure(report.candidates == Some(expected_candidates), || {
        format!(
            "candidates {:?}, expected {expected_candidates}",
            report.candidates
        )
    })?;

    // Independent strategy-proof set: plain enumeration when small,
    // backtracking over locally built profiles otherwise.
    let naive_sp: BTreeSet<Vec<usize>> = if all_candidates {
        let mut found = BTreeSet::new();
        for code in 0..expected_candidates as u64 {
            let outcomes: Vec<usize> = (0..profiles.len())
                .rev()
                .map(|k| (code / (m as u64).pow(k as u32) % m as u64) as usize)
                .collect();
            let sp = common::naive_strategy_proof(&profiles, &outcomes);
            let gsp = common::naive_group_strategy_proof(&profiles, &outcomes);
            ensure(sp == gsp, || {
                format!("independent oracles split on {outcomes:?}")
            })?;
            if sp {
                found.insert(outcomes);
            }
        }
        found
    } else {
        let found: BTreeSet<Vec<usize>> =
            common::naive_sp_tables(&profiles, m).into_iter().collect();
        for t in &found {
            // Outside the strategy-proof set a single agent already manipulates,
            // so group strategy-proofness only needs checking here.
            ensure(common::naive_group_strategy_proof(&profiles, t), || {
                format!("{t:?} is not group strategy-proof")
            })?;
        }
        found
    };
    let library_sp: BTreeSet<Vec<usize>> = report
        .sp_tables
        .iter()
        .map(|t| local_outcomes(t, &map))
        .collect();
    let characterized = characterized_tables(&x, &roster, &profiles);

    ensure(naive_sp.len() == frozen, || {
        format!("independent SP count {}, frozen {frozen}", naive_sp.len())
    })?;
    ensure(report.sp_count == frozen, || {
        format!("library SP count {}, frozen {frozen}", report.sp_count)
    })?;
    ensure(library_sp == naive_sp, || {
        "library SP set differs from the independent one".into()
    })?;
    ensure(characterized == naive_sp, || {
        "characterized set differs from the SP set".into()
    })?;
    ensure(report.gsp_count == report.sp_count, || {
        format!("GSP count {} vs SP {}", report.gsp_count, report.sp_count)
    })?;
    ensure(report.characterized_count == frozen, || {
        format!("characterized count {}", report.characterized_count)
    })?;
    ensure(report.holds(), || {
        format!("report lists witnesses: {:?}", report.witnesses)
    })?;
    if all_candidates {
        ensure(report.gsp_scope == GroupScope::AllCandidates, || {
            "GSP not run on every candidate".into()
        })?;
    }
    let detail = format!(
        "{} candidates, SP = GSP = characterized = {} tables ({} raw descriptions), {:?}",
        expected_candidates,
        frozen,
        report.raw_spec_count,
        start.elapsed()
    );
    let tables = report.sp_tables;
    Ok((
        detail,
        Instance {
            x,
            roster,
            profiles,
            map,
            tables,
        },
    ))
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let rule = example1();
    let x = rule.alternatives();
    let peaked = |r: [i64; 4]| Preference::from_locations(PreferenceKind::Peaked, &r, x).unwrap();
    let dipped = |r: [i64; 4]| Preference::from_locations(PreferenceKind::Dipped, &r, x).unwrap();
    let r1 = [
        peaked([1, 2, 3, 4]),
        peaked([2, 3, 1, 4]),
        peaked([4, 3, 2, 1]),
    ];
    let r2 = [
        peaked([1, 2, 3, 4]),
        peaked([3, 2, 4, 1]),
        peaked([4, 3, 2, 1]),
    ];
    let d1 = [
        dipped([4, 3, 2, 1]),
        dipped([1, 4, 2, 3]),
        dipped([1, 2, 4, 3]),
    ];
    let d2 = [
        dipped([4, 3, 2, 1]),
        dipped([4, 1, 3, 2]),
        dipped([1, 2, 4, 3]),
    ];
    let cases = [(&r1, &d1, 2i64), (&r2, &d1, 2), (&r2, &d2, 3)];
    let mut got = Vec::new();
    for (ps, ds, expected) in cases {
        let prefs: Vec<Preference> = ps.iter().chain(ds.iter()).cloned().collect();
        let profile = Profile::new(rule.roster(), prefs).unwrap();
        let full = *x.point(rule.evaluate_full(&profile).map_err(|e| e.to_string())?);
        let rp = profile.restricted(rule.roster(), rule.omega());
        let restricted = *x.point(rule.evaluate(&rp).map_err(|e| e.to_string())?);
        ensure(full == expected && restricted == expected, || {
            format!("expected {expected}, full profile gave {full}, restricted gave {restricted}")
        })?;
        got.push(full);
    }
    within(start, EXAMPLE_EVAL_BUDGET)?;
    Ok(format!("outcomes {got:?} in {:?}", start.elapsed()))
}

fn criterion_2() -> Check {
    let start = Instant::now();
    let rule = example1();
    let table = RuleTable::of_rule(&rule).expand_full();
    ensure(table.space().len() == 8usize.pow(6), || {
        format!("{} full profiles", table.space().len())
    })?;
    is_strategy_proof(&table)
        .map_err(|w| format!("manipulation: {}", w.to_json(rule.alternatives())))?;
    is_group_strategy_proof(&table)
        .map_err(|w| format!("group manipulation: {}", w.to_json(rule.alternatives())))?;
    let library = start.elapsed();

    // Independent pass: local domains, local restriction, unilateral
    // misreports by index arithmetic.
    let m = 4;
    let omega = [0, 1, 2, 3];
    let domains: Vec<Vec<Vec<usize>>> = (0..6)
        .map(|i| common::domain(rule.roster().kind_of(i), m))
        .collect();
    let total: usize = domains.iter().map(Vec::len).product();
    let outcomes: Vec<usize> = (0..total)
        .map(|mut idx| {
            let mut picks = [0; 6];
            for i in (0..6).rev() {
                picks[i] = idx % domains[i].len();
                idx /= domains[i].len();
            }
            let peaks = (0..3)
                .map(|i| common::restricted(PreferenceKind::Peaked, &domains[i][picks[i]], &omega))
                .collect();
            let dips = (3..6)
                .map(|i| common::restricted(PreferenceKind::Dipped, &domains[i][picks[i]], &omega))
                .collect();
            rule.evaluate(&RestrictedProfile::new(peaks, dips)).unwrap()
        })
        .collect();
    ensure(common::sp_by_deviation(&domains, &outcomes), || {
        "independent check found a manipulation".into()
    })?;
    within(start, EXAMPLE_SP_BUDGET)?;
    Ok(format!(
        "{total} profiles, library SP+GSP {library:?}, total {:?}",
        start.elapsed()
    ))
}

fn criterion_5(instances: &[Instance]) -> Check {
    let mut checked = 0;
    for inst in instances {
        for table in &inst.tables {
            let outcomes = local_outcomes(table, &inst.map);
            let omega: Vec<usize> = outcomes
                .iter()
                .copied()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            let mut by_peaks: std::collections::BTreeMap<Vec<usize>, BTreeSet<usize>> =
                Default::default();
            for (p, &o) in inst.profiles.iter().zip(&outcomes) {
                let peaks = inst
                    .roster
                    .peaked()
                    .iter()
                    .map(|&i| common::restricted(PreferenceKind::Peaked, &p[i], &omega))
                    .collect();
                by_peaks.entry(peaks).or_default().insert(o);
            }
            for (peaks, outs) in &by_peaks {
                let pos: Vec<usize> = outs
                    .iter()
                    .map(|o| omega.iter().position(|z| z == o).unwrap())
                    .collect();
                ensure(outs.len() <= 2, || {
                    format!("peaks {peaks:?} give {outs:?} in {outcomes:?}")
                })?;
                ensure(pos.len() < 2 || pos[1] == pos[0] + 1, || {
                    format!("peaks {peaks:?} give non-neighbours {outs:?} in {outcomes:?}")
                })?;
            }
            let interior = if omega.len() > 2 {
                &omega[1..omega.len() - 1]
            } else {
                &[][..]
            };
            for z in interior {
                ensure(
                    by_peaks
                        .values()
                        .any(|outs| outs.len() == 1 && outs.contains(z)),
                    || format!("interior point {z} never selected alone in {outcomes:?}"),
                )?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} strategy-proof tables"))
}

fn criterion_6(instances: &[Instance]) -> Check {
    let start = Instant::now();
    let mut tables = 0;
    for inst in instances {
        for table in &inst.tables {
            let rule = decompose(table, &inst.x).map_err(|e| e.to_string())?;
            let recomposed = common::rule_outcomes(&rule, &inst.profiles);
            ensure(recomposed == local_outcomes(table, &inst.map), || {
                format!("table {:?} not reproduced", table.outcomes())
            })?;
            tables += 1;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    let mut with_pairs = 0;
    let mut largest = 0;
    for _ in 0..RANDOM_SPECS {
        let rule = common::random_rule(&mut rng);
        ensure(rule.omega().len() <= 4 && rule.roster().n() <= 6, || {
            "generator out of bounds".into()
        })?;
        let table = RuleTable::of_rule(&rule);
        let back = decompose_table(&table, rule.alternatives())
            .map_err(|e| format!("{e} for {}", peakdip::json::rule_to_json(&rule)))?;
        ensure(RuleTable::of_rule(&back) == table, || {
            format!(
                "random rule not reproduced: {}",
                peakdip::json::rule_to_json(&rule)
            )
        })?;
        if rule.r_omega().iter().any(|e| e.is_pair()) {
            with_pairs += 1;
        }
        largest = largest.max(table.len());
    }
    Ok(format!(
        "{tables} SP tables and {RANDOM_SPECS} random rules ({with_pairs} with pairs, up to {largest} restricted profiles) reproduced exactly in {:?}",
        start.elapsed()
    ))
}

fn criterion_7() -> Check {
    let x = xs(&[1, 2, 3]);
    let m = 3;
    let full = Range::full(m);
    let ends = Range::new(vec![0, 2], m).unwrap();
    let rosters = [
        (vec![0], vec![1]),
        (vec![1], vec![0]),
        (vec![], vec![0, 1]),
        (vec![0, 1], vec![]),
    ];
    let (mut efficient, mut dominated, mut ends_efficient, mut ends_dominated) = (0, 0, 0, 0);
    for (peaked, dipped) in rosters {
        let roster = AgentRoster::new(peaked, dipped).unwrap();
        let space = Arc::new(ProfileSpace::new(roster.clone(), m));
        let profiles = common::profiles(&roster, m);
        let map = index_map(&space, &profiles);
        let sp = common::naive_sp_tables(&profiles, m);
        let report =
            exhaustive_theorem_check(&x, &roster, &Limits::default()).map_err(|e| e.to_string())?;
        ensure(report.sp_count == sp.len() && report.holds(), || {
            format!("roster {roster:?}: library disagrees")
        })?;
        for local in sp {
            let mut outcomes = vec![0; local.len()];
            for (k, &o) in local.iter().enumerate() {
                outcomes[map[k]] = o;
            }
            let table = FullTable::new(space.clone(), outcomes).unwrap();
            let omega = table.range();
            let pe = is_pareto_efficient(&table);
            ensure(
                pe.is_ok() == common::naive_pareto_efficient(&profiles, &local, m),
                || format!("oracles disagree on {local:?}"),
            )?;
            if let Err(w) = &pe {
                let idx = space.index_of(&w.profile).unwrap();
                ensure(table.outcomes()[idx] == w.outcome, || {
                    "witness outcome is wrong".into()
                })?;
                ensure(
                    w.profile
                        .prefs()
                        .iter()
                        .all(|p| p.strictly_prefers(w.dominating, w.outcome)),
                    || "witness is not a dominance".into(),
                )?;
            }
            let expected = if omega == full {
                true
            } else if omega == ends {
                let rule = decompose(&table, &x).map_err(|e| e.to_string())?;
                roster.peaked().is_empty() || rule.r_omega() == [ExtElem::Pair(0, 2)]
            } else {
                false
            };
            ensure(pe.is_ok() == expected, || {
                format!(
                    "roster {roster:?}, table {local:?}: efficient {}, expected {expected}",
                    pe.is_ok()
                )
            })?;
            match (omega == ends, expected) {
                (false, true) => efficient += 1,
                (false, false) => dominated += 1,
                (true, true) => ends_efficient += 1,
                (true, false) => ends_dominated += 1,
            }
        }
    }
    Ok(format!(
        "full range: {efficient} efficient; other ranges: {dominated} with witnesses; range {{1,3}}: {ends_efficient} efficient, {ends_dominated} with witnesses"
    ))
}

fn criterion_8() -> Check {
    let mut counts = Vec::new();
    for m in 2..=5 {
        for kind in [PreferenceKind::Peaked, PreferenceKind::Dipped] {
            let lib: BTreeSet<Vec<usize>> = enumerate_domain(kind, m)
                .iter()
                .map(|p| p.ranking().to_vec())
                .collect();
            let filtered: BTreeSet<Vec<usize>> = common::domain(kind, m).into_iter().collect();
            ensure(lib.len() == 1 << (m - 1), || {
                format!("m={m} {kind:?}: {} rankings", lib.len())
            })?;
            ensure(lib == filtered, || {
                format!("m={m} {kind:?}: differs from permutation filtering")
            })?;
        }
        counts.push(1 << (m - 1));
    }
    Ok(format!("domain sizes {counts:?} for m = 2..5, both kinds"))
}

fn main() {
    let mut instances = Vec::new();
    let mut failures = 0;
    let mut report = |k: usize, name: &str, result: std::thread::Result<Check>| {
        let line = match result {
            Ok(Ok(detail)) => format!("PASS criterion {k} ({name}): {detail}"),
            Ok(Err(reason)) => format!("FAIL criterion {k} ({name}): {reason}"),
            Err(_) => format!("FAIL criterion {k} ({name}): panicked"),
        };
        if line.starts_with("FAIL") {
            failures += 1;
        }
        println!("{line}");
    };
    let run = |f: &mut dyn FnMut() -> Check| panic::catch_unwind(AssertUnwindSafe(f));

    report(1, "example rule golden values", run(&mut criterion_1));
    report(
        2,
        "example rule strategy-proof and group strategy-proof",
        run(&mut criterion_2),
    );
    let mut small = || {
        exhaustive_instance(&[1, 2], SP_COUNT_X2_A1_D1, SMALL_CHECK_BUDGET, true).map(
            |(detail, inst)| {
                instances.push(inst);
                detail
            },
        )
    };
    report(3, "exhaustive check, two alternatives", run(&mut small));
    let mut pruned = || {
        exhaustive_instance(&[1, 2, 3], SP_COUNT_X3_A1_D1, PRUNED_CHECK_BUDGET, false).map(
            |(detail, inst)| {
                instances.push(inst);
                detail
            },
        )
    };
    report(
        4,
        "pruned exhaustive check, three alternatives",
        run(&mut pruned),
    );
    report(
        5,
        "range structure of strategy-proof tables",
        run(&mut || criterion_5(&instances)),
    );
    report(
        6,
        "decompose and recompose",
        run(&mut || criterion_6(&instances)),
    );
    report(7, "efficiency on three alternatives", run(&mut criterion_7));
    report(8, "domain sizes", run(&mut criterion_8));

    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
