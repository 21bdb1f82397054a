//! With no dipped agents the strategy-proof rules are the generalized median
//! rules. These are coded here directly in min-max form: choose a value
//! `a_S` for every coalition S and output min over S of max(a_S, peaks of S).

mod common;

use std::collections::BTreeSet;

use peakdip::verify::{decompose, exhaustive_theorem_check, Limits};
use peakdip::{AgentRoster, AlternativeSet};

/// Parameters range over the alternatives plus "+infinity" (`m`); a rule
/// whose output is ever infinite is skipped.
fn min_max_tables(n: usize, m: usize, profiles: &[common::RawProfile]) -> BTreeSet<Vec<usize>> {
    let coalitions = 1usize << n;
    let mut out = BTreeSet::new();
    let mut params = vec![0usize; coalitions];
    'all: loop {
        let table: Option<Vec<usize>> = profiles
            .iter()
            .map(|p| {
                let value = (0..coalitions)
                    .map(|s| {
                        (0..n)
                            .filter(|i| s >> i & 1 == 1)
                            .map(|i| p[i][0])
                            .fold(params[s], usize::max)
                    })
                    .min()
                    .unwrap();
                (value < m).then_some(value)
            })
            .collect();
        if let Some(t) = table {
            out.insert(t);
        }
        for slot in params.iter_mut() {
            *slot += 1;
            if *slot <= m {
                continue 'all;
            }
            *slot = 0;
        }
        break;
    }
    out
}

fn check(n: usize) {
    let x = AlternativeSet::new(vec![1i64, 2]).unwrap();
    let roster = AgentRoster::split(n, 0);
    let report = exhaustive_theorem_check(&x, &roster, &Limits::default()).unwrap();
    assert!(report.holds(), "{}", report.to_json());

    let profiles = common::profiles(&roster, 2);
    let space = report.sp_tables[0].space().clone();
    let map: Vec<usize> = profiles
        .iter()
        .map(|p| space.index_of(&common::to_profile(&roster, p, 2)).unwrap())
        .collect();
    let found: BTreeSet<Vec<usize>> = report
        .sp_tables
        .iter()
        .map(|t| map.iter().map(|&i| t.outcomes()[i]).collect())
        .collect();
    assert_eq!(found, min_max_tables(n, 2, &profiles));

    for t in &report.sp_tables {
        let rule = decompose(t, &x).unwrap();
        assert!(rule.r_omega().iter().all(|e| !e.is_pair()));
        assert!(rule
            .r_omega()
            .iter()
            .all(|e| rule.omega().contains(e.lower())));
    }
}

#[test]
fn two_peaked_agents_on_two_points() {
    check(2);
}

#[test]
fn three_peaked_agents_on_two_points() {
    check(3);
}
