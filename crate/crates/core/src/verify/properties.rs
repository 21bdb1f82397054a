//! Structural facts every strategy-proof table satisfies, checked directly
//! on the table rather than through a rule description.

use thiserror::Error;

use crate::extorder::{ExtElem, Range};
use crate::location::Location;
use crate::prefdomain::AlternativeSet;

use super::table::{FullTable, RestrictionConflict, RuleTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureViolation {
    #[error("outcome depends on preferences outside the range: {0}")]
    OutsideRange(#[from] RestrictionConflict),
    #[error("peaks {peaks} lead to more than two outcomes: {outcomes}")]
    TooManyOutcomes { peaks: String, outcomes: String },
    #[error("peaks {peaks} lead to outcomes {outcomes}, which are not neighbours in the range")]
    NotContiguous { peaks: String, outcomes: String },
    #[error("interior range point {0} is never the only outcome for a vector of peaks")]
    InteriorUnselected(String),
}

/// For every vector of restricted peaks (as positions in the table's grid,
/// in peaked-roster order) the sorted list of outcomes over all dip vectors.
pub fn outcomes_by_peak_vector(table: &RuleTable) -> Vec<(Vec<usize>, Vec<usize>)> {
    let k = table.grid().len();
    let a = table.roster().peaked().len();
    let mut seen = vec![vec![false; table.alternatives()]; k.pow(a as u32)];
    for (idx, &o) in table.outcomes().iter().enumerate() {
        let coords = table.coordinates(idx);
        let key = table
            .roster()
            .peaked()
            .iter()
            .fold(0, |acc, &i| acc * k + coords[i]);
        seen[key][o] = true;
    }
    seen.into_iter()
        .enumerate()
        .map(|(key, hits)| {
            let mut peaks = vec![0; a];
            let mut rest = key;
            for slot in peaks.iter_mut().rev() {
                *slot = rest % k;
                rest /= k;
            }
            let outcomes = hits
                .iter()
                .enumerate()
                .filter(|(_, &h)| h)
                .map(|(x, _)| x)
                .collect();
            (peaks, outcomes)
        })
        .collect()
}

/// The first-step outcome implied by a table over its own range: a single
/// outcome, or a pair of neighbouring range points.
pub fn first_steps<T: Location>(
    table: &RuleTable,
    x: &AlternativeSet<T>,
) -> Result<Vec<(Vec<usize>, ExtElem)>, StructureViolation> {
    let grid = table.grid();
    let show_peaks = |peaks: &[usize]| {
        let locs: Vec<String> = peaks
            .iter()
            .map(|&p| x.point(grid.members()[p]).to_string())
            .collect();
        format!("({})", locs.join(","))
    };
    let show_outcomes = |outs: &[usize]| {
        let locs: Vec<String> = outs.iter().map(|&o| x.point(o).to_string()).collect();
        format!("{{{}}}", locs.join(","))
    };
    outcomes_by_peak_vector(table)
        .into_iter()
        .map(|(peaks, outs)| {
            let elem = match outs[..] {
                [o] => ExtElem::Alt(o),
                [l, r] => {
                    let (pl, pr) = (grid.position(l), grid.position(r));
                    match (pl, pr) {
                        (Some(pl), Some(pr)) if pr == pl + 1 => ExtElem::Pair(l, r),
                        _ => {
                            return Err(StructureViolation::NotContiguous {
                                peaks: show_peaks(&peaks),
                                outcomes: show_outcomes(&outs),
                            })
                        }
                    }
                }
                _ => {
                    return Err(StructureViolation::TooManyOutcomes {
                        peaks: show_peaks(&peaks),
                        outcomes: show_outcomes(&outs),
                    })
                }
            };
            Ok((peaks, elem))
        })
        .collect()
}

/// Restricts a full table to its range and checks that every vector of peaks
/// leaves at most two neighbouring outcomes open, and that every interior
/// range point is the sole outcome for some vector of peaks.
pub fn check_range_structure<T: Location>(
    table: &FullTable,
    x: &AlternativeSet<T>,
) -> Result<Vec<(Vec<usize>, ExtElem)>, StructureViolation> {
    let omega: Range = table.range();
    let restricted = table.restrict(&omega)?;
    let steps = first_steps(&restricted, x)?;
    for z in omega.interior() {
        if !steps.iter().any(|(_, e)| *e == ExtElem::Alt(z)) {
            return Err(StructureViolation::InteriorUnselected(
                x.point(z).to_string(),
            ));
        }
    }
    Ok(steps)
}
