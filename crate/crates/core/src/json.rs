//! JSON forms of rules, preferences and profiles.
//!
//! Locations are written as JSON numbers when integral and as `"p/q"`
//! strings otherwise. Agents are 1-based ids.

use serde::Deserialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::error::ValidationError;
use crate::extorder::{ExtElem, ExtOrder, Range};
use crate::location::Location;
use crate::prefdomain::{
    AgentRoster, AlternativeSet, Preference, PreferenceKind, Profile, RestrictedProfile,
};
use crate::rulekernel::{
    Coalition, LeftCoalitionSystem, LeftDecisiveFamily, MonotoneFamily, RuleError, RuleSpec,
};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("at {path}: {message}")]
    At { path: String, message: String },
    #[error(transparent)]
    Rule(#[from] RuleError),
}

impl JsonError {
    fn at(path: impl Into<String>, message: impl ToString) -> Self {
        JsonError::At {
            path: path.into(),
            message: message.to_string(),
        }
    }
}

type Families = Map<String, Value>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RuleFile {
    #[serde(rename = "X")]
    x: Vec<Value>,
    omega: Option<Vec<Value>>,
    peaked: Vec<usize>,
    dipped: Vec<usize>,
    r_omega: Option<Vec<Value>>,
    #[serde(rename = "L", default)]
    l: Families,
    #[serde(rename = "W", default)]
    w: Families,
    omega_empty: Option<Value>,
}

pub fn alternatives_from_json<T: Location>(
    values: &[Value],
    path: &str,
) -> Result<AlternativeSet<T>, JsonError> {
    let points = locations_from_json(values, path)?;
    AlternativeSet::new(points).map_err(|e| JsonError::at(path, e))
}

fn locations_from_json<T: Location>(values: &[Value], path: &str) -> Result<Vec<T>, JsonError> {
    values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            T::from_json(v).ok_or_else(|| {
                JsonError::at(format!("{path}[{i}]"), format!("{v} is not a location"))
            })
        })
        .collect()
}

fn locations_to_json<T: Location>(x: &AlternativeSet<T>, indices: &[usize]) -> Value {
    Value::Array(indices.iter().map(|&i| x.point(i).to_json()).collect())
}

fn index_from_json<T: Location>(
    v: &Value,
    x: &AlternativeSet<T>,
    path: &str,
) -> Result<usize, JsonError> {
    let loc =
        T::from_json(v).ok_or_else(|| JsonError::at(path, format!("{v} is not a location")))?;
    x.require_index(&loc).map_err(|e| JsonError::at(path, e))
}

/// A number for an alternative, a two-element array for a pair.
pub fn ext_elem_from_json<T: Location>(
    v: &Value,
    x: &AlternativeSet<T>,
    order: &ExtOrder,
    path: &str,
) -> Result<ExtElem, JsonError> {
    let e = match v {
        Value::Array(items) if items.len() == 2 => ExtElem::Pair(
            index_from_json(&items[0], x, &format!("{path}[0]"))?,
            index_from_json(&items[1], x, &format!("{path}[1]"))?,
        ),
        Value::Array(_) => return Err(JsonError::at(path, "a pair needs exactly two locations")),
        _ => ExtElem::Alt(index_from_json(v, x, path)?),
    };
    order.check(e).map_err(|_| {
        JsonError::at(
            path,
            format!(
                "{} is not an element of the range or a contiguous pair",
                e.label(x)
            ),
        )
    })?;
    Ok(e)
}

pub fn ext_elem_to_json<T: Location>(e: ExtElem, x: &AlternativeSet<T>) -> Value {
    match e {
        ExtElem::Alt(a) => x.point(a).to_json(),
        ExtElem::Pair(a, b) => json!([x.point(a).to_json(), x.point(b).to_json()]),
    }
}

fn family_from_json(v: &Value, path: &str) -> Result<MonotoneFamily, JsonError> {
    let sets: Vec<Vec<usize>> = serde_json::from_value(v.clone())
        .map_err(|_| JsonError::at(path, "expected a list of id lists"))?;
    let coalitions = sets
        .iter()
        .enumerate()
        .map(|(i, ids)| {
            Coalition::from_ids(ids).ok_or_else(|| {
                JsonError::at(
                    format!("{path}[{i}]"),
                    format!("agent ids must lie in 1..=32, got {ids:?}"),
                )
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    MonotoneFamily::from_antichain(coalitions).map_err(|(big, small)| {
        JsonError::at(
            path,
            ValidationError::NotAntichain(big.to_string(), small.to_string()),
        )
    })
}

fn family_to_json(f: &MonotoneFamily) -> Value {
    Value::Array(f.minimal_sets().iter().map(|c| json!(c.ids())).collect())
}

/// Reads a rule file. Structural violations are reported all together as
/// [`RuleError::Invalid`].
pub fn rule_from_json<T: Location>(value: &Value) -> Result<RuleSpec<T>, JsonError> {
    let file: RuleFile = serde_json::from_value(value.clone())?;
    let x: AlternativeSet<T> = alternatives_from_json(&file.x, "X")?;
    let omega = match &file.omega {
        Some(vals) => {
            let locs = locations_from_json::<T>(vals, "omega")?;
            x.range_of(&locs).map_err(|e| JsonError::at("omega", e))?
        }
        None => x.full_range(),
    };
    let order = omega.ext_order();
    let roster = AgentRoster::from_ids(&file.peaked, &file.dipped)
        .map_err(|e| JsonError::at("peaked/dipped", e))?;

    let omega_empty = file
        .omega_empty
        .as_ref()
        .map(|v| ext_elem_from_json(v, &x, &order, "omega_empty"))
        .transpose()?;

    let mut entries = Vec::new();
    match (&file.r_omega, omega_empty) {
        (None, Some(e)) if roster.peaked().is_empty() && file.l.is_empty() => {
            entries.push((e, MonotoneFamily::everything()));
        }
        (None, _) => return Err(JsonError::at("r_omega", "missing")),
        (Some(list), _) => {
            for (i, v) in list.iter().enumerate() {
                let path = format!("r_omega[{i}]");
                let e = ext_elem_from_json(v, &x, &order, &path)?;
                let key = e.key(&x);
                let fam = file.l.get(&key).ok_or_else(|| {
                    JsonError::at("L", format!("no family for r_omega element \"{key}\""))
                })?;
                entries.push((e, family_from_json(fam, &format!("L[\"{key}\"]"))?));
            }
            for key in file.l.keys() {
                let e = ExtElem::parse_key(key, &x)
                    .map_err(|err| JsonError::at(format!("L[\"{key}\"]"), err))?;
                if !entries.iter().any(|&(f, _)| f == e) {
                    return Err(JsonError::at(
                        format!("L[\"{key}\"]"),
                        "element is not listed in r_omega",
                    ));
                }
            }
        }
    }
    let lcs = LeftCoalitionSystem::new(order.clone(), entries)
        .map_err(|e| JsonError::at("r_omega", e))?;

    let mut deciders = Vec::new();
    for (key, v) in &file.w {
        let path = format!("W[\"{key}\"]");
        let e = ExtElem::parse_key(key, &x).map_err(|err| JsonError::at(&path, err))?;
        if !e.is_pair() || order.check(e).is_err() {
            return Err(JsonError::at(
                &path,
                "key must be a contiguous pair of the range",
            ));
        }
        deciders.push(LeftDecisiveFamily::new(e, family_from_json(v, &path)?));
    }

    Ok(RuleSpec::new(x, roster, omega, lcs, deciders, omega_empty)?)
}

pub fn rule_from_str<T: Location>(text: &str) -> Result<RuleSpec<T>, JsonError> {
    rule_from_json(&serde_json::from_str(text)?)
}

pub fn rule_to_json<T: Location>(rule: &RuleSpec<T>) -> Value {
    let x = rule.alternatives();
    let mut l = Map::new();
    for (e, fam) in rule.lcs().entries() {
        l.insert(e.key(x), family_to_json(fam));
    }
    let mut w = Map::new();
    for d in rule.deciders() {
        w.insert(d.pair().key(x), family_to_json(d.winning()));
    }
    let mut out = json!({
        "X": locations_to_json(x, &(0..x.len()).collect::<Vec<_>>()),
        "omega": locations_to_json(x, rule.omega().members()),
        "peaked": rule.roster().peaked_ids(),
        "dipped": rule.roster().dipped_ids(),
        "r_omega": rule.r_omega().iter().map(|&e| ext_elem_to_json(e, x)).collect::<Vec<_>>(),
        "L": l,
        "W": w,
    });
    if let Some(e) = rule.omega_empty() {
        out["omega_empty"] = ext_elem_to_json(e, x);
    }
    out
}

pub fn preference_from_json<T: Location>(
    v: &Value,
    x: &AlternativeSet<T>,
    path: &str,
) -> Result<Preference, JsonError> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Raw {
        kind: PreferenceKind,
        ranking: Vec<Value>,
    }
    let raw: Raw = serde_json::from_value(v.clone()).map_err(|e| JsonError::at(path, e))?;
    let ranking: Vec<T> = locations_from_json(&raw.ranking, &format!("{path}.ranking"))?;
    Preference::from_locations(raw.kind, &ranking, x).map_err(|e| JsonError::at(path, e))
}

pub fn preference_to_json<T: Location>(pref: &Preference, x: &AlternativeSet<T>) -> Value {
    json!({ "kind": pref.kind(), "ranking": locations_to_json(x, pref.ranking()) })
}

/// A profile is a JSON array with one preference per agent.
pub fn profile_from_json<T: Location>(
    v: &Value,
    x: &AlternativeSet<T>,
    roster: &AgentRoster,
) -> Result<Profile, JsonError> {
    let items = v
        .as_array()
        .ok_or_else(|| JsonError::at("profile", "expected an array of preferences"))?;
    let prefs = items
        .iter()
        .enumerate()
        .map(|(i, p)| preference_from_json(p, x, &format!("profile[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Profile::new(roster, prefs).map_err(|e| JsonError::at("profile", e))
}

pub fn profile_to_json<T: Location>(profile: &Profile, x: &AlternativeSet<T>) -> Value {
    Value::Array(
        profile
            .prefs()
            .iter()
            .map(|p| preference_to_json(p, x))
            .collect(),
    )
}

pub fn restricted_from_json<T: Location>(
    v: &Value,
    x: &AlternativeSet<T>,
) -> Result<RestrictedProfile, JsonError> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Raw {
        peaks: Vec<Value>,
        dips: Vec<Value>,
    }
    let raw: Raw = serde_json::from_value(v.clone())?;
    let peaks: Vec<T> = locations_from_json(&raw.peaks, "peaks")?;
    let dips: Vec<T> = locations_from_json(&raw.dips, "dips")?;
    RestrictedProfile::from_locations(x, &peaks, &dips).map_err(|e| JsonError::at("peaks/dips", e))
}

pub fn restricted_to_json<T: Location>(rp: &RestrictedProfile, x: &AlternativeSet<T>) -> Value {
    json!({ "peaks": locations_to_json(x, &rp.peaks), "dips": locations_to_json(x, &rp.dips) })
}

pub fn range_to_json<T: Location>(range: &Range, x: &AlternativeSet<T>) -> Value {
    locations_to_json(x, range.members())
}
