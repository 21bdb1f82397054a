//! Command-line front end for `peakdip`. [`run`] parses arguments, executes
//! one subcommand and returns the process exit code:
//!
//! * 0: success, or the checked property holds
//! * 1: the property fails; a witness is printed
//! * 2: usage, parse or validation error

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

use peakdip::json::{
    ext_elem_to_json, profile_from_json, range_to_json, rule_from_json, rule_to_json, JsonError,
};
use peakdip::verify::{
    decompose_table, enumerate_rulespecs, exhaustive_theorem_check, is_group_strategy_proof,
    is_pareto_efficient, is_strategy_proof, FullTable, Limits, RuleTable,
};
use peakdip::{
    AgentRoster, AlternativeSet, Location, Rational, RestrictedProfile, RuleError, RuleSpec,
    SizeGuard, ValidationError,
};

#[derive(Debug, Parser)]
#[command(
    name = "peakdip",
    version,
    about = "Strategy-proof location rules for single-peaked and single-dipped agents"
)]
struct Cli {
    /// Indent JSON output.
    #[arg(long, global = true)]
    pretty: bool,

    /// Worker threads for the exhaustive checks (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct RuleSource {
    /// Rule file in JSON.
    #[arg(long, value_name = "FILE", required_unless_present = "seed_example1")]
    rule: Option<PathBuf>,

    /// Use the built-in six-agent example rule instead of a file.
    #[arg(long, conflicts_with = "rule")]
    seed_example1: bool,
}

#[derive(Debug, Args)]
struct ProfileGuard {
    /// Refuse to tabulate more full profiles than this.
    #[arg(long, default_value_t = 1 << 20)]
    max_profiles: usize,
}

#[derive(Debug, Args)]
struct Instance {
    /// Alternatives, comma separated (`p/q` allowed).
    #[arg(long = "x", value_name = "LOCATIONS")]
    x: String,

    /// Number of single-peaked agents; they get ids 1..=peaked.
    #[arg(long, default_value_t = 0)]
    peaked: usize,

    /// Number of single-dipped agents; they follow the peaked ones.
    #[arg(long, default_value_t = 0)]
    dipped: usize,

    #[arg(long, default_value_t = Limits::default().max_alternatives)]
    max_alternatives: usize,

    #[arg(long, default_value_t = Limits::default().max_agents)]
    max_agents: usize,

    #[arg(long, default_value_t = Limits::default().max_profiles)]
    max_profiles: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a rule file against every structural condition.
    Validate {
        #[command(flatten)]
        source: RuleSource,
    },
    /// Evaluate a rule at restricted peaks and dips, or at a full profile.
    Eval {
        #[command(flatten)]
        source: RuleSource,
        /// Restricted peaks of the peaked agents, comma separated.
        #[arg(long, requires = "dips", conflicts_with = "profile")]
        peaks: Option<String>,
        /// Restricted dips of the dipped agents, comma separated.
        #[arg(long, requires = "peaks")]
        dips: Option<String>,
        /// JSON file with one full preference per agent.
        #[arg(long, value_name = "FILE", required_unless_present = "peaks")]
        profile: Option<PathBuf>,
    },
    /// Search all full profiles for a profitable unilateral misreport.
    VerifySp {
        #[command(flatten)]
        source: RuleSource,
        #[command(flatten)]
        guard: ProfileGuard,
    },
    /// Search all full profiles for a profitable joint misreport.
    VerifyGsp {
        #[command(flatten)]
        source: RuleSource,
        #[command(flatten)]
        guard: ProfileGuard,
    },
    /// Search all full profiles for a Pareto-dominated outcome.
    VerifyPe {
        #[command(flatten)]
        source: RuleSource,
        #[command(flatten)]
        guard: ProfileGuard,
    },
    /// Recover a rule description from an outcome table (or a rule's table).
    Decompose {
        /// Table file: X, peaked, dipped, and one entry per restricted profile.
        #[arg(long, value_name = "FILE", conflicts_with_all = ["rule", "seed_example1"])]
        table: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        rule: Option<PathBuf>,
        #[arg(long)]
        seed_example1: bool,
        #[command(flatten)]
        guard: ProfileGuard,
    },
    /// List every rule with a given range, one per distinct outcome table.
    EnumerateRules {
        #[command(flatten)]
        instance: Instance,
        /// Range, comma separated; defaults to all of X.
        #[arg(long)]
        omega: Option<String>,
    },
    /// Classify every outcome function on a tiny instance.
    ExhaustiveCheck {
        #[command(flatten)]
        instance: Instance,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] JsonError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Guard(#[from] SizeGuard),
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error(transparent)]
    Rule(#[from] RuleError),
}

/// What a subcommand produced: a JSON document and whether a witness was found.
struct Output {
    body: Value,
    witness: bool,
}

impl Output {
    fn ok(body: Value) -> Self {
        Self {
            body,
            witness: false,
        }
    }
}

/// Runs the command line `args` (program name first), writing results to
/// `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };

    let result = match cli.jobs {
        Some(jobs) => match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.command)),
            Err(e) => Err(CliError::Usage(format!(
                "cannot start {jobs} worker threads: {e}"
            ))),
        },
        None => dispatch(&cli.command),
    };

    match result {
        Ok(output) => {
            let text = if cli.pretty {
                serde_json::to_string_pretty(&output.body)
            } else {
                serde_json::to_string(&output.body)
            }
            .expect("JSON values always serialize");
            let _ = writeln!(out, "{text}");
            i32::from(output.witness)
        }
        Err(CliError::Rule(RuleError::Invalid(violations)))
        | Err(CliError::Json(JsonError::Rule(RuleError::Invalid(violations)))) => {
            let _ = writeln!(
                err,
                "error: rule violates {} structural condition(s)",
                violations.len()
            );
            for v in &violations {
                let _ = writeln!(err, "  {v}");
            }
            2
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Json(JsonError::Syntax(e)))
}

/// Fractions anywhere in the alternative set switch to exact rationals.
fn needs_rationals(points: &[Value]) -> bool {
    points
        .iter()
        .any(|v| matches!(v, Value::String(s) if s.contains('/')))
}

fn parse_list<T: Location>(what: &str, text: &str) -> Result<Vec<T>, CliError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|s| {
            T::parse_location(s)
                .ok_or_else(|| CliError::Usage(format!("{what}: cannot read {s:?} as a location")))
        })
        .collect()
}

/// A rule source as JSON: the file, or the built-in example.
fn rule_value(rule: &Option<PathBuf>, seed_example1: bool) -> Result<Value, CliError> {
    match rule {
        Some(path) => read_json(path),
        None if seed_example1 => {
            Ok(serde_json::from_str(peakdip::fixtures::EXAMPLE1_JSON)
                .expect("built-in rule parses"))
        }
        None => Err(CliError::Usage(
            "give --rule FILE or --seed-example1".into(),
        )),
    }
}

fn dispatch(command: &Command) -> Result<Output, CliError> {
    match command {
        Command::Validate { source }
        | Command::Eval { source, .. }
        | Command::VerifySp { source, .. }
        | Command::VerifyGsp { source, .. }
        | Command::VerifyPe { source, .. } => {
            let value = rule_value(&source.rule, source.seed_example1)?;
            let x = value
                .get("X")
                .and_then(Value::as_array)
                .cloned()
                .unwrap_or_default();
            if needs_rationals(&x) {
                with_rule::<Rational>(command, &value)
            } else {
                with_rule::<i64>(command, &value)
            }
        }
        Command::Decompose {
            table,
            rule,
            seed_example1,
            guard,
        } => {
            let value = match table {
                Some(path) => read_json(path)?,
                None => rule_value(rule, *seed_example1)?,
            };
            let x = value
                .get("X")
                .and_then(Value::as_array)
                .cloned()
                .unwrap_or_default();
            if needs_rationals(&x) {
                decompose_cmd::<Rational>(&value, table.is_some(), guard)
            } else {
                decompose_cmd::<i64>(&value, table.is_some(), guard)
            }
        }
        Command::EnumerateRules { instance, omega } => {
            if instance.x.contains('/') {
                enumerate_cmd::<Rational>(instance, omega.as_deref())
            } else {
                enumerate_cmd::<i64>(instance, omega.as_deref())
            }
        }
        Command::ExhaustiveCheck { instance } => {
            if instance.x.contains('/') {
                exhaustive_cmd::<Rational>(instance)
            } else {
                exhaustive_cmd::<i64>(instance)
            }
        }
    }
}

fn full_table<T: Location>(
    rule: &RuleSpec<T>,
    guard: &ProfileGuard,
) -> Result<FullTable, CliError> {
    let m = rule.alternatives().len();
    let total = profile_count(rule.roster(), m);
    if total > guard.max_profiles {
        return Err(SizeGuard {
            what: "full profile count",
            actual: total,
            limit: guard.max_profiles,
        }
        .into());
    }
    Ok(RuleTable::of_rule(rule).expand_full())
}

/// Number of full profiles, saturating at `usize::MAX`.
fn profile_count(roster: &AgentRoster, m: usize) -> usize {
    let per_agent = 1usize
        .checked_shl(m.saturating_sub(1) as u32)
        .unwrap_or(usize::MAX);
    (0..roster.n()).fold(1usize, |acc, _| acc.saturating_mul(per_agent))
}

fn with_rule<T: Location>(command: &Command, value: &Value) -> Result<Output, CliError> {
    let rule: RuleSpec<T> = rule_from_json(value)?;
    let x = rule.alternatives();
    match command {
        Command::Validate { .. } => Ok(Output::ok(json!({
            "valid": true,
            "omega": range_to_json(rule.omega(), x),
            "r_omega": rule.r_omega().iter().map(|&e| ext_elem_to_json(e, x)).collect::<Vec<_>>(),
        }))),
        Command::Eval {
            peaks,
            dips,
            profile,
            ..
        } => {
            let outcome = match (peaks, dips, profile) {
                (Some(p), Some(d), _) => {
                    let rp = RestrictedProfile::from_locations(
                        x,
                        &parse_list::<T>("--peaks", p)?,
                        &parse_list::<T>("--dips", d)?,
                    )?;
                    rule.evaluate(&rp)?
                }
                (_, _, Some(path)) => {
                    let profile = profile_from_json(&read_json(path)?, x, rule.roster())?;
                    rule.evaluate_full(&profile)?
                }
                _ => {
                    return Err(CliError::Usage(
                        "give --peaks and --dips, or --profile".into(),
                    ))
                }
            };
            Ok(Output::ok(x.point(outcome).to_json()))
        }
        Command::VerifySp { guard, .. } => {
            let table = full_table(&rule, guard)?;
            Ok(match is_strategy_proof(&table) {
                Ok(()) => Output::ok(json!({ "strategy_proof": true })),
                Err(w) => Output {
                    body: json!({ "strategy_proof": false, "witness": w.to_json(x) }),
                    witness: true,
                },
            })
        }
        Command::VerifyGsp { guard, .. } => {
            let table = full_table(&rule, guard)?;
            Ok(match is_group_strategy_proof(&table) {
                Ok(()) => Output::ok(json!({ "group_strategy_proof": true })),
                Err(w) => Output {
                    body: json!({ "group_strategy_proof": false, "witness": w.to_json(x) }),
                    witness: true,
                },
            })
        }
        Command::VerifyPe { guard, .. } => {
            let table = full_table(&rule, guard)?;
            Ok(match is_pareto_efficient(&table) {
                Ok(()) => Output::ok(json!({ "pareto_efficient": true })),
                Err(w) => Output {
                    body: json!({ "pareto_efficient": false, "witness": w.to_json(x) }),
                    witness: true,
                },
            })
        }
        _ => unreachable!("only rule commands reach here"),
    }
}

/// Reads a table file: `{"X", "peaked", "dipped", "outcomes": [{"peaks",
/// "dips", "outcome"}, ...]}` with one entry per restricted profile over X.
fn table_from_json<T: Location>(value: &Value) -> Result<(AlternativeSet<T>, RuleTable), CliError> {
    let field = |name: &str| {
        value
            .get(name)
            .ok_or_else(|| CliError::Usage(format!("table file lacks \"{name}\"")))
    };
    let points = field("X")?
        .as_array()
        .ok_or_else(|| CliError::Usage("\"X\" must be an array".into()))?;
    let x: AlternativeSet<T> = peakdip::json::alternatives_from_json(points, "X")?;
    let ids = |name: &str| -> Result<Vec<usize>, CliError> {
        serde_json::from_value(field(name)?.clone())
            .map_err(|e| CliError::Usage(format!("\"{name}\": {e}")))
    };
    let roster = AgentRoster::from_ids(&ids("peaked")?, &ids("dipped")?)?;
    let grid = x.full_range();
    let size = x.len().pow(roster.n() as u32);
    let index = RuleTable::new(x.len(), roster.clone(), grid.clone(), vec![0; size])?;
    let entries = field("outcomes")?
        .as_array()
        .ok_or_else(|| CliError::Usage("\"outcomes\" must be an array".into()))?;
    let mut outcomes: Vec<Option<usize>> = vec![None; size];
    for (k, entry) in entries.iter().enumerate() {
        let rp = peakdip::json::restricted_from_json::<T>(
            &json!({ "peaks": entry["peaks"], "dips": entry["dips"] }),
            &x,
        )
        .map_err(|e| CliError::Usage(format!("outcomes[{k}]: {e}")))?;
        let at = index
            .index_of(&rp)
            .map_err(|e| CliError::Usage(format!("outcomes[{k}]: {e}")))?;
        let outcome = T::from_json(&entry["outcome"])
            .and_then(|o| x.index_of(&o))
            .ok_or_else(|| {
                CliError::Usage(format!("outcomes[{k}]: outcome is not an alternative"))
            })?;
        if outcomes[at]
            .replace(outcome)
            .is_some_and(|prev| prev != outcome)
        {
            return Err(CliError::Usage(format!(
                "outcomes[{k}]: profile listed twice with different outcomes"
            )));
        }
    }
    let missing = outcomes.iter().filter(|o| o.is_none()).count();
    if missing > 0 {
        return Err(CliError::Usage(format!(
            "table lacks {missing} of its {size} restricted profiles"
        )));
    }
    let table = RuleTable::new(
        x.len(),
        roster,
        grid,
        outcomes.into_iter().flatten().collect(),
    )?;
    Ok((x, table))
}

fn decompose_cmd<T: Location>(
    value: &Value,
    is_table: bool,
    guard: &ProfileGuard,
) -> Result<Output, CliError> {
    let (x, table) = if is_table {
        table_from_json::<T>(value)?
    } else {
        let rule: RuleSpec<T> = rule_from_json(value)?;
        let table = RuleTable::of_rule(&rule);
        (rule.alternatives().clone(), table)
    };
    let total = profile_count(table.roster(), x.len());
    if total > guard.max_profiles {
        return Err(SizeGuard {
            what: "full profile count",
            actual: total,
            limit: guard.max_profiles,
        }
        .into());
    }
    Ok(match decompose_table(&table, &x) {
        Ok(rule) => Output::ok(rule_to_json(&rule)),
        Err(e) => Output {
            body: json!({ "decomposed": false, "reason": e.to_string() }),
            witness: true,
        },
    })
}

fn instance_parts<T: Location>(
    instance: &Instance,
) -> Result<(AlternativeSet<T>, AgentRoster, Limits), CliError> {
    let x = AlternativeSet::new(parse_list::<T>("--x", &instance.x)?)?;
    let roster = AgentRoster::split(instance.peaked, instance.dipped);
    if roster.n() == 0 {
        return Err(CliError::Usage(
            "give at least one agent with --peaked or --dipped".into(),
        ));
    }
    let limits = Limits {
        max_alternatives: instance.max_alternatives,
        max_agents: instance.max_agents,
        max_profiles: instance.max_profiles,
    };
    Ok((x, roster, limits))
}

fn enumerate_cmd<T: Location>(
    instance: &Instance,
    omega: Option<&str>,
) -> Result<Output, CliError> {
    let (x, roster, limits) = instance_parts::<T>(instance)?;
    let omega = match omega {
        Some(text) => x.range_of(&parse_list::<T>("--omega", text)?)?,
        None => x.full_range(),
    };
    let found = enumerate_rulespecs(&x, &omega, &roster, &limits)?;
    Ok(Output::ok(json!({
        "omega": range_to_json(&omega, &x),
        "raw_count": found.raw_count,
        "count": found.rules.len(),
        "rules": found.rules.iter().map(rule_to_json).collect::<Vec<_>>(),
    })))
}

fn exhaustive_cmd<T: Location>(instance: &Instance) -> Result<Output, CliError> {
    let (x, roster, limits) = instance_parts::<T>(instance)?;
    let report = exhaustive_theorem_check(&x, &roster, &limits)?;
    Ok(Output {
        witness: !report.holds(),
        body: report.to_json(),
    })
}
