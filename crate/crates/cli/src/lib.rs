//! `eolab` command-line frontend.
//!
//! [`run`] takes the full argument list and returns the exit code together
//! with everything destined for stdout and stderr, so the binary and the
//! tests share one code path.

use std::fmt::Write as _;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use eolab_core::oracle::{self, OracleReport};
use eolab_core::pattern::{self, ascents, inversions, least_violation, pattern_of};
use eolab_core::poset::{self, PatternPoset, ANALOGUE_NOTE};
use eolab_core::search::{self, Relation, SearchBudget, SearchStatus, WitnessReport, RESTRICTION};
use eolab_core::vm::{self, EnumeratorProgram, Scheduler, SchedulerKind};
use eolab_core::Error;

pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const SUITE_FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const UNAVAILABLE: i32 = 3;
    pub const ENUMERATION: i32 = 4;
    pub const BUDGET: i32 = 5;
}

const PREFIX_NOTE: &str =
    "prefix relation: necessary, not sufficient, for the same relation on full listings";

#[derive(Debug, Parser)]
#[command(
    name = "eolab",
    version,
    about = "Enumeration-order reducibility workbench"
)]
struct Cli {
    /// Output format. `dot` applies to `poset` only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Preorder,
    Inversion,
    Theorem10,
    Theorem3,
    Hasse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RelationArg {
    Eo,
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum ScheduleArg {
    Native,
    MinFirst,
    MaxFirst,
    Explicit,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Order pattern, ascents and inversions of a sequence.
    Pattern {
        /// Comma-separated distinct naturals, e.g. 5,2,9
        values: String,
    },
    /// Compare two sequences under the prefix relations.
    Cmp {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Explore the weak order on length-n patterns.
    Poset {
        #[arg(long)]
        n: usize,
        /// Emit a maximal chain from reversal to identity.
        #[arg(long, conflicts_with = "antichain")]
        chain: bool,
        /// Emit an antichain of this size.
        #[arg(long, value_name = "SIZE")]
        antichain: Option<usize>,
        /// Largest n accepted (at most 8).
        #[arg(long, default_value_t = 6)]
        cap: usize,
    },
    /// Dovetail a program and print its native prefix.
    Run {
        #[arg(long)]
        program: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1000)]
        round_cap: u64,
        #[arg(long, value_enum)]
        schedule: Option<ScheduleArg>,
        #[arg(long, default_value_t = 1)]
        window: usize,
        /// Buffer indices for `--schedule explicit`.
        #[arg(long)]
        choices: Option<String>,
    },
    /// Bounded witness search for the set-level relation.
    Search {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        window: usize,
        #[arg(long, value_enum, default_value_t = RelationArg::Eo)]
        relation: RelationArg,
        #[arg(long, default_value_t = 100_000)]
        max_nodes: u64,
        #[arg(long, default_value_t = 1000)]
        round_cap: u64,
    },
    /// Run an exhaustive oracle suite.
    Check {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        support: Option<String>,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: exit::USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Overflow { .. }
            | Error::DivisionByZero { .. }
            | Error::ZeroCost { .. }
            | Error::InsufficientEnumeration { .. } => exit::ENUMERATION,
            Error::NoAntichain { .. } => exit::UNAVAILABLE,
            _ => exit::USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<(i32, String), Failure>;

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                exit::USAGE
            } else {
                exit::SUCCESS
            };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    code,
                    stderr: text,
                    ..Default::default()
                }
            } else {
                Output {
                    code,
                    stdout: text,
                    ..Default::default()
                }
            };
        }
    };

    let format = cli.format;
    if format == Format::Dot && !matches!(cli.command, Command::Poset { .. }) {
        return Output {
            code: exit::USAGE,
            stderr: "error: --format dot is only available for `poset`\n".into(),
            ..Default::default()
        };
    }

    let result = match cli.command {
        Command::Pattern { values } => cmd_pattern(&values, format),
        Command::Cmp { left, right } => cmd_cmp(&left, &right, format),
        Command::Poset {
            n,
            chain,
            antichain,
            cap,
        } => cmd_poset(n, chain, antichain, cap, format),
        Command::Run {
            program,
            k,
            round_cap,
            schedule,
            window,
            choices,
        } => cmd_run(
            &program,
            k,
            round_cap,
            schedule,
            window,
            choices.as_deref(),
            format,
        ),
        Command::Search {
            a,
            b,
            k,
            window,
            relation,
            max_nodes,
            round_cap,
        } => cmd_search(&a, &b, k, window, relation, max_nodes, round_cap, format),
        Command::Check { suite, n, support } => cmd_check(suite, n, support.as_deref(), format),
    };

    match result {
        Ok((code, mut stdout)) => {
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            Output {
                code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(f) => Output {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}

/// Parses comma-separated decimal naturals.
pub fn parse_naturals(text: &str) -> Result<Vec<u64>, String> {
    text.split(',')
        .map(|item| {
            let item = item.trim();
            item.parse::<u64>()
                .map_err(|_| format!("`{item}` is not a natural number"))
        })
        .collect()
}

fn naturals(text: &str) -> Result<Vec<u64>, Failure> {
    parse_naturals(text).map_err(Failure::usage)
}

fn load_program(path: &str) -> Result<EnumeratorProgram, Failure> {
    let source = std::fs::read_to_string(Path::new(path))
        .map_err(|e| Failure::usage(format!("cannot read {path}: {e}")))?;
    EnumeratorProgram::parse(&source).map_err(|e| Failure::usage(format!("{path}: {e}")))
}

fn to_json(value: &serde_json::Value) -> String {
    serde_json::to_string(value).expect("json value serializes")
}

fn cmd_pattern(values: &str, format: Format) -> CmdResult {
    let input = naturals(values)?;
    let p = pattern_of(&input)?;
    let (asc, inv) = (ascents(&p), inversions(&p));
    let out = match format {
        Format::Json => to_json(&json!({
            "input": input,
            "pattern": p,
            "ascents": asc,
            "inversions": inv,
        })),
        _ => format!("pattern: {p}\nascents: {asc}\ninversions: {inv}\n"),
    };
    Ok((exit::SUCCESS, out))
}

fn cmd_cmp(left: &str, right: &str, format: Format) -> CmdResult {
    let (l, r) = (naturals(left)?, naturals(right)?);
    let (lp, rp) = (pattern_of(&l)?, pattern_of(&r)?);
    let l_leq_r = least_violation(&lp, &rp)?;
    let r_leq_l = least_violation(&rp, &lp)?;
    let (verdict_key, verdict) = match (l_leq_r.is_none(), r_leq_l.is_none()) {
        (true, true) => ("equivalent", "equivalent (uniform)"),
        (true, false) => ("left_leq_right_only", "left ≤eo right only"),
        (false, true) => ("right_leq_left_only", "right ≤eo left only"),
        (false, false) => ("incomparable", "incomparable"),
    };
    debug_assert_eq!(
        pattern::uniform(&lp, &rp)?,
        l_leq_r.is_none() && r_leq_l.is_none()
    );
    let out = match format {
        Format::Json => to_json(&json!({
            "left": l,
            "right": r,
            "leftPattern": lp,
            "rightPattern": rp,
            "verdict": verdict_key,
            "leftLeqRight": l_leq_r.is_none(),
            "rightLeqLeft": r_leq_l.is_none(),
            "leftLeqRightViolation": l_leq_r,
            "rightLeqLeftViolation": r_leq_l,
            "scope": PREFIX_NOTE,
        })),
        _ => {
            let direction = |name: &str, v: Option<(usize, usize)>, up: &str, down: &str| {
                match v {
                None => format!("{name}: true\n"),
                Some((i, j)) => format!(
                    "{name}: false (pair ({i},{j}) is an ascent of {up} and an inversion of {down})\n"
                ),
            }
            };
            let mut s = format!("verdict: {verdict}\nleft pattern: {lp}\nright pattern: {rp}\n");
            s += &direction("left ≤eo right", l_leq_r, "left", "right");
            s += &direction("right ≤eo left", r_leq_l, "right", "left");
            let _ = writeln!(s, "note: {PREFIX_NOTE}");
            s
        }
    };
    Ok((exit::SUCCESS, out))
}

fn cmd_poset(
    n: usize,
    chain: bool,
    antichain: Option<usize>,
    cap: usize,
    format: Format,
) -> CmdResult {
    if cap > poset::MAX_N {
        return Err(Failure::usage(format!(
            "--cap {cap} exceeds the hard limit {}",
            poset::MAX_N
        )));
    }
    if n == 0 || n > cap {
        return Err(Failure::usage(format!("n = {n} is out of range 1..={cap}")));
    }
    if chain {
        let c = poset::max_chain(n)?;
        let out = match format {
            Format::Json => to_json(&json!({
                "n": n,
                "chain": c,
                "length": c.len(),
                "note": ANALOGUE_NOTE,
            })),
            Format::Dot => {
                return Err(Failure::usage(
                    "--format dot exports the full poset; drop --chain",
                ))
            }
            Format::Text => {
                let mut s = format!("# {ANALOGUE_NOTE}\n# maximal chain, {} patterns\n", c.len());
                for p in c.patterns() {
                    let _ = writeln!(s, "{p}");
                }
                s
            }
        };
        return Ok((exit::SUCCESS, out));
    }
    if let Some(size) = antichain {
        let a = poset::sample_antichain(n, size)?;
        let verified = poset::verify_antichain(&a)?;
        let out = match format {
            Format::Json => to_json(&json!({
                "n": n,
                "size": size,
                "antichain": a,
                "verified": verified,
                "note": ANALOGUE_NOTE,
            })),
            Format::Dot => {
                return Err(Failure::usage(
                    "--format dot exports the full poset; drop --antichain",
                ))
            }
            Format::Text => {
                let mut s = format!(
                    "# {ANALOGUE_NOTE}\n# antichain of {size}, pairwise incomparable: {verified}\n"
                );
                for p in a.patterns() {
                    let _ = writeln!(s, "{p}");
                }
                s
            }
        };
        return Ok((exit::SUCCESS, out));
    }
    let poset = PatternPoset::build(n)?;
    let out = match format {
        Format::Json => poset.to_json(),
        Format::Dot => poset.to_dot(),
        Format::Text => {
            let mut s = format!(
                "# {ANALOGUE_NOTE}\nn: {n}\nnodes: {}\ncover edges: {}\nmaximum: {}\nminimum: {}\n",
                poset.nodes().len(),
                poset.hasse().len(),
                poset.nodes()[poset.top()],
                poset.nodes()[poset.bottom()],
            );
            for &(a, b) in poset.hasse() {
                let _ = writeln!(s, "{} -> {}", poset.nodes()[a], poset.nodes()[b]);
            }
            s
        }
    };
    Ok((exit::SUCCESS, out))
}

fn cmd_run(
    path: &str,
    k: usize,
    round_cap: u64,
    schedule: Option<ScheduleArg>,
    window: usize,
    choices: Option<&str>,
    format: Format,
) -> CmdResult {
    let program = load_program(path)?;
    let trace = vm::dovetail(&program, k, round_cap)?;
    let prefix = trace.prefix().ok();
    let pattern = prefix.as_ref().map(|p| p.pattern());

    let scheduler = match schedule {
        None => {
            if choices.is_some() {
                return Err(Failure::usage("--choices requires --schedule explicit"));
            }
            None
        }
        Some(kind) => {
            let kind = match kind {
                ScheduleArg::Native => SchedulerKind::Native,
                ScheduleArg::MinFirst => SchedulerKind::MinFirst,
                ScheduleArg::MaxFirst => SchedulerKind::MaxFirst,
                ScheduleArg::Explicit => SchedulerKind::Explicit,
            };
            let choices = match (kind, choices) {
                (SchedulerKind::Explicit, Some(c)) => {
                    naturals(c)?.into_iter().map(|v| v as usize).collect()
                }
                (SchedulerKind::Explicit, None) => {
                    return Err(Failure::usage("--schedule explicit requires --choices"))
                }
                (_, Some(_)) => {
                    return Err(Failure::usage("--choices requires --schedule explicit"))
                }
                (_, None) => Vec::new(),
            };
            Some(Scheduler {
                kind,
                window,
                choices,
            })
        }
    };
    let scheduled = match (&scheduler, &prefix) {
        (Some(s), Some(p)) => Some(vm::schedule(p, s, p.len())?),
        _ => None,
    };

    let out = match format {
        Format::Json => {
            let mut doc = json!({
                "program": program.name(),
                "emitted": trace.emitted,
                "rounds": trace.rounds,
                "truncated": trace.truncated,
                "pattern": pattern,
            });
            if let (Some(s), Some(out)) = (&scheduler, &scheduled) {
                doc["scheduler"] = serde_json::to_value(s).expect("scheduler serializes");
                doc["scheduled"] = json!(out);
                doc["scheduledPattern"] = json!(out.pattern());
            }
            to_json(&doc)
        }
        _ => {
            let mut s = format!("program: {}\n", program.name());
            let _ = writeln!(s, "emitted: {}", join(&trace.emitted));
            match &pattern {
                Some(p) => {
                    let _ = writeln!(s, "pattern: {p}");
                }
                None => s.push_str("pattern: (empty)\n"),
            }
            let _ = writeln!(s, "rounds: {}", trace.rounds);
            let _ = writeln!(s, "truncated: {}", trace.truncated);
            if let Some(out) = &scheduled {
                let _ = writeln!(s, "scheduled: {out}");
                let _ = writeln!(s, "scheduled pattern: {}", out.pattern());
            }
            s
        }
    };
    Ok((exit::SUCCESS, out))
}

fn join(values: &[u64]) -> String {
    values
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    a: &str,
    b: &str,
    k: usize,
    window: usize,
    relation: RelationArg,
    max_nodes: u64,
    round_cap: u64,
    format: Format,
) -> CmdResult {
    let (pa, pb) = (load_program(a)?, load_program(b)?);
    let budget = SearchBudget::new(k, window, max_nodes, round_cap)?;
    let relation = match relation {
        RelationArg::Eo => Relation::EoLeq,
        RelationArg::Uniform => Relation::Uniform,
    };
    let report = search::search_programs(&pa, &pb, &budget, relation)?;
    let code = match report.status {
        SearchStatus::WitnessFound => exit::SUCCESS,
        SearchStatus::SpaceExhausted => exit::UNAVAILABLE,
        SearchStatus::BudgetExceeded => exit::BUDGET,
    };
    let out = match format {
        Format::Json => report.to_json(),
        _ => search_text(&report),
    };
    Ok((code, out))
}

fn search_text(report: &WitnessReport) -> String {
    let status = match report.status {
        SearchStatus::WitnessFound => "witness_found (prefix witness)",
        SearchStatus::SpaceExhausted => "space_exhausted",
        SearchStatus::BudgetExceeded => "budget_exceeded",
    };
    let relation = match report.relation {
        Relation::EoLeq => "A ≤eo B",
        Relation::Uniform => "A ~ B",
    };
    let mut s = format!(
        "status: {status}\nrelation: {relation}\nk: {}\nwindow: {}\n",
        report.k, report.window
    );
    if let Some((sa, sb)) = &report.witness {
        let idx = |c: &[usize]| c.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        let _ = writeln!(s, "choices A: {}", idx(&sa.choices));
        let _ = writeln!(s, "choices B: {}", idx(&sb.choices));
    }
    if let Some((a, b)) = &report.prefixes {
        let _ = writeln!(s, "prefix A: {a} (pattern {})", a.pattern());
        let _ = writeln!(s, "prefix B: {b} (pattern {})", b.pattern());
    }
    let _ = writeln!(s, "nodes explored: {}", report.nodes_explored);
    let _ = writeln!(s, "restriction: {RESTRICTION}");
    s
}

fn cmd_check(suite: Suite, n: usize, support: Option<&str>, format: Format) -> CmdResult {
    if suite != Suite::Theorem3 && support.is_some() {
        return Err(Failure::usage("--support only applies to --suite theorem3"));
    }
    let report: OracleReport = match suite {
        Suite::Preorder => oracle::check_preorder_laws(n)?,
        Suite::Inversion => oracle::check_inversion_equiv(n)?,
        Suite::Theorem10 => oracle::check_theorem10(n)?,
        Suite::Hasse => oracle::check_hasse(n)?,
        Suite::Theorem3 => {
            let support = match support {
                Some(text) => naturals(text)?,
                None => (1..=n as u64).map(|v| 10 * v).collect(),
            };
            oracle::check_theorem3_finite(n, &support)?
        }
    };
    let code = if report.passed() {
        exit::SUCCESS
    } else {
        exit::SUITE_FAILED
    };
    let out = match format {
        Format::Json => report.to_json(),
        _ => {
            let mut s = format!(
                "suite: {}\nparams: {}\nchecked: {}\nfailures: {}\nresult: {}\n",
                report.suite,
                report.params,
                report.checked,
                report.failures.len(),
                if report.passed() { "pass" } else { "FAIL" },
            );
            for f in report.failures.iter().take(10) {
                let _ = writeln!(
                    s,
                    "  counterexample {} expected {} got {}",
                    f.inputs, f.expected, f.actual
                );
            }
            s
        }
    };
    Ok((code, out))
}
