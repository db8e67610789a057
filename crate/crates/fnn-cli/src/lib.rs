//! `fnn` — scenario-driven front end for the racing mirror-neuron engine.
//!
//! Subcommands: `simulate`, `trace`, `compete`, `boost`, `ideal` and
//! `memorial {record,stats,experts}`. Exit codes: 0 on success, 1 for
//! runtime or engine failures, 2 for usage and scenario errors. All output
//! is deterministic; wall-clock timestamps only enter `memorial record` and
//! can be pinned with `--timestamp`.

mod report;
mod scenario;
mod svg;

pub use scenario::{parse_scenario, Scenario, ScenarioError};

use clap::{Args, Parser, Subcommand, ValueEnum};
use fnn_core::consensus::{boost_reward, ideal_distance, ideal_time, net_compete};
use fnn_core::memorial::{Memorial, RaceRecord, SCHEMA_VERSION};
use fnn_core::neuron::CoreKind;
use fnn_core::race::{run_race, Deadline};
use std::f64::consts::TAU;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "fnn", version, about = "Deterministic racing mirror-neuron decision simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Race the scenario pool to its deadline and print the outcome
    Simulate(SimulateArgs),
    /// Write one neuron's intention/motor/sensory traces as an SVG file
    Trace(TraceArgs),
    /// Select the expert network (best performers) for the scenario
    Compete(CompeteArgs),
    /// Plan velocity boosts toward the best performer and anticipate reward
    Boost(CompeteArgs),
    /// Predict the best result and the last truth instant before the deadline
    Ideal(IdealArgs),
    /// Record races into, and query, the persistent memorial
    #[command(subcommand)]
    Memorial(MemorialCommand),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoreArg {
    Motor,
    Sensory,
}

impl From<CoreArg> for CoreKind {
    fn from(core: CoreArg) -> Self {
        match core {
            CoreArg::Motor => CoreKind::Motor,
            CoreArg::Sensory => CoreKind::Sensory,
        }
    }
}

#[derive(Args)]
struct SimulateArgs {
    /// Scenario file (JSON)
    #[arg(long)]
    scenario: PathBuf,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Snap displayed responses to the 360 whole-degree truth values
    #[arg(long = "quantize-360")]
    quantize_360: bool,
}

#[derive(Args)]
struct TraceArgs {
    #[arg(long)]
    scenario: PathBuf,
    /// Node id from the scenario pool
    #[arg(long)]
    node: String,
    /// Output SVG path
    #[arg(long)]
    out: PathBuf,
    /// Samples per curve over one full turn
    #[arg(long, default_value_t = 721)]
    samples: usize,
}

#[derive(Args)]
struct CompeteArgs {
    #[arg(long)]
    scenario: PathBuf,
    #[arg(long, value_enum, default_value = "motor")]
    core: CoreArg,
    /// Expert count m (defaults to the scenario's `experts`, itself 3)
    #[arg(long)]
    experts: Option<usize>,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Args)]
struct IdealArgs {
    #[arg(long)]
    scenario: PathBuf,
    #[arg(long, value_enum, default_value = "motor")]
    core: CoreArg,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Subcommand)]
enum MemorialCommand {
    /// Run the scenario race and append it to the store
    Record(RecordArgs),
    /// Print record counts and the mean decision loss
    Stats(StatsArgs),
    /// Expert network over the distinct neurons recorded for a request type
    Experts(ExpertsArgs),
}

#[derive(Args)]
struct RecordArgs {
    #[arg(long)]
    scenario: PathBuf,
    /// Memorial store file (created on first append)
    #[arg(long)]
    store: PathBuf,
    /// Override the scenario's request type tag
    #[arg(long = "request-type")]
    request_type: Option<String>,
    /// The user's actual decision (0 or 1)
    #[arg(long = "user-decision")]
    user_decision: Option<u8>,
    /// Ground-truth label for the decision (0 or 1)
    #[arg(long = "correct-label")]
    correct_label: Option<u8>,
    /// RFC 3339 timestamp to store instead of the current time
    #[arg(long)]
    timestamp: Option<String>,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long)]
    store: PathBuf,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Args)]
struct ExpertsArgs {
    #[arg(long)]
    store: PathBuf,
    #[arg(long = "request-type")]
    request_type: String,
    /// Time deadline in seconds (exclusive with --distance)
    #[arg(long, conflicts_with = "distance")]
    time: Option<f64>,
    /// Distance deadline in length units (exclusive with --time)
    #[arg(long)]
    distance: Option<f64>,
    #[arg(long, value_enum, default_value = "motor")]
    core: CoreArg,
    #[arg(long, default_value_t = 3)]
    experts: usize,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

enum CliError {
    /// Bad invocation or bad scenario input; exit code 2.
    Usage(String),
    /// Engine, storage or filesystem failure; exit code 1.
    Runtime(String),
}

impl From<ScenarioError> for CliError {
    fn from(e: ScenarioError) -> Self {
        CliError::Usage(e.to_string())
    }
}

type CmdResult = Result<String, CliError>;

/// Parse `args` and execute; output goes to the given writers. Returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return e.exit_code();
        }
    };

    let result = match cli.command {
        Command::Simulate(args) => cmd_simulate(args),
        Command::Trace(args) => cmd_trace(args),
        Command::Compete(args) => cmd_compete(args),
        Command::Boost(args) => cmd_boost(args),
        Command::Ideal(args) => cmd_ideal(args),
        Command::Memorial(cmd) => match cmd {
            MemorialCommand::Record(args) => cmd_record(args),
            MemorialCommand::Stats(args) => cmd_stats(args),
            MemorialCommand::Experts(args) => cmd_experts(args),
        },
    };

    match result {
        Ok(text) => {
            let _ = write!(out, "{text}");
            0
        }
        Err(CliError::Runtime(message)) => {
            let _ = writeln!(err, "error: {message}");
            1
        }
        Err(CliError::Usage(message)) => {
            let _ = writeln!(err, "error: {message}");
            2
        }
    }
}

fn cmd_simulate(args: SimulateArgs) -> CmdResult {
    let scenario = parse_scenario(&args.scenario)?;
    let outcome = run_race(&scenario.pool, &scenario.deadline);
    Ok(match args.format {
        Format::Json => report::to_json(&outcome),
        Format::Table => {
            report::outcome_table(&outcome, args.quantize_360 || scenario.quantize_360)
        }
    })
}

fn cmd_trace(args: TraceArgs) -> CmdResult {
    let scenario = parse_scenario(&args.scenario)?;
    let node = scenario
        .pool
        .node_by_id(&args.node.as_str().into())
        .ok_or_else(|| CliError::Runtime(format!("unknown node id \"{}\"", args.node)))?;
    let traces = node
        .traces(0.0, TAU, args.samples)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let svg = svg::neuron_svg(&traces);
    std::fs::write(&args.out, svg.as_bytes())
        .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", args.out.display())))?;
    Ok(format!("wrote {}\n", args.out.display()))
}

fn cmd_compete(args: CompeteArgs) -> CmdResult {
    let scenario = parse_scenario(&args.scenario)?;
    let m = args.experts.unwrap_or(scenario.experts);
    let experts = net_compete(&scenario.pool, &scenario.deadline, args.core.into(), m)
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    Ok(match args.format {
        Format::Json => report::to_json(&experts),
        Format::Table => report::expert_table(&experts),
    })
}

fn cmd_boost(args: CompeteArgs) -> CmdResult {
    let scenario = parse_scenario(&args.scenario)?;
    let m = args.experts.unwrap_or(scenario.experts);
    let boosted = boost_reward(&scenario.pool, &scenario.deadline, args.core.into(), m)
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    Ok(match args.format {
        Format::Json => report::to_json(&boosted),
        Format::Table => report::boost_table(&boosted),
    })
}

fn cmd_ideal(args: IdealArgs) -> CmdResult {
    let scenario = parse_scenario(&args.scenario)?;
    let core = args.core.into();
    let ideal = match scenario.deadline {
        Deadline::Time(t) => ideal_time(&scenario.pool, t, core),
        Deadline::Distance(d) => ideal_distance(&scenario.pool, d, core),
    }
    .map_err(|e| CliError::Runtime(e.to_string()))?;
    Ok(match args.format {
        Format::Json => report::to_json(&ideal),
        Format::Table => report::ideal_table(&ideal),
    })
}

fn cmd_record(args: RecordArgs) -> CmdResult {
    for label in [args.user_decision, args.correct_label].into_iter().flatten() {
        if label > 1 {
            return Err(CliError::Usage(format!("decision labels must be 0 or 1 (got {label})")));
        }
    }
    let scenario = parse_scenario(&args.scenario)?;
    let outcome = run_race(&scenario.pool, &scenario.deadline);
    let mut store = Memorial::open(&args.store).map_err(|e| CliError::Runtime(e.to_string()))?;
    let record = RaceRecord {
        version: SCHEMA_VERSION,
        id: store.next_id(),
        timestamp: args.timestamp.unwrap_or_else(|| {
            chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
        }),
        request_type: args.request_type.unwrap_or(scenario.request_type),
        pool: scenario.pool.clone(),
        deadline: scenario.deadline,
        outcome,
        user_decision: args.user_decision,
        correct_label: args.correct_label,
        extra: serde_json::Map::new(),
    };
    let id = store.append_record(&record).map_err(|e| CliError::Runtime(e.to_string()))?;
    Ok(match args.format {
        Format::Json => report::to_json(&record),
        Format::Table => format!("recorded race {id} ({}) -> {}\n", record.request_type, args.store.display()),
    })
}

fn cmd_stats(args: StatsArgs) -> CmdResult {
    let store = Memorial::open(&args.store).map_err(|e| CliError::Runtime(e.to_string()))?;
    let stats = store.stats().map_err(|e| CliError::Runtime(e.to_string()))?;
    Ok(match args.format {
        Format::Json => report::to_json(&stats),
        Format::Table => report::stats_table(&stats),
    })
}

fn cmd_experts(args: ExpertsArgs) -> CmdResult {
    let deadline = match (args.time, args.distance) {
        (Some(t), None) => Deadline::Time(t),
        (None, Some(d)) => Deadline::Distance(d),
        _ => return Err(CliError::Usage("exactly one of --time or --distance is required".into())),
    };
    deadline.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let store = Memorial::open(&args.store).map_err(|e| CliError::Runtime(e.to_string()))?;
    let experts = store
        .expert_set(&args.request_type, &deadline, args.core.into(), args.experts)
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    Ok(match args.format {
        Format::Json => report::to_json(&experts),
        Format::Table => report::expert_table(&experts),
    })
}
