//! `occult`: generate instances, check them, run the extraction procedures
//! and the treewidth solver. Every command prints one JSON report on stdout
//! and a one-line summary on stderr.
//!
//! Exit codes: 0 ok, 1 the property fails (with a witness or a violation in
//! the report), 2 a budget ran out, 3 bad usage or unreadable input.

mod commands;
mod params;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use params::{Config, Params};

#[derive(Parser, Debug)]
#[command(name = "occult", version, about = "Occultations, asterisms and the exact searches that check them")]
struct Cli {
    /// TOML file with defaults for any long flag.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads for the parallel searches.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a graph and its witness.
    Generate {
        family: Family,
        #[command(flatten)]
        params: Params,
        /// Write `<out>.graph.json` and `<out>.witness.json` instead of
        /// embedding them in the report.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write `<out>.dot`.
        #[arg(long)]
        dot: bool,
    },
    /// Test a property of a graph, or of a witness in it.
    Check {
        check: Check,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
        #[command(flatten)]
        params: Params,
    },
    /// Run one of the constructive procedures.
    Extract {
        procedure: Procedure,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
        #[command(flatten)]
        params: Params,
    },
    /// Exact treewidth, or bounds when the node budget runs out.
    Treewidth {
        #[arg(long)]
        graph: PathBuf,
        /// Where to write the decomposition.
        #[arg(long)]
        td: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = TdFormat::Pace)]
        format: TdFormat,
        #[command(flatten)]
        params: Params,
    },
    /// Graphviz DOT for a graph.
    Dot {
        #[arg(long)]
        graph: PathBuf,
        /// Write here instead of into the report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Wall,
    Complete,
    CompleteBipartite,
    Occultation,
    FullOccultation,
    AmpleInterrupted,
    Perturbed,
    Syzygy,
    Gemini,
    Constellation,
    Meager,
    Figure5,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Asterism,
    Ample,
    Interrupted,
    Invaded,
    FullOccultation,
    Syzygy,
    Gemini,
    Constellation,
    Perforated,
    Packing,
    Clique,
    Biclique,
    Decomposition,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Procedure {
    Occultation,
    SyzygyOrConstellation,
    GeminiCycles,
    TransitionCycles,
    MatchingOrCover,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TdFormat {
    Pace,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Refuted = 1,
    Indeterminate = 2,
    Usage = 3,
}

/// The name a value goes by on the command line.
pub fn flag_name(v: impl ValueEnum) -> String {
    v.to_possible_value().expect("no skipped variants").get_name().to_string()
}

impl Status {
    fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Refuted => "refuted",
            Status::Indeterminate => "indeterminate",
            Status::Usage => "usage-error",
        }
    }
}

/// What a command hands back: exit status, JSON report, summary line.
pub struct Outcome {
    pub status: Status,
    pub report: serde_json::Value,
    pub summary: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(Status::Usage as u8) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = run(cli).unwrap_or_else(|message| Outcome {
        status: Status::Usage,
        report: json!({ "error": message }),
        summary: message,
    });
    let mut report = outcome.report;
    if let Some(obj) = report.as_object_mut() {
        obj.insert("status".into(), json!(outcome.status.name()));
    }
    // a closed pipe on either stream is not worth a panic
    let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(&report).expect("report serialises"));
    let _ = writeln!(std::io::stderr(), "{}", outcome.summary);
    ExitCode::from(outcome.status as u8)
}

fn run(cli: Cli) -> Result<Outcome, String> {
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    if let Some(n) = cli.threads.or(config.threads) {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())?;
    }
    let defaults = config.params;
    match cli.command {
        Command::Generate { family, params, out, dot } => commands::generate(family, &params.or(defaults), out.as_deref(), dot),
        Command::Check { check, graph, witness, params } => commands::check(check, &graph, witness.as_deref(), &params.or(defaults)),
        Command::Extract { procedure, graph, witness, params } => commands::extract(procedure, &graph, witness.as_deref(), &params.or(defaults)),
        Command::Treewidth { graph, td, format, params } => commands::treewidth(&graph, td.as_deref(), format, &params.or(defaults)),
        Command::Dot { graph, out } => commands::dot(&graph, out.as_deref()),
    }
}
