//! `martkit`: validate workspaces, classify processes, and compute
//! conditional expectations from the command line.
//!
//! Exit codes: 0 analysis ran, 2 invalid input, 3 event enumeration over
//! capacity, 4 internal invariant violated.

mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use martkit::json::to_canonical_string;
use martkit::martingale::{classify, transform, Characterization};
use martkit::measure::EventCap;
use martkit::process::{is_adapted, is_predictable, is_predictable_shifted, is_progressive, first_unadapted_time};
use martkit::workspace::coin_workspace;
use martkit::{cond_exp, Error, Partition, ProcessTable, Rat, Workspace, WorkspaceFile};

#[derive(Parser)]
#[command(name = "martkit", version, about = "Exact martingale analysis on finite probability spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a workspace is well formed.
    Validate { file: PathBuf },
    /// Martingale / submartingale / supermartingale report.
    Classify {
        file: PathBuf,
        #[command(flatten)]
        which: Which,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Conditional expectation of one process time given a σ-algebra.
    Condexp {
        file: PathBuf,
        /// A filtration time, or an explicit partition such as "[[0,1],[2,3]]".
        #[arg(long)]
        sigma: String,
        /// A process time, or "terminal".
        #[arg(long)]
        of: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Adapted / progressive / predictable checks.
    Process {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Check::All)]
        check: Check,
        /// Check the betting process of the workspace instead of the main process.
        #[arg(long)]
        bets: bool,
    },
    /// Write the workspace obtained by applying the martingale transform.
    Transform {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Emit a coin-toss workspace.
    Coin {
        /// Probability of heads, e.g. "2/3".
        #[arg(long, default_value = "1/2")]
        p: String,
        #[arg(long, default_value_t = 2)]
        tosses: usize,
    },
}

#[derive(Args)]
#[group(multiple = true)]
struct Which {
    #[arg(long)]
    pairwise: bool,
    #[arg(long)]
    succ: bool,
    #[arg(long)]
    set_integral: bool,
    #[arg(long)]
    difference: bool,
    #[arg(long)]
    all: bool,
}

impl Which {
    fn selected(&self) -> Vec<Characterization> {
        let picked: Vec<Characterization> = [
            (self.pairwise, Characterization::Pairwise),
            (self.succ, Characterization::Successor),
            (self.set_integral, Characterization::SetIntegral),
            (self.difference, Characterization::Difference),
        ]
        .into_iter()
        .filter_map(|(on, c)| on.then_some(c))
        .collect();
        if self.all || picked.is_empty() {
            Characterization::ALL.to_vec()
        } else {
            picked
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Adapted,
    Progressive,
    Predictable,
    All,
}

/// A failure together with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Capacity { .. } => 3,
            Error::InvariantViolation(_) => 4,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

type CmdResult = Result<(), Failure>;

fn load(path: &Path) -> Result<Workspace, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let file = WorkspaceFile::parse(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    Ok(file.resolve()?)
}

fn emit<T: Serialize>(value: &T) -> CmdResult {
    print!("{}", to_canonical_string(value).map_err(|e| Failure::input(e.to_string()))?);
    Ok(())
}

fn parse_time(arg: &str, horizon: usize, what: &str) -> Result<usize, Failure> {
    let t: usize = arg.trim().parse().map_err(|_| Failure::input(format!("{what}: expected a time index, got {arg:?}")))?;
    if t > horizon {
        return Err(Failure::input(format!("{what}: time {t} is out of range 0..={horizon}")));
    }
    Ok(t)
}

fn cmd_validate(file: &Path) -> CmdResult {
    let ws = load(file)?;
    println!(
        "ok: {} outcomes, {} times, dimension {}, total mass {}",
        ws.space.len(),
        ws.process.times(),
        ws.process.dim(),
        ws.space.total()
    );
    Ok(())
}

fn cmd_classify(file: &Path, which: &Which, format: Format) -> CmdResult {
    let ws = load(file)?;
    let report = classify(&ws.space, &ws.filtration, &ws.process, &which.selected(), EventCap::from_env())?;
    match format {
        Format::Json => emit(&report),
        Format::Text => {
            print!("{}", render::classification(&report, ws.space.labels()));
            Ok(())
        }
    }
}

fn cmd_condexp(file: &Path, sigma: &str, of: &str, format: Format) -> CmdResult {
    let ws = load(file)?;
    let horizon = ws.process.horizon();
    let part = if sigma.trim_start().starts_with('[') {
        let p: Partition =
            serde_json::from_str(sigma).map_err(|e| Failure::input(format!("--sigma: {e}")))?;
        if p.universe_size() != ws.space.len() {
            return Err(Failure::input(format!(
                "--sigma: partition covers {} outcomes but the space has {}",
                p.universe_size(),
                ws.space.len()
            )));
        }
        p
    } else {
        ws.filtration.at(parse_time(sigma, horizon, "--sigma")?).clone()
    };
    let t = if of.trim() == "terminal" { horizon } else { parse_time(of, horizon, "--of")? };
    let result = cond_exp(&ws.space, &part, ws.process.at(t))?;
    match format {
        Format::Json => emit(&result),
        Format::Text => {
            print!("{}", render::cond_exp(&result, ws.space.labels()));
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct AdaptedReport {
    holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_unadapted_time: Option<usize>,
}

#[derive(Serialize)]
struct PredictableReport {
    holds: bool,
    predictable_sigma: bool,
    shifted: bool,
}

#[derive(Serialize)]
struct ProcessReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    adapted: Option<AdaptedReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    progressive: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    predictable: Option<PredictableReport>,
}

fn cmd_process(file: &Path, check: Check, bets: bool) -> CmdResult {
    let ws = load(file)?;
    let x: &ProcessTable = if bets {
        ws.transform.as_ref().ok_or_else(|| Failure::input("workspace has no \"transform\" process"))?
    } else {
        &ws.process
    };
    let f = &ws.filtration;
    let wants = |c: Check| check == c || check == Check::All;
    let mut report = ProcessReport { adapted: None, progressive: None, predictable: None };
    if wants(Check::Adapted) {
        let first = first_unadapted_time(x, f)?;
        debug_assert_eq!(first.is_none(), is_adapted(x, f)?);
        report.adapted = Some(AdaptedReport { holds: first.is_none(), first_unadapted_time: first });
    }
    if wants(Check::Progressive) {
        report.progressive = Some(is_progressive(x, f)?);
    }
    if wants(Check::Predictable) {
        let via_sigma = is_predictable(x, f)?;
        let shifted = is_predictable_shifted(x, f)?;
        if via_sigma != shifted {
            return Err(Error::InvariantViolation(format!(
                "predictable σ-algebra says {via_sigma}, shifted adaptedness says {shifted}"
            ))
            .into());
        }
        report.predictable = Some(PredictableReport { holds: via_sigma, predictable_sigma: via_sigma, shifted });
    }
    emit(&report)
}

fn cmd_transform(file: &Path, output: Option<&Path>) -> CmdResult {
    let ws = load(file)?;
    let bets = ws.transform.as_ref().ok_or_else(|| Failure::input("workspace has no \"transform\" process"))?;
    let out = ws.with_process(transform(bets, &ws.process)?).to_canonical_json();
    match output {
        Some(path) => fs::write(path, out).map_err(|e| Failure::input(format!("{}: {e}", path.display()))),
        None => {
            print!("{out}");
            Ok(())
        }
    }
}

fn cmd_coin(p: &str, tosses: usize) -> CmdResult {
    let p: Rat = p.parse().map_err(|e: Error| Failure::input(format!("--p: {e}")))?;
    if p.is_negative() || p > Rat::one() {
        return Err(Failure::input("--p must lie in [0, 1]"));
    }
    if tosses == 0 || tosses > 16 {
        return Err(Failure::input("--tosses must be between 1 and 16"));
    }
    print!("{}", coin_workspace(&p, tosses).to_canonical_json());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate { file } => cmd_validate(file),
        Command::Classify { file, which, format } => cmd_classify(file, which, *format),
        Command::Condexp { file, sigma, of, format } => cmd_condexp(file, sigma, of, *format),
        Command::Process { file, check, bets } => cmd_process(file, *check, *bets),
        Command::Transform { file, output } => cmd_transform(file, output.as_deref()),
        Command::Coin { p, tosses } => cmd_coin(p, *tosses),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure { code, message }) => {
            eprintln!("martkit: {message}");
            ExitCode::from(code)
        }
    }
}
