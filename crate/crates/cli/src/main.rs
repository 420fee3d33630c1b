use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rainbow_star::bounds::{self, asymptotic_bound, exact_bound, Objective};
use rainbow_star::constructions::{build, ConstructionFamily, Params};
use rainbow_star::detector::{classify_vertices, find_rainbow_star};
use rainbow_star::model::{parse_edge_list, StarPattern};
use rainbow_star::oracle::{cover_oracle_s0q, max_exact, SearchOptions, DEFAULT_SLOT_GUARD};
use rainbow_star::verify::{run_suite, Suite, DEFAULT_SEED};

/// Rainbow Turán toolkit for directed stars.
#[derive(Parser)]
#[command(name = "rainbow-star", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    Sum,
    Min,
}

impl From<ObjectiveArg> for Objective {
    fn from(o: ObjectiveArg) -> Self {
        match o {
            ObjectiveArg::Sum => Objective::Sum,
            ObjectiveArg::Min => Objective::Min,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form bound (exact value, or coefficient of n^2 without --n).
    Bound {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        c: usize,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum)]
        objective: ObjectiveArg,
    },
    /// Build an extremal construction.
    Construct {
        #[arg(long, value_parser = parse_family)]
        family: ConstructionFamily,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        /// Write the edge list here instead of embedding it in the JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Detect rainbow stars in an edge-list file.
    Check {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    /// Exact optimum on a small instance.
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, value_enum)]
        objective: ObjectiveArg,
        #[arg(long, default_value_t = 60)]
        budget_secs: u64,
        /// Use the cover-structure oracle (requires p = 0).
        #[arg(long)]
        cover: bool,
        /// Search even above the edge-slot guard.
        #[arg(long)]
        force: bool,
        /// Also write the witness edge list here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite and print its report.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

fn parse_family(s: &str) -> Result<ConstructionFamily, String> {
    s.parse()
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

fn pattern(p: usize, q: usize) -> Result<StarPattern> {
    StarPattern::new(p, q).map_err(|e| anyhow!(e))
}

fn print(value: &Value) -> Result<()> {
    emit(&serde_json::to_string_pretty(value)?)
}

/// Writes a line to stdout; a closed pipe ends output quietly.
fn emit(text: &str) -> Result<()> {
    match writeln!(io::stdout().lock(), "{text}") {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

/// Runs a subcommand; `Ok(false)` means the command ran but reported failures.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Bound { p, q, c, n, objective } => {
            let pat = pattern(p, q)?;
            let result = match n {
                Some(n) => exact_bound(pat, n, c, objective.into()),
                None => asymptotic_bound(pat, c, objective.into()),
            }?;
            let mut out = serde_json::to_value(&result)?;
            let norm = result.pattern;
            if let Ok(t) = bounds::thresholds(norm.p, norm.q) {
                out["thresholds"] = serde_json::to_value(t)?;
                out["sum_threshold"] = serde_json::to_value(bounds::sum_threshold(norm.p, norm.q)?)?;
            }
            print(&out)?;
        }
        Command::Construct { family, n, c, p, q, out } => {
            let built = build(family, Params::new(n, c, p, q))?;
            let edges = built.collection.to_edge_list();
            let mut report = json!({
                "family": family,
                "params": built.params,
                "predicted_sum": built.predicted_sum,
                "predicted_min": built.predicted_min,
                "edge_counts": built.collection.edge_counts(),
                "parts": built.parts,
            });
            match out {
                Some(path) => {
                    fs::write(&path, edges).with_context(|| format!("writing {}", path.display()))?;
                    report["out"] = json!(path.display().to_string());
                }
                None => report["edge_list"] = json!(edges),
            }
            print(&report)?;
        }
        Command::Check { input, p, q } => {
            let text = fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
            let coll = parse_edge_list(&text)?;
            let pat = pattern(p, q)?;
            let star = find_rainbow_star(&coll, pat);
            print(&json!({
                "pattern": pat,
                "n": coll.n(),
                "c": coll.c(),
                "rainbow_free": star.is_none(),
                "embedding": star,
                "edge_counts": coll.edge_counts(),
                "classification": classify_vertices(&coll, pat),
            }))?;
        }
        Command::Oracle { n, c, p, q, objective, budget_secs, cover, force, out } => {
            let outcome = if cover {
                if p != 0 {
                    return Err(anyhow!("the cover oracle only handles p = 0"));
                }
                cover_oracle_s0q(n, c, q, objective.into())?
            } else {
                let options = SearchOptions {
                    budget: Duration::from_secs(budget_secs),
                    slot_guard: DEFAULT_SLOT_GUARD,
                    force,
                    ..SearchOptions::default()
                };
                max_exact(n, c, pattern(p, q)?, objective.into(), &options)?
            };
            if let Some(path) = out {
                fs::write(&path, outcome.witness.to_edge_list()).with_context(|| format!("writing {}", path.display()))?;
            }
            print(&serde_json::to_value(&outcome)?)?;
        }
        Command::Verify { suite, out, seed } => {
            let report = run_suite(suite, seed);
            let text = serde_json::to_string_pretty(&report)?;
            match out {
                Some(path) => fs::write(&path, text + "\n").with_context(|| format!("writing {}", path.display()))?,
                None => emit(&text)?,
            }
            return Ok(report.passed());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let _ = emit(&json!({ "error": format!("{e:#}") }).to_string());
            ExitCode::from(1)
        }
    }
}
