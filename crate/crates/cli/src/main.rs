//! `dualcell`: batch front end with JSON input and output.
//!
//! Exit codes: 0 success, 1 a contradiction or violation was found, 2 bad input.

mod commands;
mod golden;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

/// Largest lattice dimension accepted.
pub const MAX_DIM: usize = 5;

#[derive(Parser, Debug)]
#[command(name = "dualcell", version, about = "Dual cells of lattice tilings and the case engine for parallelogram systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write JSON here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for randomized runs.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    /// Largest lattice dimension to accept (at most 5).
    #[arg(long, global = true, default_value_t = MAX_DIM)]
    pub max_dim: usize,
}

#[derive(Args, Debug, Clone)]
pub struct GramArg {
    /// Lattice JSON: `{"dim": d, "gram": [[...], ...]}`; entries are integers or `[num, den]`.
    #[arg(long)]
    pub gram: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dirichlet-Voronoi cell, Venkov conditions and belts.
    Dv(GramArg),
    /// Face lattice of the tiling.
    Tiling {
        #[command(subcommand)]
        cmd: TilingCmd,
    },
    /// Dual cell of every face orbit with its classification.
    DualCells(GramArg),
    /// 3-irreducibility of the tiling.
    Irreducible(GramArg),
    /// Canonical scalings.
    Scaling {
        #[command(subcommand)]
        cmd: ScalingCmd,
    },
    /// Generatrissa and the recovered quadratic form (d = 2).
    Lift(GramArg),
    /// Closed 4-uniform hypergraphs.
    Hyper {
        #[command(subcommand)]
        cmd: HyperCmd,
    },
    /// Parallelogram systems and the cone tests.
    Cases {
        #[command(subcommand)]
        cmd: CasesCmd,
    },
}

#[derive(Subcommand, Debug)]
pub enum TilingCmd {
    /// Orbit counts, Euler characteristic, per-orbit dual cells, skinniness.
    Audit(GramArg),
}

#[derive(Subcommand, Debug)]
pub enum ScalingCmd {
    /// Propagate gains from the (d-2)-stars into a canonical scaling.
    Build(GramArg),
    /// Check a scaling `{"<orbit>": factor, ...}` against every (d-2)-face.
    Verify {
        #[command(flatten)]
        gram: GramArg,
        #[arg(long)]
        scaling: PathBuf,
    },
    /// Coherence of every parallelogram flanked by pyramids.
    Coherence(GramArg),
}

#[derive(Subcommand, Debug)]
pub enum HyperCmd {
    /// Classes of local pairings of K5 up to relabeling.
    EnumerateK5,
    /// Moment identities of a hypergraph, or of random closed ones when no input is given.
    Audit {
        /// Hypergraph JSON: `{"vertices": [...], "edges": [[a,b,c,d], ...]}`.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Number of random instances.
        #[arg(long, default_value_t = 200)]
        random: usize,
    },
    /// A 5-10 or 6-11 subhypergraph of a closed hypergraph.
    FindSubgraph {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum CasesCmd {
    /// Solve every 5-10 and 6-11 system.
    RunAll {
        /// Directory holding `cases.json` with the published rows to compare against.
        #[arg(long)]
        golden: Option<PathBuf>,
    },
    /// Subtract every excluded cone from the nonvanishing directions.
    ConePipeline,
    /// Projection argument for a surviving direction.
    FinalCase {
        /// Direction, comma separated.
        #[arg(long, default_value = "-1,-1,-1,1,1", allow_hyphen_values = true)]
        x: String,
    },
}

/// Outcome of a command: JSON to print and whether a contradiction or violation was found.
pub struct Outcome {
    pub json: serde_json::Value,
    pub flagged: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("{path}: line {line}, column {column}: {msg}")]
    Json { path: String, line: usize, column: usize, msg: String },
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Failed(String),
}

fn configure_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("DUALCELL_THREADS") {
        let n: usize = v.parse().map_err(|_| CliError::Input(format!("DUALCELL_THREADS: not a number: {v}")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Input(format!("DUALCELL_THREADS: {e}")))?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    if cli.max_dim > MAX_DIM {
        return Err(CliError::Input(format!("--max-dim {} exceeds {MAX_DIM}", cli.max_dim)));
    }
    configure_threads()?;
    commands::dispatch(cli)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(o) => {
            let text = serde_json::to_string_pretty(&o.json).expect("serializable") + "\n";
            let written = match &cli.out {
                Some(p) => std::fs::write(p, text).map_err(|e| CliError::Read { path: p.display().to_string(), source: e }),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(if o.flagged { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
