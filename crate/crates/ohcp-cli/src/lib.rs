//! Subcommand implementations behind the `ohcp` binary. Every command
//! returns a JSON report; nothing here prints.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use ohcp::io::{parse_chain, parse_weights, read_complex, ParseError};
use ohcp::rational::{self, Q};
use ohcp::tu::DEFAULT_SEARCH_BUDGET;
use ohcp::SimplicialComplex;

mod commands;
mod fixtures;
pub mod report;

pub use commands::{homology, neutralization, solve, tu};
pub use fixtures::fixtures;

#[derive(Debug, Parser)]
#[command(name = "ohcp", version, about = "Optimal homologous chains and NTU neutralization")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for the randomized checks of `fixtures --verify`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Betti number and torsion of H_p.
    Homology {
        complex: PathBuf,
        #[arg(long, default_value_t = 1)]
        p: usize,
    },
    /// Solve the OHCP linear program for an input p-chain.
    Solve {
        complex: PathBuf,
        chain: PathBuf,
        #[arg(long, default_value_t = 1)]
        p: usize,
        #[command(flatten)]
        weights: WeightArgs,
        /// Most optimal vertices to list.
        #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
        /// Cross-check the optimum against a brute-force implementation.
        #[arg(long)]
        oracle: bool,
    },
    /// Total unimodularity of ∂_q and its MNTU submatrices.
    Tu {
        complex: PathBuf,
        #[arg(long, default_value_t = 2)]
        q: usize,
        /// Node budget of the circuit search.
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET as u64, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
        /// Cross-check against a determinant scan.
        #[arg(long)]
        oracle: bool,
    },
    /// Decide whether the complex is NTU neutralized in dimension q.
    Neutralization {
        complex: PathBuf,
        #[arg(long, default_value_t = 2)]
        q: usize,
        /// Coordinate bound of the neutralizing-chain search.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
        radius: u64,
        /// Bases per cell for the projection procedure, nodes for the chain search.
        #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
    },
    /// Write the built-in corpus and its manifest into a directory.
    Fixtures {
        dir: PathBuf,
        /// Re-derive every manifest entry with the library.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
    },
}

#[derive(Debug, Clone, Args)]
pub struct WeightArgs {
    /// Weight file, one `value v0 … vp` per line; unlisted simplices weigh 1.
    #[arg(long, conflicts_with = "uniform_weight")]
    pub weights: Option<PathBuf>,
    /// Same weight on every p-simplex.
    #[arg(long, value_parser = parse_weight)]
    pub uniform_weight: Option<Q>,
}

fn parse_weight(s: &str) -> Result<Q, String> {
    let w = rational::parse(s).ok_or_else(|| format!("`{s}` is not an integer or p/q"))?;
    if w < rational::zero() {
        return Err(format!("weight `{s}` is negative"));
    }
    Ok(w)
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{file}: {source}")]
    Io { file: String, source: std::io::Error },
    #[error("{file}:{}: {} (token `{}`)", .source.line, .source.message, .source.token)]
    Parse { file: String, source: ParseError },
    #[error("{0}")]
    Input(String),
    #[error("internal invariant failed: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Input(_) => 2,
            CliError::Internal(_) => 4,
        }
    }
}

/// A finished report. `exhausted` names the budget that ran out and
/// `failed` a check that did not hold; either way the report is still
/// written, and the exit code is 3 or 4.
#[derive(Debug)]
pub struct Outcome {
    pub report: Value,
    pub exhausted: Option<String>,
    pub failed: Option<String>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.failed.is_some() {
            4
        } else if self.exhausted.is_some() {
            3
        } else {
            0
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("reports are plain JSON");
        s.push('\n');
        s
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Homology { complex, p } => homology(complex, *p),
        Command::Solve { complex, chain, p, weights, budget, oracle } => {
            solve(complex, chain, *p, weights, *budget as usize, *oracle)
        }
        Command::Tu { complex, q, budget, oracle } => tu(complex, *q, *budget as usize, *oracle),
        Command::Neutralization { complex, q, radius, budget } => {
            neutralization(complex, *q, *radius as usize, *budget as usize)
        }
        Command::Fixtures { dir, verify, budget } => fixtures(dir, *verify, *budget as usize, cli.seed),
    }
}

pub(crate) struct Input {
    name: String,
    text: String,
}

pub(crate) fn read(path: &Path) -> Result<Input, CliError> {
    let name = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { file: name.clone(), source })?;
    Ok(Input { name, text })
}

pub(crate) fn load_complex(path: &Path) -> Result<(Input, Arc<SimplicialComplex>), CliError> {
    let input = read(path)?;
    let k = read_complex(&input.text).map_err(|source| CliError::Parse { file: input.name.clone(), source })?;
    Ok((input, Arc::new(k)))
}

pub(crate) fn load_chain(input: &Input, k: &SimplicialComplex, p: usize) -> Result<ohcp::Chain, CliError> {
    parse_chain(&input.text, k, p).map_err(|source| CliError::Parse { file: input.name.clone(), source })
}

pub(crate) fn load_weights(input: &Input, k: &SimplicialComplex, p: usize) -> Result<Vec<Q>, CliError> {
    parse_weights(&input.text, k, p, &rational::one())
        .map_err(|source| CliError::Parse { file: input.name.clone(), source })
}

/// SHA-256 over the length-prefixed input texts and the config JSON.
pub(crate) fn digest(inputs: &[&Input], config: &Value) -> String {
    let mut h = Sha256::new();
    for i in inputs {
        h.update((i.text.len() as u64).to_le_bytes());
        h.update(i.text.as_bytes());
    }
    h.update(config.to_string().as_bytes());
    hex::encode(h.finalize())
}

pub(crate) fn envelope(command: &str, inputs: &[&Input], config: Value, result: Value) -> Value {
    json!({
        "tool": "ohcp",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "input_digest": digest(inputs, &config),
        "config": config,
        "result": result,
    })
}
