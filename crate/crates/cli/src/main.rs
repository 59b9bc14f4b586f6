mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Serialize)]
#[command(name = "smc", version, about = "Subspace-metric code constructions, sweeps, bounds and channel trials")]
pub struct Cli {
    /// Output format for reports and tables.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Lift the pair-count guards on exhaustive sweeps.
    #[arg(long, global = true)]
    pub force: bool,
    /// Write the primary output here (plus a manifest) instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Build a code and write it as canonical JSON.
    Construct(ConstructArgs),
    /// Exhaustive minimum distance of a code file, with witness.
    Metric(MetricArgs),
    /// Run property suites; exit 1 if any check fails.
    Verify(VerifyArgs),
    /// Closed-form bounds, or every applicable bound for a code file.
    Bounds(BoundsArgs),
    /// Seeded insertion/deletion channel with nearest-codeword decoding.
    Simulate(SimulateArgs),
    /// Fold a vector code into blocks.
    Fold(FoldArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Gabidulin,
    LiftedMrd,
    Spread,
    SidonOrbit,
    BlockEnlarged,
    Span,
    PartialSpan,
    AllVectors,
    FoldedEval,
    SingerDs,
}

#[derive(Args, Serialize)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    pub kind: Kind,
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Word length for span, partial-span and all-vectors.
    #[arg(long)]
    pub l: Option<usize>,
    /// Source code file (subspace code for span kinds, rank code for lifted-mrd,
    /// difference set for folded-eval).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Field modulus, constant term first, e.g. 1,1,0,1.
    #[arg(long, value_delimiter = ',')]
    pub modulus: Option<Vec<u32>>,
}

#[derive(Args, Serialize)]
pub struct MetricArgs {
    pub code: PathBuf,
    /// hamming, insdel, subspace, subset or rank.
    #[arg(long)]
    pub metric: String,
    /// Block length for the r-th subspace and subset distances.
    #[arg(long)]
    pub block_len: Option<usize>,
}

#[derive(Args, Serialize)]
pub struct VerifyArgs {
    /// One of pseudometric, chain, delsarte, lifting, spread, orbit, thm21,
    /// thm91, bounds, channel, thm72, or all.
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Random pairs or triples for the metric suites.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    /// Random codes for the shift-witness suite.
    #[arg(long, default_value_t = 100)]
    pub codes: usize,
    /// Channel trials.
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
}

#[derive(Args, Serialize)]
pub struct BoundsArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub q: u32,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Vector code file to check every applicable bound against.
    #[arg(long)]
    pub code: Option<PathBuf>,
}

#[derive(Args, Serialize)]
pub struct SimulateArgs {
    pub code: PathBuf,
    #[arg(long = "ins", default_value_t = 0)]
    pub insertions: usize,
    #[arg(long = "del", default_value_t = 0)]
    pub deletions: usize,
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
}

#[derive(Args, Serialize)]
pub struct FoldArgs {
    pub code: PathBuf,
    /// Block length.
    #[arg(long)]
    pub s: usize,
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    match commands::run(&cli, argv) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
