//! `ordseq`: CLI harness over the ordinal sequence coding library.
//!
//! Subcommands map one-to-one onto library operations and speak JSONL/CSV on
//! the filesystem. Every randomized command takes a root seed (flag or config
//! file) and is bit-reproducible; every error path exits nonzero with a
//! machine-readable object on stderr and never leaves partial output files.

mod commands;
mod config;
mod errors;
mod io;
mod seeds;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::config::Config;

#[derive(Parser)]
#[command(name = "ordseq", version, about = "Ordinal codes for sequences: rank codes, stack-order trees, Dyck words, ordinal Huffman codecs, ordinal STDP networks and a rank-code sequence memory")]
struct Cli {
    /// Root seed for all randomized commands (overrides the config file).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Flat key=value config file; command-line flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Project sequences onto a seeded Y population of order-tuned neurons.
    Encode(EncodeArgs),
    /// Reconstruct sequences from a codebook entry and a bag of items.
    Decode(DecodeArgs),
    /// Find the best-matching codebook entry per sequence.
    Recognize(RecognizeArgs),
    /// Stack-order trees: nested JSON, dyadic weights, Dyck words.
    Tree(TreeArgs),
    /// Validate a balanced-parenthesis word.
    Dyck(DyckArgs),
    /// Ordinal Huffman codecs: build, encode, decode.
    #[command(subcommand)]
    Huffman(HuffmanCmd),
    /// Ordinal STDP weight matrices: store, recall, perturb.
    #[command(subcommand)]
    Stdp(StdpCmd),
    /// Structure detection: signatures, template matching.
    #[command(subcommand)]
    Detect(DetectCmd),
    /// Two-door task-set episodes, logged as CSV.
    Harlow(HarlowArgs),
    /// Run a verification suite and report pass/fail per check.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct EncodeArgs {
    /// Input sequences, JSONL rows {"id": "...", "items": [...]}.
    #[arg(long = "in")]
    input: PathBuf,
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Number of Y neurons.
    #[arg(long)]
    k: Option<usize>,
    /// Novelty threshold used when learning a codebook.
    #[arg(long)]
    theta: Option<f64>,
    /// Also learn a codebook from the inputs and write it here.
    #[arg(long = "learn-book")]
    learn_book: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_parser = ["jsonl", "csv"], default_value = "jsonl")]
    format: String,
}

#[derive(Args)]
struct DecodeArgs {
    /// Codebook written by `encode --learn-book`.
    #[arg(long)]
    book: PathBuf,
    /// JSONL rows {"id": "...", "z": 0, "bag": [...]}.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RecognizeArgs {
    /// Codebook written by `encode --learn-book`.
    #[arg(long)]
    book: PathBuf,
    /// Input sequences, JSONL rows {"id": "...", "items": [...]}.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_parser = ["jsonl", "csv"], default_value = "jsonl")]
    format: String,
}

#[derive(Args)]
struct TreeArgs {
    /// Input sequences, JSONL rows {"id": "...", "items": [...]}.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Inline comma-separated items instead of --in.
    #[arg(long, conflicts_with = "input")]
    items: Option<String>,
    /// Include the dyadic weight vector per sequence.
    #[arg(long)]
    weights: bool,
    /// Include the Dyck serialization per sequence.
    #[arg(long)]
    dyck: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DyckArgs {
    /// Word to validate; exit 0 when balanced, 1 otherwise.
    #[arg(long)]
    validate: String,
}

#[derive(Subcommand)]
enum HuffmanCmd {
    /// Build a codec from a frequency table.
    Build(HuffmanBuildArgs),
    /// Encode symbol streams with an existing codec.
    Encode(HuffmanCodeArgs),
    /// Decode label streams with an existing codec.
    Decode(HuffmanCodeArgs),
}

#[derive(Args)]
struct HuffmanBuildArgs {
    /// Frequency table, JSONL rows {"symbol": "...", "freq": "p/q"}.
    #[arg(long)]
    freqs: Option<PathBuf>,
    /// Count symbols from streams, JSONL rows {"id": "...", "symbols": [...]}.
    #[arg(long, conflicts_with = "freqs")]
    corpus: Option<PathBuf>,
    /// Branching factor.
    #[arg(long, default_value_t = 2)]
    arity: u8,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct HuffmanCodeArgs {
    /// Codec JSON written by `huffman build`.
    #[arg(long)]
    codec: PathBuf,
    /// JSONL rows: {"id", "symbols": [...]} to encode, {"id", "labels": [...]} to decode.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum StdpCmd {
    /// Store a rank code as an antisymmetric weight matrix.
    Store(StdpStoreArgs),
    /// Recall the stored order from a cue subset of units.
    Recall(StdpRecallArgs),
    /// Add seeded uniform noise while preserving antisymmetry.
    Perturb(StdpPerturbArgs),
    /// Sweep a noise grid and report recall stability per level as CSV.
    Sweep(StdpSweepArgs),
}

#[derive(Args)]
struct StdpStoreArgs {
    /// Comma-separated rank code, e.g. "5,3,2,4,1,6".
    #[arg(long)]
    rank: Option<String>,
    /// Comma-separated items; the rank code is computed from them.
    #[arg(long, conflicts_with = "rank")]
    items: Option<String>,
    /// Unit labels (defaults to u1..uN, or the items when --items is used).
    #[arg(long)]
    units: Option<String>,
    #[arg(long, value_parser = ["const", "invdist"], default_value = "const")]
    kernel: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct StdpRecallArgs {
    /// Weight matrix JSON written by `stdp store`.
    #[arg(long)]
    matrix: PathBuf,
    /// Comma-separated cue units (all units when omitted).
    #[arg(long)]
    active: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct StdpPerturbArgs {
    #[arg(long)]
    matrix: PathBuf,
    /// Noise half-width; each weight moves by at most this much.
    #[arg(long)]
    epsilon: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct StdpSweepArgs {
    #[arg(long)]
    matrix: PathBuf,
    /// Comma-separated noise grid (defaults to the config's `epsilons`).
    #[arg(long)]
    epsilons: Option<String>,
    /// Perturbation trials per noise level.
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum DetectCmd {
    /// Canonical repetition signature per token sequence.
    Signature(DetectSignatureArgs),
    /// Match a variable template against token sequences.
    Match(DetectMatchArgs),
    /// Compare the structure of two inline token sequences.
    Same(DetectSameArgs),
}

#[derive(Args)]
struct DetectSignatureArgs {
    /// JSONL rows {"word": "...", "tokens": [...], "label": "..."} (word and label optional).
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DetectMatchArgs {
    /// Variable pattern such as XYX.
    #[arg(long)]
    template: String,
    /// Require distinct variables to bind distinct tokens.
    #[arg(long)]
    distinct: bool,
    /// JSONL rows {"id": "...", "tokens": [...]}.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DetectSameArgs {
    /// First token sequence, comma-separated.
    #[arg(long)]
    a: String,
    /// Second token sequence, comma-separated.
    #[arg(long)]
    b: String,
}

#[derive(Args)]
struct HarlowArgs {
    /// Number of episodes to simulate.
    #[arg(long)]
    episodes: Option<usize>,
    /// Trials per episode.
    #[arg(long)]
    trials: Option<usize>,
    /// Draw the exploratory first door from the seed instead of fixing door A.
    #[arg(long)]
    random_first: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_parser = ["csv", "jsonl"], default_value = "csv")]
    format: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name: fig3f, argmax, catalan, stdp-recall, roundtrip, tasks, or all.
    suite: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match Config::resolve(cli.config.as_deref(), cli.seed) {
        Ok(c) => c,
        Err(err) => return err.report(),
    };
    let result = match cli.command {
        Command::Encode(args) => commands::encode::run(&config, args),
        Command::Decode(args) => commands::encode::run_decode(&config, args),
        Command::Recognize(args) => commands::encode::run_recognize(&config, args),
        Command::Tree(args) => commands::tree::run(args),
        Command::Dyck(args) => commands::tree::run_dyck(args),
        Command::Huffman(cmd) => commands::huffman::run(cmd),
        Command::Stdp(cmd) => commands::stdp::run(&config, cmd),
        Command::Detect(cmd) => commands::detect::run(cmd),
        Command::Harlow(args) => commands::harlow::run(&config, args),
        Command::Verify(args) => commands::verify::run(&config, args),
    };
    match result {
        Ok(code) => code,
        Err(err) => err.report(),
    }
}
