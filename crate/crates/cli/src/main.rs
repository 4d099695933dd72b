//! `repcount`: count repetitions in flow sequences, synthesize test corpora
//! and run the evaluation experiments.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "repcount", version, about = "Repetition counting from dense optical flow")]
struct Cli {
    /// JSON file overriding analysis settings (unknown keys are rejected)
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count repetitions in a directory of numbered .flo files
    Count(CountArgs),
    /// Write synthetic flow sequences with ground truth
    Synth(SynthArgs),
    /// Render the scalogram, ridge and min-cost path of a signal
    Spectrum(SpectrumArgs),
    /// Run an evaluation experiment
    #[command(subcommand)]
    Eval(EvalCommand),
}

#[derive(Args, Debug)]
struct CountArgs {
    /// Directory of numbered .flo files
    flow_dir: PathBuf,
    /// Directory of numbered PGM/PBM masks (default: look next to the flow)
    #[arg(long)]
    masks: Option<PathBuf>,
    #[arg(long, default_value_t = 30.0)]
    fps: f64,
}

#[derive(Args, Debug)]
struct SynthArgs {
    /// Case name, e.g. rotation-oscillating-frontal
    #[arg(required_unless_present = "all", conflicts_with = "all")]
    case: Option<String>,
    /// Emit all 18 cases
    #[arg(long)]
    all: bool,
    #[arg(long, short)]
    out: PathBuf,
    /// Frames per cycle
    #[arg(long, default_value_t = 20)]
    period: usize,
    #[arg(long, default_value_t = 200)]
    frames: usize,
    #[arg(long, default_value_t = 64)]
    width: usize,
    #[arg(long, default_value_t = 64)]
    height: usize,
    /// Peak flow magnitude, pixels per frame
    #[arg(long, default_value_t = 1.0)]
    amplitude: f64,
    /// Spatial period of constant-motion cases, pixels
    #[arg(long, default_value_t = 20.0)]
    texture_period: f64,
    #[arg(long, default_value_t = 0.5)]
    duty_cycle: f64,
    #[arg(long, default_value_t = 30.0)]
    fps: f64,
    /// Constant drift added to all flow, pixels per frame
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    drift_x: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    drift_y: f64,
    /// Standard deviation of Gaussian flow noise
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct SpectrumArgs {
    /// Signal CSV: one sample per line (last column is used; a header line is allowed)
    #[arg(long, conflicts_with = "flow", required_unless_present = "flow")]
    signal: Option<PathBuf>,
    /// Flow directory to extract a channel from
    #[arg(long)]
    flow: Option<PathBuf>,
    #[arg(long, requires = "flow")]
    masks: Option<PathBuf>,
    /// Channel to render (default: the selected one)
    #[arg(long, requires = "flow")]
    channel: Option<String>,
    #[arg(long, default_value_t = 30.0)]
    fps: f64,
    /// Output prefix: writes PREFIX.csv, PREFIX.pgm and PREFIX.ridge.csv
    #[arg(long, short)]
    out: PathBuf,
}

#[derive(Subcommand, Debug)]
enum EvalCommand {
    /// Periodogram versus wavelet counts on idealized signals
    Idealized(IdealizedArgs),
    /// Signal selection on a synthetic case corpus
    Cases(CasesArgs),
    /// Count degradation when the second half is played twice as fast
    Acceleration(AccelerationArgs),
}

#[derive(Args, Debug)]
struct IdealizedArgs {
    /// Number of generated annotations
    #[arg(long, default_value_t = 100)]
    n: usize,
    /// Corpus and noise seed (default: the config seed)
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    /// JSON array of annotations to use instead of generated ones
    #[arg(long)]
    annotations: Option<PathBuf>,
    /// Also write the report as JSON
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CasesArgs {
    /// Corpus written by `repcount synth`
    corpus: PathBuf,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct AccelerationArgs {
    /// Flow corpus; without it a stationary signal corpus is generated
    corpus: Option<PathBuf>,
    #[arg(long, default_value_t = 20)]
    n: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    json: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
