use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Serialize;

use repcount_core::estimate::{analyze_signal, EstimateRecord};
use repcount_core::eval::{
    read_annotations, run_acceleration_experiment, run_acceleration_on_annotations, run_case_benchmark,
    run_idealized_experiment, stationary_annotations, synthetic_annotations, write_corpus,
};
use repcount_core::flowfield::{extract_signals, load_sequence};
use repcount_core::tfa::{ridge_csv, scalogram_csv, scalogram_pgm};
use repcount_core::{select_signal, CaseParams, Channel, MotionCase, RunConfig, Signal};

use crate::{
    AccelerationArgs, CasesArgs, Cli, Command, CountArgs, EvalCommand, IdealizedArgs, SpectrumArgs, SynthArgs,
};

pub fn run(cli: Cli) -> Result<()> {
    configure_threads()?;
    let cfg = load_config(cli.config.as_deref())?;
    match cli.command {
        Command::Count(a) => count(a, &cfg),
        Command::Synth(a) => synth(a),
        Command::Spectrum(a) => spectrum(a, &cfg),
        Command::Eval(EvalCommand::Idealized(a)) => eval_idealized(a, &cfg),
        Command::Eval(EvalCommand::Cases(a)) => eval_cases(a, &cfg),
        Command::Eval(EvalCommand::Acceleration(a)) => eval_acceleration(a, &cfg),
    }
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("REPCOUNT_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().with_context(|| format!("REPCOUNT_THREADS='{raw}' is not a thread count"))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring the thread pool")?;
    }
    Ok(())
}

fn load_config(path: Option<&Path>) -> Result<RunConfig> {
    let Some(path) = path else {
        return Ok(RunConfig::default());
    };
    let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    RunConfig::from_json(&text).with_context(|| format!("in config {}", path.display()))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes") + "\n"
}

fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<()> {
    if let Some(p) = path {
        std::fs::write(p, to_json(value)).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn load_flow(flow_dir: &Path, masks: Option<&Path>, fps: f64) -> Result<repcount_core::SignalBundle> {
    let seq = load_sequence(flow_dir, masks)?;
    if seq.masks_defaulted {
        eprintln!("warning: no masks given; using full-frame masks");
    }
    Ok(extract_signals(&seq.frames, fps)?)
}

fn count(a: CountArgs, cfg: &RunConfig) -> Result<()> {
    let bundle = load_flow(&a.flow_dir, a.masks.as_deref(), a.fps)?;
    let est = select_signal(&bundle, cfg)?;
    print!("{}", to_json(&EstimateRecord::from(&est)));
    Ok(())
}

fn synth(a: SynthArgs) -> Result<()> {
    let params = CaseParams {
        period_frames: a.period,
        n_frames: a.frames,
        width: a.width,
        height: a.height,
        amplitude: a.amplitude,
        texture_period: a.texture_period,
        duty_cycle: a.duty_cycle,
        fps: a.fps,
        drift: (a.drift_x, a.drift_y),
        noise_sigma: a.noise,
        seed: a.seed,
    };
    let cases = match &a.case {
        Some(name) => vec![name.parse::<MotionCase>()?],
        None => MotionCase::all(),
    };
    for dir in write_corpus(&cases, &params, &a.out)? {
        println!("{}", dir.display());
    }
    Ok(())
}

/// Parses one sample per line, taking the last comma-separated field.
/// Blank lines and `#` comments are skipped; a non-numeric first line is a header.
fn parse_signal_csv(text: &str, path: &Path) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    let mut first = true;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let field = line.rsplit(',').next().unwrap().trim();
        match field.parse::<f64>() {
            Ok(v) if v.is_finite() => out.push(v),
            _ if first => {}
            _ => bail!("{}:{}: '{field}' is not a finite number", path.display(), i + 1),
        }
        first = false;
    }
    Ok(out)
}

#[derive(Serialize)]
struct SpectrumSummary {
    samples: usize,
    scales: usize,
    channel: Option<Channel>,
    count: f64,
    cost: f64,
    outputs: Vec<PathBuf>,
}

fn spectrum(a: SpectrumArgs, cfg: &RunConfig) -> Result<()> {
    let (samples, dt, channel) = if let Some(p) = &a.signal {
        let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
        (parse_signal_csv(&text, p)?, 1.0 / a.fps, None)
    } else {
        let flow = a.flow.as_deref().expect("clap enforces --signal or --flow");
        let bundle = load_flow(flow, a.masks.as_deref(), a.fps)?;
        let channel = match &a.channel {
            Some(name) => name.parse::<Channel>()?,
            None => select_signal(&bundle, cfg)?.channel,
        };
        (bundle.channel(channel).to_vec(), bundle.dt(), Some(channel))
    };
    if samples.len() < 2 {
        bail!("signal too short: {} sample(s)", samples.len());
    }
    let signal = Signal::new(samples, dt)?;
    let analysis = analyze_signal(&signal, cfg)?;
    let sc = &analysis.scalogram;

    let with_ext = |ext: &str| {
        let mut s = a.out.clone().into_os_string();
        s.push(ext);
        PathBuf::from(s)
    };
    let outputs = vec![with_ext(".csv"), with_ext(".pgm"), with_ext(".ridge.csv")];
    if let Some(dir) = a.out.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let contents: [Vec<u8>; 3] = [
        scalogram_csv(sc).into_bytes(),
        scalogram_pgm(sc),
        ridge_csv(sc, analysis.ridge.indices(), analysis.path.indices()).into_bytes(),
    ];
    for (p, bytes) in outputs.iter().zip(contents) {
        std::fs::write(p, bytes).with_context(|| format!("writing {}", p.display()))?;
    }
    print!(
        "{}",
        to_json(&SpectrumSummary {
            samples: signal.len(),
            scales: sc.n_scales(),
            channel,
            count: analysis.count,
            cost: analysis.cost,
            outputs,
        })
    );
    Ok(())
}

fn eval_idealized(a: IdealizedArgs, cfg: &RunConfig) -> Result<()> {
    let seed = a.seed.unwrap_or(cfg.seed);
    let annotations = match &a.annotations {
        Some(p) => read_annotations(p)?,
        None => synthetic_annotations(a.n, seed),
    };
    let report = run_idealized_experiment(&annotations, a.noise, seed, cfg)?;
    print!("{}", report.to_table());
    write_json(a.json.as_deref(), &report)
}

fn eval_cases(a: CasesArgs, cfg: &RunConfig) -> Result<()> {
    let bench = run_case_benchmark(&a.corpus, cfg)?;
    print!("{}", bench.to_table());
    write_json(a.json.as_deref(), &bench)
}

fn eval_acceleration(a: AccelerationArgs, cfg: &RunConfig) -> Result<()> {
    let report = match &a.corpus {
        Some(dir) => run_acceleration_experiment(dir, cfg)?,
        None => run_acceleration_on_annotations(&stationary_annotations(a.n, a.seed.unwrap_or(cfg.seed)), cfg)?,
    };
    print!("{}", report.to_table());
    write_json(a.json.as_deref(), &report)
}
