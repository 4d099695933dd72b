use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::corpus::{case_dirs, read_case};
use super::{EvalReport, VideoAnnotation};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::estimate::{select_signal, wavelet_count};
use crate::flowfield::{extract_signals, Channel, FlowField, ForegroundMask, SignalBundle};
use crate::synth::{accelerate_indices, add_noise, idealized_signal, SyntheticSequence};
use crate::tfa::{periodogram_count, Signal};

/// Periodogram versus wavelet counts on idealized signals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdealizedReport {
    pub noise_sigma: f64,
    pub mean_cycle_length_variation: f64,
    pub fourier: EvalReport,
    pub wavelet: EvalReport,
    /// Items where the wavelet error is strictly smaller.
    pub wins: usize,
    pub losses: usize,
    pub ties: usize,
}

/// Builds the idealized signal of every annotation, optionally adds noise
/// (item `i` uses seed `seed + i`), and counts it with the periodogram and
/// with the wavelet ridge.
pub fn run_idealized_experiment(
    annotations: &[VideoAnnotation],
    noise_sigma: f64,
    seed: u64,
    cfg: &RunConfig,
) -> Result<IdealizedReport> {
    if annotations.is_empty() {
        return Err(Error::InvalidParams("no annotations".into()));
    }
    cfg.validate()?;
    let counts: Vec<(f64, f64)> = annotations
        .par_iter()
        .enumerate()
        .map(|(i, a)| {
            let clean = idealized_signal(a)?;
            let x = add_noise(&clean, noise_sigma, seed.wrapping_add(i as u64))?;
            Ok((periodogram_count(&x, cfg.min_reps)?, wavelet_count(&x, cfg)?))
        })
        .collect::<Result<_>>()?;

    let ids: Vec<String> = annotations.iter().map(|a| a.id.clone()).collect();
    let truths: Vec<f64> = annotations.iter().map(|a| a.count() as f64).collect();
    let fourier = EvalReport::new(ids.clone(), counts.iter().map(|c| c.0).collect(), truths.clone())?;
    let wavelet = EvalReport::new(ids, counts.iter().map(|c| c.1).collect(), truths)?;
    let (mut wins, mut losses, mut ties) = (0, 0, 0);
    for (f, w) in fourier.per_item.iter().zip(&wavelet.per_item) {
        match w.abs_rel_error.partial_cmp(&f.abs_rel_error) {
            Some(std::cmp::Ordering::Less) => wins += 1,
            Some(std::cmp::Ordering::Greater) => losses += 1,
            _ => ties += 1,
        }
    }
    let clv = annotations.iter().map(|a| a.cycle_length_variation()).sum::<f64>() / annotations.len() as f64;
    Ok(IdealizedReport { noise_sigma, mean_cycle_length_variation: clv, fourier, wavelet, wins, losses, ties })
}

impl IdealizedReport {
    pub fn to_table(&self) -> String {
        let w = self.wavelet.per_item.iter().map(|i| i.id.len()).max().unwrap_or(2).max(2);
        let mut out = format!("{:<w$}  {:>6}  {:>8}  {:>8}\n", "id", "truth", "fourier", "wavelet");
        for (f, v) in self.fourier.per_item.iter().zip(&self.wavelet.per_item) {
            let _ = writeln!(out, "{:<w$}  {:>6.0}  {:>8.2}  {:>8.2}", f.id, f.truth, f.prediction, v.prediction);
        }
        let _ = writeln!(out, "fourier: {}", self.fourier.summary());
        let _ = writeln!(out, "wavelet: {}", self.wavelet.summary());
        let _ = writeln!(
            out,
            "wavelet wins {} / losses {} / ties {}  (noise sigma {}, mean cycle-length variation {:.3})",
            self.wins, self.losses, self.ties, self.noise_sigma, self.mean_cycle_length_variation
        );
        out
    }
}

/// One sequence of the case benchmark.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseRow {
    pub id: String,
    pub truth: f64,
    pub prediction: f64,
    /// `None` when every channel was flat.
    pub channel: Option<Channel>,
    pub cost: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelTally {
    pub channel: String,
    pub selected: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseBenchmark {
    pub report: EvalReport,
    pub rows: Vec<CaseRow>,
    /// Selection counts per channel, then `none`; sums to the number of rows.
    pub histogram: Vec<ChannelTally>,
}

impl CaseBenchmark {
    pub fn to_table(&self) -> String {
        let w = self.rows.iter().map(|r| r.id.len()).max().unwrap_or(4).max(4);
        let mut out = format!("{:<w$}  {:>6}  {:>9}  {:>8}  {:>8}\n", "case", "truth", "predicted", "channel", "cost");
        for r in &self.rows {
            let ch = r.channel.map_or("none", |c| c.name());
            let cost = r.cost.map_or_else(|| "-".to_string(), |c| format!("{c:.3}"));
            let _ = writeln!(out, "{:<w$}  {:>6.0}  {:>9.2}  {:>8}  {:>8}", r.id, r.truth, r.prediction, ch, cost);
        }
        out.push_str("selected:");
        for t in &self.histogram {
            let _ = write!(out, " {}={}", t.channel, t.selected);
        }
        out.push('\n');
        out.push_str(&self.report.summary());
        out.push('\n');
        out
    }
}

fn benchmark_row(id: &str, frames: &[(FlowField, ForegroundMask)], fps: f64, truth: f64, cfg: &RunConfig) -> Result<CaseRow> {
    let bundle = extract_signals(frames, fps)?;
    Ok(match select_signal(&bundle, cfg) {
        Ok(est) => CaseRow { id: id.into(), truth, prediction: est.count, channel: Some(est.channel), cost: Some(est.cost) },
        Err(Error::AllChannelsDegenerate) => CaseRow { id: id.into(), truth, prediction: 0.0, channel: None, cost: None },
        Err(e) => return Err(e),
    })
}

fn assemble_benchmark(rows: Vec<CaseRow>) -> Result<CaseBenchmark> {
    let report = EvalReport::new(
        rows.iter().map(|r| r.id.clone()).collect(),
        rows.iter().map(|r| r.prediction).collect(),
        rows.iter().map(|r| r.truth).collect(),
    )?;
    let mut histogram: Vec<ChannelTally> = Channel::ALL
        .iter()
        .map(|&c| ChannelTally { channel: c.name().into(), selected: rows.iter().filter(|r| r.channel == Some(c)).count() })
        .collect();
    histogram.push(ChannelTally { channel: "none".into(), selected: rows.iter().filter(|r| r.channel.is_none()).count() });
    Ok(CaseBenchmark { report, rows, histogram })
}

/// Signal extraction and selection on every case directory under `root`.
/// The truth is the annotated cycle count; flat sequences predict 0.
pub fn run_case_benchmark(root: &Path, cfg: &RunConfig) -> Result<CaseBenchmark> {
    cfg.validate()?;
    let mut rows = Vec::new();
    for dir in case_dirs(root)? {
        let case = read_case(&dir)?;
        rows.push(benchmark_row(&case.id, &case.frames, case.annotation.fps, case.annotation.count() as f64, cfg)?);
    }
    assemble_benchmark(rows)
}

/// [`run_case_benchmark`] on sequences held in memory.
pub fn run_case_benchmark_on(sequences: &[SyntheticSequence], cfg: &RunConfig) -> Result<CaseBenchmark> {
    cfg.validate()?;
    let rows = sequences
        .iter()
        .map(|s| benchmark_row(&s.case.name(), &s.frames, s.params.fps, s.annotation().count() as f64, cfg))
        .collect::<Result<Vec<_>>>()?;
    assemble_benchmark(rows)
}

/// Counts before and after speeding up the second half.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccelerationReport {
    pub wavelet_original: EvalReport,
    pub wavelet_accelerated: EvalReport,
    pub fourier_original: EvalReport,
    pub fourier_accelerated: EvalReport,
    /// Accelerated MAE minus original MAE.
    pub wavelet_degradation: f64,
    pub fourier_degradation: f64,
}

impl AccelerationReport {
    fn new(ids: Vec<String>, truths: Vec<f64>, counts: Vec<[f64; 4]>) -> Result<Self> {
        let col = |k: usize| -> Result<EvalReport> {
            EvalReport::new(ids.clone(), counts.iter().map(|c| c[k]).collect(), truths.clone())
        };
        let (wo, wa, fo, fa) = (col(0)?, col(1)?, col(2)?, col(3)?);
        Ok(Self {
            wavelet_degradation: wa.mae - wo.mae,
            fourier_degradation: fa.mae - fo.mae,
            wavelet_original: wo,
            wavelet_accelerated: wa,
            fourier_original: fo,
            fourier_accelerated: fa,
        })
    }

    pub fn to_table(&self) -> String {
        let items = &self.wavelet_original.per_item;
        let w = items.iter().map(|i| i.id.len()).max().unwrap_or(2).max(2);
        let mut out = format!(
            "{:<w$}  {:>6}  {:>8}  {:>8}  {:>8}  {:>8}\n",
            "id", "truth", "wav", "wav-acc", "fou", "fou-acc"
        );
        for (k, item) in items.iter().enumerate() {
            let _ = writeln!(
                out,
                "{:<w$}  {:>6.0}  {:>8.2}  {:>8.2}  {:>8.2}  {:>8.2}",
                item.id,
                item.truth,
                item.prediction,
                self.wavelet_accelerated.per_item[k].prediction,
                self.fourier_original.per_item[k].prediction,
                self.fourier_accelerated.per_item[k].prediction
            );
        }
        let _ = writeln!(out, "wavelet original:    {}", self.wavelet_original.summary());
        let _ = writeln!(out, "wavelet accelerated: {}", self.wavelet_accelerated.summary());
        let _ = writeln!(out, "fourier original:    {}", self.fourier_original.summary());
        let _ = writeln!(out, "fourier accelerated: {}", self.fourier_accelerated.summary());
        let _ = writeln!(
            out,
            "MAE degradation: wavelet {:+.4}, fourier {:+.4}",
            self.wavelet_degradation, self.fourier_degradation
        );
        out
    }
}

fn accelerate_signal(x: &Signal) -> Result<Signal> {
    let idx = accelerate_indices(x.len());
    Signal::new(idx.iter().map(|&i| x.samples()[i]).collect(), x.dt())
}

/// Acceleration experiment on the idealized signals of `annotations`.
pub fn run_acceleration_on_annotations(annotations: &[VideoAnnotation], cfg: &RunConfig) -> Result<AccelerationReport> {
    if annotations.is_empty() {
        return Err(Error::InvalidParams("no annotations".into()));
    }
    cfg.validate()?;
    let counts = annotations
        .par_iter()
        .map(|a| {
            let x = idealized_signal(a)?;
            let y = accelerate_signal(&x)?;
            Ok([
                wavelet_count(&x, cfg)?,
                wavelet_count(&y, cfg)?,
                periodogram_count(&x, cfg.min_reps)?,
                periodogram_count(&y, cfg.min_reps)?,
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    AccelerationReport::new(
        annotations.iter().map(|a| a.id.clone()).collect(),
        annotations.iter().map(|a| a.count() as f64).collect(),
        counts,
    )
}

// Wavelet counts via selection; the periodogram reads the channel selected
// on the original sequence.
fn bundle_counts(bundle: &SignalBundle, cfg: &RunConfig) -> Result<[f64; 4]> {
    let fast = bundle.resample(&accelerate_indices(bundle.len()))?;
    let selected = |b: &SignalBundle| match select_signal(b, cfg) {
        Ok(e) => Ok(Some(e)),
        Err(Error::AllChannelsDegenerate) => Ok(None),
        Err(e) => Err(e),
    };
    let (orig, acc) = (selected(bundle)?, selected(&fast)?);
    let Some(orig) = orig else {
        return Ok([0.0, acc.map_or(0.0, |e| e.count), 0.0, 0.0]);
    };
    let period = |b: &SignalBundle| periodogram_count(&Signal::new(b.channel(orig.channel).to_vec(), b.dt())?, cfg.min_reps);
    Ok([orig.count, acc.map_or(0.0, |e| e.count), period(bundle)?, period(&fast)?])
}

/// Acceleration experiment on every case directory under `root`.
pub fn run_acceleration_experiment(root: &Path, cfg: &RunConfig) -> Result<AccelerationReport> {
    cfg.validate()?;
    let (mut ids, mut truths, mut counts) = (Vec::new(), Vec::new(), Vec::new());
    for dir in case_dirs(root)? {
        let case = read_case(&dir)?;
        let bundle = extract_signals(&case.frames, case.annotation.fps)?;
        counts.push(bundle_counts(&bundle, cfg)?);
        truths.push(case.annotation.count() as f64);
        ids.push(case.id);
    }
    AccelerationReport::new(ids, truths, counts)
}

/// [`run_acceleration_experiment`] on sequences held in memory.
pub fn run_acceleration_on_sequences(sequences: &[SyntheticSequence], cfg: &RunConfig) -> Result<AccelerationReport> {
    cfg.validate()?;
    let mut counts = Vec::with_capacity(sequences.len());
    for s in sequences {
        counts.push(bundle_counts(&extract_signals(&s.frames, s.params.fps)?, cfg)?);
    }
    AccelerationReport::new(
        sequences.iter().map(|s| s.case.name()).collect(),
        sequences.iter().map(|s| s.annotation().count() as f64).collect(),
        counts,
    )
}
