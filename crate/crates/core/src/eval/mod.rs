//! Annotations, count metrics and the experiment runners.

mod corpus;
mod experiments;

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use corpus::{
    read_case, stationary_annotations, synthetic_annotations, write_case, write_corpus, CaseRecord, StoredCase,
};
pub use experiments::{
    run_acceleration_experiment, run_acceleration_on_annotations, run_acceleration_on_sequences, run_case_benchmark,
    run_case_benchmark_on, run_idealized_experiment, AccelerationReport, CaseBenchmark, CaseRow, IdealizedReport,
};

/// Per-cycle temporal bounds of one video.
///
/// On disk: `{"id": str, "fps": number, "cycle_bounds": [int, ...], "count": int}`.
/// `count` is optional when reading and must equal `#bounds - 1` if given.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "AnnotationJson", into = "AnnotationJson")]
pub struct VideoAnnotation {
    pub id: String,
    pub fps: f64,
    pub cycle_bounds: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AnnotationJson {
    id: String,
    fps: f64,
    cycle_bounds: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    count: Option<usize>,
}

impl TryFrom<AnnotationJson> for VideoAnnotation {
    type Error = Error;

    fn try_from(raw: AnnotationJson) -> Result<Self> {
        let a = VideoAnnotation::new(raw.id, raw.fps, raw.cycle_bounds)?;
        match raw.count {
            Some(c) if c != a.count() => Err(Error::BadAnnotation(format!(
                "'{}': count {c} disagrees with {} annotated cycles",
                a.id,
                a.count()
            ))),
            _ => Ok(a),
        }
    }
}

impl From<VideoAnnotation> for AnnotationJson {
    fn from(a: VideoAnnotation) -> Self {
        let count = Some(a.count());
        AnnotationJson { id: a.id, fps: a.fps, cycle_bounds: a.cycle_bounds, count }
    }
}

impl VideoAnnotation {
    pub fn new(id: impl Into<String>, fps: f64, cycle_bounds: Vec<u64>) -> Result<Self> {
        let a = Self { id: id.into(), fps, cycle_bounds };
        a.validate()?;
        Ok(a)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.fps > 0.0 && self.fps.is_finite()) {
            return Err(Error::BadAnnotation(format!("'{}': fps {} must be positive", self.id, self.fps)));
        }
        if self.cycle_bounds.len() < 2 {
            return Err(Error::BadAnnotation(format!("'{}': need at least two cycle bounds", self.id)));
        }
        if let Some(w) = self.cycle_bounds.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::BadAnnotation(format!(
                "'{}': cycle bounds not strictly increasing ({} then {})",
                self.id, w[0], w[1]
            )));
        }
        Ok(())
    }

    /// Number of annotated cycles.
    pub fn count(&self) -> usize {
        self.cycle_bounds.len() - 1
    }

    pub fn cycle_lengths(&self) -> Vec<u64> {
        self.cycle_bounds.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// (longest − shortest cycle) / mean cycle length.
    pub fn cycle_length_variation(&self) -> f64 {
        let lens = self.cycle_lengths();
        let max = *lens.iter().max().unwrap() as f64;
        let min = *lens.iter().min().unwrap() as f64;
        let mean = lens.iter().sum::<u64>() as f64 / lens.len() as f64;
        (max - min) / mean
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("annotation serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::BadAnnotation(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::CorpusFormat { path: path.to_path_buf(), reason: e.to_string() })?;
        Self::from_json(&text).map_err(|e| Error::CorpusFormat { path: path.to_path_buf(), reason: e.to_string() })
    }
}

/// Reads a JSON array of annotations.
pub fn read_annotations(path: &Path) -> Result<Vec<VideoAnnotation>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::CorpusFormat { path: path.to_path_buf(), reason: e.to_string() })?;
    serde_json::from_str(&text).map_err(|e| Error::CorpusFormat { path: path.to_path_buf(), reason: e.to_string() })
}

fn check_lengths(preds: &[f64], truths: &[f64]) -> Result<()> {
    if preds.len() != truths.len() {
        return Err(Error::LengthMismatch(preds.len(), truths.len()));
    }
    if preds.is_empty() {
        return Err(Error::LengthMismatch(0, 0));
    }
    Ok(())
}

/// Mean and population standard deviation of |pred − truth| / truth.
pub fn mae(preds: &[f64], truths: &[f64]) -> Result<(f64, f64)> {
    check_lengths(preds, truths)?;
    if let Some(i) = truths.iter().position(|&t| t <= 0.0) {
        return Err(Error::ZeroTruth(i));
    }
    let errs: Vec<f64> = preds.iter().zip(truths).map(|(p, t)| (p - t).abs() / t).collect();
    let n = errs.len() as f64;
    let mean = errs.iter().sum::<f64>() / n;
    let var = errs.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / n;
    Ok((mean, var.sqrt()))
}

/// Fraction of items whose count is off by at most one.
pub fn oboa(preds: &[f64], truths: &[f64]) -> Result<f64> {
    check_lengths(preds, truths)?;
    let hits = preds.iter().zip(truths).filter(|(p, t)| (*p - *t).abs() <= 1.0).count();
    Ok(hits as f64 / preds.len() as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalItem {
    pub id: String,
    pub truth: f64,
    pub prediction: f64,
    pub abs_rel_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub per_item: Vec<EvalItem>,
    pub mae: f64,
    pub mae_std: f64,
    pub oboa: f64,
}

impl EvalReport {
    pub fn new(ids: Vec<String>, preds: Vec<f64>, truths: Vec<f64>) -> Result<Self> {
        if ids.len() != preds.len() {
            return Err(Error::LengthMismatch(ids.len(), preds.len()));
        }
        let (mae_mean, mae_std) = mae(&preds, &truths)?;
        let oboa = oboa(&preds, &truths)?;
        let per_item = ids
            .into_iter()
            .zip(preds.iter().zip(&truths))
            .map(|(id, (&p, &t))| EvalItem { id, truth: t, prediction: p, abs_rel_error: (p - t).abs() / t })
            .collect();
        Ok(Self { per_item, mae: mae_mean, mae_std, oboa })
    }

    pub fn truths(&self) -> Vec<f64> {
        self.per_item.iter().map(|i| i.truth).collect()
    }

    pub fn predictions(&self) -> Vec<f64> {
        self.per_item.iter().map(|i| i.prediction).collect()
    }

    /// One-line summary with MAE in percent.
    pub fn summary(&self) -> String {
        format!("MAE {:.1} ± {:.1}  OBOA {:.2}  (n = {})", 100.0 * self.mae, 100.0 * self.mae_std, self.oboa, self.per_item.len())
    }

    /// Aligned per-item table followed by the summary line.
    pub fn to_table(&self) -> String {
        let w = self.per_item.iter().map(|i| i.id.len()).max().unwrap_or(2).max(2);
        let mut out = format!("{:<w$}  {:>8}  {:>10}  {:>8}\n", "id", "truth", "predicted", "err %");
        for i in &self.per_item {
            let _ = writeln!(out, "{:<w$}  {:>8.2}  {:>10.2}  {:>8.1}", i.id, i.truth, i.prediction, 100.0 * i.abs_rel_error);
        }
        out.push_str(&self.summary());
        out.push('\n');
        out
    }
}
