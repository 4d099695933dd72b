use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::VideoAnnotation;
use crate::error::{Error, Result};
use crate::flowfield::{load_sequence, save_sequence, FlowField, ForegroundMask};
use crate::synth::{generate_case, CaseParams, MotionCase, SyntheticSequence};

const MIN_COUNT: usize = 4;
const MAX_COUNT: usize = 63;
const VARIATION_RANGE: (f64, f64) = (0.12, 0.60);
const FPS: f64 = 30.0;

/// Annotations with drifting tempo, shaped after typical repetition datasets:
/// counts spread over 4..=63 and cycle-length variation spread evenly over
/// [0.12, 0.60] (mean 0.36).
///
/// Each video's cycle lengths follow one smooth tempo profile (a ramp, a
/// cosine or a half sine, randomly signed) scaled so that the variation hits
/// its target before rounding to whole frames.
pub fn synthetic_annotations(n: usize, seed: u64) -> Vec<VideoAnnotation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts: Vec<usize> = (0..n)
        .map(|i| match n {
            1 => MIN_COUNT,
            _ => MIN_COUNT + ((i * (MAX_COUNT - MIN_COUNT)) as f64 / (n - 1) as f64).round() as usize,
        })
        .collect();
    let (lo, hi) = VARIATION_RANGE;
    let mut variations: Vec<f64> = (0..n).map(|i| lo + (hi - lo) * (i as f64 + 0.5) / n as f64).collect();
    counts.shuffle(&mut rng);
    variations.shuffle(&mut rng);

    counts
        .into_iter()
        .zip(variations)
        .enumerate()
        .map(|(i, (c, v))| {
            let mean_len = rng.random_range(10.0..=(2000.0 / c as f64).min(60.0));
            let kind = rng.random_range(0..3);
            let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            let mut profile: Vec<f64> = (0..c)
                .map(|k| {
                    let u = k as f64 / (c - 1) as f64;
                    sign * match kind {
                        0 => u,
                        1 => (PI * u).cos(),
                        _ => (PI * u).sin(),
                    }
                })
                .collect();
            let mean = profile.iter().sum::<f64>() / c as f64;
            let (pmin, pmax) = profile.iter().fold((f64::MAX, f64::MIN), |(a, b), &p| (a.min(p), b.max(p)));
            for p in &mut profile {
                *p = (*p - mean) / (pmax - pmin);
            }
            let mut bounds = vec![0u64];
            for p in profile {
                let len = (mean_len * (1.0 + v * p)).round().max(3.0) as u64;
                bounds.push(bounds.last().unwrap() + len);
            }
            VideoAnnotation::new(format!("synthetic-{i:03}"), FPS, bounds).expect("increasing bounds")
        })
        .collect()
}

/// Uniform-tempo annotations: 6..30 cycles of 12..40 frames each.
pub fn stationary_annotations(n: usize, seed: u64) -> Vec<VideoAnnotation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let k: u64 = rng.random_range(6..30);
            let period: u64 = rng.random_range(12..40);
            let bounds = (0..=k).map(|j| j * period).collect();
            VideoAnnotation::new(format!("stationary-{i:03}"), FPS, bounds).expect("increasing bounds")
        })
        .collect()
}

/// Contents of a case's `params.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseRecord {
    pub case: String,
    pub params: CaseParams,
    pub truth_count: f64,
}

/// Writes a sequence as `flow_NNNN.flo`, `mask_NNNN.pgm`, `truth.json`
/// (annotation) and `params.json` into `dir`.
pub fn write_case(seq: &SyntheticSequence, dir: &Path) -> Result<()> {
    save_sequence(dir, &seq.frames)?;
    let write = |name: &str, text: String| {
        let p = dir.join(name);
        std::fs::write(&p, text + "\n").map_err(|e| Error::CorpusFormat { path: p, reason: e.to_string() })
    };
    write("truth.json", seq.annotation().to_json())?;
    let record = CaseRecord { case: seq.case.name(), params: seq.params.clone(), truth_count: seq.truth_count };
    write("params.json", serde_json::to_string_pretty(&record)?)
}

/// Generates and writes `cases` into `out_dir/<case-name>/`.
pub fn write_corpus(cases: &[MotionCase], params: &CaseParams, out_dir: &Path) -> Result<Vec<PathBuf>> {
    params.validate()?;
    cases
        .par_iter()
        .map(|&case| {
            let dir = out_dir.join(case.name());
            write_case(&generate_case(case, params)?, &dir)?;
            Ok(dir)
        })
        .collect()
}

/// A case read back from disk.
#[derive(Debug, Clone)]
pub struct StoredCase {
    pub id: String,
    pub annotation: VideoAnnotation,
    /// Present for generated corpora.
    pub record: Option<CaseRecord>,
    pub frames: Vec<(FlowField, ForegroundMask)>,
}

/// Reads one case directory: frames, masks and `truth.json`.
pub fn read_case(dir: &Path) -> Result<StoredCase> {
    let annotation = VideoAnnotation::read(&dir.join("truth.json"))?;
    let params_path = dir.join("params.json");
    let record = if params_path.exists() {
        let text = std::fs::read_to_string(&params_path)?;
        Some(
            serde_json::from_str(&text)
                .map_err(|e| Error::CorpusFormat { path: params_path.clone(), reason: e.to_string() })?,
        )
    } else {
        None
    };
    let frames = load_sequence(dir, None)?.frames;
    let id = dir.file_name().map_or_else(|| annotation.id.clone(), |n| n.to_string_lossy().into_owned());
    Ok(StoredCase { id, annotation, record, frames })
}

/// Case directories under `root` (those holding a `truth.json`), sorted by name.
pub(crate) fn case_dirs(root: &Path) -> Result<Vec<PathBuf>> {
    let entries = std::fs::read_dir(root)
        .map_err(|e| Error::CorpusFormat { path: root.to_path_buf(), reason: e.to_string() })?;
    let mut dirs = Vec::new();
    for entry in entries {
        let p = entry?.path();
        if p.is_dir() && p.join("truth.json").is_file() {
            dirs.push(p);
        }
    }
    if dirs.is_empty() {
        return Err(Error::CorpusFormat { path: root.to_path_buf(), reason: "no case directories with truth.json".into() });
    }
    dirs.sort();
    Ok(dirs)
}
