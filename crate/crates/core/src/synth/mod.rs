//! Ground-truth synthetic data.
//!
//! [`generate_case`] realizes the 18 fundamental recurrence cases (motion
//! type x continuity x viewpoint) as flow-field sequences with masks. The
//! remaining functions build 1-D test signals: sinusoids through annotated
//! cycle bounds, additive Gaussian noise, and the halfway speed-up.

mod cases;
mod signals;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::flowfield::{FlowField, ForegroundMask};

pub use cases::{amplitude_at, base_field, generate_case, mask_at};
pub use signals::{accelerate_halfway, accelerate_indices, add_noise, idealized_signal};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MotionType {
    Translation,
    Rotation,
    Expansion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Continuity {
    Constant,
    Intermittent,
    Oscillating,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum View {
    Side,
    Frontal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MotionCase {
    pub motion_type: MotionType,
    pub continuity: Continuity,
    pub view: View,
}

impl MotionCase {
    pub const fn new(motion_type: MotionType, continuity: Continuity, view: View) -> Self {
        Self { motion_type, continuity, view }
    }

    /// All 18 cases, ordered by motion type, then continuity, then view.
    pub fn all() -> Vec<MotionCase> {
        let mut out = Vec::with_capacity(18);
        for m in [MotionType::Translation, MotionType::Rotation, MotionType::Expansion] {
            for c in [Continuity::Constant, Continuity::Intermittent, Continuity::Oscillating] {
                for v in [View::Side, View::Frontal] {
                    out.push(MotionCase::new(m, c, v));
                }
            }
        }
        out
    }

    /// Kebab-case name such as `rotation-oscillating-frontal`.
    pub fn name(&self) -> String {
        let m = match self.motion_type {
            MotionType::Translation => "translation",
            MotionType::Rotation => "rotation",
            MotionType::Expansion => "expansion",
        };
        let c = match self.continuity {
            Continuity::Constant => "constant",
            Continuity::Intermittent => "intermittent",
            Continuity::Oscillating => "oscillating",
        };
        let v = match self.view {
            View::Side => "side",
            View::Frontal => "frontal",
        };
        format!("{m}-{c}-{v}")
    }
}

impl std::fmt::Display for MotionCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.name())
    }
}

impl std::str::FromStr for MotionCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let wanted = s.trim().to_ascii_lowercase().replace(['/', '_', ' '], "-");
        MotionCase::all().into_iter().find(|c| c.name() == wanted).ok_or_else(|| {
            let names: Vec<String> = MotionCase::all().iter().map(|c| c.name()).collect();
            Error::InvalidParams(format!("unknown case '{s}'; valid cases: {}", names.join(", ")))
        })
    }
}

/// Generator settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CaseParams {
    /// Frames per cycle.
    pub period_frames: usize,
    pub n_frames: usize,
    pub width: usize,
    pub height: usize,
    /// Peak flow magnitude at the object rim, pixels per frame.
    pub amplitude: f64,
    /// Spatial period of the texture chain for constant-motion cases, pixels.
    pub texture_period: f64,
    /// On-time fraction of intermittent motion.
    pub duty_cycle: f64,
    pub fps: f64,
    /// Constant camera drift added to every flow vector, pixels per frame.
    pub drift: (f64, f64),
    /// Standard deviation of i.i.d. Gaussian flow noise, pixels per frame.
    pub noise_sigma: f64,
    pub seed: u64,
}

impl Default for CaseParams {
    fn default() -> Self {
        Self {
            period_frames: 20,
            n_frames: 200,
            width: 64,
            height: 64,
            amplitude: 1.0,
            texture_period: 20.0,
            duty_cycle: 0.5,
            fps: 30.0,
            drift: (0.0, 0.0),
            noise_sigma: 0.0,
            seed: 0,
        }
    }
}

impl CaseParams {
    pub fn validate(&self) -> Result<(), Error> {
        let bad = |m: String| Err(Error::InvalidParams(m));
        if self.period_frames < 4 {
            return bad(format!("period_frames {} must be at least 4", self.period_frames));
        }
        if self.n_frames < 4 * self.period_frames {
            return bad(format!(
                "n_frames {} must cover at least four periods of {}",
                self.n_frames, self.period_frames
            ));
        }
        if self.width < 32 || self.height < 32 {
            return bad(format!("frame {}x{} must be at least 32x32", self.width, self.height));
        }
        if self.width.max(self.height) > 2 * self.width.min(self.height) {
            return bad("frame aspect ratio must not exceed 2".into());
        }
        if !(self.amplitude > 0.0 && self.amplitude.is_finite()) {
            return bad(format!("amplitude {} must be positive", self.amplitude));
        }
        let d = self.width.min(self.height) as f64;
        if !(self.texture_period > 0.0 && self.texture_period <= 0.4 * d) {
            return bad(format!("texture_period {} must lie in (0, {}]", self.texture_period, 0.4 * d));
        }
        if !(self.duty_cycle > 0.0 && self.duty_cycle <= 1.0) {
            return bad(format!("duty_cycle {} must lie in (0, 1]", self.duty_cycle));
        }
        if !(self.fps > 0.0 && self.fps.is_finite()) {
            return bad(format!("fps {} must be positive", self.fps));
        }
        if !(self.drift.0.is_finite() && self.drift.1.is_finite()) {
            return bad("drift must be finite".into());
        }
        if !(self.noise_sigma >= 0.0 && self.noise_sigma.is_finite()) {
            return bad(format!("noise_sigma {} must be non-negative", self.noise_sigma));
        }
        Ok(())
    }

    /// Ground-truth repetitions: `n_frames / period_frames`.
    pub fn truth_count(&self) -> f64 {
        self.n_frames as f64 / self.period_frames as f64
    }
}

/// A generated sequence with its ground truth.
#[derive(Debug, Clone)]
pub struct SyntheticSequence {
    pub case: MotionCase,
    pub params: CaseParams,
    pub frames: Vec<(FlowField, ForegroundMask)>,
    pub truth_count: f64,
    /// Frame index at which each cycle starts.
    pub cycle_bounds: Vec<usize>,
}

impl SyntheticSequence {
    /// Annotation with one bound per complete cycle, closing bound included.
    pub fn annotation(&self) -> crate::eval::VideoAnnotation {
        let complete = self.params.n_frames / self.params.period_frames;
        let bounds: Vec<u64> = (0..=complete).map(|k| (k * self.params.period_frames) as u64).collect();
        crate::eval::VideoAnnotation::new(self.case.name(), self.params.fps, bounds)
            .expect("generated bounds are strictly increasing")
    }
}
