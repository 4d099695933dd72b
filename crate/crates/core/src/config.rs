use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How the min-cost path through a scalogram is searched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum PathMode {
    /// Exact dynamic programming over all start scales.
    #[default]
    Dp,
    /// Follow the cheapest neighbouring scale from the cheapest start.
    Greedy,
}

/// Every tunable of the pipeline. Defaults are the published settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Morlet central frequency.
    pub omega0: f64,
    /// Scale spacing in octaves.
    pub dj: f64,
    /// Smallest scale as a multiple of the sample interval.
    pub s0_factor: f64,
    /// Mean filter window in samples (odd).
    pub mean_window: usize,
    /// Gaussian derivative filter size in pixels (odd).
    pub kernel_size: usize,
    /// Gaussian derivative filter sigma in pixels.
    pub kernel_sigma: f64,
    /// Minimum number of repetitions the largest scale must fit.
    pub min_reps: f64,
    /// Convert scales to periods with the Morlet Fourier factor; raw `1/s` when off.
    pub fourier_factor_conversion: bool,
    pub path_mode: PathMode,
    /// Drop timesteps whose ridge scale lies inside the cone of influence
    /// from the count integral (the remaining mean rate is extrapolated).
    pub coi_exclude: bool,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            omega0: 6.0,
            dj: 0.125,
            s0_factor: 2.0,
            mean_window: 7,
            kernel_size: 13,
            kernel_sigma: 2.0,
            min_reps: 4.0,
            fourier_factor_conversion: true,
            path_mode: PathMode::Dp,
            coi_exclude: false,
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::Config(msg.to_string()));
        if !(self.omega0 > 0.0 && self.omega0.is_finite()) {
            return bad("omega0 must be positive");
        }
        if !(self.dj > 0.0 && self.dj.is_finite()) {
            return bad("dj must be positive");
        }
        if !(self.s0_factor > 0.0 && self.s0_factor.is_finite()) {
            return bad("s0_factor must be positive");
        }
        if self.mean_window == 0 || self.mean_window.is_multiple_of(2) {
            return bad("mean_window must be odd");
        }
        if self.kernel_size < 3 || self.kernel_size.is_multiple_of(2) {
            return bad("kernel_size must be odd and at least 3");
        }
        if !(self.kernel_sigma > 0.0 && self.kernel_sigma.is_finite()) {
            return bad("kernel_sigma must be positive");
        }
        if !(self.min_reps > 0.0 && self.min_reps.is_finite()) {
            return bad("min_reps must be positive");
        }
        Ok(())
    }
}
