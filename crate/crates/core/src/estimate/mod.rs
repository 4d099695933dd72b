//! From scalograms to repetition counts.

mod path;
mod select;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flowfield::Channel;
use crate::tfa::{scale_to_period, Scalogram};

pub use path::{find_path, greedy_path, min_cost_path, node_cost, MinCostPath, COST_EPSILON};
pub use select::{analyze_signal, select_signal, wavelet_count, ChannelAnalysis, ChannelScore};

/// One scale index per timestep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RidgePath(pub Vec<usize>);

impl RidgePath {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    /// Scale in seconds at every timestep.
    pub fn scales(&self, sc: &Scalogram) -> Vec<f64> {
        self.0.iter().map(|&j| sc.grid().scales()[j]).collect()
    }

    fn check(&self, sc: &Scalogram) -> Result<()> {
        if self.0.len() != sc.len() {
            return Err(Error::GridMismatch(format!(
                "path has {} timesteps, scalogram {}",
                self.0.len(),
                sc.len()
            )));
        }
        if let Some(&j) = self.0.iter().find(|&&j| j >= sc.n_scales()) {
            return Err(Error::GridMismatch(format!("scale index {j} out of range")));
        }
        Ok(())
    }
}

/// Final estimate for a bundle.
#[derive(Debug, Clone, PartialEq)]
pub struct CountEstimate {
    pub count: f64,
    /// Per-timestep min-cost path cost of the selected channel.
    pub cost: f64,
    pub channel: Channel,
    /// Max-power ridge used for counting.
    pub ridge: RidgePath,
    /// Min-cost path used for selection.
    pub path: RidgePath,
    /// Ridge scales in seconds.
    pub ridge_scales: Vec<f64>,
    /// Summary for every channel, in [`Channel::ALL`] order.
    pub candidates: Vec<ChannelScore>,
}

/// JSON record written by the `count` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateRecord {
    pub count: f64,
    pub cost: f64,
    pub channel: Channel,
    pub per_timestep_scale_seconds: Vec<f64>,
}

impl From<&CountEstimate> for EstimateRecord {
    fn from(e: &CountEstimate) -> Self {
        Self {
            count: e.count,
            cost: e.cost,
            channel: e.channel,
            per_timestep_scale_seconds: e.ridge_scales.clone(),
        }
    }
}

/// Per-timestep argmax of power; ties go to the smaller scale.
pub fn max_power_ridge(sc: &Scalogram) -> RidgePath {
    RidgePath(
        (0..sc.len())
            .map(|t| {
                let col = sc.column(t);
                (1..col.len()).fold(0, |best, j| if col[j] > col[best] { j } else { best })
            })
            .collect(),
    )
}

/// `sum_n dt / lambda(s_{j_n})` with the Morlet Fourier factor.
pub fn integrate_count(ridge: &RidgePath, sc: &Scalogram) -> Result<f64> {
    integrate_count_with(ridge, sc, true, false)
}

/// Count integration with the compatibility switches.
///
/// `fourier_factor == false` divides by the raw scale. With `coi_exclude`
/// only timesteps whose ridge scale lies within the cone of influence
/// contribute, and their mean rate is extended over all `N` timesteps.
pub fn integrate_count_with(ridge: &RidgePath, sc: &Scalogram, fourier_factor: bool, coi_exclude: bool) -> Result<f64> {
    ridge.check(sc)?;
    let scales = sc.grid().scales();
    let period = |j: usize| {
        if fourier_factor {
            scale_to_period(scales[j], sc.omega0())
        } else {
            scales[j]
        }
    };
    let all: f64 = ridge.0.iter().map(|&j| sc.dt() / period(j)).sum();
    if !coi_exclude {
        return Ok(all);
    }
    let (sum, kept) = ridge
        .0
        .iter()
        .zip(sc.coi())
        .filter(|(&j, &coi)| scales[j] <= coi)
        .fold((0.0, 0usize), |(s, k), (&j, _)| (s + sc.dt() / period(j), k + 1));
    if kept == 0 {
        return Ok(all);
    }
    Ok(sum * sc.len() as f64 / kept as f64)
}
