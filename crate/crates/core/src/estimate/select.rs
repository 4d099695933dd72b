use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::path::find_path;
use super::{integrate_count_with, max_power_ridge, CountEstimate, RidgePath};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::flowfield::{Channel, SignalBundle};
use crate::tfa::{cwt, detrend_and_smooth, make_scale_grid, ScaleGrid, Scalogram, Signal};

/// A preprocessed channel whose peak magnitude is below this fraction of
/// the bundle's largest raw magnitude is treated as carrying no signal.
const DEGENERATE_RATIO: f64 = 1e-9;

/// Everything computed for one signal.
#[derive(Debug, Clone)]
pub struct ChannelAnalysis {
    pub scalogram: Scalogram,
    pub ridge: RidgePath,
    pub path: RidgePath,
    pub cost: f64,
    pub count: f64,
    pub degenerate: bool,
}

/// Per-channel outcome of [`select_signal`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelScore {
    pub channel: Channel,
    pub count: f64,
    pub cost: f64,
    pub degenerate: bool,
}

fn grid_for(n: usize, dt: f64, cfg: &RunConfig) -> Result<ScaleGrid> {
    make_scale_grid(n, dt, cfg.min_reps, cfg.s0_factor * dt, cfg.dj, cfg.omega0)
}

fn analyze_preprocessed(x: &Signal, grid: &ScaleGrid, cfg: &RunConfig) -> Result<ChannelAnalysis> {
    let scalogram = cwt(x, grid, cfg.omega0)?;
    let ridge = max_power_ridge(&scalogram);
    let mc = find_path(&scalogram, cfg.path_mode);
    let count = integrate_count_with(&ridge, &scalogram, cfg.fourier_factor_conversion, cfg.coi_exclude)?;
    Ok(ChannelAnalysis { scalogram, ridge, path: mc.path, cost: mc.cost, count, degenerate: mc.degenerate })
}

/// Mean filter and detrend, then scalogram, ridge, min-cost path and count.
pub fn analyze_signal(signal: &Signal, cfg: &RunConfig) -> Result<ChannelAnalysis> {
    cfg.validate()?;
    let pre = detrend_and_smooth(signal, cfg.mean_window)?;
    let grid = grid_for(signal.len(), signal.dt(), cfg)?;
    analyze_preprocessed(&pre, &grid, cfg)
}

/// Count of a single signal by integrating its max-power ridge.
pub fn wavelet_count(signal: &Signal, cfg: &RunConfig) -> Result<f64> {
    Ok(analyze_signal(signal, cfg)?.count)
}

/// Analyzes all six channels and keeps the one with the cheapest
/// per-timestep min-cost path. Ties go to the earlier channel in
/// [`Channel::ALL`] order.
pub fn select_signal(bundle: &SignalBundle, cfg: &RunConfig) -> Result<CountEstimate> {
    cfg.validate()?;
    let n = bundle.len();
    let grid = grid_for(n, bundle.dt(), cfg)?;
    let bundle_peak = Channel::ALL
        .iter()
        .flat_map(|&c| bundle.channel(c).iter())
        .fold(0.0f64, |m, v| m.max(v.abs()));

    let analyses: Vec<Option<ChannelAnalysis>> = Channel::ALL
        .par_iter()
        .map(|&c| {
            let raw = Signal::new(bundle.channel(c).to_vec(), bundle.dt())?;
            let pre = detrend_and_smooth(&raw, cfg.mean_window)?;
            let peak = pre.samples().iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if bundle_peak == 0.0 || peak <= DEGENERATE_RATIO * bundle_peak {
                return Ok(None);
            }
            let a = analyze_preprocessed(&pre, &grid, cfg)?;
            Ok((!a.degenerate).then_some(a))
        })
        .collect::<Result<_>>()?;

    let candidates: Vec<ChannelScore> = Channel::ALL
        .iter()
        .zip(&analyses)
        .map(|(&channel, a)| match a {
            Some(a) => ChannelScore { channel, count: a.count, cost: a.cost, degenerate: false },
            None => ChannelScore { channel, count: 0.0, cost: f64::INFINITY, degenerate: true },
        })
        .collect();

    let best = analyses
        .iter()
        .enumerate()
        .filter_map(|(i, a)| a.as_ref().map(|a| (i, a)))
        .fold(None::<(usize, &ChannelAnalysis)>, |best, (i, a)| match best {
            Some((_, b)) if b.cost <= a.cost => best,
            _ => Some((i, a)),
        })
        .ok_or(Error::AllChannelsDegenerate)?;

    let (i, a) = best;
    Ok(CountEstimate {
        count: a.count,
        cost: a.cost,
        channel: Channel::ALL[i],
        ridge_scales: a.ridge.scales(&a.scalogram),
        ridge: a.ridge.clone(),
        path: a.path.clone(),
        candidates,
    })
}
