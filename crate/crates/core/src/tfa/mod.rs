//! Time-frequency analysis: preprocessing, the Morlet continuous wavelet
//! transform and the Fourier periodogram baseline.

mod cwt;
mod detrend;
mod export;
mod morlet;
mod periodogram;

use crate::error::{Error, Result};

pub use cwt::{cwt, cwt_coefficients, cwt_coefficients_direct, cwt_direct};
pub use detrend::{detrend_and_smooth, linear_detrend, moving_average};
pub use export::{ridge_csv, scalogram_csv, scalogram_pgm};
pub use morlet::{fourier_factor, morlet_daughter, scale_to_period};
pub use periodogram::{periodogram_count, power_spectrum};

/// Equally spaced real samples.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    samples: Vec<f64>,
    dt: f64,
}

impl Signal {
    pub fn new(samples: Vec<f64>, dt: f64) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::SignalTooShort(format!("{} sample(s), need at least 2", samples.len())));
        }
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::InvalidSignal(format!("sample interval {dt} must be positive")));
        }
        if let Some(i) = samples.iter().position(|x| !x.is_finite()) {
            return Err(Error::InvalidSignal(format!("non-finite sample at index {i}")));
        }
        Ok(Self { samples, dt })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration(&self) -> f64 {
        self.samples.len() as f64 * self.dt
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }
}

/// Logarithmic scales `s_j = s0 * 2^(j * dj)` for `j = 0..=J`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleGrid {
    s0: f64,
    dj: f64,
    j_max: usize,
    scales: Vec<f64>,
}

impl ScaleGrid {
    pub fn new(s0: f64, dj: f64, j_max: usize) -> Result<Self> {
        if !(s0 > 0.0 && s0.is_finite()) || !(dj > 0.0 && dj.is_finite()) || j_max < 1 {
            return Err(Error::GridMismatch(format!("invalid grid s0={s0} dj={dj} J={j_max}")));
        }
        let scales = (0..=j_max).map(|j| s0 * (j as f64 * dj).exp2()).collect();
        Ok(Self { s0, dj, j_max, scales })
    }

    pub fn s0(&self) -> f64 {
        self.s0
    }

    pub fn dj(&self) -> f64 {
        self.dj
    }

    /// Largest scale index `J`.
    pub fn j_max(&self) -> usize {
        self.j_max
    }

    pub fn scales(&self) -> &[f64] {
        &self.scales
    }

    pub fn len(&self) -> usize {
        self.scales.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scales.is_empty()
    }
}

/// Builds the scale grid for an `n`-sample signal: from `s0` up to the scale
/// whose Fourier period fits `min_reps` repetitions into the signal.
pub fn make_scale_grid(n: usize, dt: f64, min_reps: f64, s0: f64, dj: f64, omega0: f64) -> Result<ScaleGrid> {
    let longest_period = n as f64 * dt / min_reps;
    let s_max = longest_period / fourier_factor(omega0);
    if !(s_max > s0) {
        return Err(Error::SignalTooShort(format!(
            "{n} samples cannot host {min_reps} repetitions above the smallest scale {s0}"
        )));
    }
    let j_max = ((s_max / s0).log2() / dj).floor() as usize;
    if j_max < 1 {
        return Err(Error::SignalTooShort(format!(
            "{n} samples leave fewer than two scales between {s0} and {s_max}"
        )));
    }
    ScaleGrid::new(s0, dj, j_max)
}

/// Wavelet power `|W_n(s_j)|^2`, stored time-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Scalogram {
    power: Vec<f64>,
    n: usize,
    grid: ScaleGrid,
    dt: f64,
    coi: Vec<f64>,
    omega0: f64,
}

impl Scalogram {
    pub fn new(power: Vec<f64>, n: usize, grid: ScaleGrid, dt: f64, omega0: f64) -> Result<Self> {
        if n == 0 || power.len() != n * grid.len() {
            return Err(Error::GridMismatch(format!(
                "power has {} entries for {n} timesteps x {} scales",
                power.len(),
                grid.len()
            )));
        }
        if power.iter().any(|p| !(p.is_finite() && *p >= 0.0)) {
            return Err(Error::InvalidSignal("power must be finite and non-negative".into()));
        }
        let coi = cone_of_influence(n, dt);
        Ok(Self { power, n, grid, dt, coi, omega0 })
    }

    /// Number of timesteps.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn n_scales(&self) -> usize {
        self.grid.len()
    }

    pub fn power(&self, n: usize, j: usize) -> f64 {
        self.power[n * self.grid.len() + j]
    }

    /// Power at every scale for timestep `n`.
    pub fn column(&self, n: usize) -> &[f64] {
        let m = self.grid.len();
        &self.power[n * m..(n + 1) * m]
    }

    pub fn power_raw(&self) -> &[f64] {
        &self.power
    }

    pub fn max_power(&self) -> f64 {
        self.power.iter().copied().fold(0.0, f64::max)
    }

    pub fn grid(&self) -> &ScaleGrid {
        &self.grid
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Largest trustworthy scale per timestep (seconds).
    pub fn coi(&self) -> &[f64] {
        &self.coi
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }
}

/// Edge effects decay with e-folding time `sqrt(2) * s`, so a timestep `d`
/// seconds from the nearest edge trusts scales up to `d / sqrt(2)`.
fn cone_of_influence(n: usize, dt: f64) -> Vec<f64> {
    (0..n)
        .map(|i| i.min(n - 1 - i) as f64 * dt / std::f64::consts::SQRT_2)
        .collect()
}
