//! Dense flow fields, their differentials and the pooled per-frame signals.

mod differentials;
mod flo;
mod kernel;
mod pnm;
mod pool;
mod sequence;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use differentials::{differentials, Differentials};
pub use flo::{read_flo, write_flo, FLO_MAGIC};
pub use kernel::{correlate_1d_replicate, gaussian_derivative_kernel, KernelSpec};
pub use pnm::{read_mask, write_mask_pgm};
pub use sequence::{frame_number, load_sequence, save_sequence, LoadedSequence};
pub use pool::{extract_signals, extract_signals_with, mask_fallback, pooled_measurement, pooling_disk, PoolingDisk};

/// Dense 2D flow for one frame, in pixels per frame, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowField {
    width: usize,
    height: usize,
    u: Vec<f32>,
    v: Vec<f32>,
}

impl FlowField {
    pub fn new(width: usize, height: usize, u: Vec<f32>, v: Vec<f32>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidField(format!("empty field {width}x{height}")));
        }
        let n = width * height;
        if u.len() != n || v.len() != n {
            return Err(Error::InvalidField(format!(
                "expected {n} values per component, got u={} v={}",
                u.len(),
                v.len()
            )));
        }
        if let Some(i) = u.iter().chain(v.iter()).position(|x| !x.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { width, height, u, v })
    }

    /// Builds a field by evaluating `f(x, y) -> (u, v)` at every pixel.
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> (f64, f64)) -> Result<Self> {
        let n = width * height;
        let mut u = Vec::with_capacity(n);
        let mut v = Vec::with_capacity(n);
        for y in 0..height {
            for x in 0..width {
                let (a, b) = f(x, y);
                u.push(a as f32);
                v.push(b as f32);
            }
        }
        Self::new(width, height, u, v)
    }

    pub fn zeros(width: usize, height: usize) -> Result<Self> {
        Self::new(width, height, vec![0.0; width * height], vec![0.0; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn u(&self) -> &[f32] {
        &self.u
    }

    pub fn v(&self) -> &[f32] {
        &self.v
    }

    pub fn at(&self, x: usize, y: usize) -> (f32, f32) {
        let i = y * self.width + x;
        (self.u[i], self.v[i])
    }

    pub(crate) fn u_f64(&self) -> Vec<f64> {
        self.u.iter().map(|&x| x as f64).collect()
    }

    pub(crate) fn v_f64(&self) -> Vec<f64> {
        self.v.iter().map(|&x| x as f64).collect()
    }
}

/// Boolean foreground segmentation for one frame, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForegroundMask {
    width: usize,
    height: usize,
    bits: Vec<bool>,
}

impl ForegroundMask {
    pub fn new(width: usize, height: usize, bits: Vec<bool>) -> Result<Self> {
        if width == 0 || height == 0 || bits.len() != width * height {
            return Err(Error::InvalidField(format!(
                "mask {width}x{height} with {} pixels",
                bits.len()
            )));
        }
        Ok(Self { width, height, bits })
    }

    pub fn full(width: usize, height: usize) -> Self {
        Self { width, height, bits: vec![true; width * height] }
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let bits = (0..height).flat_map(|y| (0..width).map(move |x| (x, y))).map(|(x, y)| f(x, y)).collect();
        Self { width, height, bits }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, x: usize, y: usize) -> bool {
        self.bits[y * self.width + x]
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn foreground_fraction(&self) -> f64 {
        self.count() as f64 / self.bits.len() as f64
    }

    /// Mean (x, y) of the foreground pixels.
    pub fn centroid(&self) -> Option<(f64, f64)> {
        let (mut sx, mut sy, mut n) = (0.0, 0.0, 0usize);
        for (i, _) in self.bits.iter().enumerate().filter(|(_, &b)| b) {
            sx += (i % self.width) as f64;
            sy += (i / self.width) as f64;
            n += 1;
        }
        (n > 0).then(|| (sx / n as f64, sy / n as f64))
    }
}

/// One scalar per pixel, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    width: usize,
    height: usize,
    values: Vec<f64>,
}

impl ScalarField {
    pub fn new(width: usize, height: usize, values: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 || values.len() != width * height {
            return Err(Error::InvalidField(format!(
                "scalar field {width}x{height} with {} values",
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { width, height, values })
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let values = (0..height).flat_map(|y| (0..width).map(move |x| (x, y))).map(|(x, y)| f(x, y)).collect();
        Self::new(width, height, values)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn at(&self, x: usize, y: usize) -> f64 {
        self.values[y * self.width + x]
    }

    pub(crate) fn from_raw(width: usize, height: usize, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), width * height);
        Self { width, height, values }
    }
}

/// The six measured signals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Channel {
    Fx,
    Fy,
    GradXFx,
    GradYFy,
    Div,
    Curl,
}

impl Channel {
    pub const ALL: [Channel; 6] = [
        Channel::Fx,
        Channel::Fy,
        Channel::GradXFx,
        Channel::GradYFy,
        Channel::Div,
        Channel::Curl,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Channel::Fx => "Fx",
            Channel::Fy => "Fy",
            Channel::GradXFx => "GradXFx",
            Channel::GradYFy => "GradYFy",
            Channel::Div => "Div",
            Channel::Curl => "Curl",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl std::fmt::Display for Channel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Channel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Channel::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Config(format!("unknown channel '{s}' (expected one of Fx, Fy, GradXFx, GradYFy, Div, Curl)")))
    }
}

/// Six synchronized time series sampled every `dt` seconds.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalBundle {
    channels: [Vec<f64>; 6],
    dt: f64,
}

impl SignalBundle {
    pub fn new(channels: [Vec<f64>; 6], dt: f64) -> Result<Self> {
        let n = channels[0].len();
        if n < 2 {
            return Err(Error::SignalTooShort(format!("bundle has {n} samples, need at least 2")));
        }
        if channels.iter().any(|c| c.len() != n) {
            return Err(Error::DimensionMismatch("bundle channels differ in length".into()));
        }
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::InvalidSignal(format!("sample interval {dt} must be positive")));
        }
        if channels.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidSignal("non-finite sample in bundle".into()));
        }
        Ok(Self { channels, dt })
    }

    pub fn len(&self) -> usize {
        self.channels[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn channel(&self, c: Channel) -> &[f64] {
        &self.channels[c.index()]
    }

    pub fn channel_mut(&mut self, c: Channel) -> &mut [f64] {
        &mut self.channels[c.index()]
    }

    /// Keeps only the samples at `indices`, in order.
    pub fn resample(&self, indices: &[usize]) -> Result<Self> {
        let channels = std::array::from_fn(|i| indices.iter().map(|&k| self.channels[i][k]).collect());
        Self::new(channels, self.dt)
    }
}
