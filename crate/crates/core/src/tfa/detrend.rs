use super::Signal;
use crate::error::{Error, Result};

/// Centered moving average; near the ends the window shrinks symmetrically.
pub fn moving_average(x: &[f64], window: usize) -> Vec<f64> {
    let n = x.len();
    let half = window / 2;
    (0..n)
        .map(|i| {
            let h = half.min(i).min(n - 1 - i);
            x[i - h..=i + h].iter().sum::<f64>() / (2 * h + 1) as f64
        })
        .collect()
}

/// Subtracts the least-squares line through `(i, x[i])`.
pub fn linear_detrend(x: &[f64]) -> Vec<f64> {
    let n = x.len() as f64;
    let t_mean = (n - 1.0) / 2.0;
    let x_mean = x.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (i, v) in x.iter().enumerate() {
        let dt = i as f64 - t_mean;
        sxy += dt * (v - x_mean);
        sxx += dt * dt;
    }
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let resid: Vec<f64> = x
        .iter()
        .enumerate()
        .map(|(i, v)| v - x_mean - slope * (i as f64 - t_mean))
        .collect();
    // One refinement pass removes the rounding left by the first fit.
    let r_mean = resid.iter().sum::<f64>() / n;
    let r_slope = if sxx > 0.0 {
        resid.iter().enumerate().map(|(i, v)| (i as f64 - t_mean) * v).sum::<f64>() / sxx
    } else {
        0.0
    };
    resid
        .iter()
        .enumerate()
        .map(|(i, v)| v - r_mean - r_slope * (i as f64 - t_mean))
        .collect()
}

/// Mean filter with an odd `window`, then linear detrend.
pub fn detrend_and_smooth(signal: &Signal, window: usize) -> Result<Signal> {
    let n = signal.len();
    if window == 0 || window.is_multiple_of(2) || window > n {
        return Err(Error::WindowTooLarge { window, len: n });
    }
    let smoothed = moving_average(signal.samples(), window);
    Signal::new(linear_detrend(&smoothed), signal.dt())
}
