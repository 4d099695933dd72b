use num_complex::Complex64;
use rustfft::FftPlanner;

use super::detrend::linear_detrend;
use super::Signal;
use crate::error::{Error, Result};

/// One-sided power `|X_k|^2` of the linearly detrended signal, `k = 0..=N/2`.
/// Bin `k` is `k` cycles over the signal duration. No taper is applied.
pub fn power_spectrum(signal: &Signal) -> Vec<f64> {
    let x = linear_detrend(signal.samples());
    let n = x.len();
    let mut buf: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    FftPlanner::<f64>::new().plan_fft_forward(n).process(&mut buf);
    buf[..=n / 2].iter().map(|z| z.norm_sqr()).collect()
}

/// Count from the strongest periodogram peak with at least `min_reps`
/// cycles: `f* * N * dt`, i.e. the winning bin index. Ties go to the lower
/// frequency.
pub fn periodogram_count(signal: &Signal, min_reps: f64) -> Result<f64> {
    let n = signal.len();
    if n < 8 {
        return Err(Error::SignalTooShort(format!("periodogram needs at least 8 samples, got {n}")));
    }
    let first = min_reps.max(1.0).ceil() as usize;
    let p = power_spectrum(signal);
    if first >= p.len() {
        return Err(Error::SignalTooShort(format!("{n} samples cannot resolve {min_reps} repetitions")));
    }
    let best = (first..p.len()).fold(first, |b, k| if p[k] > p[b] { k } else { b });
    Ok(best as f64)
}
