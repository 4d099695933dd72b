use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::eval::VideoAnnotation;
use crate::tfa::Signal;

/// Sinusoid passing through every annotated cycle bound with rising phase.
///
/// Cycle `[b_k, b_{k+1})` spans exactly one period, so the local frequency
/// follows the annotated cycle lengths. Covers frames `b_0..=b_K`.
pub fn idealized_signal(annotation: &VideoAnnotation) -> Result<Signal> {
    annotation.validate()?;
    let b = &annotation.cycle_bounds;
    let (first, last) = (b[0], *b.last().unwrap());
    let mut samples = Vec::with_capacity((last - first + 1) as usize);
    let mut k = 0;
    for t in first..=last {
        while k + 2 < b.len() && t >= b[k + 1] {
            k += 1;
        }
        let phase = (t - b[k]) as f64 / (b[k + 1] - b[k]) as f64;
        samples.push((2.0 * PI * phase).sin());
    }
    Signal::new(samples, 1.0 / annotation.fps)
}

/// Adds i.i.d. N(0, sigma²) samples; deterministic in `seed`.
pub fn add_noise(signal: &Signal, sigma: f64, seed: u64) -> Result<Signal> {
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidParams(format!("noise sigma {sigma} must be non-negative")));
    }
    if sigma == 0.0 {
        return Ok(signal.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, sigma).expect("checked sigma");
    let samples = signal.samples().iter().map(|x| x + normal.sample(&mut rng)).collect();
    Signal::new(samples, signal.dt())
}

/// Indices kept by [`accelerate_halfway`] for a sequence of length `n`.
pub fn accelerate_indices(n: usize) -> Vec<usize> {
    let m = n / 2;
    (0..m).chain((m..n).step_by(2)).collect()
}

/// Doubles the playback speed after the midpoint by dropping every second
/// sample: `x[..m] ++ x[m], x[m+2], ...` with `m = n/2`.
pub fn accelerate_halfway<T: Clone>(samples: &[T]) -> Vec<T> {
    accelerate_indices(samples.len()).into_iter().map(|i| samples[i].clone()).collect()
}
