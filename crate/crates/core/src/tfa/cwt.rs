//! Morlet continuous wavelet transform.
//!
//! `W_n(s) = sum_n' h[n'] * sqrt(dt / s) * conj(psi((n' - n) dt / s))`
//!
//! Two routes compute the same sum over the full, untruncated wavelet:
//! direct summation, and a Fourier-domain correlation of the signal with the
//! sampled daughter wavelet on a zero-padded buffer long enough that no
//! circular wrap reaches the unpadded support. Scales are independent and
//! evaluated in parallel; within a scale the direct route sums `n'` in
//! ascending order, so results do not depend on the thread count.

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use super::morlet::morlet_daughter;
use super::{ScaleGrid, Scalogram, Signal};
use crate::error::Result;

/// Power scalogram via the Fourier-domain route.
pub fn cwt(signal: &Signal, grid: &ScaleGrid, omega0: f64) -> Result<Scalogram> {
    let coeffs = cwt_coefficients(signal, grid, omega0);
    to_scalogram(signal, grid, omega0, &coeffs)
}

/// Power scalogram by direct summation, `O(N^2)` per scale.
pub fn cwt_direct(signal: &Signal, grid: &ScaleGrid, omega0: f64) -> Result<Scalogram> {
    let coeffs = cwt_coefficients_direct(signal, grid, omega0);
    to_scalogram(signal, grid, omega0, &coeffs)
}

/// Complex coefficients, one vector of length `N` per scale (Fourier route).
pub fn cwt_coefficients(signal: &Signal, grid: &ScaleGrid, omega0: f64) -> Vec<Vec<Complex64>> {
    let x = signal.samples();
    let n = x.len();
    let m = (2 * n - 1).next_power_of_two();
    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(m);
    let inverse = planner.plan_fft_inverse(m);

    let mut spectrum: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    spectrum.resize(m, Complex64::new(0.0, 0.0));
    forward.process(&mut spectrum);

    grid.scales()
        .par_iter()
        .map(|&s| {
            let table = daughter_table(n, signal.dt(), s, omega0);
            // Offset k lives at index k mod m.
            let mut kernel = vec![Complex64::new(0.0, 0.0); m];
            for (i, &psi) in table.iter().enumerate() {
                let k = i as isize - (n as isize - 1);
                kernel[k.rem_euclid(m as isize) as usize] = psi;
            }
            forward.process(&mut kernel);
            let mut prod: Vec<Complex64> = spectrum.iter().zip(&kernel).map(|(a, b)| a * b.conj()).collect();
            inverse.process(&mut prod);
            let norm = 1.0 / m as f64;
            prod.truncate(n);
            prod.iter_mut().for_each(|z| *z *= norm);
            prod
        })
        .collect()
}

/// Complex coefficients by direct summation.
pub fn cwt_coefficients_direct(signal: &Signal, grid: &ScaleGrid, omega0: f64) -> Vec<Vec<Complex64>> {
    let x = signal.samples();
    let n = x.len();
    grid.scales()
        .par_iter()
        .map(|&s| {
            let table = daughter_table(n, signal.dt(), s, omega0);
            (0..n)
                .map(|t| {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (tp, &h) in x.iter().enumerate() {
                        acc += h * table[tp + n - 1 - t].conj();
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// `sqrt(dt/s) * psi(k dt / s)` for offsets `k = -(n-1) ..= n-1`.
fn daughter_table(n: usize, dt: f64, s: f64, omega0: f64) -> Vec<Complex64> {
    let norm = (dt / s).sqrt();
    (0..2 * n - 1)
        .map(|i| {
            let k = i as f64 - (n as f64 - 1.0);
            morlet_daughter(k * dt / s, omega0) * norm
        })
        .collect()
}

fn to_scalogram(signal: &Signal, grid: &ScaleGrid, omega0: f64, coeffs: &[Vec<Complex64>]) -> Result<Scalogram> {
    let n = signal.len();
    let m = grid.len();
    let mut power = vec![0.0; n * m];
    for (j, col) in coeffs.iter().enumerate() {
        for (t, z) in col.iter().enumerate() {
            power[t * m + j] = z.norm_sqr();
        }
    }
    Scalogram::new(power, n, grid.clone(), signal.dt(), omega0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tfa::{make_scale_grid, scale_to_period};
    use std::f64::consts::PI;

    fn grid_for(n: usize, dt: f64) -> ScaleGrid {
        make_scale_grid(n, dt, 4.0, 2.0 * dt, 0.125, 6.0).unwrap()
    }

    #[test]
    fn zero_signal_has_zero_power() {
        let s = Signal::new(vec![0.0; 64], 0.1).unwrap();
        let sc = cwt(&s, &grid_for(64, 0.1), 6.0).unwrap();
        assert!(sc.power_raw().iter().all(|&p| p == 0.0));
    }

    #[test]
    fn routes_agree() {
        let dt = 1.0 / 30.0;
        let x: Vec<f64> = (0..200).map(|i| ((i * 37 % 101) as f64 / 50.0 - 1.0) + (i as f64 * 0.3).sin()).collect();
        let s = Signal::new(x, dt).unwrap();
        let g = grid_for(200, dt);
        let a = cwt_coefficients(&s, &g, 6.0);
        let b = cwt_coefficients_direct(&s, &g, 6.0);
        let scale = b.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
        let diff = a.iter().flatten().zip(b.iter().flatten()).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max);
        assert!(diff <= 1e-6 * scale, "{diff} vs {scale}");
    }

    #[test]
    fn tone_ridge_matches_period() {
        let dt = 1.0 / 30.0;
        let n = 512;
        let period = 64.0 * dt;
        let x = (0..n).map(|i| (2.0 * PI * i as f64 * dt / period).cos()).collect();
        let s = Signal::new(x, dt).unwrap();
        let sc = cwt(&s, &grid_for(n, dt), 6.0).unwrap();
        let bound = 2f64.powf(0.125) - 1.0;
        for t in 0..n {
            let col = sc.column(t);
            let j = (0..col.len()).fold(0, |b, j| if col[j] > col[b] { j } else { b });
            let s_star = sc.grid().scales()[j];
            if s_star > sc.coi()[t] {
                continue;
            }
            let lambda = scale_to_period(s_star, 6.0);
            assert!((lambda - period).abs() / period <= bound, "t={t} lambda={lambda}");
        }
    }

    #[test]
    fn power_scales_quadratically() {
        let dt = 0.05;
        let x: Vec<f64> = (0..128).map(|i| (i as f64 * 0.4).sin() + 0.1 * i as f64).collect();
        let a = 3.7;
        let s1 = Signal::new(x.clone(), dt).unwrap();
        let s2 = Signal::new(x.iter().map(|v| a * v).collect(), dt).unwrap();
        let g = grid_for(128, dt);
        let p1 = cwt(&s1, &g, 6.0).unwrap();
        let p2 = cwt(&s2, &g, 6.0).unwrap();
        let max = p1.max_power();
        for (u, v) in p1.power_raw().iter().zip(p2.power_raw()) {
            assert!((a * a * u - v).abs() <= 1e-9 * a * a * max);
        }
    }
}
