//! Shared fixtures for the criterion benchmarks.

use std::f64::consts::PI;

use repcount_core::synth::generate_case;
use repcount_core::tfa::make_scale_grid;
use repcount_core::{extract_signals, CaseParams, MotionCase, ScaleGrid, Scalogram, Signal, SignalBundle};

pub const DT: f64 = 1.0 / 30.0;

/// Sinusoid with a slowly drifting period plus a harmonic.
pub fn drifting_tone(n: usize) -> Signal {
    let mut phase = 0.0;
    let x = (0..n)
        .map(|i| {
            phase += 2.0 * PI / (20.0 + 10.0 * i as f64 / n as f64);
            phase.sin() + 0.3 * (2.0 * phase).sin()
        })
        .collect();
    Signal::new(x, DT).unwrap()
}

pub fn grid(n: usize) -> ScaleGrid {
    make_scale_grid(n, DT, 4.0, 2.0 * DT, 0.125, 6.0).unwrap()
}

/// Deterministic, irregular power surface.
pub fn surface(n: usize, j_max: usize) -> Scalogram {
    let power = (0..n * (j_max + 1))
        .map(|k| {
            let (t, j) = ((k / (j_max + 1)) as f64, (k % (j_max + 1)) as f64);
            1.1 + (0.37 * t + 1.3 * j).sin() * (0.011 * t * j).cos()
        })
        .collect();
    Scalogram::new(power, n, ScaleGrid::new(0.1, 0.125, j_max).unwrap(), DT, 6.0).unwrap()
}

pub fn case_bundle(case: &str, n_frames: usize) -> SignalBundle {
    let params = CaseParams { n_frames, ..CaseParams::default() };
    let seq = generate_case(case.parse::<MotionCase>().unwrap(), &params).unwrap();
    extract_signals(&seq.frames, params.fps).unwrap()
}
