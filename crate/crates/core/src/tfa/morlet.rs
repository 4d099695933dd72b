use num_complex::Complex64;
use std::f64::consts::PI;

/// Morlet mother wavelet `pi^(-1/4) exp(i omega0 eta) exp(-eta^2 / 2)`.
pub fn morlet_daughter(eta: f64, omega0: f64) -> Complex64 {
    let envelope = PI.powf(-0.25) * (-0.5 * eta * eta).exp();
    Complex64::from_polar(envelope, omega0 * eta)
}

/// Ratio of equivalent Fourier period to Morlet scale.
pub fn fourier_factor(omega0: f64) -> f64 {
    4.0 * PI / (omega0 + (2.0 + omega0 * omega0).sqrt())
}

/// Equivalent Fourier period of scale `s`.
pub fn scale_to_period(s: f64, omega0: f64) -> f64 {
    fourier_factor(omega0) * s
}
