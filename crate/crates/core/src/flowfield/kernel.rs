use crate::error::{Error, Result};

/// Size and width of the separable Gaussian filters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    pub size: usize,
    pub sigma: f64,
}

impl Default for KernelSpec {
    fn default() -> Self {
        Self { size: 13, sigma: 2.0 }
    }
}

impl KernelSpec {
    pub fn validate(&self) -> Result<()> {
        if self.size < 3 || self.size.is_multiple_of(2) || !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(Error::InvalidKernelSpec { size: self.size, sigma: self.sigma });
        }
        Ok(())
    }
}

/// Sampled Gaussian (`order == 0`) or first Gaussian derivative (`order == 1`)
/// on the offsets `-(size-1)/2 ..= (size-1)/2`.
///
/// Taps are meant for correlation: `out[i] = sum_k taps[k] * f[i + k - half]`.
/// The order-0 taps sum to one. The order-1 taps are antisymmetric (sum zero)
/// and scaled so a unit ramp gives exactly one.
pub fn gaussian_derivative_kernel(size: usize, sigma: f64, order: u8) -> Result<Vec<f64>> {
    KernelSpec { size, sigma }.validate()?;
    let half = (size / 2) as i64;
    let gauss: Vec<f64> = (-half..=half)
        .map(|k| (-(k * k) as f64 / (2.0 * sigma * sigma)).exp())
        .collect();
    match order {
        0 => {
            let sum: f64 = gauss.iter().sum();
            Ok(gauss.into_iter().map(|g| g / sum).collect())
        }
        1 => {
            let moment: f64 = (-half..=half).zip(&gauss).map(|(k, g)| (k * k) as f64 * g).sum();
            // Build the positive half and mirror it so the taps cancel exactly.
            let mut taps = vec![0.0; size];
            for k in 1..=half {
                let w = k as f64 * gauss[(half + k) as usize] / moment;
                taps[(half + k) as usize] = w;
                taps[(half - k) as usize] = -w;
            }
            Ok(taps)
        }
        _ => Err(Error::InvalidKernelSpec { size, sigma }),
    }
}

/// Correlates `input` with `taps`, replicating edge samples.
pub fn correlate_1d_replicate(input: &[f64], taps: &[f64]) -> Vec<f64> {
    let n = input.len();
    let half = taps.len() / 2;
    let mut out = vec![0.0; n];
    correlate_lane(input, 0, 1, n, taps, half, &mut out, 0, 1);
    out
}

// Strided lane through a larger buffer so the same loop filters rows and columns.
#[allow(clippy::too_many_arguments)]
#[inline]
pub(crate) fn correlate_lane(
    src: &[f64],
    src_off: usize,
    src_stride: usize,
    n: usize,
    taps: &[f64],
    half: usize,
    dst: &mut [f64],
    dst_off: usize,
    dst_stride: usize,
) {
    let last = n as isize - 1;
    for i in 0..n {
        let mut acc = 0.0;
        for (k, &w) in taps.iter().enumerate() {
            let j = (i as isize + k as isize - half as isize).clamp(0, last) as usize;
            acc += w * src[src_off + j * src_stride];
        }
        dst[dst_off + i * dst_stride] = acc;
    }
}
