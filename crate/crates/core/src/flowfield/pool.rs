use rayon::prelude::*;

use super::differentials::differentials;
use super::kernel::KernelSpec;
use super::{Channel, FlowField, ForegroundMask, ScalarField, SignalBundle};
use crate::error::{Error, Result};

/// Masks covering less than this fraction of the frame are not trusted.
pub const MIN_FOREGROUND_FRACTION: f64 = 0.01;

/// Pooling region: a disk at the foreground centroid whose radius grows with
/// the square root of the foreground area, never below 3 px.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoolingDisk {
    pub cx: f64,
    pub cy: f64,
    pub radius: f64,
}

impl PoolingDisk {
    /// Row-major indices of the pixels inside the disk and the image.
    pub fn pixels(&self, width: usize, height: usize) -> Vec<usize> {
        let r2 = self.radius * self.radius;
        let y0 = (self.cy - self.radius).floor().max(0.0) as usize;
        let y1 = ((self.cy + self.radius).ceil().max(0.0) as usize).min(height - 1);
        let x0 = (self.cx - self.radius).floor().max(0.0) as usize;
        let x1 = ((self.cx + self.radius).ceil().max(0.0) as usize).min(width - 1);
        let mut out = Vec::new();
        for y in y0..=y1 {
            for x in x0..=x1 {
                let (dx, dy) = (x as f64 - self.cx, y as f64 - self.cy);
                if dx * dx + dy * dy <= r2 {
                    out.push(y * width + x);
                }
            }
        }
        out
    }
}

pub fn pooling_disk(mask: &ForegroundMask) -> Result<PoolingDisk> {
    let (cx, cy) = mask.centroid().ok_or(Error::EmptyMask)?;
    let radius = (0.2 * (mask.count() as f64).sqrt()).max(3.0);
    Ok(PoolingDisk { cx, cy, radius })
}

/// Mean of `field` over the pooling disk of `mask`.
pub fn pooled_measurement(field: &ScalarField, mask: &ForegroundMask) -> Result<f64> {
    check_dims(field.width(), field.height(), mask)?;
    let disk = pooling_disk(mask)?;
    let px = disk.pixels(field.width(), field.height());
    Ok(mean_at(field.values(), &px))
}

/// Substitutes an unreliable (under 1% foreground) mask.
///
/// Falls back to `previous` when it is itself reliable; with no previous
/// mask the full frame is used.
pub fn mask_fallback(current: &ForegroundMask, previous: Option<&ForegroundMask>) -> Result<ForegroundMask> {
    if let Some(prev) = previous {
        if prev.width() != current.width() || prev.height() != current.height() {
            return Err(Error::DimensionMismatch(format!(
                "previous mask {}x{} vs current {}x{}",
                prev.width(),
                prev.height(),
                current.width(),
                current.height()
            )));
        }
    }
    if current.foreground_fraction() >= MIN_FOREGROUND_FRACTION {
        return Ok(current.clone());
    }
    match previous {
        Some(prev) if prev.foreground_fraction() >= MIN_FOREGROUND_FRACTION => Ok(prev.clone()),
        Some(_) => Ok(current.clone()),
        None => Ok(ForegroundMask::full(current.width(), current.height())),
    }
}

pub fn extract_signals(frames: &[(FlowField, ForegroundMask)], fps: f64) -> Result<SignalBundle> {
    extract_signals_with(frames, fps, KernelSpec::default())
}

/// Pools the six channels per frame into a [`SignalBundle`] with `dt = 1/fps`.
///
/// Masks are passed through [`mask_fallback`] against the previous
/// effective mask. Frames are processed in parallel; output order follows
/// the input.
pub fn extract_signals_with(frames: &[(FlowField, ForegroundMask)], fps: f64, spec: KernelSpec) -> Result<SignalBundle> {
    if frames.is_empty() {
        return Err(Error::EmptySequence);
    }
    if frames.len() < 2 {
        return Err(Error::SignalTooShort(format!("{} frame(s), need at least 2", frames.len())));
    }
    if !(fps > 0.0 && fps.is_finite()) {
        return Err(Error::InvalidSignal(format!("fps {fps} must be positive")));
    }
    let (w, h) = (frames[0].0.width(), frames[0].0.height());
    for (i, (f, m)) in frames.iter().enumerate() {
        if f.width() != w || f.height() != h {
            return Err(Error::DimensionMismatch(format!("frame {i} is {}x{}, expected {w}x{h}", f.width(), f.height())));
        }
        check_dims(w, h, m).map_err(|_| {
            Error::DimensionMismatch(format!("mask {i} is {}x{}, expected {w}x{h}", m.width(), m.height()))
        })?;
    }

    let mut effective: Vec<ForegroundMask> = Vec::with_capacity(frames.len());
    for (_, m) in frames {
        let e = mask_fallback(m, effective.last())?;
        effective.push(e);
    }

    let rows: Vec<[f64; 6]> = frames
        .par_iter()
        .zip(effective.par_iter())
        .map(|((field, _), mask)| frame_measurements(field, mask, spec))
        .collect::<Result<_>>()?;

    let channels = std::array::from_fn(|c| rows.iter().map(|r| r[c]).collect());
    SignalBundle::new(channels, 1.0 / fps)
}

fn frame_measurements(field: &FlowField, mask: &ForegroundMask, spec: KernelSpec) -> Result<[f64; 6]> {
    let d = differentials(field, spec)?;
    let disk = pooling_disk(mask)?;
    let px = disk.pixels(field.width(), field.height());
    let mut out = [0.0; 6];
    out[Channel::Fx.index()] = px.iter().map(|&i| field.u()[i] as f64).sum::<f64>() / px.len() as f64;
    out[Channel::Fy.index()] = px.iter().map(|&i| field.v()[i] as f64).sum::<f64>() / px.len() as f64;
    out[Channel::GradXFx.index()] = mean_at(d.gradxx.values(), &px);
    out[Channel::GradYFy.index()] = mean_at(d.gradyy.values(), &px);
    out[Channel::Div.index()] = mean_at(d.div.values(), &px);
    out[Channel::Curl.index()] = mean_at(d.curl.values(), &px);
    Ok(out)
}

fn mean_at(values: &[f64], px: &[usize]) -> f64 {
    px.iter().map(|&i| values[i]).sum::<f64>() / px.len() as f64
}

fn check_dims(w: usize, h: usize, mask: &ForegroundMask) -> Result<()> {
    if mask.width() != w || mask.height() != h {
        return Err(Error::DimensionMismatch(format!(
            "field {w}x{h} vs mask {}x{}",
            mask.width(),
            mask.height()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frac_mask(w: usize, h: usize, n_fg: usize) -> ForegroundMask {
        ForegroundMask::from_fn(w, h, |x, y| y * w + x < n_fg)
    }

    #[test]
    fn constant_field_pools_to_constant() {
        let f = ScalarField::from_fn(30, 20, |_, _| 5.0).unwrap();
        let m = ForegroundMask::from_fn(30, 20, |x, y| x > 20 && y < 4);
        assert!((pooled_measurement(&f, &m).unwrap() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn x_coordinate_pools_to_center() {
        // Brute-force disk average oracle, written independently of PoolingDisk.
        for w in [15usize, 31, 63] {
            let h = 21;
            let f = ScalarField::from_fn(w, h, |x, _| x as f64).unwrap();
            let m = ForegroundMask::full(w, h);
            let got = pooled_measurement(&f, &m).unwrap();
            let (cx, cy) = ((w - 1) as f64 / 2.0, (h - 1) as f64 / 2.0);
            let r = (0.2 * ((w * h) as f64).sqrt()).max(3.0);
            let (mut s, mut n) = (0.0, 0.0);
            for y in 0..h {
                for x in 0..w {
                    if (x as f64 - cx).powi(2) + (y as f64 - cy).powi(2) <= r * r {
                        s += x as f64;
                        n += 1.0;
                    }
                }
            }
            assert!((got - s / n).abs() < 1e-12);
            assert!((got - cx).abs() <= 1.0);
        }
    }

    #[test]
    fn empty_mask() {
        let f = ScalarField::from_fn(4, 4, |_, _| 1.0).unwrap();
        let m = ForegroundMask::from_fn(4, 4, |_, _| false);
        assert!(matches!(pooled_measurement(&f, &m), Err(Error::EmptyMask)));
    }

    #[test]
    fn values_outside_disk_are_ignored() {
        let m = ForegroundMask::from_fn(40, 40, |x, y| (10..20).contains(&x) && (10..20).contains(&y));
        let disk = pooling_disk(&m).unwrap();
        let inside = disk.pixels(40, 40);
        let a = ScalarField::from_fn(40, 40, |x, y| (x * y) as f64).unwrap();
        let b = ScalarField::from_fn(40, 40, |x, y| {
            if inside.contains(&(y * 40 + x)) { (x * y) as f64 } else { 1e6 }
        })
        .unwrap();
        assert_eq!(pooled_measurement(&a, &m).unwrap(), pooled_measurement(&b, &m).unwrap());
    }

    #[test]
    fn fallback_rules() {
        let (w, h) = (100, 100);
        let small = frac_mask(w, h, 50); // 0.5%
        let prev = frac_mask(w, h, 500); // 5%
        let big = frac_mask(w, h, 300); // 3%
        assert_eq!(mask_fallback(&small, Some(&prev)).unwrap(), prev);
        assert_eq!(mask_fallback(&big, Some(&small)).unwrap(), big);
        assert_eq!(mask_fallback(&big, Some(&prev)).unwrap(), big);
        assert_eq!(mask_fallback(&small, None).unwrap(), ForegroundMask::full(w, h));
        let other = frac_mask(10, 10, 5);
        assert!(matches!(mask_fallback(&small, Some(&other)), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn zero_flow_gives_zero_signals() {
        let frames: Vec<_> = (0..100)
            .map(|_| (FlowField::zeros(16, 16).unwrap(), ForegroundMask::full(16, 16)))
            .collect();
        let b = extract_signals(&frames, 30.0).unwrap();
        assert_eq!(b.len(), 100);
        for c in Channel::ALL {
            assert!(b.channel(c).iter().all(|&x| x == 0.0));
        }
        assert!((b.dt() - 1.0 / 30.0).abs() < 1e-15);
    }

    #[test]
    fn empty_masks_never_reach_pooling() {
        let empty = ForegroundMask::from_fn(16, 16, |_, _| false);
        let frames: Vec<_> = (0..5).map(|_| (FlowField::zeros(16, 16).unwrap(), empty.clone())).collect();
        assert!(extract_signals(&frames, 25.0).is_ok());
    }

    #[test]
    fn sequence_errors() {
        assert!(matches!(extract_signals(&[], 30.0), Err(Error::EmptySequence)));
        let frames = vec![
            (FlowField::zeros(16, 16).unwrap(), ForegroundMask::full(16, 16)),
            (FlowField::zeros(17, 16).unwrap(), ForegroundMask::full(17, 16)),
        ];
        assert!(matches!(extract_signals(&frames, 30.0), Err(Error::DimensionMismatch(_))));
    }
}
