use super::kernel::{correlate_lane, gaussian_derivative_kernel, KernelSpec};
use super::{FlowField, ScalarField};
use crate::error::{Error, Result};

/// First-order flow differentials of one frame (units: 1/frame).
#[derive(Debug, Clone, PartialEq)]
pub struct Differentials {
    /// dFx/dx
    pub gradxx: ScalarField,
    /// dFy/dy
    pub gradyy: ScalarField,
    pub div: ScalarField,
    /// dFy/dx - dFx/dy, the component perpendicular to the image plane.
    pub curl: ScalarField,
}

/// Computes the differentials with separable Gaussian derivative filters
/// (edge-replicated borders). `x` runs along columns and `y` along rows.
pub fn differentials(field: &FlowField, spec: KernelSpec) -> Result<Differentials> {
    spec.validate()?;
    let (w, h) = (field.width(), field.height());
    if w < spec.size || h < spec.size {
        return Err(Error::FieldTooSmall { width: w, height: h, min: spec.size });
    }
    let smooth = gaussian_derivative_kernel(spec.size, spec.sigma, 0)?;
    let deriv = gaussian_derivative_kernel(spec.size, spec.sigma, 1)?;

    let u = field.u_f64();
    let v = field.v_f64();
    let dudx = filter2d(&u, w, h, &deriv, &smooth);
    let dudy = filter2d(&u, w, h, &smooth, &deriv);
    let dvdx = filter2d(&v, w, h, &deriv, &smooth);
    let dvdy = filter2d(&v, w, h, &smooth, &deriv);

    let div = dudx.iter().zip(&dvdy).map(|(a, b)| a + b).collect();
    let curl = dvdx.iter().zip(&dudy).map(|(a, b)| a - b).collect();
    Ok(Differentials {
        gradxx: ScalarField::from_raw(w, h, dudx),
        gradyy: ScalarField::from_raw(w, h, dvdy),
        div: ScalarField::from_raw(w, h, div),
        curl: ScalarField::from_raw(w, h, curl),
    })
}

/// Applies `along_x` to every row, then `along_y` to every column.
fn filter2d(src: &[f64], w: usize, h: usize, along_x: &[f64], along_y: &[f64]) -> Vec<f64> {
    let mut tmp = vec![0.0; w * h];
    let half = along_x.len() / 2;
    for y in 0..h {
        correlate_lane(src, y * w, 1, w, along_x, half, &mut tmp, y * w, 1);
    }
    let mut out = vec![0.0; w * h];
    let half = along_y.len() / 2;
    for x in 0..w {
        correlate_lane(&tmp, x, w, h, along_y, half, &mut out, x, w);
    }
    out
}
