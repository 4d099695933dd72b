use std::f64::consts::{FRAC_1_SQRT_2, PI};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use super::{CaseParams, Continuity, MotionCase, MotionType, SyntheticSequence, View};
use crate::error::Result;
use crate::flowfield::{FlowField, ForegroundMask};

/// Frame geometry shared by the flow patterns and masks.
#[derive(Debug, Clone, Copy)]
struct Geometry {
    w: usize,
    h: usize,
    cx: f64,
    cy: f64,
    /// Normalisation radius: patterns reach unit magnitude at this distance.
    r: f64,
}

impl Geometry {
    fn new(w: usize, h: usize) -> Self {
        Self {
            w,
            h,
            cx: (w as f64 - 1.0) / 2.0,
            cy: (h as f64 - 1.0) / 2.0,
            r: 0.3 * w.min(h) as f64,
        }
    }
}

fn pattern(g: &Geometry, motion: MotionType, view: View, x: f64, y: f64) -> (f64, f64) {
    let dx = (x - g.cx) / g.r;
    let dy = (y - g.cy) / g.r;
    match (motion, view) {
        (MotionType::Translation, View::Side) => (1.0, 0.0),
        // approaching object: flow streams out of the vanishing point
        (MotionType::Translation, View::Frontal) => (dx, dy),
        // rigid profile rotating about an axis in the image plane: the two
        // halves move in opposite directions
        (MotionType::Rotation, View::Side) => (-dy, 0.0),
        (MotionType::Rotation, View::Frontal) => (-dy, dx),
        (MotionType::Expansion, View::Side) => (dx, 0.0),
        (MotionType::Expansion, View::Frontal) => (dx, dy),
    }
}

/// Untextured, unit-amplitude flow pattern of a motion type and viewpoint.
pub fn base_field(motion: MotionType, view: View, width: usize, height: usize) -> Result<FlowField> {
    let g = Geometry::new(width, height);
    FlowField::from_fn(width, height, |x, y| pattern(&g, motion, view, x as f64, y as f64))
}

/// Temporal amplitude a(t) at frame `t`.
pub fn amplitude_at(continuity: Continuity, params: &CaseParams, t: usize) -> f64 {
    let period = params.period_frames as f64;
    let a = params.amplitude;
    match continuity {
        Continuity::Constant => a,
        Continuity::Oscillating => a * (2.0 * PI * t as f64 / period).sin(),
        Continuity::Intermittent => a * pulse((t % params.period_frames) as f64, params.duty_cycle * period),
    }
}

// Raised-cosine pulse of length `on`, ramps taking 10% of it at each end.
fn pulse(tau: f64, on: f64) -> f64 {
    let ramp = 0.1 * on;
    if tau >= on {
        0.0
    } else if tau < ramp {
        0.5 * (1.0 - (PI * tau / ramp).cos())
    } else if tau > on - ramp {
        0.5 * (1.0 - (PI * (on - tau) / ramp).cos())
    } else {
        1.0
    }
}

enum Shape {
    Rect { cx: f64, cy: f64, hw: f64, hh: f64 },
    Disk { cx: f64, cy: f64, r: f64 },
}

impl Shape {
    fn raster(&self, g: &Geometry) -> ForegroundMask {
        ForegroundMask::from_fn(g.w, g.h, |x, y| {
            let (x, y) = (x as f64, y as f64);
            match *self {
                Shape::Rect { cx, cy, hw, hh } => (x - cx).abs() <= hw && (y - cy).abs() <= hh,
                Shape::Disk { cx, cy, r } => (x - cx).powi(2) + (y - cy).powi(2) <= r * r,
            }
        })
    }
}

fn static_shape(g: &Geometry, motion: MotionType) -> Shape {
    let (w, h) = (g.w as f64, g.h as f64);
    match motion {
        MotionType::Translation => Shape::Rect { cx: g.cx, cy: g.cy, hw: 0.3 * w, hh: 0.2 * h },
        _ => Shape::Disk { cx: g.cx, cy: g.cy, r: 0.3 * (w * h).sqrt() },
    }
}

/// Marker of one element in a chain of objects passing through the frame.
///
/// Under constant motion the flow itself never changes; what recurs is the
/// appearance. The marker advances by `texture_period` per cycle and then
/// hands over to the next element of the chain, so the mask (and with it the
/// pooling disk) repeats every `period_frames`.
fn marker_shape(g: &Geometry, case: MotionCase, params: &CaseParams, t: usize) -> Shape {
    let (w, h) = (g.w as f64, g.h as f64);
    let phase = (t % params.period_frames) as f64 / params.period_frames as f64;
    let offset = params.texture_period * (phase - 0.5);
    let r = (0.12 * w * h / PI).sqrt();
    match (case.motion_type, case.view) {
        (MotionType::Translation, View::Side) => {
            Shape::Rect { cx: g.cx + offset, cy: g.cy, hw: 0.15 * w, hh: 0.2 * h }
        }
        (MotionType::Rotation, _) => {
            // a single off-centre marker: no rotational symmetry
            let orbit = 0.2 * w.min(h);
            let theta = 2.0 * PI * phase;
            Shape::Disk { cx: g.cx + orbit * theta.cos(), cy: g.cy + orbit * theta.sin(), r }
        }
        (MotionType::Expansion, View::Side) => Shape::Disk { cx: g.cx + offset, cy: g.cy, r },
        (_, View::Frontal) => Shape::Disk {
            cx: g.cx + offset * FRAC_1_SQRT_2,
            cy: g.cy + offset * FRAC_1_SQRT_2,
            r,
        },
    }
}

/// Foreground mask of `case` at frame `t`.
pub fn mask_at(case: MotionCase, params: &CaseParams, t: usize) -> ForegroundMask {
    let g = Geometry::new(params.width, params.height);
    match case.continuity {
        Continuity::Constant => marker_shape(&g, case, params, t).raster(&g),
        _ => static_shape(&g, case.motion_type).raster(&g),
    }
}

/// Generate the flow sequence, masks and ground truth of one case.
pub fn generate_case(case: MotionCase, params: &CaseParams) -> Result<SyntheticSequence> {
    params.validate()?;
    let g = Geometry::new(params.width, params.height);
    let base: Vec<(f64, f64)> = (0..g.w * g.h)
        .map(|i| pattern(&g, case.motion_type, case.view, (i % g.w) as f64, (i / g.w) as f64))
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let noise = Normal::new(0.0, params.noise_sigma).expect("validated sigma");
    let (ddx, ddy) = params.drift;

    let mut frames = Vec::with_capacity(params.n_frames);
    for t in 0..params.n_frames {
        let a = amplitude_at(case.continuity, params, t);
        let mut u = Vec::with_capacity(base.len());
        let mut v = Vec::with_capacity(base.len());
        for &(px, py) in &base {
            let (mut fx, mut fy) = (a * px + ddx, a * py + ddy);
            if params.noise_sigma > 0.0 {
                fx += noise.sample(&mut rng);
                fy += noise.sample(&mut rng);
            }
            u.push(fx as f32);
            v.push(fy as f32);
        }
        frames.push((FlowField::new(g.w, g.h, u, v)?, mask_at(case, params, t)));
    }

    Ok(SyntheticSequence {
        case,
        params: params.clone(),
        frames,
        truth_count: params.truth_count(),
        cycle_bounds: (0..params.n_frames).step_by(params.period_frames).collect(),
    })
}
