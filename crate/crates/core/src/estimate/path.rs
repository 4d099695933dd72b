//! Min-cost paths through the inverted, max-normalized power surface.
//!
//! Node cost is `1 / (p / max(p) + eps)`. A path visits one scale per
//! timestep and moves at most one scale index between timesteps.

use super::RidgePath;
use crate::config::PathMode;
use crate::tfa::Scalogram;

pub const COST_EPSILON: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct MinCostPath {
    pub path: RidgePath,
    /// Total path cost divided by the number of timesteps.
    pub cost: f64,
    /// Set when the surface has no power at all; the path is flat at scale 0
    /// and the cost is the `1/eps` sentinel.
    pub degenerate: bool,
}

/// Node costs, time-major; `None` when the surface carries no power.
pub fn node_cost(sc: &Scalogram) -> Option<Vec<f64>> {
    let max = sc.max_power();
    if !(max > 0.0) {
        return None;
    }
    Some(sc.power_raw().iter().map(|&p| 1.0 / (p / max + COST_EPSILON)).collect())
}

fn degenerate(sc: &Scalogram) -> MinCostPath {
    MinCostPath { path: RidgePath(vec![0; sc.len()]), cost: 1.0 / COST_EPSILON, degenerate: true }
}

pub fn find_path(sc: &Scalogram, mode: PathMode) -> MinCostPath {
    match mode {
        PathMode::Dp => min_cost_path(sc),
        PathMode::Greedy => greedy_path(sc),
    }
}

/// Exact minimum by dynamic programming over all start scales.
///
/// Ties go to the smaller scale index, both for the final scale and for
/// every predecessor choice.
pub fn min_cost_path(sc: &Scalogram) -> MinCostPath {
    let Some(cost) = node_cost(sc) else {
        return degenerate(sc);
    };
    let (n, m) = (sc.len(), sc.n_scales());
    let mut acc = cost[..m].to_vec();
    let mut next = vec![0.0; m];
    // back[t * m + j] = predecessor scale of (t, j)
    let mut back = vec![0usize; n * m];
    for t in 1..n {
        for j in 0..m {
            let lo = j.saturating_sub(1);
            let hi = (j + 1).min(m - 1);
            let mut best = lo;
            for k in lo + 1..=hi {
                if acc[k] < acc[best] {
                    best = k;
                }
            }
            back[t * m + j] = best;
            next[j] = acc[best] + cost[t * m + j];
        }
        std::mem::swap(&mut acc, &mut next);
    }
    let mut j = (1..m).fold(0, |b, k| if acc[k] < acc[b] { k } else { b });
    let total = acc[j];
    let mut path = vec![0; n];
    for t in (0..n).rev() {
        path[t] = j;
        if t > 0 {
            j = back[t * m + j];
        }
    }
    MinCostPath { path: RidgePath(path), cost: total / n as f64, degenerate: false }
}

/// Starts at the cheapest scale of the first timestep and repeatedly steps
/// to the cheapest of the (up to three) reachable scales.
pub fn greedy_path(sc: &Scalogram) -> MinCostPath {
    let Some(cost) = node_cost(sc) else {
        return degenerate(sc);
    };
    let (n, m) = (sc.len(), sc.n_scales());
    let mut j = (1..m).fold(0, |b, k| if cost[k] < cost[b] { k } else { b });
    let mut total = cost[j];
    let mut path = Vec::with_capacity(n);
    path.push(j);
    for t in 1..n {
        let row = &cost[t * m..(t + 1) * m];
        let lo = j.saturating_sub(1);
        let hi = (j + 1).min(m - 1);
        j = (lo + 1..=hi).fold(lo, |b, k| if row[k] < row[b] { k } else { b });
        total += row[j];
        path.push(j);
    }
    MinCostPath { path: RidgePath(path), cost: total / n as f64, degenerate: false }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tfa::ScaleGrid;

    fn surface(n: usize, m: usize, p: Vec<f64>) -> Scalogram {
        Scalogram::new(p, n, ScaleGrid::new(0.1, 0.25, m - 1).unwrap(), 0.1, 6.0).unwrap()
    }

    #[test]
    fn uniform_surface() {
        let sc = surface(12, 5, vec![3.0; 60]);
        let r = min_cost_path(&sc);
        assert_eq!(r.path.0, vec![0; 12]);
        assert!((r.cost - 1.0 / (1.0 + COST_EPSILON)).abs() < 1e-12);
        assert!(!r.degenerate);
    }

    #[test]
    fn zero_surface_is_degenerate() {
        let sc = surface(7, 3, vec![0.0; 21]);
        let r = min_cost_path(&sc);
        assert!(r.degenerate);
        assert_eq!(r.path.0, vec![0; 7]);
        assert_eq!(r.cost, 1e12);
        assert!(greedy_path(&sc).degenerate);
    }

    #[test]
    fn dp_beats_greedy_trap() {
        // Greedy starts on the bright cell at scale 0 and then pays for the
        // dark row; DP starts at scale 2 and stays bright.
        #[rustfmt::skip]
        let p = vec![
            1.0, 0.1, 0.9,
            0.01, 0.01, 1.0,
            0.01, 0.01, 1.0,
            0.01, 0.01, 1.0,
        ];
        let sc = surface(4, 3, p);
        let dp = min_cost_path(&sc);
        let gr = greedy_path(&sc);
        assert_eq!(dp.path.0, vec![2, 2, 2, 2]);
        assert!(dp.cost < gr.cost);
    }

    #[test]
    fn transitions_are_bounded() {
        let p: Vec<f64> = (0..40 * 9).map(|i| ((i * 7919) % 97) as f64 + 1.0).collect();
        let sc = surface(40, 9, p);
        for r in [min_cost_path(&sc), greedy_path(&sc)] {
            assert!(r.path.0.windows(2).all(|w| w[0].abs_diff(w[1]) <= 1));
        }
    }

    #[test]
    fn cost_is_scale_invariant() {
        let p: Vec<f64> = (0..30 * 6).map(|i| ((i * 31) % 17) as f64 * 0.3 + 0.01).collect();
        let a = min_cost_path(&surface(30, 6, p.clone()));
        let b = min_cost_path(&surface(30, 6, p.iter().map(|v| v * 1024.0).collect()));
        assert_eq!(a, b);
    }
}
