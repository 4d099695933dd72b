//! Scalogram export: CSV tables and an 8-bit PGM heatmap.

use std::fmt::Write;

use super::Scalogram;

/// Header `time_s,<scale_0>,...,<scale_J>` then one row per timestep.
pub fn scalogram_csv(sc: &Scalogram) -> String {
    let mut out = String::from("time_s");
    for s in sc.grid().scales() {
        write!(out, ",{s}").unwrap();
    }
    out.push('\n');
    for t in 0..sc.len() {
        write!(out, "{}", t as f64 * sc.dt()).unwrap();
        for p in sc.column(t) {
            write!(out, ",{p}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Power normalized to the global maximum; time on x, scale index on y
/// (row 0 is the smallest scale).
pub fn scalogram_pgm(sc: &Scalogram) -> Vec<u8> {
    let (w, h) = (sc.len(), sc.n_scales());
    let max = sc.max_power();
    let mut out = format!("P5\n{w} {h}\n255\n").into_bytes();
    for j in 0..h {
        for t in 0..w {
            let v = if max > 0.0 { (255.0 * sc.power(t, j) / max).round() } else { 0.0 };
            out.push(v.clamp(0.0, 255.0) as u8);
        }
    }
    out
}

/// Per-timestep ridge and path sidecar:
/// `time_s,ridge_index,ridge_scale_s,path_index,path_scale_s,coi_scale_s`.
pub fn ridge_csv(sc: &Scalogram, ridge: &[usize], path: &[usize]) -> String {
    let scales = sc.grid().scales();
    let mut out = String::from("time_s,ridge_index,ridge_scale_s,path_index,path_scale_s,coi_scale_s\n");
    for t in 0..sc.len() {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            t as f64 * sc.dt(),
            ridge[t],
            scales[ridge[t]],
            path[t],
            scales[path[t]],
            sc.coi()[t]
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tfa::ScaleGrid;

    fn tiny() -> Scalogram {
        let g = ScaleGrid::new(0.2, 0.5, 2).unwrap();
        // 2 timesteps x 3 scales
        Scalogram::new(vec![0.0, 2.0, 4.0, 1.0, 0.5, 0.0], 2, g, 0.1, 6.0).unwrap()
    }

    #[test]
    fn csv_layout() {
        let csv = scalogram_csv(&tiny());
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with("time_s,0.2,"));
        assert_eq!(lines[1], "0,0,2,4");
        assert_eq!(lines[2], "0.1,1,0.5,0");
    }

    #[test]
    fn pgm_is_normalized_and_scale_major() {
        let pgm = scalogram_pgm(&tiny());
        let header = b"P5\n2 3\n255\n";
        assert_eq!(&pgm[..header.len()], header);
        assert_eq!(&pgm[header.len()..], &[0, 64, 128, 32, 255, 0]);
    }
}
