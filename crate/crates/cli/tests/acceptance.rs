//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use repcount_core::estimate::{min_cost_path, wavelet_count};
use repcount_core::eval::{
    run_case_benchmark_on, run_acceleration_on_annotations, run_idealized_experiment, stationary_annotations,
    synthetic_annotations, VideoAnnotation,
};
use repcount_core::flowfield::{differentials, read_flo, write_flo, KernelSpec};
use repcount_core::synth::generate_case;
use repcount_core::tfa::{cwt, cwt_coefficients, cwt_coefficients_direct, make_scale_grid, scale_to_period};
use repcount_core::{CaseParams, Channel, FlowField, MotionCase, MotionType, RunConfig, ScaleGrid, Scalogram, Signal};

const DT: f64 = 1.0 / 30.0;
const IDEALIZED_SEED: u64 = 7;
const ACCELERATION_SEED: u64 = 7;

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn sinusoid(n: usize, cycles: f64) -> Signal {
    Signal::new((0..n).map(|i| (2.0 * PI * cycles * i as f64 / n as f64 + 0.3).sin()).collect(), DT).unwrap()
}

// 1. |c - k| <= max(0.5, 0.05 k) for k in {4, 8, 16, 32, 60}, N up to 2048; < 5 s.
fn stationary_counting() -> Outcome {
    let cfg = RunConfig::default();
    let start = Instant::now();
    let mut worst = (0.0, 0usize, 0usize, 0.0);
    let mut pass = true;
    for k in [4usize, 8, 16, 32, 60] {
        for n in [512usize, 1024, 2048] {
            let c = wavelet_count(&sinusoid(n, k as f64), &cfg).unwrap();
            let ratio = (c - k as f64).abs() / (0.05 * k as f64).max(0.5);
            pass &= ratio <= 1.0;
            if ratio > worst.0 {
                worst = (ratio, k, n, c);
            }
        }
    }
    let elapsed = start.elapsed();
    pass &= elapsed < Duration::from_secs(5);
    check(
        pass,
        format!("worst error/tolerance {:.2} (k={}, N={}, count {:.2}); {:.2?} (limit 5 s)", worst.0, worst.1, worst.2, worst.3, elapsed),
    )
}

// 2. 100 drifting-tempo annotations, mean variation 0.36: wavelet MAE < Fourier MAE
//    and >= 70 wavelet wins; < 30 s.
// 3. Noise sigma = 0.5 raises wavelet MAE by <= 0.05.
fn idealized() -> (Outcome, Outcome) {
    let cfg = RunConfig::default();
    let anns = synthetic_annotations(100, IDEALIZED_SEED);
    let start = Instant::now();
    let clean = run_idealized_experiment(&anns, 0.0, IDEALIZED_SEED, &cfg).unwrap();
    let elapsed = start.elapsed();
    let clv = clean.mean_cycle_length_variation;
    let pass2 = clean.wavelet.mae < clean.fourier.mae
        && clean.wins >= 70
        && (clv - 0.36).abs() <= 0.02
        && elapsed < Duration::from_secs(30);
    let c2 = check(
        pass2,
        format!(
            "wavelet MAE {:.4} vs Fourier {:.4}; wins {}/100 (need 70); mean variation {:.3}; {:.2?} (limit 30 s)",
            clean.wavelet.mae, clean.fourier.mae, clean.wins, clv, elapsed
        ),
    );
    let noisy = run_idealized_experiment(&anns, 0.5, IDEALIZED_SEED, &cfg).unwrap();
    let delta = noisy.wavelet.mae - clean.wavelet.mae;
    let c3 = check(
        delta <= 0.05,
        format!("wavelet MAE {:.4} -> {:.4} with sigma 0.5 (increase {:+.4}, limit 0.05)", clean.wavelet.mae, noisy.wavelet.mae, delta),
    );
    (c2, c3)
}

// 4. 20 stationary sequences: wavelet degradation <= 0.10 and < periodogram's; < 30 s.
fn acceleration() -> Outcome {
    let start = Instant::now();
    let r = run_acceleration_on_annotations(&stationary_annotations(20, ACCELERATION_SEED), &RunConfig::default()).unwrap();
    let elapsed = start.elapsed();
    let truths_kept = r.wavelet_original.truths() == r.wavelet_accelerated.truths();
    check(
        r.wavelet_degradation <= 0.10 && r.wavelet_degradation < r.fourier_degradation && truths_kept && elapsed < Duration::from_secs(30),
        format!(
            "MAE degradation wavelet {:+.4} (limit 0.10), periodogram {:+.4}; {:.2?} (limit 30 s)",
            r.wavelet_degradation, r.fourier_degradation, elapsed
        ),
    )
}

// 5. >= 16 of 18 default cases within one; rotation never selects Div,
//    expansion never selects Curl.
fn eighteen_cases() -> Outcome {
    let params = CaseParams::default();
    let seqs: Vec<_> = MotionCase::all().into_iter().map(|c| generate_case(c, &params).unwrap()).collect();
    let bench = run_case_benchmark_on(&seqs, &RunConfig::default()).unwrap();
    let within = bench.rows.iter().filter(|r| (r.prediction - r.truth).abs() <= 1.0).count();
    let mut violations = Vec::new();
    for (seq, row) in seqs.iter().zip(&bench.rows) {
        let bad = match seq.case.motion_type {
            MotionType::Rotation => row.channel == Some(Channel::Div),
            MotionType::Expansion => row.channel == Some(Channel::Curl),
            MotionType::Translation => false,
        };
        if bad {
            violations.push(row.id.clone());
        }
    }
    let misses: Vec<&str> = bench.rows.iter().filter(|r| (r.prediction - r.truth).abs() > 1.0).map(|r| r.id.as_str()).collect();
    check(
        within >= 16 && violations.is_empty(),
        format!("{within}/18 within one (need 16; missed {misses:?}); type-condition violations {violations:?}"),
    )
}

// 6. Affine flow: div = trace and curl = antisymmetric part within 2% at interior pixels.
fn differential_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let m: [f64; 6] = std::array::from_fn(|_| rng.random_range(-2.0..2.0));
        let field = FlowField::from_fn(64, 48, |x, y| {
            let (x, y) = (x as f64 - 32.0, y as f64 - 24.0);
            (m[0] * x + m[1] * y + m[2], m[3] * x + m[4] * y + m[5])
        })
        .unwrap();
        let d = differentials(&field, KernelSpec::default()).unwrap();
        let (div, curl) = (m[0] + m[4], m[3] - m[1]);
        for y in 6..42 {
            for x in 6..58 {
                let rel = |got: f64, want: f64| (got - want).abs() / want.abs().max(1e-2);
                worst = worst.max(rel(d.div.at(x, y), div)).max(rel(d.curl.at(x, y), curl));
            }
        }
    }
    check(worst <= 0.02, format!("worst relative error {worst:.2e} over 50 random affine fields (limit 0.02)"))
}

fn random_surface(rng: &mut ChaCha8Rng, n: usize, j_max: usize) -> Scalogram {
    let grid = ScaleGrid::new(0.1, 0.125, j_max).unwrap();
    let power = (0..n * (j_max + 1))
        .map(|_| match rng.random_range(0..10) {
            0 => 0.0,
            1 => 1.0,
            _ => rng.random::<f64>(),
        })
        .collect();
    Scalogram::new(power, n, grid, 0.05, 6.0).unwrap()
}

fn node(sc: &Scalogram, t: usize, j: usize) -> f64 {
    1.0 / (sc.power(t, j) / sc.max_power() + 1e-12)
}

fn exhaustive(sc: &Scalogram) -> f64 {
    // depth-first over every path with |dj| <= 1
    let (n, m) = (sc.len(), sc.n_scales());
    let mut best = f64::INFINITY;
    let mut stack: Vec<(usize, usize, f64)> = (0..m).map(|j| (0, j, node(sc, 0, j))).collect();
    while let Some((t, j, acc)) = stack.pop() {
        if t + 1 == n {
            best = best.min(acc);
            continue;
        }
        for k in j.saturating_sub(1)..=(j + 1).min(m - 1) {
            stack.push((t + 1, k, acc + node(sc, t + 1, k)));
        }
    }
    best / n as f64
}

// 7. DP cost equals the exhaustive optimum (N <= 10, J <= 4, 1000 surfaces) and
//    never exceeds a sampled feasible path on larger surfaces.
fn min_cost_optimality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut mismatches = 0;
    for _ in 0..1000 {
        let (n, j_max) = (rng.random_range(1..=10), rng.random_range(1..=4));
        let sc = random_surface(&mut rng, n, j_max);
        let best = exhaustive(&sc);
        if (min_cost_path(&sc).cost - best).abs() > 1e-12 * best {
            mismatches += 1;
        }
    }
    let mut beaten = 0;
    for _ in 0..20 {
        let sc = random_surface(&mut rng, 300, 40);
        let dp = min_cost_path(&sc).cost;
        for _ in 0..500 {
            let mut j = rng.random_range(0..sc.n_scales());
            let mut cost = node(&sc, 0, j);
            for t in 1..sc.len() {
                j = (j as i64 + rng.random_range(-1..=1)).clamp(0, sc.n_scales() as i64 - 1) as usize;
                cost += node(&sc, t, j);
            }
            if cost / (sc.len() as f64) < dp * (1.0 - 1e-12) {
                beaten += 1;
            }
        }
    }
    check(
        mismatches == 0 && beaten == 0,
        format!("{mismatches}/1000 exhaustive mismatches; {beaten}/10000 sampled paths cheaper than DP"),
    )
}

// 8. Direct and FFT transforms agree to 1e-6 relative on 50 random signals;
//    pure-tone ridge within one scale bin.
fn cwt_agreement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let n = rng.random_range(64..600);
        let x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let s = Signal::new(x, DT).unwrap();
        let g = make_scale_grid(n, DT, 4.0, 2.0 * DT, 0.125, 6.0).unwrap();
        let a = cwt_coefficients(&s, &g, 6.0);
        let b = cwt_coefficients_direct(&s, &g, 6.0);
        let scale = b.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
        let diff = a.iter().flatten().zip(b.iter().flatten()).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max);
        worst = worst.max(diff / scale);
    }
    let mut worst_bins: f64 = 0.0;
    for period_frames in [8.0, 13.0, 24.0, 40.0, 64.0] {
        let n = 1024;
        let x = (0..n).map(|i| (2.0 * PI * i as f64 / period_frames).cos()).collect();
        let s = Signal::new(x, DT).unwrap();
        let g = make_scale_grid(n, DT, 4.0, 2.0 * DT, 0.125, 6.0).unwrap();
        let sc = cwt(&s, &g, 6.0).unwrap();
        for t in 0..n {
            let col = sc.column(t);
            let j = (0..col.len()).fold(0, |b, j| if col[j] > col[b] { j } else { b });
            if g.scales()[j] > sc.coi()[t] {
                continue;
            }
            let lambda = scale_to_period(g.scales()[j], 6.0);
            worst_bins = worst_bins.max((lambda / (period_frames * DT)).log2().abs() / 0.125);
        }
    }
    check(
        worst <= 1e-6 && worst_bins <= 1.0,
        format!("max relative route difference {worst:.2e} (limit 1e-6); worst tone ridge offset {worst_bins:.2} bins (limit 1)"),
    )
}

fn run_cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_repcount")).args(args).output().expect("binary runs")
}

fn dir_bytes(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in std::fs::read_dir(&d).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                files.push((p.strip_prefix(dir).unwrap().display().to_string(), std::fs::read(&p).unwrap()));
            }
        }
    }
    files.sort();
    files
}

// 9. .flo round-trip bit-exact; annotation JSON round-trips; CLI output
//    byte-deterministic under fixed seeds.
fn format_fidelity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut flo_ok = true;
    for _ in 0..100 {
        let (w, h) = (rng.random_range(1..40), rng.random_range(1..40));
        let mut finite = || loop {
            let v = f32::from_bits(rng.random());
            if v.is_finite() {
                return v;
            }
        };
        let u: Vec<f32> = (0..w * h).map(|_| finite()).collect();
        let v: Vec<f32> = (0..w * h).map(|_| finite()).collect();
        let f = FlowField::new(w, h, u, v).unwrap();
        let bytes = write_flo(&f);
        let back = read_flo(&bytes).unwrap();
        flo_ok &= back.u().iter().zip(f.u()).all(|(a, b)| a.to_bits() == b.to_bits())
            && back.v().iter().zip(f.v()).all(|(a, b)| a.to_bits() == b.to_bits())
            && write_flo(&back) == bytes;
    }

    let mut ann_ok = true;
    for i in 0..200 {
        let mut bounds = vec![rng.random_range(0..500u64)];
        for _ in 0..rng.random_range(1..70) {
            bounds.push(bounds.last().unwrap() + rng.random_range(1..300u64));
        }
        let a = VideoAnnotation::new(format!("clip-{i}"), rng.random_range(1.0..240.0), bounds).unwrap();
        ann_ok &= VideoAnnotation::from_json(&a.to_json()).unwrap() == a;
    }
    for a in synthetic_annotations(100, IDEALIZED_SEED) {
        ann_ok &= VideoAnnotation::from_json(&a.to_json()).unwrap() == a;
    }

    let tmp = tempfile::tempdir().unwrap();
    let p = |s: &str| tmp.path().join(s).display().to_string();
    let mut cli_ok = true;
    for run in ["a", "b"] {
        let out = run_cli(&["synth", "rotation-constant-frontal", "--frames", "80", "--noise", "0.3", "--seed", "5", "--out", &p(run)]);
        cli_ok &= out.status.success();
    }
    cli_ok &= dir_bytes(&tmp.path().join("a")) == dir_bytes(&tmp.path().join("b"));
    let case = p("a/rotation-constant-frontal");
    let c1 = run_cli(&["count", &case]);
    let c2 = run_cli(&["count", &case]);
    cli_ok &= c1.status.success() && c1.stdout == c2.stdout;
    let e1 = run_cli(&["eval", "idealized", "--n", "12", "--seed", "3", "--noise", "0.5", "--json", &p("e1.json")]);
    let e2 = run_cli(&["eval", "idealized", "--n", "12", "--seed", "3", "--noise", "0.5", "--json", &p("e2.json")]);
    cli_ok &= e1.status.success() && e1.stdout == e2.stdout;
    cli_ok &= std::fs::read(p("e1.json")).unwrap() == std::fs::read(p("e2.json")).unwrap();

    check(
        flo_ok && ann_ok && cli_ok,
        format!("flo bit-exact: {flo_ok}; annotation round trip: {ann_ok}; CLI byte-identical: {cli_ok}"),
    )
}

fn main() {
    // `cargo test` passes harness flags; a name filter not matching this target skips it
    let args: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    if !args.is_empty() && !args.iter().any(|a| "acceptance".contains(a.as_str())) {
        return;
    }

    let mut results: Vec<(&str, Outcome)> = Vec::new();
    results.push(("1 stationary counting", stationary_counting()));
    let (c2, c3) = idealized();
    results.push(("2 non-stationary superiority", c2));
    results.push(("3 noise robustness", c3));
    results.push(("4 acceleration robustness", acceleration()));
    results.push(("5 18-case coverage", eighteen_cases()));
    results.push(("6 differential operators", differential_oracle()));
    results.push(("7 min-cost optimality", min_cost_optimality()));
    results.push(("8 CWT route agreement", cwt_agreement()));
    results.push(("9 format fidelity", format_fidelity()));

    let mut failed = 0;
    for (name, o) in &results {
        println!("[{}] criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
