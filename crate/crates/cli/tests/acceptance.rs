//! End-to-end acceptance suite.
//!
//! Each test exercises one advertised guarantee of the toolkit — geometry
//! oracles, enumeration completeness, exponent estimation, counting laws,
//! measure transport, sweep convergence, and byte-level determinism of the
//! command-line tool — and prints one `ACCEPTANCE n …: PASS (…)` line on
//! success.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use kleinian::counting::{
    count_loops, count_ortho, count_primitive_geodesics, fit_exponential, geodesic_ratio,
};
use kleinian::exponent::estimate_delta;
use kleinian::group::{enumerate_orbit, EnumerationMode, GroupSpec, DEFAULT_BUDGET};
use kleinian::hypgeom::{
    body_distance, busemann_cocycle, dist, ConvexBody, Dim, GeodesicLine, HPoint,
};
use kleinian::io::{load_bodies_file, load_family_file, load_group_file};
use kleinian::measures::{loop_constant_prediction, ps_estimate, transport_mass};
use kleinian::moebius::MobiusMap;
use kleinian::sweep::{run_sweep, SweepConfig};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn load(name: &str) -> GroupSpec {
    load_group_file(fixture(name)).unwrap_or_else(|e| panic!("loading {name}: {e}"))
}

// ---------------------------------------------------------------------------
// 1. Geometry oracles
// ---------------------------------------------------------------------------

/// Sample `n` equally spaced points of arclength parameter in `[lo, hi]`.
fn sample_line(line: &GeodesicLine, lo: f64, hi: f64, n: usize) -> Vec<(f64, HPoint)> {
    (0..n)
        .map(|i| {
            let t = lo + (hi - lo) * (i as f64) / ((n - 1) as f64);
            (t, line.point_at(t).unwrap())
        })
        .collect()
}

/// Brute-force minimum of d(p(s), q(t)) over an arclength grid; returns
/// (min distance, argmin s, argmin t).
fn grid_axis_min(
    a: &GeodesicLine,
    b: &GeodesicLine,
    ra: (f64, f64),
    rb: (f64, f64),
    n: usize,
) -> (f64, f64, f64) {
    let pa = sample_line(a, ra.0, ra.1, n);
    let pb = sample_line(b, rb.0, rb.1, n);
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for (s, p) in &pa {
        for (t, q) in &pb {
            let d = dist(p, q).unwrap();
            if d < best.0 {
                best = (d, *s, *t);
            }
        }
    }
    best
}

/// Two-stage grid minimization of the distance between two disjoint
/// geodesics, accurate to well below 1e-6: a coarse pass over a wide
/// arclength window localizes the minimizer, a fine pass around it
/// resolves the value quadratically.
fn grid_tube_gap(a: &GeodesicLine, b: &GeodesicLine, r1: f64, r2: f64) -> Option<f64> {
    const N: usize = 800;
    const WIDE: f64 = 12.0;
    let coarse = grid_axis_min(a, b, (-WIDE, WIDE), (-WIDE, WIDE), N);
    let step = 2.0 * WIDE / (N as f64 - 1.0);
    // Reject instances whose axes nearly touch (non-smooth minimum) or
    // whose minimizer sits at the window edge (not localized).
    if coarse.0 < 0.1 || coarse.1.abs() > WIDE - 1.0 || coarse.2.abs() > WIDE - 1.0 {
        return None;
    }
    let fine = grid_axis_min(
        a,
        b,
        (coarse.1 - 2.0 * step, coarse.1 + 2.0 * step),
        (coarse.2 - 2.0 * step, coarse.2 + 2.0 * step),
        N,
    );
    Some(fine.0 - (r1 + r2))
}

#[test]
fn acceptance_1_geometry_oracles() {
    let start = Instant::now();
    let tol = 1e-9;
    let e = std::f64::consts::E;
    let ln2 = std::f64::consts::LN_2;

    // Closed-form values.
    let checks: Vec<(&str, f64, f64)> = vec![
        (
            "d((0,1),(0,2)) = log 2",
            dist(&HPoint::h2(0.0, 1.0), &HPoint::h2(0.0, 2.0)).unwrap(),
            ln2,
        ),
        (
            "d((0,1),(0,e)) = 1",
            dist(&HPoint::h2(0.0, 1.0), &HPoint::h2(0.0, e)).unwrap(),
            1.0,
        ),
        (
            "translation length of diag(2, 1/2) = log 4",
            MobiusMap::from_real([[2.0, 0.0], [0.0, 0.5]]).unwrap().translation_length(),
            4.0f64.ln(),
        ),
        (
            "Busemann at infinity, (0,1) vs (0,e) = 1",
            busemann_cocycle(&HPoint::infinity(Dim::Two), &HPoint::h2(0.0, 1.0), &HPoint::h2(0.0, e))
                .unwrap(),
            1.0,
        ),
        (
            "Busemann at 0, (0,1) vs (0,2) = -log 2",
            busemann_cocycle(&HPoint::b2(0.0), &HPoint::h2(0.0, 1.0), &HPoint::h2(0.0, 2.0)).unwrap(),
            -ln2,
        ),
        (
            "ball-ball gap = 1.3",
            body_distance(
                &ConvexBody::ball(HPoint::h2(0.0, 1.0), 0.4).unwrap(),
                &ConvexBody::ball(HPoint::h2(0.0, e * e), 0.3).unwrap(),
            )
            .unwrap(),
            1.3,
        ),
        (
            "horoball-horoball gap = 2 log 2",
            body_distance(
                &ConvexBody::horoball(HPoint::infinity(Dim::Two), 2.0).unwrap(),
                &ConvexBody::horoball(HPoint::b2(0.0), 0.5).unwrap(),
            )
            .unwrap(),
            2.0 * ln2,
        ),
        (
            "horoball-horoball gap in three dimensions = log 120",
            body_distance(
                &ConvexBody::horoball(HPoint::infinity(Dim::Three), 6.0).unwrap(),
                &ConvexBody::horoball(HPoint::b3(Complex64::new(0.0, 0.0)), 0.05).unwrap(),
            )
            .unwrap(),
            120.0f64.ln(),
        ),
        (
            "tube-ball gap = log 2 - 1/2",
            body_distance(
                &ConvexBody::tube(
                    GeodesicLine::new(HPoint::b2(-1.0), HPoint::b2(1.0)).unwrap(),
                    0.3,
                )
                .unwrap(),
                &ConvexBody::ball(HPoint::h2(0.0, 2.0), 0.2).unwrap(),
            )
            .unwrap(),
            ln2 - 0.5,
        ),
    ];

    for (name, got, want) in &checks {
        assert!(
            (got - want).abs() <= tol,
            "{name}: got {got}, want {want} (err {:.3e})",
            (got - want).abs()
        );
    }

    // Tube-tube distances against the independent grid oracle: ten
    // plane instances with disjoint endpoint intervals, ten space
    // instances with generic skew axes.
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_5501);
    let mut done = 0usize;
    let mut attempts = 0usize;
    while done < 10 && attempts < 200 {
        attempts += 1;
        let w1: f64 = rng.gen_range(0.4..1.4);
        let w2: f64 = rng.gen_range(0.4..1.4);
        let gap: f64 = rng.gen_range(0.3..2.0);
        let a = GeodesicLine::new(
            HPoint::b2(-gap / 2.0 - 2.0 * w1),
            HPoint::b2(-gap / 2.0),
        )
        .unwrap();
        let b = GeodesicLine::new(HPoint::b2(gap / 2.0), HPoint::b2(gap / 2.0 + 2.0 * w2)).unwrap();
        let r1: f64 = rng.gen_range(0.1..0.5);
        let r2: f64 = rng.gen_range(0.1..0.5);
        let Some(expected) = grid_tube_gap(&a, &b, r1, r2) else { continue };
        let got = body_distance(
            &ConvexBody::tube(a, r1).unwrap(),
            &ConvexBody::tube(b, r2).unwrap(),
        )
        .unwrap();
        assert!(
            (got - expected).abs() <= 1e-6,
            "plane tube instance {done}: got {got}, grid oracle {expected} (err {:.3e})",
            (got - expected).abs()
        );
        done += 1;
    }
    assert_eq!(done, 10, "could not build 10 plane tube instances");

    let rand_b3 = |rng: &mut ChaCha8Rng| {
        HPoint::b3(Complex64::new(rng.gen_range(-2.5..2.5), rng.gen_range(-2.5..2.5)))
    };
    done = 0;
    attempts = 0;
    while done < 10 && attempts < 200 {
        attempts += 1;
        let (e1, e2) = (rand_b3(&mut rng), rand_b3(&mut rng));
        let (e3, e4) = (rand_b3(&mut rng), rand_b3(&mut rng));
        let far = |p: &HPoint, q: &HPoint| {
            let d = p.as_finite_boundary().unwrap() - q.as_finite_boundary().unwrap();
            d.norm() >= 0.5
        };
        if !(far(&e1, &e2) && far(&e3, &e4)) {
            continue;
        }
        let a = GeodesicLine::new(e1, e2).unwrap();
        let b = GeodesicLine::new(e3, e4).unwrap();
        let r1: f64 = rng.gen_range(0.1..0.5);
        let r2: f64 = rng.gen_range(0.1..0.5);
        let Some(expected) = grid_tube_gap(&a, &b, r1, r2) else { continue };
        let got = body_distance(
            &ConvexBody::tube(a, r1).unwrap(),
            &ConvexBody::tube(b, r2).unwrap(),
        )
        .unwrap();
        assert!(
            (got - expected).abs() <= 1e-6,
            "space tube instance {done}: got {got}, grid oracle {expected} (err {:.3e})",
            (got - expected).abs()
        );
        done += 1;
    }
    assert_eq!(done, 10, "could not build 10 space tube instances");

    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 10.0, "geometry oracle suite took {secs:.2}s, bound is 10s");
    println!(
        "ACCEPTANCE 1 geometry oracles: PASS ({} closed-form values at 1e-9; \
         20 tube-tube instances within 1e-6 of the grid oracle; {secs:.2}s)",
        checks.len()
    );
}

// ---------------------------------------------------------------------------
// 2. Pruned enumeration is complete
// ---------------------------------------------------------------------------

#[test]
fn acceptance_2_enumeration_completeness() {
    let start = Instant::now();
    let t = 8.0;
    // Exhaustive depths that provably cover every element of displacement
    // at most 8 in each fixture group.
    let cases: [(&str, u32); 5] = [
        ("cyclic.grp", 7),
        ("parabolic.grp", 56),
        ("schottky.grp", 8),
        ("schottky3.grp", 5),
        ("pinchlimit.grp", 15),
    ];
    let mut sizes = Vec::new();
    for (name, depth) in cases {
        let spec = load(name);
        let pruned = enumerate_orbit(&spec, t, EnumerationMode::pruned(), DEFAULT_BUDGET)
            .unwrap_or_else(|e| panic!("{name} pruned: {e}"));
        let exact =
            enumerate_orbit(&spec, t, EnumerationMode::Exact { depth_limit: depth }, DEFAULT_BUDGET)
                .unwrap_or_else(|e| panic!("{name} exact: {e}"));
        assert_eq!(
            pruned.entries.len(),
            exact.entries.len(),
            "{name}: pruned found {} elements, exhaustive depth {depth} found {}",
            pruned.entries.len(),
            exact.entries.len()
        );
        for (p, x) in pruned.entries.iter().zip(exact.entries.iter()) {
            assert_eq!(p.word, x.word, "{name}: word lists differ");
            assert_eq!(
                p.displacement.to_bits(),
                x.displacement.to_bits(),
                "{name}: displacement of {:?} differs between modes",
                p.word
            );
        }
        sizes.push(format!("{} {}", name.trim_end_matches(".grp"), pruned.entries.len()));
    }
    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 60.0, "enumeration comparison took {secs:.2}s, bound is 60s");
    println!(
        "ACCEPTANCE 2 pruned enumeration is complete: PASS \
         (element sets at T=8 identical to exhaustive search: {}; {secs:.2}s)",
        sizes.join(", ")
    );
}

// ---------------------------------------------------------------------------
// 3. Parabolic critical exponent
// ---------------------------------------------------------------------------

#[test]
fn acceptance_3_parabolic_exponent() {
    let start = Instant::now();
    let spec = load("parabolic.grp");
    let est = estimate_delta(&spec, 30.0, DEFAULT_BUDGET).unwrap();
    let err = (est.delta_series - 0.5).abs();
    assert!(
        err <= 0.01,
        "parabolic exponent: series estimator {} vs true value 0.5 (err {err:.4})",
        est.delta_series
    );
    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 30.0, "parabolic exponent took {secs:.2}s, bound is 30s");
    println!(
        "ACCEPTANCE 3 parabolic exponent: PASS \
         (delta = {:.4}, true value 0.5, err {err:.4} <= 0.01; {secs:.2}s)",
        est.delta_series
    );
}

// ---------------------------------------------------------------------------
// 4. The two exponent estimators agree
// ---------------------------------------------------------------------------

#[test]
fn acceptance_4_estimator_agreement() {
    let spec = load("schottky.grp");
    let est = estimate_delta(&spec, 14.0, DEFAULT_BUDGET).unwrap();
    let diff = (est.delta_series - est.delta_growth).abs();
    assert!(
        diff <= 0.02,
        "estimators disagree at T=14: series {} vs growth {} (diff {diff:.4})",
        est.delta_series,
        est.delta_growth
    );
    println!(
        "ACCEPTANCE 4 exponent estimators agree: PASS \
         (series {:.4} vs growth {:.4}, diff {diff:.4} <= 0.02)",
        est.delta_series, est.delta_growth
    );
}

// ---------------------------------------------------------------------------
// 5. Loop and primitive-geodesic counting laws
// ---------------------------------------------------------------------------

#[test]
fn acceptance_5_counting_laws() {
    let spec = load("schottky.grp");
    let t = 14.0;
    let est = estimate_delta(&spec, t, DEFAULT_BUDGET).unwrap();
    let delta = est.delta_series;

    let loops = count_loops(&spec, t, DEFAULT_BUDGET).unwrap();
    let fit = fit_exponential(&loops, (t / 2.0, t)).unwrap();
    let fit_err = (fit.delta_hat - delta).abs();
    assert!(
        fit_err <= 0.05,
        "loop-fit exponent {} vs series estimator {delta} (err {fit_err:.4})",
        fit.delta_hat
    );

    let geos = count_primitive_geodesics(&spec, t, DEFAULT_BUDGET).unwrap();
    let r_far = geodesic_ratio(&geos, delta, t).unwrap();
    let r_near = geodesic_ratio(&geos, delta, t - 2.0).unwrap();
    assert!(
        (0.7..=1.4).contains(&r_far),
        "normalized geodesic count {r_far:.3} at L={t} outside [0.7, 1.4]"
    );
    assert!(
        (r_far - 1.0).abs() < (r_near - 1.0).abs(),
        "normalized geodesic count not approaching 1: {r_far:.3} at L={t} vs {r_near:.3} at L={}",
        t - 2.0
    );
    println!(
        "ACCEPTANCE 5 counting laws: PASS \
         (loop-fit delta {:.4} within {fit_err:.4} of {delta:.4}; \
         geodesic ratio {r_near:.3} -> {r_far:.3} approaching 1 inside [0.7, 1.4])",
        fit.delta_hat
    );
}

// ---------------------------------------------------------------------------
// 6. Orthogeodesics between equal balls are shifted loops
// ---------------------------------------------------------------------------

#[test]
fn acceptance_6_ortho_ball_shift() {
    let spec = load("schottky.grp");
    let (d_minus, d_plus) = load_bodies_file(fixture("balls.bodies"), &spec).unwrap();
    let t = 10.0;
    let two_r = 0.8; // both fixture balls have radius 0.4 at the basepoint

    let ortho = count_ortho(&spec, &d_minus, &d_plus, t, None, DEFAULT_BUDGET).unwrap();
    let loops = count_loops(&spec, t + two_r + 0.5, DEFAULT_BUDGET).unwrap();
    let expected: Vec<(f64, &kleinian::group::Word)> = loops
        .entries
        .iter()
        .map(|e| (e.length - two_r, &e.word))
        .filter(|(l, _)| *l > 0.0 && *l <= t)
        .collect();

    assert_eq!(
        ortho.entries.len(),
        expected.len(),
        "orthogeodesic series has {} entries, shifted loop series has {}",
        ortho.entries.len(),
        expected.len()
    );
    for (o, (l, w)) in ortho.entries.iter().zip(expected.iter()) {
        assert_eq!(
            o.length.to_bits(),
            l.to_bits(),
            "orthogeodesic length {} differs from shifted loop length {l}",
            o.length
        );
        assert_eq!(&&o.word, w, "orthogeodesic word list differs from loop word list");
    }
    println!(
        "ACCEPTANCE 6 orthogeodesics between equal balls: PASS \
         ({} lengths bitwise equal to loop lengths minus 2r = {two_r})",
        ortho.entries.len()
    );
}

// ---------------------------------------------------------------------------
// 7. Transported measure mass predicts counting constants
// ---------------------------------------------------------------------------

#[test]
fn acceptance_7_transport_predicts_constants() {
    let spec_x = load("schottky.grp");
    let y = HPoint::h2(0.3, 1.2);
    let spec_y = spec_x.with_basepoint(y).unwrap();
    let t = 14.0;

    let est = estimate_delta(&spec_x, t, DEFAULT_BUDGET).unwrap();
    let delta = est.delta_series;

    let fit_x =
        fit_exponential(&count_loops(&spec_x, t, DEFAULT_BUDGET).unwrap(), (t / 2.0, t)).unwrap();
    let fit_y =
        fit_exponential(&count_loops(&spec_y, t, DEFAULT_BUDGET).unwrap(), (t / 2.0, t)).unwrap();
    let fitted_ratio = fit_x.c_hat / fit_y.c_hat;

    let mu = ps_estimate(&spec_x, delta, t, DEFAULT_BUDGET).unwrap();
    let m_x = mu.total_mass();
    let m_y = transport_mass(&mu, &spec_x.basepoint(), &y).unwrap();
    let predicted = loop_constant_prediction((m_x, m_y), delta, m_x).unwrap();

    let rel = (fitted_ratio - predicted).abs() / predicted;
    assert!(
        rel <= 0.25,
        "constant ratio from loop fits {fitted_ratio:.4} vs squared transported-mass \
         ratio {predicted:.4} (relative error {rel:.4})"
    );
    println!(
        "ACCEPTANCE 7 transported mass predicts constants: PASS \
         (fitted ratio {fitted_ratio:.4} vs predicted {predicted:.4}, \
         relative error {rel:.4} <= 0.25)"
    );
}

// ---------------------------------------------------------------------------
// 8. Sweep convergence along families
// ---------------------------------------------------------------------------

#[test]
fn acceptance_8_sweep_convergence() {
    let start = Instant::now();

    // A pinching family approaching its limit group: every gap column must
    // be weakly decreasing up to a small sampling slack.
    let pinch = load_family_file(fixture("pinch.fam")).unwrap();
    let report = run_sweep(&pinch, &SweepConfig::default()).unwrap();
    for row in report.rows.iter().chain(std::iter::once(&report.limit)) {
        assert!(row.failed.is_none(), "sweep row {} failed: {:?}", row.label, row.failed);
    }
    let slack = 0.02;
    let gap = |v: Option<f64>, what: &str, label: &str| -> f64 {
        v.unwrap_or_else(|| panic!("missing {what} gap for member {label}"))
    };
    let mut last_delta = Vec::new();
    for pair in report.gaps.windows(2) {
        let (g0, g1) = (&pair[0], &pair[1]);
        type Pick = fn(&kleinian::sweep::GapRow) -> Option<f64>;
        let picks: [(Pick, &str); 3] = [
            (|g| g.delta_gap, "exponent"),
            (|g| g.lambda0_gap, "spectrum"),
            (|g| g.constant_gap, "constant"),
        ];
        for (pick, what) in picks {
            let (a, b) = (gap(pick(g0), what, &g0.label), gap(pick(g1), what, &g1.label));
            assert!(
                b <= a + slack,
                "{what} gap grows along the pinch family: {a:.4} at {} -> {b:.4} at {}",
                g0.label,
                g1.label
            );
        }
    }
    for g in &report.gaps {
        let (d, l) = (gap(g.delta_gap, "exponent", &g.label), gap(g.lambda0_gap, "spectrum", &g.label));
        // In the plane the bottom of the spectrum is 1-Lipschitz in the
        // exponent, so spectrum gaps never exceed exponent gaps.
        assert!(
            l <= d + 1e-12,
            "spectrum gap {l:.4} exceeds exponent gap {d:.4} at {}",
            g.label
        );
        last_delta.push(d);
    }

    // A constant family: every member is the same group, so every gap
    // must vanish to rounding.
    let constant = load_family_file(fixture("constant.fam")).unwrap();
    let creport = run_sweep(&constant, &SweepConfig::default()).unwrap();
    for g in &creport.gaps {
        for (v, what) in [
            (g.delta_gap, "exponent"),
            (g.lambda0_gap, "spectrum"),
            (g.constant_gap, "constant"),
        ] {
            let v = gap(v, what, &g.label);
            assert!(v < 1e-9, "{what} gap {v:.2e} on the constant family at {}", g.label);
        }
    }

    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 600.0, "sweeps took {secs:.1}s, bound is 600s");
    println!(
        "ACCEPTANCE 8 sweep convergence: PASS \
         (pinch gaps weakly decreasing, exponent gap {:.4} -> {:.4}; \
         constant-family gaps < 1e-9; {secs:.1}s)",
        last_delta.first().unwrap(),
        last_delta.last().unwrap()
    );
}

// ---------------------------------------------------------------------------
// 9. Byte-identical outputs at any worker count
// ---------------------------------------------------------------------------

/// Run the CLI from the workspace root with `--out` pointing at `out`,
/// panicking (with stderr shown) unless it exits successfully.
fn run_cli(args: &[&str], out: &Path) {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../..");
    let output = Command::new(env!("CARGO_BIN_EXE_kleinian"))
        .current_dir(&root)
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("spawning the CLI");
    assert!(
        output.status.success(),
        "CLI {:?} failed with {}:\n{}",
        args,
        output.status,
        String::from_utf8_lossy(&output.stderr)
    );
}

fn read_bytes(path: &Path) -> Vec<u8> {
    std::fs::read(path).unwrap_or_else(|e| panic!("reading {}: {e}", path.display()))
}

#[test]
fn acceptance_9_byte_identical_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let mut compared = Vec::new();

    // (label, fixed arguments, output files); each is run at worker counts
    // 1, 2 and 4 plus a repeat run, and every output must be byte-identical.
    let commands: [(&str, Vec<&str>, Vec<&str>); 2] = [
        (
            "loops",
            vec!["loops", "--group", "fixtures/schottky.grp", "--T", "12"],
            vec!["loops.csv", "loops.json"],
        ),
        (
            "sweep",
            vec!["sweep", "--family", "fixtures/constant.fam"],
            vec!["sweep.csv", "sweep.json"],
        ),
    ];
    for (label, args, files) in &commands {
        let runs = [("w1", "1"), ("w2", "2"), ("w4", "4"), ("w2-repeat", "2")];
        let mut outputs: Vec<(String, Vec<Vec<u8>>)> = Vec::new();
        for (tag, workers) in runs {
            let out = tmp.path().join(format!("{label}-{tag}"));
            std::fs::create_dir_all(&out).unwrap();
            let mut full = args.clone();
            full.extend_from_slice(&["--workers", workers]);
            run_cli(&full, &out);
            outputs.push((tag.to_string(), files.iter().map(|f| read_bytes(&out.join(f))).collect()));
        }
        let (base_tag, base) = &outputs[0];
        for (tag, bytes) in &outputs[1..] {
            for ((file, a), b) in files.iter().zip(base.iter()).zip(bytes.iter()) {
                assert_eq!(
                    a, b,
                    "{label}: {file} differs between run {base_tag} and run {tag}"
                );
            }
        }
        compared.push(format!("{label} ({})", files.join(", ")));
    }
    println!(
        "ACCEPTANCE 9 deterministic outputs: PASS \
         ({} byte-identical across worker counts 1/2/4 and a repeat run)",
        compared.join(" and ")
    );
}
