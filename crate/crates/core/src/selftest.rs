//! Built-in verification suite: a battery of fast checks with closed-form
//! expected values, runnable from the command line to validate a build.
//!
//! Each check exercises one layer of the library — point geometry, cocycles,
//! body gaps, enumeration, exponent estimation, measures, counting, fitting —
//! against an answer computable by hand. All checks run in well under a
//! second combined and use no input files.

use num_complex::Complex64;

use crate::counting::{count_loops, count_ortho, fit_exponential, CountEntry, CountKind,
                      CountSeries, DecoratedBody};
use crate::exponent::estimate_delta;
use crate::group::orbit::{enumerate_displacements, Certificate, EnumerationMode, DEFAULT_BUDGET};
use crate::group::{GroupSpec, Word};
use crate::hypgeom::{body_distance, busemann_cocycle, dist, ConvexBody, Dim, GeodesicLine,
                     HPoint};
use crate::measures::{ps_estimate, transport_mass};
use crate::moebius::MobiusMap;
use crate::Result;

/// Outcome of one named check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    /// Stable identifier, suitable for one line of report output.
    pub name: &'static str,
    /// Whether the measured value agreed with the expected one.
    pub passed: bool,
    /// Human-readable summary: expected vs. measured, or the error.
    pub detail: String,
}

/// True when every check in the slice passed.
pub fn all_passed(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.passed)
}

fn real_matrix(entries: [[f64; 2]; 2]) -> Result<MobiusMap> {
    MobiusMap::new(
        Dim::Two,
        [
            [Complex64::new(entries[0][0], 0.0), Complex64::new(entries[0][1], 0.0)],
            [Complex64::new(entries[1][0], 0.0), Complex64::new(entries[1][1], 0.0)],
        ],
    )
}

fn schottky_spec() -> Result<GroupSpec> {
    let a = real_matrix([
        [-1.1764705882352942, -4.379411764705883],
        [1.1764705882352942, 3.5294117647058822],
    ])?;
    let b = real_matrix([
        [3.5294117647058822, -4.379411764705883],
        [1.1764705882352942, -1.1764705882352942],
    ])?;
    GroupSpec::new(
        Dim::Two,
        vec![("a".to_string(), a), ("b".to_string(), b)],
        HPoint::h2(0.0, 1.0),
        true,
    )
}

fn cyclic_spec() -> Result<GroupSpec> {
    let g = real_matrix([[2.0, 0.0], [0.0, 0.5]])?;
    GroupSpec::new(Dim::Two, vec![("g".to_string(), g)], HPoint::h2(0.0, 1.0), true)
}

fn check<F>(name: &'static str, run: F) -> CheckResult
where
    F: FnOnce() -> Result<(bool, String)>,
{
    match run() {
        Ok((passed, detail)) => CheckResult { name, passed, detail },
        Err(e) => CheckResult { name, passed: false, detail: format!("error: {e}") },
    }
}

fn within(measured: f64, expected: f64, tol: f64) -> (bool, String) {
    (
        (measured - expected).abs() <= tol,
        format!("expected {expected:.12}, measured {measured:.12}, tol {tol:e}"),
    )
}

/// Run the full battery and collect one result per check.
pub fn run_selftest() -> Vec<CheckResult> {
    vec![
        check("interior-distance", || {
            let d = dist(
                &HPoint::h2(0.0, 1.0),
                &HPoint::h2(0.0, std::f64::consts::E),
            )?;
            Ok(within(d, 1.0, 1e-12))
        }),
        check("busemann-cocycle", || {
            let x = HPoint::h2(0.0, 1.0);
            let up = HPoint::h2(0.0, std::f64::consts::E);
            let two = HPoint::h2(0.0, 2.0);
            let b_inf = busemann_cocycle(&HPoint::infinity(Dim::Two), &x, &up)?;
            let b_zero = busemann_cocycle(&HPoint::b2(0.0), &x, &two)?;
            let (ok1, d1) = within(b_inf, 1.0, 1e-12);
            let (ok2, d2) = within(b_zero, -(2.0f64.ln()), 1e-12);
            Ok((ok1 && ok2, format!("at infinity: {d1}; at zero: {d2}")))
        }),
        check("ball-gap", || {
            let b1 = ConvexBody::ball(HPoint::h2(0.0, 1.0), 0.4)?;
            let b2 = ConvexBody::ball(HPoint::h2(0.0, (2.0f64).exp()), 0.3)?;
            Ok(within(body_distance(&b1, &b2)?, 2.0 - 0.7, 1e-12))
        }),
        check("horoball-gap", || {
            let h1 = ConvexBody::horoball(HPoint::infinity(Dim::Two), 6.0)?;
            let h2 = ConvexBody::horoball(HPoint::b2(0.0), 0.05)?;
            Ok(within(body_distance(&h1, &h2)?, 120.0f64.ln(), 1e-12))
        }),
        check("tube-gap", || {
            let axis = GeodesicLine::new(HPoint::b2(-1.0), HPoint::b2(1.0))?;
            let tube = ConvexBody::tube(axis, 0.3)?;
            let ball = ConvexBody::ball(HPoint::h2(0.0, 2.0), 0.2)?;
            Ok(within(body_distance(&tube, &ball)?, 2.0f64.ln() - 0.5, 1e-12))
        }),
        check("word-roundtrip", || {
            let spec = schottky_spec()?;
            let w = Word::parse("a*b^-2*a^3", &spec)?;
            let s = w.format(&spec);
            Ok((s == "a*b^-2*a^3", format!("parse/format round-trip gave `{s}`")))
        }),
        check("cyclic-orbit-count", || {
            let spec = cyclic_spec()?;
            let t = 3.0;
            let lean =
                enumerate_displacements(&spec, t, EnumerationMode::pruned(), DEFAULT_BUDGET)?;
            let expected = 2 * (t / 4.0f64.ln()).floor() as usize + 1;
            let got = lean.displacements.len();
            Ok((got == expected, format!("expected {expected} points, measured {got}")))
        }),
        check("pruned-matches-exact", || {
            let spec = schottky_spec()?;
            let t = 4.0;
            let pruned =
                enumerate_displacements(&spec, t, EnumerationMode::pruned(), DEFAULT_BUDGET)?;
            let exact = enumerate_displacements(
                &spec,
                t,
                EnumerationMode::Exact { depth_limit: 12 },
                DEFAULT_BUDGET,
            )?;
            let same = pruned.displacements.len() == exact.displacements.len()
                && pruned
                    .displacements
                    .iter()
                    .zip(&exact.displacements)
                    .all(|(p, e)| (p - e).abs() < 1e-12);
            Ok((
                same,
                format!(
                    "pruned {} points vs exact {} points",
                    pruned.displacements.len(),
                    exact.displacements.len()
                ),
            ))
        }),
        check("exponent-estimators-agree", || {
            let spec = schottky_spec()?;
            let est = estimate_delta(&spec, 12.0, DEFAULT_BUDGET)?;
            let close = (est.delta_series - est.delta_growth).abs() < 0.1;
            let sane = est.delta_series > 0.3 && est.delta_series < 1.0;
            Ok((
                close && sane,
                format!(
                    "series {:.4} vs growth {:.4}",
                    est.delta_series, est.delta_growth
                ),
            ))
        }),
        check("measure-transport", || {
            let spec = cyclic_spec()?;
            let mu = ps_estimate(&spec, 1.0, 6.0, DEFAULT_BUDGET)?;
            let from = HPoint::h2(0.0, 1.0);
            let to = HPoint::h2(0.0, std::f64::consts::E);
            let mass = transport_mass(&mu, &from, &to)?;
            // Half the mass sits at ∞ (factor e) and half at 0 (factor 1/e).
            let expected = 0.5 * std::f64::consts::E + 0.5 / std::f64::consts::E;
            Ok(within(mass, expected, 1e-9))
        }),
        check("orthogeodesics-shift-loops", || {
            let spec = cyclic_spec()?;
            let r = 0.4;
            let body = DecoratedBody {
                body: ConvexBody::ball(spec.basepoint(), r)?,
                stabilizer: None,
            };
            let t = 4.0;
            let ortho = count_ortho(&spec, &body, &body, t, None, DEFAULT_BUDGET)?;
            let loops = count_loops(&spec, t + 2.0 * r + 0.25, DEFAULT_BUDGET)?;
            let expected: Vec<f64> = loops
                .entries
                .iter()
                .map(|e| e.length - 2.0 * r)
                .filter(|l| *l > 0.0 && *l <= t)
                .collect();
            let got: Vec<f64> = ortho.entries.iter().map(|e| e.length).collect();
            Ok((
                got == expected,
                format!("{} orthogeodesic lengths vs {} shifted loops", got.len(), expected.len()),
            ))
        }),
        check("exponential-fit", || {
            let entries: Vec<CountEntry> = (1..=16)
                .flat_map(|t| {
                    let n = (3.0 * (0.6 * t as f64).exp()).ceil() as usize;
                    let prev = if t == 1 {
                        0
                    } else {
                        (3.0 * (0.6 * (t - 1) as f64).exp()).ceil() as usize
                    };
                    (prev..n).map(move |k| CountEntry {
                        length: t as f64,
                        word: Word::from_letters(&vec![0u16; k + 1]),
                    })
                })
                .collect();
            let series = CountSeries {
                kind: CountKind::Loops,
                cutoff: 16.0,
                entries,
                certificate: Certificate::Exact { depth_limit: 1 },
                skipped_overlaps: 0,
            };
            let fit = fit_exponential(&series, (8.0, 16.0))?;
            let (ok1, d1) = within(fit.delta_hat, 0.6, 1e-3);
            let (ok2, d2) = within(fit.c_hat, 3.0, 0.06);
            Ok((ok1 && ok2, format!("rate: {d1}; constant: {d2}")))
        }),
    ]
}
