//! Critical exponent estimation from orbit displacement data, and the
//! bottom-of-spectrum value it determines.
//!
//! Two independent estimators are computed from one displacement batch:
//!
//! * `delta_series`: the abscissa where the partial sum Σ e^{−s·d} stops
//!   doubling between radius T/2 and T. At the critical exponent the
//!   partial sums grow like e^{(δ−s)t} below criticality and stabilize
//!   above it; the doubling ratio between T and T/2 crosses 2 at s = δ.
//! * `delta_growth`: least-squares slope of log N(t) on an integer grid in
//!   [T/2, T].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::orbit::{enumerate_displacements, Certificate, EnumerationMode, LeanOrbit};
use crate::group::spec::GroupSpec;
use crate::hypgeom::Dim;

/// Batches smaller than this yield low-confidence estimates.
pub const LOW_CONFIDENCE_BATCH: usize = 1000;

/// Estimates below this are flagged as elementary (no exponential growth).
pub const ELEMENTARY_THRESHOLD: f64 = 0.05;

/// Bisection steps for the series estimator.
const BISECTION_STEPS: u32 = 40;

/// Doubling threshold: at criticality the partial sum over radius T is
/// asymptotically twice the partial sum over radius T/2.
const DOUBLING_RATIO: f64 = 2.0;

/// Critical-exponent estimates from one enumeration.
#[derive(Clone, Debug, Serialize)]
pub struct DeltaEstimate {
    /// Abscissa-of-convergence estimator (the primary estimate).
    pub delta_series: f64,
    /// Growth-rate estimator: slope of log N(t) over [T/2, T].
    pub delta_growth: f64,
    /// Number of orbit points used (identity included).
    pub batch_size: usize,
    /// Displacement cutoff of the batch.
    pub cutoff: f64,
    /// Set when the batch is too small for the asymptotics to have set in.
    pub low_confidence: bool,
    /// Set when either estimator sees no exponential growth.
    pub elementary: bool,
    /// Completeness statement of the enumeration.
    pub certificate: Certificate,
}

/// Partial sum Σ e^{−s·d} over all batch displacements ≤ `t` (the identity
/// contributes 1).
pub fn poincare_partial_sum(lean: &LeanOrbit, s: f64, t: f64) -> f64 {
    let n = lean.displacements.partition_point(|&d| d <= t);
    sum_exp(&lean.displacements[..n], s)
}

/// Deterministic chunked sum of e^{−s·d}: fixed chunk boundaries make the
/// result independent of worker count.
fn sum_exp(d: &[f64], s: f64) -> f64 {
    const CHUNK: usize = 4096;
    #[cfg(feature = "parallel")]
    let partials: Vec<f64> = {
        use rayon::prelude::*;
        d.par_chunks(CHUNK)
            .map(|c| c.iter().map(|&x| (-s * x).exp()).sum::<f64>())
            .collect()
    };
    #[cfg(not(feature = "parallel"))]
    let partials: Vec<f64> = d
        .chunks(CHUNK)
        .map(|c| c.iter().map(|&x| (-s * x).exp()).sum::<f64>())
        .collect();
    partials.iter().sum()
}

/// Series estimator: bisect for the exponent where the partial sum at
/// radius T is `DOUBLING_RATIO` times the partial sum at radius T/2.
/// `s_max` bounds the search (dimension of the boundary sphere).
pub fn delta_series_from(lean: &LeanOrbit, s_max: f64) -> f64 {
    let t = lean.cutoff;
    let ratio = |s: f64| -> f64 {
        let full = poincare_partial_sum(lean, s, t);
        let half = poincare_partial_sum(lean, s, t / 2.0);
        full / half
    };
    if ratio(0.0) < DOUBLING_RATIO {
        return 0.0;
    }
    if ratio(s_max) >= DOUBLING_RATIO {
        return s_max;
    }
    let (mut lo, mut hi) = (0.0f64, s_max);
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if ratio(mid) >= DOUBLING_RATIO {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Integer sample grid in [t/2, t], padded to at least `min_points`
/// evenly spaced samples when the integer grid is too sparse.
pub(crate) fn growth_grid(t: f64, min_points: usize) -> Vec<f64> {
    let lo = (t / 2.0).ceil() as i64;
    let hi = t.floor() as i64;
    let ints: Vec<f64> = (lo..=hi).map(|k| k as f64).collect();
    if ints.len() >= min_points {
        return ints;
    }
    let n = min_points.max(2);
    (0..n)
        .map(|i| t / 2.0 + (t - t / 2.0) * i as f64 / (n - 1) as f64)
        .collect()
}

/// Growth estimator: least-squares slope of log N(t) sampled on the
/// integer grid in [T/2, T] (at least 8 samples).
pub fn delta_growth_from(lean: &LeanOrbit) -> f64 {
    let grid = growth_grid(lean.cutoff, 8);
    let xs: Vec<f64> = grid.clone();
    let ys: Vec<f64> = grid
        .iter()
        .map(|&t| (lean.count_within(t) as f64).ln())
        .collect();
    crate::util::fit_line(&xs, &ys).map_or(0.0, |(slope, _)| slope)
}

/// Estimate the critical exponent from the orbit ball of radius `t`.
pub fn estimate_delta(spec: &GroupSpec, t: f64, budget: u64) -> Result<DeltaEstimate> {
    let lean = enumerate_displacements(spec, t, EnumerationMode::pruned(), budget)?;
    Ok(estimate_from_batch(spec.dim(), &lean))
}

/// Compute both estimators and the quality flags from an existing batch.
pub fn estimate_from_batch(dim: Dim, lean: &LeanOrbit) -> DeltaEstimate {
    let s_max = match dim {
        Dim::Two => 1.0,
        Dim::Three => 2.0,
    };
    let delta_series = delta_series_from(lean, s_max);
    let delta_growth = delta_growth_from(lean);
    let batch_size = lean.displacements.len();
    DeltaEstimate {
        delta_series,
        delta_growth,
        batch_size,
        cutoff: lean.cutoff,
        low_confidence: batch_size < LOW_CONFIDENCE_BATCH,
        elementary: delta_series < ELEMENTARY_THRESHOLD
            || delta_growth < ELEMENTARY_THRESHOLD,
        certificate: lean.certificate,
    }
}

/// Bottom of the Laplace spectrum determined by the critical exponent on
/// hyperbolic n-space: (n−1)²/4 when δ ≤ (n−1)/2, else δ(n−1−δ).
pub fn lambda0_from_delta(dim: Dim, delta: f64) -> Result<f64> {
    let n1 = match dim {
        Dim::Two => 1.0,
        Dim::Three => 2.0,
    };
    if !(0.0..=n1).contains(&delta) {
        return Err(Error::InvalidParameter(format!(
            "critical exponent {delta} outside [0, {n1}]"
        )));
    }
    if delta <= n1 / 2.0 {
        Ok(n1 * n1 / 4.0)
    } else {
        Ok(delta * (n1 - delta))
    }
}
