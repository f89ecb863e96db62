//! Length series: geodesic loops at a basepoint, primitive closed
//! geodesics, and orthogeodesics between convex bodies, plus the
//! exponential fit N(t) ≈ C·e^{δt} used to read off counting constants.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::classes::conjugacy_classes;
use crate::group::cosets::{canonical_rep, normalize_stab};
use crate::group::orbit::{enumerate_full, enumerate_orbit, Certificate, EnumerationMode};
use crate::group::spec::GroupSpec;
use crate::group::word::Word;
use crate::hypgeom::{body_distance, closest_point_on_body, dist, ConvexBody};

/// Tolerance for the precise-invariance check of bodies under their
/// stabilizers.
const STABILIZER_INVARIANCE_TOL: f64 = 1e-8;

/// Relative residual above which an exponential fit is marked elementary.
pub const FIT_RESIDUAL_THRESHOLD: f64 = 0.5;

/// Safety addend on enumeration cutoffs so borderline elements are never
/// lost to rounding; extra elements are removed by the exact length
/// filter.
const CUTOFF_SAFETY: f64 = 0.5;

/// What a length series counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountKind {
    /// Geodesic loops at the basepoint (orbit displacements).
    Loops,
    /// Primitive closed geodesics (translation lengths of primitive
    /// classes).
    PrimitiveGeodesics,
    /// Orthogeodesics between two convex bodies.
    Orthogeodesics,
}

/// One counted object: its length and the word indexing it.
#[derive(Clone, Debug)]
pub struct CountEntry {
    /// Loop/geodesic/orthogeodesic length.
    pub length: f64,
    /// Orbit word, class representative, or double-coset representative.
    pub word: Word,
}

/// A sorted length series with its counting function N(t).
#[derive(Clone, Debug)]
pub struct CountSeries {
    /// What is being counted.
    pub kind: CountKind,
    /// Length cutoff: entries lie in (0, cutoff].
    pub cutoff: f64,
    /// Entries sorted by (length, word length, letters).
    pub entries: Vec<CountEntry>,
    /// Completeness statement of the underlying enumeration.
    pub certificate: Certificate,
    /// Orthogeodesic counting only: translates skipped because they
    /// overlap the opposite body (nonpositive distance).
    pub skipped_overlaps: u64,
}

impl CountSeries {
    /// Counting function N(t): entries with length ≤ t.
    pub fn count_at(&self, t: f64) -> usize {
        self.entries.partition_point(|e| e.length <= t)
    }

    /// The sorted lengths.
    pub fn lengths(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.length).collect()
    }
}

/// A convex body together with the cyclic stabilizer (if any) that
/// preserves it; `None` means the trivial stabilizer.
#[derive(Clone, Debug)]
pub struct DecoratedBody {
    /// The body itself.
    pub body: ConvexBody,
    /// Generator of the cyclic stabilizer, as a word in the group.
    pub stabilizer: Option<Word>,
}

/// Exponential fit N(t) ≈ C·e^{δt} over a window.
#[derive(Clone, Debug, Serialize)]
pub struct ExpFit {
    /// Fitted multiplicative constant.
    pub c_hat: f64,
    /// Fitted exponent.
    pub delta_hat: f64,
    /// Fit window (t_lo, t_hi).
    pub window: (f64, f64),
    /// Maximum relative deviation |N(t) − Ĉe^{δ̂t}| / Ĉe^{δ̂t} on the grid.
    pub residual: f64,
    /// Set when the series shows no usable exponential growth
    /// (δ̂ below threshold or residual too large).
    pub elementary: bool,
}

fn sort_entries(entries: &mut [CountEntry]) {
    entries.sort_by(|a, b| {
        a.length
            .total_cmp(&b.length)
            .then_with(|| a.word.len().cmp(&b.word.len()))
            .then_with(|| a.word.letter_cmp(&b.word))
    });
}

/// Geodesic loops based at the spec's basepoint: one per non-identity
/// orbit element within displacement `t`.
pub fn count_loops(spec: &GroupSpec, t: f64, budget: u64) -> Result<CountSeries> {
    let batch = enumerate_orbit(spec, t, EnumerationMode::pruned(), budget)?;
    let entries: Vec<CountEntry> = batch
        .entries
        .into_iter()
        .filter(|e| !e.word.is_identity())
        .map(|e| CountEntry { length: e.displacement, word: e.word })
        .collect();
    Ok(CountSeries {
        kind: CountKind::Loops,
        cutoff: t,
        entries,
        certificate: batch.certificate,
        skipped_overlaps: 0,
    })
}

/// Primitive closed geodesics of length at most `l`: translation lengths
/// of primitive conjugacy classes, each class once.
pub fn count_primitive_geodesics(spec: &GroupSpec, l: f64, budget: u64) -> Result<CountSeries> {
    let list = conjugacy_classes(spec, l, budget)?;
    let mut entries: Vec<CountEntry> = list
        .classes
        .into_iter()
        .filter(|c| c.primitive)
        .map(|c| CountEntry { length: c.translation_length, word: c.word })
        .collect();
    sort_entries(&mut entries);
    Ok(CountSeries {
        kind: CountKind::PrimitiveGeodesics,
        cutoff: l,
        entries,
        certificate: list.certificate,
        skipped_overlaps: 0,
    })
}

/// Distance from the spec basepoint to a body (0 when the basepoint is
/// inside it).
fn basepoint_gap(spec: &GroupSpec, body: &ConvexBody) -> Result<f64> {
    match closest_point_on_body(body, &spec.basepoint()) {
        Ok(p) => dist(&spec.basepoint(), &p),
        Err(Error::TargetContained) => Ok(0.0),
        Err(e) => Err(e),
    }
}

/// Additive enumeration margin contributed by one side: how much orbit
/// displacement an orthogeodesic endpoint inside this body can add. Exact
/// for balls; for horoballs and tubes a slack-padded reach heuristic
/// (override with the explicit margin argument when it is too small).
fn side_margin(spec: &GroupSpec, body: &ConvexBody) -> Result<f64> {
    match body {
        ConvexBody::Ball { center, radius } => Ok(dist(&spec.basepoint(), center)? + radius),
        _ => Ok(basepoint_gap(spec, body)? + 2.0 * spec.max_generator_displacement()?),
    }
}

fn check_stabilizer_invariance(
    spec: &GroupSpec,
    side: &str,
    db: &DecoratedBody,
) -> Result<()> {
    if let Some(w) = normalize_stab(db.stabilizer.as_ref()) {
        let g = w.evaluate(spec)?;
        let moved = db.body.transformed(&g)?;
        if !moved.approx_eq(&db.body, STABILIZER_INVARIANCE_TOL) {
            return Err(Error::InvalidParameter(format!(
                "{side}-side body is not invariant under its stabilizer word"
            )));
        }
    }
    Ok(())
}

/// Orthogeodesics from `d_minus` to the group translates of `d_plus`:
/// one per double coset (stabilizer of the minus body) \ Γ / (stabilizer
/// of the plus body), with length = body distance to the translate, kept
/// when it lies in (0, t]. Overlapping translates are skipped and counted.
///
/// `margin` overrides the enumeration margin added to `t` when harvesting
/// orbit elements; the default is derived from the body geometry.
pub fn count_ortho(
    spec: &GroupSpec,
    d_minus: &DecoratedBody,
    d_plus: &DecoratedBody,
    t: f64,
    margin: Option<f64>,
    budget: u64,
) -> Result<CountSeries> {
    if d_minus.body.dim() != spec.dim() || d_plus.body.dim() != spec.dim() {
        return Err(Error::DimensionMismatch(
            spec.dim().n(),
            d_minus.body.dim().n().max(d_plus.body.dim().n()),
        ));
    }
    check_stabilizer_invariance(spec, "minus", d_minus)?;
    check_stabilizer_invariance(spec, "plus", d_plus)?;
    let pad = match margin {
        Some(m) => {
            if !(m >= 0.0 && m.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "enumeration margin must be nonnegative and finite, got {m}"
                )));
            }
            m
        }
        None => {
            side_margin(spec, &d_minus.body)? + side_margin(spec, &d_plus.body)? + CUTOFF_SAFETY
        }
    };
    let t_enum = t + pad;
    let (orbit, certificate) =
        enumerate_full(spec, t_enum, EnumerationMode::pruned(), budget)?;

    let u = normalize_stab(d_minus.stabilizer.as_ref());
    let v = normalize_stab(d_plus.stabilizer.as_ref());
    let mut seen: std::collections::HashSet<Word> = std::collections::HashSet::new();
    let mut entries: Vec<CountEntry> = Vec::new();
    let mut skipped_overlaps: u64 = 0;
    for (word, map, _) in &orbit {
        let rep = canonical_rep(word, u, v);
        if !seen.insert(rep.clone()) {
            continue;
        }
        // Length from this coset's first-seen orbit element: stabilizer
        // moves preserve the bodies, so any member gives the same value.
        let translated = d_plus.body.transformed(map)?;
        let ell = body_distance(&d_minus.body, &translated)?;
        if ell <= 0.0 {
            skipped_overlaps += 1;
        } else if ell <= t {
            entries.push(CountEntry { length: ell, word: rep });
        }
    }
    sort_entries(&mut entries);
    Ok(CountSeries {
        kind: CountKind::Orthogeodesics,
        cutoff: t,
        entries,
        certificate,
        skipped_overlaps,
    })
}

/// Least-squares fit of log N(t) = log C + δt on the integer grid of the
/// window. Needs at least 30 lengths inside the window.
pub fn fit_exponential(series: &CountSeries, window: (f64, f64)) -> Result<ExpFit> {
    let (lo, hi) = window;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidParameter(format!(
            "fit window must be an increasing finite pair, got ({lo}, {hi})"
        )));
    }
    let in_window = series
        .entries
        .iter()
        .filter(|e| e.length >= lo && e.length <= hi)
        .count();
    if in_window < 30 {
        return Err(Error::InsufficientData(format!(
            "{in_window} lengths in the fit window; at least 30 required"
        )));
    }
    let mut grid: Vec<f64> = {
        let a = lo.ceil() as i64;
        let b = hi.floor() as i64;
        (a..=b).map(|k| k as f64).collect()
    };
    if grid.len() < 2 {
        grid = (0..8)
            .map(|i| lo + (hi - lo) * i as f64 / 7.0)
            .collect();
    }
    let mut xs = Vec::with_capacity(grid.len());
    let mut ys = Vec::with_capacity(grid.len());
    for &t in &grid {
        let n = series.count_at(t);
        if n > 0 {
            xs.push(t);
            ys.push((n as f64).ln());
        }
    }
    if xs.len() < 2 {
        return Err(Error::InsufficientData(
            "fewer than two usable grid points in the fit window".into(),
        ));
    }
    let (delta_hat, intercept) = crate::util::fit_line(&xs, &ys).ok_or_else(|| {
        Error::InsufficientData("degenerate grid in the fit window".into())
    })?;
    let c_hat = intercept.exp();
    let mut residual = 0.0f64;
    for (&t, &ln_n) in xs.iter().zip(ys.iter()) {
        let predicted = intercept + delta_hat * t;
        let rel = ((ln_n - predicted).exp() - 1.0).abs();
        residual = residual.max(rel);
    }
    let elementary = delta_hat < crate::exponent::ELEMENTARY_THRESHOLD
        || residual > FIT_RESIDUAL_THRESHOLD;
    Ok(ExpFit { c_hat, delta_hat, window, residual, elementary })
}

/// Normalized counting ratio #{length ≤ ℓ} · δℓ · e^{−δℓ}; approaches 1
/// as ℓ grows when the series follows the e^{δℓ}/(δℓ) law. `None` when the
/// count is zero or the parameters are degenerate.
pub fn geodesic_ratio(series: &CountSeries, delta: f64, ell: f64) -> Option<f64> {
    if !(delta > 0.0 && ell > 0.0) {
        return None;
    }
    let n = series.count_at(ell);
    if n == 0 {
        return None;
    }
    Some(n as f64 * delta * ell * (-delta * ell).exp())
}
