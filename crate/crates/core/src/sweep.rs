//! Sweep driver: evaluate every estimator along a parametrized family of
//! groups approaching a limit group, and report per-member convergence
//! gaps against the limit.

use serde::Serialize;

use crate::counting::{
    count_loops, count_ortho, count_primitive_geodesics, fit_exponential, geodesic_ratio,
    DecoratedBody, ExpFit,
};
use crate::error::{Error, Result};
use crate::exponent::{estimate_delta, lambda0_from_delta};
use crate::group::orbit::{Certificate, DEFAULT_BUDGET};
use crate::group::spec::GroupSpec;

/// One family member: a labeled group, optionally with an orthogeodesic
/// body pair.
#[derive(Clone, Debug)]
pub struct FamilyMember {
    /// Display label (e.g. the family parameter).
    pub label: String,
    /// The group.
    pub spec: GroupSpec,
    /// Body pair for orthogeodesic counting, if the family carries one.
    pub bodies: Option<(DecoratedBody, DecoratedBody)>,
}

/// A parametrized family with a designated limit, sharing cutoffs.
#[derive(Clone, Debug)]
pub struct FamilySpec {
    /// The members, in sweep order.
    pub members: Vec<FamilyMember>,
    /// The limit object the gaps are measured against.
    pub limit: FamilyMember,
    /// Displacement cutoff for exponent estimation, loops, and
    /// orthogeodesics.
    pub t: f64,
    /// Length cutoff for primitive geodesics.
    pub l: f64,
}

impl FamilySpec {
    /// Check the family is internally consistent: nonempty, one dimension
    /// throughout, and bodies present on members exactly when the limit
    /// has them.
    pub fn validate(&self) -> Result<()> {
        if self.members.is_empty() {
            return Err(Error::InvalidParameter("family has no members".into()));
        }
        if !(self.t > 0.0 && self.t.is_finite() && self.l > 0.0 && self.l.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "family cutoffs must be positive and finite, got T = {}, L = {}",
                self.t, self.l
            )));
        }
        let dim = self.limit.spec.dim();
        let want_bodies = self.limit.bodies.is_some();
        for m in &self.members {
            if m.spec.dim() != dim {
                return Err(Error::DimensionMismatch(dim.n(), m.spec.dim().n()));
            }
            if m.bodies.is_some() != want_bodies {
                return Err(Error::InvalidParameter(format!(
                    "member `{}` must carry bodies exactly when the limit does",
                    m.label
                )));
            }
        }
        Ok(())
    }
}

/// Sweep tuning knobs.
#[derive(Clone, Copy, Debug)]
pub struct SweepConfig {
    /// Node budget per enumeration.
    pub budget: u64,
    /// Override of the orthogeodesic enumeration margin.
    pub ortho_margin: Option<f64>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { budget: DEFAULT_BUDGET, ortho_margin: None }
    }
}

/// All estimator outputs for one family member. Fields are `None` when
/// the row failed (see `failed`) or a particular fit had too little data.
#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    /// Member label.
    pub label: String,
    /// Set when the row's enumeration failed (e.g. budget exceeded);
    /// holds the reason.
    pub failed: Option<String>,
    /// Series estimator of the critical exponent.
    pub delta_series: Option<f64>,
    /// Growth estimator of the critical exponent.
    pub delta_growth: Option<f64>,
    /// Bottom of the spectrum from `delta_series`.
    pub lambda0: Option<f64>,
    /// Batch too small for confident estimates.
    pub low_confidence: bool,
    /// Estimators saw no exponential growth.
    pub elementary: bool,
    /// Exponential fit of the loop series over [T/2, T].
    pub loop_fit: Option<ExpFit>,
    /// Normalized primitive-geodesic counting ratio at L.
    pub geo_ratio: Option<f64>,
    /// The same ratio at L−2, for the approach-to-1 diagnostic.
    pub geo_ratio_prev: Option<f64>,
    /// Exponential fit of the orthogeodesic series, when bodies are given.
    pub ortho_fit: Option<ExpFit>,
    /// Completeness statement of the exponent enumeration.
    pub certificate: Option<Certificate>,
}

/// Per-member distance to the limit row, for the convergence diagnostics.
#[derive(Clone, Debug, Serialize)]
pub struct GapRow {
    /// Member label.
    pub label: String,
    /// |δ_k − δ_∞| (series estimator).
    pub delta_gap: Option<f64>,
    /// |λ₀(k) − λ₀(∞)|.
    pub lambda0_gap: Option<f64>,
    /// |Ĉ_k − Ĉ_∞| from the loop fits.
    pub constant_gap: Option<f64>,
}

/// Full sweep output: member rows, the limit row, and the gaps.
#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    /// Displacement cutoff used.
    pub t: f64,
    /// Geodesic length cutoff used.
    pub l: f64,
    /// One row per member, in family order.
    pub rows: Vec<SweepRow>,
    /// The limit group's row.
    pub limit: SweepRow,
    /// Gaps of each member row against the limit row.
    pub gaps: Vec<GapRow>,
}

fn failed_row(label: &str, reason: String) -> SweepRow {
    SweepRow {
        label: label.to_string(),
        failed: Some(reason),
        delta_series: None,
        delta_growth: None,
        lambda0: None,
        low_confidence: false,
        elementary: false,
        loop_fit: None,
        geo_ratio: None,
        geo_ratio_prev: None,
        ortho_fit: None,
        certificate: None,
    }
}

fn compute_row(member: &FamilyMember, t: f64, l: f64, config: &SweepConfig) -> SweepRow {
    let spec = &member.spec;
    let est = match estimate_delta(spec, t, config.budget) {
        Ok(e) => e,
        Err(e) => return failed_row(&member.label, e.to_string()),
    };
    let lambda0 = lambda0_from_delta(spec.dim(), est.delta_series).ok();

    let loop_fit = match count_loops(spec, t, config.budget) {
        Ok(series) => fit_exponential(&series, (t / 2.0, t)).ok(),
        Err(e) => return failed_row(&member.label, e.to_string()),
    };

    let (geo_ratio, geo_ratio_prev) =
        match count_primitive_geodesics(spec, l, config.budget) {
            Ok(series) => (
                geodesic_ratio(&series, est.delta_series, l),
                geodesic_ratio(&series, est.delta_series, l - 2.0),
            ),
            Err(e) => return failed_row(&member.label, e.to_string()),
        };

    let ortho_fit = match &member.bodies {
        Some((dm, dp)) => {
            match count_ortho(spec, dm, dp, t, config.ortho_margin, config.budget) {
                Ok(series) => fit_exponential(&series, (t / 2.0, t)).ok(),
                Err(e) => return failed_row(&member.label, e.to_string()),
            }
        }
        None => None,
    };

    SweepRow {
        label: member.label.clone(),
        failed: None,
        delta_series: Some(est.delta_series),
        delta_growth: Some(est.delta_growth),
        lambda0,
        low_confidence: est.low_confidence,
        elementary: est.elementary,
        loop_fit,
        geo_ratio,
        geo_ratio_prev,
        ortho_fit,
        certificate: Some(est.certificate),
    }
}

fn gap(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    match (a, b) {
        (Some(x), Some(y)) => Some((x - y).abs()),
        _ => None,
    }
}

/// Run every estimator on every member and the limit, in parallel, and
/// assemble the ordered report with convergence gaps.
pub fn run_sweep(family: &FamilySpec, config: &SweepConfig) -> Result<SweepReport> {
    family.validate()?;
    let mut all: Vec<&FamilyMember> = family.members.iter().collect();
    all.push(&family.limit);

    #[cfg(feature = "parallel")]
    let mut rows: Vec<SweepRow> = {
        use rayon::prelude::*;
        all.par_iter()
            .map(|m| compute_row(m, family.t, family.l, config))
            .collect()
    };
    #[cfg(not(feature = "parallel"))]
    let mut rows: Vec<SweepRow> = all
        .iter()
        .map(|m| compute_row(m, family.t, family.l, config))
        .collect();

    let limit = rows.pop().expect("limit row present by construction");
    let gaps = rows
        .iter()
        .map(|r| GapRow {
            label: r.label.clone(),
            delta_gap: gap(r.delta_series, limit.delta_series),
            lambda0_gap: gap(r.lambda0, limit.lambda0),
            constant_gap: gap(
                r.loop_fit.as_ref().map(|f| f.c_hat),
                limit.loop_fit.as_ref().map(|f| f.c_hat),
            ),
        })
        .collect();
    Ok(SweepReport { t: family.t, l: family.l, rows, limit, gaps })
}
