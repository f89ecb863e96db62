//! Empirical boundary measures: discrete approximations to the conformal
//! density of exponent δ, built from orbit points weighted by e^{−δ·d},
//! plus the mass-transport rule that moves them between basepoints.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::orbit::{enumerate_full, Certificate, EnumerationMode};
use crate::group::spec::GroupSpec;
use crate::hypgeom::{busemann_cocycle, dist, ray_endpoint, Dim, HPoint};

/// Discrete boundary measure: one atom per orbit point, at the boundary
/// direction of γx₀ seen from x₀, normalized to total mass 1.
#[derive(Clone, Debug)]
pub struct EmpiricalBoundaryMeasure {
    /// (boundary direction, weight); weights sum to 1.
    pub atoms: Vec<(HPoint, f64)>,
    /// Exponent used in the weights.
    pub delta_used: f64,
    /// Displacement cutoff of the underlying batch.
    pub cutoff: f64,
    /// Completeness statement of the enumeration.
    pub certificate: Certificate,
}

impl EmpiricalBoundaryMeasure {
    /// Total mass (1 up to rounding after normalization).
    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.1).sum()
    }
}

/// Build the empirical boundary measure of exponent `delta` from the orbit
/// ball of radius `t`: atom at the direction of each non-identity orbit
/// point, weight e^{−δ·d}, then normalized. Orbit points lying on a common
/// ray contribute separate atoms at the same direction.
pub fn ps_estimate(
    spec: &GroupSpec,
    delta: f64,
    t: f64,
    budget: u64,
) -> Result<EmpiricalBoundaryMeasure> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "measure exponent must be positive and finite, got {delta}"
        )));
    }
    let (entries, certificate) = enumerate_full(spec, t, EnumerationMode::pruned(), budget)?;
    let x0 = spec.basepoint();
    let mut atoms: Vec<(HPoint, f64)> = Vec::with_capacity(entries.len().saturating_sub(1));
    for (word, map, d) in &entries {
        if word.is_identity() {
            continue;
        }
        let image = map.apply(&x0)?;
        let direction = ray_endpoint(&x0, &image)?;
        atoms.push((direction, (-delta * d).exp()));
    }
    if atoms.is_empty() {
        return Err(Error::InsufficientData(
            "no orbit points beyond the identity within the cutoff".into(),
        ));
    }
    let total: f64 = atoms.iter().map(|a| a.1).sum();
    for a in &mut atoms {
        a.1 /= total;
    }
    Ok(EmpiricalBoundaryMeasure { atoms, delta_used: delta, cutoff: t, certificate })
}

/// Mass of the measure transported from basepoint `from` to `to`:
/// Σ w_ξ e^{−δ·β_ξ(to, from)} over atoms, the discrete form of the
/// conformal-density change of basepoint. Equals 1 when `to == from`.
pub fn transport_mass(
    measure: &EmpiricalBoundaryMeasure,
    from: &HPoint,
    to: &HPoint,
) -> Result<f64> {
    let mut sum = 0.0;
    for (xi, w) in &measure.atoms {
        let beta = busemann_cocycle(xi, to, from)?;
        sum += w * (-measure.delta_used * beta).exp();
    }
    Ok(sum)
}

/// Predicted ratio of loop-counting constants at two basepoints from the
/// transported measure masses: (m₁/m₂)².
///
/// In the counting asymptotics N_x(t) ≈ C_x e^{δt}, the constant at
/// basepoint x is proportional to the product of the forward and backward
/// transported masses at x; for a single measure compared at two
/// basepoints both factors scale the same way, so the δ-dependent
/// normalization and the reference boundary mass cancel and only the
/// squared mass ratio survives. The `delta` and `reference_mass` arguments
/// are accepted for signature completeness and validated, but do not
/// change the value.
pub fn loop_constant_prediction(
    masses: (f64, f64),
    delta: f64,
    reference_mass: f64,
) -> Result<f64> {
    let (m1, m2) = masses;
    if !(m1 > 0.0 && m2 > 0.0 && m1.is_finite() && m2.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "transported masses must be positive and finite, got ({m1}, {m2})"
        )));
    }
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "exponent must be positive and finite, got {delta}"
        )));
    }
    if !(reference_mass > 0.0 && reference_mass.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "reference mass must be positive and finite, got {reference_mass}"
        )));
    }
    let r = m1 / m2;
    Ok(r * r)
}

/// Embed a boundary point into the unit circle (dim 2, third coordinate 0)
/// or unit sphere (dim 3), as seen from `basepoint`'s frame: the boundary
/// is first recentered so the basepoint looks like (0, 1).
pub fn visual_embed(basepoint: &HPoint, xi: &HPoint) -> Result<[f64; 3]> {
    let (w0, h0, dim) = match basepoint {
        HPoint::Interior { dim, horiz, height } => (*horiz, *height, *dim),
        _ => {
            return Err(Error::InvalidParameter(
                "visual embedding needs an interior basepoint".into(),
            ))
        }
    };
    let normalized: Option<Complex64> = match xi {
        HPoint::Boundary { horiz, .. } => Some((horiz - w0) / h0),
        HPoint::Infinity { .. } => None,
        HPoint::Interior { .. } => {
            return Err(Error::InvalidParameter(
                "visual embedding is defined for boundary points".into(),
            ))
        }
    };
    match dim {
        Dim::Two => {
            // Cayley transform ξ' ↦ (ξ'−i)/(ξ'+i) onto the unit circle.
            match normalized {
                Some(z) => {
                    let i = Complex64::new(0.0, 1.0);
                    let c = (z - i) / (z + i);
                    Ok([c.re, c.im, 0.0])
                }
                None => Ok([1.0, 0.0, 0.0]),
            }
        }
        Dim::Three => match normalized {
            // Inverse stereographic projection onto the unit sphere.
            Some(z) => {
                let n = z.norm_sqr();
                Ok([2.0 * z.re / (n + 1.0), 2.0 * z.im / (n + 1.0), (n - 1.0) / (n + 1.0)])
            }
            None => Ok([0.0, 0.0, 1.0]),
        },
    }
}

/// Chordal distance between two boundary points in the basepoint's visual
/// embedding; ranges over [0, 2].
pub fn visual_boundary_distance(
    basepoint: &HPoint,
    a: &HPoint,
    b: &HPoint,
) -> Result<f64> {
    let pa = visual_embed(basepoint, a)?;
    let pb = visual_embed(basepoint, b)?;
    let d2: f64 = (0..3).map(|i| (pa[i] - pb[i]).powi(2)).sum();
    Ok(d2.sqrt())
}

/// Number of bins used by [`visual_bin`].
pub const VISUAL_BINS: usize = 16;

/// Partition the boundary into 16 visual bins around `basepoint`: angular
/// sectors of the circle in dim 2, a 4×4 (latitude band × azimuth sector)
/// grid of the sphere in dim 3.
pub fn visual_bin(basepoint: &HPoint, xi: &HPoint) -> Result<usize> {
    let p = visual_embed(basepoint, xi)?;
    let sector = |x: f64, y: f64, n: usize| -> usize {
        let theta = y.atan2(x); // (−π, π]
        let t = (theta + std::f64::consts::PI) / (2.0 * std::f64::consts::PI);
        ((t * n as f64) as usize).min(n - 1)
    };
    match basepoint.dim() {
        Dim::Two => Ok(sector(p[0], p[1], VISUAL_BINS)),
        Dim::Three => {
            let band = (((p[2] + 1.0) / 2.0 * 4.0) as usize).min(3);
            Ok(band * 4 + sector(p[0], p[1], 4))
        }
    }
}

/// Histogram of measure mass over the 16 visual bins.
pub fn bin_masses(
    basepoint: &HPoint,
    measure: &EmpiricalBoundaryMeasure,
) -> Result<[f64; VISUAL_BINS]> {
    let mut out = [0.0; VISUAL_BINS];
    for (xi, w) in &measure.atoms {
        out[visual_bin(basepoint, xi)?] += w;
    }
    Ok(out)
}

/// Push a measure forward by an isometry and reweight by the conformal
/// factor e^{−δ·β_{gξ}(x₀, g x₀)}, then renormalize. This is the
/// equivariance operation the conformality tests compare against a
/// directly estimated measure.
pub fn pushforward(
    measure: &EmpiricalBoundaryMeasure,
    g: &crate::moebius::MobiusMap,
    basepoint: &HPoint,
) -> Result<EmpiricalBoundaryMeasure> {
    let gx0 = g.apply(basepoint)?;
    let mut atoms = Vec::with_capacity(measure.atoms.len());
    for (xi, w) in &measure.atoms {
        let gxi = g.apply(xi)?;
        let beta = busemann_cocycle(&gxi, basepoint, &gx0)?;
        atoms.push((gxi, w * (-measure.delta_used * beta).exp()));
    }
    let total: f64 = atoms.iter().map(|a| a.1).sum();
    if !(total > 0.0 && total.is_finite()) {
        return Err(Error::InsufficientData(
            "pushforward produced no usable mass".into(),
        ));
    }
    for a in &mut atoms {
        a.1 /= total;
    }
    Ok(EmpiricalBoundaryMeasure {
        atoms,
        delta_used: measure.delta_used,
        cutoff: measure.cutoff,
        certificate: measure.certificate,
    })
}

/// Convenience: displacement of a basepoint under an isometry, used by
/// conformality tests to skip near-identity or out-of-range pushforwards.
pub fn displacement_of(g: &crate::moebius::MobiusMap, x: &HPoint) -> Result<f64> {
    dist(x, &g.apply(x)?)
}
