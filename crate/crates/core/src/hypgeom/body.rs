//! Convex bodies — metric balls, horoballs, and tube neighborhoods of
//! geodesics — with signed pairwise distances, closest-point maps, and the
//! transform laws under isometries.
//!
//! All distances are *signed*: positive for disjoint bodies (the length of
//! the common orthogeodesic segment between the boundaries), negative for
//! overlapping ones, and `-∞` for pairs whose boundaries approach each other
//! asymptotically (horoballs on the same base point, or a tube whose axis
//! ends at a horoball's base).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hypgeom::geodesic::{
    dist_point_to_line, foot_on_line, point_along, send_to_infinity, GeodesicLine,
};
use crate::hypgeom::point::{dist, Dim, HPoint};
use crate::moebius::MobiusMap;
use crate::util::convex_line_min;

/// A convex body in H² or H³.
#[derive(Clone, Debug)]
pub enum ConvexBody {
    /// Metric ball of hyperbolic radius `radius` about an interior point.
    Ball {
        /// Interior center.
        center: HPoint,
        /// Hyperbolic radius, positive.
        radius: f64,
    },
    /// Horoball at a boundary point. For a finite base the `size` is the
    /// Euclidean diameter of the tangent ball; for base `∞` it is the height
    /// cutoff, the body being `{ h ≥ size }`.
    Horoball {
        /// Boundary base point (possibly ∞).
        base: HPoint,
        /// Size parameter, positive (see above for the two conventions).
        size: f64,
    },
    /// Closed `radius`-neighborhood of a geodesic line.
    Tube {
        /// The core geodesic.
        axis: GeodesicLine,
        /// Hyperbolic radius, positive.
        radius: f64,
    },
}

impl ConvexBody {
    /// Validated ball constructor.
    pub fn ball(center: HPoint, radius: f64) -> Result<ConvexBody> {
        if !center.is_interior() {
            return Err(Error::InvalidParameter("ball center must be interior".into()));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "ball radius must be positive and finite, got {radius}"
            )));
        }
        Ok(ConvexBody::Ball { center, radius })
    }

    /// Validated horoball constructor.
    pub fn horoball(base: HPoint, size: f64) -> Result<ConvexBody> {
        if base.is_interior() {
            return Err(Error::InvalidParameter(
                "horoball base must be a boundary point".into(),
            ));
        }
        if !(size > 0.0 && size.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "horoball size must be positive and finite, got {size}"
            )));
        }
        Ok(ConvexBody::Horoball { base, size })
    }

    /// Validated tube constructor.
    pub fn tube(axis: GeodesicLine, radius: f64) -> Result<ConvexBody> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "tube radius must be positive and finite, got {radius}"
            )));
        }
        Ok(ConvexBody::Tube { axis, radius })
    }

    /// Model dimension the body lives in.
    pub fn dim(&self) -> Dim {
        match self {
            ConvexBody::Ball { center, .. } => center.dim(),
            ConvexBody::Horoball { base, .. } => base.dim(),
            ConvexBody::Tube { axis, .. } => axis.dim(),
        }
    }

    /// Image of the body under an isometry.
    ///
    /// Balls and tubes move their center/axis with the radius kept; horoball
    /// sizes scale by the boundary derivative of the map at the base:
    ///
    /// ```text
    /// finite p → finite q:  s' = s / |cp + d|²      finite p → ∞:  s' = 1 / (s |c|²)
    /// ∞ → finite:           s' = 1 / (s |c|²)       ∞ → ∞:         s' = s |a|²
    /// ```
    pub fn transformed(&self, g: &MobiusMap) -> Result<ConvexBody> {
        if g.dim() != self.dim() {
            return Err(Error::DimensionMismatch(g.dim().n(), self.dim().n()));
        }
        let [[a, _b], [c, d]] = g.entries();
        match self {
            ConvexBody::Ball { center, radius } => Ok(ConvexBody::Ball {
                center: g.apply(center)?,
                radius: *radius,
            }),
            ConvexBody::Tube { axis, radius } => {
                let neg = g.apply(&axis.neg_end())?;
                let pos = g.apply(&axis.pos_end())?;
                Ok(ConvexBody::Tube {
                    axis: GeodesicLine::new(neg, pos)?,
                    radius: *radius,
                })
            }
            ConvexBody::Horoball { base, size } => {
                let image = g.apply(base)?;
                let s = *size;
                let new_size = if base.is_infinity() {
                    if image.is_infinity() {
                        s * a.norm_sqr()
                    } else {
                        1.0 / (s * c.norm_sqr())
                    }
                } else {
                    let p = base.as_finite_boundary()?;
                    if image.is_infinity() {
                        1.0 / (s * c.norm_sqr())
                    } else {
                        s / (c * p + d).norm_sqr()
                    }
                };
                if !(new_size > 0.0 && new_size.is_finite()) {
                    return Err(Error::InvalidParameter("degenerate horoball image".into()));
                }
                Ok(ConvexBody::Horoball { base: image, size: new_size })
            }
        }
    }

    /// Approximate equality for tests and dedup: same kind, same dimension,
    /// parameters within `tol` (horoball sizes compared on log scale; tube
    /// directions may be reversed).
    pub fn approx_eq(&self, other: &ConvexBody, tol: f64) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        match (self, other) {
            (
                ConvexBody::Ball { center: c1, radius: r1 },
                ConvexBody::Ball { center: c2, radius: r2 },
            ) => (r1 - r2).abs() <= tol && dist(c1, c2).map(|d| d <= tol).unwrap_or(false),
            (
                ConvexBody::Horoball { base: b1, size: s1 },
                ConvexBody::Horoball { base: b2, size: s2 },
            ) => boundary_close(b1, b2, tol) && (s1 / s2).ln().abs() <= tol,
            (
                ConvexBody::Tube { axis: a1, radius: r1 },
                ConvexBody::Tube { axis: a2, radius: r2 },
            ) => {
                (r1 - r2).abs() <= tol
                    && (boundary_close(&a1.neg_end(), &a2.neg_end(), tol)
                        && boundary_close(&a1.pos_end(), &a2.pos_end(), tol)
                        || boundary_close(&a1.neg_end(), &a2.pos_end(), tol)
                            && boundary_close(&a1.pos_end(), &a2.neg_end(), tol))
            }
            _ => false,
        }
    }
}

fn boundary_close(x: &HPoint, y: &HPoint, tol: f64) -> bool {
    match (x.as_finite_boundary(), y.as_finite_boundary()) {
        (Ok(p), Ok(q)) => (p - q).norm() <= tol,
        (Err(_), Err(_)) => x.is_infinity() && y.is_infinity(),
        _ => false,
    }
}

/// Conjugate a horoball to base `∞` and carry a companion point along:
/// returns the height cutoff and the image of `pt`.
fn horoball_frame(base: &HPoint, size: f64, pt: &HPoint) -> Result<(f64, HPoint)> {
    if base.is_infinity() {
        Ok((size, *pt))
    } else {
        let sigma = send_to_infinity(base.dim(), base)?;
        Ok((1.0 / size, sigma.apply(pt)?))
    }
}

/// Signed distance between two convex bodies (see the module docs for the
/// sign convention). Symmetric in its arguments.
pub fn body_distance(b1: &ConvexBody, b2: &ConvexBody) -> Result<f64> {
    if b1.dim() != b2.dim() {
        return Err(Error::DimensionMismatch(b1.dim().n(), b2.dim().n()));
    }
    use ConvexBody::*;
    match (b1, b2) {
        (Ball { center: c1, radius: r1 }, Ball { center: c2, radius: r2 }) => {
            // Radii are summed before subtracting so equal radii contribute
            // exactly 2r with a single rounding.
            Ok(dist(c1, c2)? - (r1 + r2))
        }
        (Ball { center, radius }, Horoball { base, size })
        | (Horoball { base, size }, Ball { center, radius }) => {
            let (cutoff, pt) = horoball_frame(base, *size, center)?;
            let (_, h) = pt.as_interior()?;
            Ok((cutoff / h).ln() - radius)
        }
        (Ball { center, radius: rb }, Tube { axis, radius: rt })
        | (Tube { axis, radius: rt }, Ball { center, radius: rb }) => {
            Ok(dist_point_to_line(axis, center)? - (rb + rt))
        }
        (Horoball { base: p1, size: s1 }, Horoball { base: p2, size: s2 }) => {
            horoball_pair_distance(p1, *s1, p2, *s2)
        }
        (Horoball { base, size }, Tube { axis, radius })
        | (Tube { axis, radius }, Horoball { base, size }) => {
            if axis.neg_end().same_boundary_point(base)
                || axis.pos_end().same_boundary_point(base)
            {
                return Ok(f64::NEG_INFINITY);
            }
            let (cutoff, apex) = if base.is_infinity() {
                let p = axis.neg_end().as_finite_boundary()?;
                let q = axis.pos_end().as_finite_boundary()?;
                (*size, 0.5 * (p - q).norm())
            } else {
                let sigma = send_to_infinity(base.dim(), base)?;
                let p = sigma.apply(&axis.neg_end())?.as_finite_boundary()?;
                let q = sigma.apply(&axis.pos_end())?.as_finite_boundary()?;
                (1.0 / size, 0.5 * (p - q).norm())
            };
            Ok((cutoff / apex).ln() - radius)
        }
        (Tube { axis: a1, radius: r1 }, Tube { axis: a2, radius: r2 }) => {
            let shared = a1.neg_end().same_boundary_point(&a2.neg_end())
                || a1.neg_end().same_boundary_point(&a2.pos_end())
                || a1.pos_end().same_boundary_point(&a2.neg_end())
                || a1.pos_end().same_boundary_point(&a2.pos_end());
            if shared {
                return Ok(0.0 - (r1 + r2));
            }
            Ok(axis_to_axis_distance(a1, a2)? - (r1 + r2))
        }
    }
}

fn horoball_pair_distance(p1: &HPoint, s1: f64, p2: &HPoint, s2: f64) -> Result<f64> {
    match (p1.is_infinity(), p2.is_infinity()) {
        (true, true) => Ok(f64::NEG_INFINITY),
        (true, false) => Ok((s1 / s2).ln()),
        (false, true) => Ok((s2 / s1).ln()),
        (false, false) => {
            if p1.same_boundary_point(p2) {
                return Ok(f64::NEG_INFINITY);
            }
            let z1 = p1.as_finite_boundary()?;
            let z2 = p2.as_finite_boundary()?;
            Ok(2.0 * ((z1 - z2).norm() / (s1 * s2).sqrt()).ln())
        }
    }
}

/// Distance between two disjoint-endpoint geodesic lines: conjugate the
/// first to the vertical axis and minimize the (convex) distance from
/// `(0, e^s)` to the second over `s`.
fn axis_to_axis_distance(a1: &GeodesicLine, a2: &GeodesicLine) -> Result<f64> {
    let dim = a1.dim();
    let sigma = a1.to_axis_map()?;
    let neg = sigma.apply(&a2.neg_end())?;
    let pos = sigma.apply(&a2.pos_end())?;
    let image = GeodesicLine::new(neg, pos)?;
    let tau = image.to_axis_map()?;
    let f = |s: f64| {
        let s = s.clamp(-700.0, 700.0);
        let p = HPoint::interior(dim, Complex64::new(0.0, 0.0), s.exp())
            .expect("point on conjugated axis");
        let (w, h) = tau
            .apply(&p)
            .and_then(|q| q.as_interior())
            .expect("interior point stays interior");
        (w.norm() / h).asinh()
    };
    let (_, fmin) = convex_line_min(f, 8.0);
    Ok(fmin)
}

/// The point of the body's boundary closest to `target`, which may be an
/// interior point strictly outside the body (points on the boundary are
/// their own closest point) or a boundary point, in which case the result is
/// the limit of closest points along a ray toward the target.
///
/// Errors: [`Error::TargetContained`] for targets inside the open body,
/// [`Error::UndefinedClosestPoint`] for boundary targets the body already
/// touches at infinity (a horoball's base, a tube's axis endpoint).
pub fn closest_point_on_body(body: &ConvexBody, target: &HPoint) -> Result<HPoint> {
    let dim = body.dim();
    if target.dim() != dim {
        return Err(Error::DimensionMismatch(dim.n(), target.dim().n()));
    }
    match body {
        ConvexBody::Ball { center, radius } => {
            if target.is_interior() {
                let d = dist(center, target)?;
                if d < *radius {
                    return Err(Error::TargetContained);
                }
            }
            point_along(center, target, *radius)
        }
        ConvexBody::Horoball { base, size } => {
            if !target.is_interior() && target.same_boundary_point(base) {
                return Err(Error::UndefinedClosestPoint);
            }
            let (cutoff, image) = horoball_frame(base, *size, target)?;
            let projected = match image {
                HPoint::Interior { horiz, height, .. } => {
                    if height > cutoff {
                        return Err(Error::TargetContained);
                    }
                    HPoint::interior(dim, horiz, cutoff)?
                }
                HPoint::Boundary { horiz, .. } => HPoint::interior(dim, horiz, cutoff)?,
                HPoint::Infinity { .. } => return Err(Error::UndefinedClosestPoint),
            };
            if base.is_infinity() {
                Ok(projected)
            } else {
                send_to_infinity(dim, base)?.inverse().apply(&projected)
            }
        }
        ConvexBody::Tube { axis, radius } => {
            if !target.is_interior() {
                if target.same_boundary_point(&axis.neg_end())
                    || target.same_boundary_point(&axis.pos_end())
                {
                    return Err(Error::UndefinedClosestPoint);
                }
                // Conjugate the axis to (0, ∞); the target goes to a finite
                // boundary point ξ ≠ 0. The exit point lies on the semicircle
                // of radius |ξ| about 0 in the plane through the axis and ξ,
                // at angle θ from the boundary with tan(θ/2) = e^{-r}.
                let sigma = axis.to_axis_map()?;
                let xi = sigma.apply(target)?.as_finite_boundary()?;
                let r_abs = xi.norm();
                if r_abs == 0.0 {
                    return Err(Error::UndefinedClosestPoint);
                }
                let u = xi / r_abs;
                let theta = 2.0 * (-radius).exp().atan();
                let exit = HPoint::interior(dim, u * (r_abs * theta.cos()), r_abs * theta.sin())?;
                return sigma.inverse().apply(&exit);
            }
            let d = dist_point_to_line(axis, target)?;
            if d < *radius {
                return Err(Error::TargetContained);
            }
            let foot = foot_on_line(axis, target)?;
            point_along(&foot, target, *radius)
        }
    }
}
