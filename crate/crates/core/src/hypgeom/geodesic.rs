//! Geodesic lines, rays, feet, the horospherical cocycle, and the
//! basepoint–line product, all in the upper half-space models.
//!
//! Every computation conjugates the configuration so the relevant line
//! becomes the vertical axis `(0, ∞)`, where distances, feet and the cocycle
//! have exact closed forms, then conjugates back.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hypgeom::point::{same_dim, Dim, HPoint};
use crate::moebius::MobiusMap;

/// An unoriented-in-space but directed geodesic line, stored as an ordered
/// pair of distinct boundary endpoints (negative end, positive end).
#[derive(Clone, Debug, PartialEq)]
pub struct GeodesicLine {
    neg: HPoint,
    pos: HPoint,
}

impl GeodesicLine {
    /// Build the line through two distinct boundary points, directed from
    /// `neg` toward `pos`.
    pub fn new(neg: HPoint, pos: HPoint) -> Result<GeodesicLine> {
        same_dim(&neg, &pos)?;
        if neg.is_interior() || pos.is_interior() {
            return Err(Error::InvalidParameter(
                "geodesic line endpoints must be boundary points".into(),
            ));
        }
        if neg.same_boundary_point(&pos) {
            return Err(Error::InvalidParameter(
                "geodesic line endpoints must be distinct".into(),
            ));
        }
        Ok(GeodesicLine { neg, pos })
    }

    /// The negative (backward) endpoint.
    pub fn neg_end(&self) -> HPoint {
        self.neg
    }

    /// The positive (forward) endpoint.
    pub fn pos_end(&self) -> HPoint {
        self.pos
    }

    /// Model dimension.
    pub fn dim(&self) -> Dim {
        self.neg.dim()
    }

    /// The same line with the direction reversed.
    pub fn reversed(&self) -> GeodesicLine {
        GeodesicLine { neg: self.pos, pos: self.neg }
    }

    /// A determinant-one map sending `neg → 0` and `pos → ∞`, so the line
    /// itself maps onto the vertical axis.
    pub fn to_axis_map(&self) -> Result<MobiusMap> {
        let dim = self.dim();
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let entries = match (&self.neg, &self.pos) {
            (HPoint::Infinity { .. }, _) => {
                let q = self.pos.as_finite_boundary()?;
                [[zero, one], [-one, q]]
            }
            (_, HPoint::Infinity { .. }) => {
                let p = self.neg.as_finite_boundary()?;
                [[one, -p], [zero, one]]
            }
            _ => {
                let p = self.neg.as_finite_boundary()?;
                let q = self.pos.as_finite_boundary()?;
                let inv = one / (p - q);
                [[one, -p], [inv, -q * inv]]
            }
        };
        MobiusMap::new(dim, entries)
    }

    /// Unit-speed parametrization: `point_at(0)` is the point of the line
    /// that the axis map sends to height one, and `t` increases toward the
    /// positive endpoint.
    pub fn point_at(&self, t: f64) -> Result<HPoint> {
        let sigma = self.to_axis_map()?;
        let on_axis = HPoint::interior(self.dim(), Complex64::new(0.0, 0.0), t.exp())?;
        sigma.inverse().apply(&on_axis)
    }

    /// True when the two lines have the same endpoint set (either direction).
    pub fn same_line(&self, other: &GeodesicLine) -> bool {
        (self.neg.same_boundary_point(&other.neg) && self.pos.same_boundary_point(&other.pos))
            || (self.neg.same_boundary_point(&other.pos)
                && self.pos.same_boundary_point(&other.neg))
    }
}

/// A base point on a directed line: a unit tangent vector.
#[derive(Clone, Debug)]
pub struct OrientedVector {
    /// The directed line carrying the vector.
    pub line: GeodesicLine,
    /// Parameter of the base point in the line's unit-speed parametrization.
    pub basetime: f64,
}

impl OrientedVector {
    /// Construct a vector on `line` based at parameter `basetime`.
    pub fn new(line: GeodesicLine, basetime: f64) -> OrientedVector {
        OrientedVector { line, basetime }
    }

    /// The interior base point of the vector.
    pub fn base_point(&self) -> Result<HPoint> {
        self.line.point_at(self.basetime)
    }
}

/// Boundary endpoint of the geodesic ray from `p` through `q` (both
/// interior, distinct).
///
/// Writing `Δw = w_q − w_p`, the ray is vertical when `Δw` vanishes;
/// otherwise the ray lies on the semicircle with boundary center
/// `w_p + u·cm` and radius `R`, where
///
/// ```text
/// u = Δw/|Δw|,  cm = (|Δw|² + h_q² − h_p²) / (2|Δw|),  R = √(cm² + h_p²),
/// ```
///
/// and the forward endpoint is `w_p + u (cm + R)`.
pub fn ray_endpoint(p: &HPoint, q: &HPoint) -> Result<HPoint> {
    same_dim(p, q)?;
    let (wp, hp) = p.as_interior()?;
    let (wq, hq) = q.as_interior()?;
    let dw = wq - wp;
    let d = dw.norm();
    if d <= 1e-14 * (1.0 + wp.norm()) {
        if hq == hp {
            return Err(Error::InvalidParameter(
                "ray through coincident points is undefined".into(),
            ));
        }
        return if hq > hp {
            Ok(HPoint::infinity(p.dim()))
        } else {
            HPoint::boundary(p.dim(), wp)
        };
    }
    let u = dw / d;
    let cm = (d * d + hq * hq - hp * hp) / (2.0 * d);
    let r = (cm * cm + hp * hp).sqrt();
    HPoint::boundary(p.dim(), wp + u * (cm + r))
}

/// The directed line through `x` and `y` (distinct), oriented from `x`
/// toward `y`. Interior points contribute the endpoint of the ray beyond
/// them; boundary points are endpoints themselves.
pub fn geodesic_through(x: &HPoint, y: &HPoint) -> Result<GeodesicLine> {
    same_dim(x, y)?;
    match (x.is_interior(), y.is_interior()) {
        (true, true) => GeodesicLine::new(ray_endpoint(y, x)?, ray_endpoint(x, y)?),
        (false, false) => GeodesicLine::new(*x, *y),
        (true, false) => {
            let neg = opposite_endpoint(y, x)?;
            GeodesicLine::new(neg, *y)
        }
        (false, true) => {
            let pos = opposite_endpoint(x, y)?;
            GeodesicLine::new(*x, pos)
        }
    }
}

/// For a boundary point `xi` and an interior point `x`, the second endpoint
/// of the line through both: conjugate `xi → ∞`, where the line is the
/// vertical through the image of `x`.
fn opposite_endpoint(xi: &HPoint, x: &HPoint) -> Result<HPoint> {
    let dim = xi.dim();
    if xi.is_infinity() {
        let (w, _) = x.as_interior()?;
        return HPoint::boundary(dim, w);
    }
    let sigma = send_to_infinity(dim, xi)?;
    let ximg = sigma.apply(x)?;
    let (w, _) = ximg.as_interior()?;
    sigma.inverse().apply(&HPoint::boundary(dim, w)?)
}

/// Walk from interior `x` toward `y` (interior or boundary, distinct from
/// `x`) for signed distance `r`; negative `r` walks away from `y`.
pub fn point_along(x: &HPoint, y: &HPoint, r: f64) -> Result<HPoint> {
    same_dim(x, y)?;
    if !x.is_interior() {
        return Err(Error::InvalidParameter(
            "walks start at an interior point".into(),
        ));
    }
    if !r.is_finite() {
        return Err(Error::InvalidParameter("walk distance must be finite".into()));
    }
    let line = geodesic_through(x, y)?;
    let sigma = line.to_axis_map()?;
    let (_, hx) = sigma.apply(x)?.as_interior()?;
    // `y` is on the positive side of the directed line by construction, so
    // moving toward it multiplies the conjugated height by e^r.
    let moved = HPoint::interior(x.dim(), Complex64::new(0.0, 0.0), hx * r.exp())?;
    sigma.inverse().apply(&moved)
}

/// Orthogonal projection of an interior point onto a line.
///
/// In the conjugated picture where the line is the vertical axis and the
/// point is `(w', h')`, the foot is `(0, √(|w'|² + h'²))`.
pub fn foot_on_line(line: &GeodesicLine, x: &HPoint) -> Result<HPoint> {
    if x.dim() != line.dim() {
        return Err(Error::DimensionMismatch(line.dim().n(), x.dim().n()));
    }
    let sigma = line.to_axis_map()?;
    let (w, h) = sigma.apply(x)?.as_interior()?;
    let foot = HPoint::interior(
        line.dim(),
        Complex64::new(0.0, 0.0),
        (w.norm_sqr() + h * h).sqrt(),
    )?;
    sigma.inverse().apply(&foot)
}

/// Distance from an interior point to a line: with the line conjugated to
/// the vertical axis and the point at `(w', h')`, `sinh d = |w'| / h'`.
pub fn dist_point_to_line(line: &GeodesicLine, x: &HPoint) -> Result<f64> {
    if x.dim() != line.dim() {
        return Err(Error::DimensionMismatch(line.dim().n(), x.dim().n()));
    }
    let sigma = line.to_axis_map()?;
    let (w, h) = sigma.apply(x)?.as_interior()?;
    Ok((w.norm() / h).asinh())
}

/// A determinant-one map sending the finite boundary point `xi` to `∞`.
pub(crate) fn send_to_infinity(dim: Dim, xi: &HPoint) -> Result<MobiusMap> {
    let z = xi.as_finite_boundary()?;
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    MobiusMap::new(dim, [[zero, -one], [one, -z]])
}

/// Horospherical cocycle `β_ξ(x, y)`: the limit of `d(x, z) − d(y, z)` as
/// `z → ξ`, for interior `x`, `y` and boundary `ξ`.
///
/// For `ξ = ∞` this is `log(h_y / h_x)`; finite `ξ` is conjugated to `∞`
/// first. Positive value means `y` sits deeper inside the horoballs at `ξ`
/// than `x`.
pub fn busemann_cocycle(xi: &HPoint, x: &HPoint, y: &HPoint) -> Result<f64> {
    same_dim(xi, x)?;
    same_dim(x, y)?;
    if xi.is_interior() {
        return Err(Error::InvalidParameter(
            "cocycle base must be a boundary point".into(),
        ));
    }
    let (hx, hy) = if xi.is_infinity() {
        let (_, hx) = x.as_interior()?;
        let (_, hy) = y.as_interior()?;
        (hx, hy)
    } else {
        let sigma = send_to_infinity(xi.dim(), xi)?;
        let (_, hx) = sigma.apply(x)?.as_interior()?;
        let (_, hy) = sigma.apply(y)?.as_interior()?;
        (hx, hy)
    };
    Ok((hy / hx).ln())
}

/// Product of the two ends of `line` seen from `x0`: with `y` the foot of
/// `x0` on the line,
///
/// ```text
/// ½ (β_{neg}(x0, y) + β_{pos}(x0, y)),
/// ```
///
/// which is zero exactly on the line and grows like the distance to the
/// line up to a bounded additive error.
pub fn gromov_product(line: &GeodesicLine, x0: &HPoint) -> Result<f64> {
    if x0.dim() != line.dim() {
        return Err(Error::DimensionMismatch(line.dim().n(), x0.dim().n()));
    }
    let y = foot_on_line(line, x0)?;
    let bneg = busemann_cocycle(&line.neg_end(), x0, &y)?;
    let bpos = busemann_cocycle(&line.pos_end(), x0, &y)?;
    Ok(0.5 * (bneg + bpos))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypgeom::point::dist;
    use approx::assert_abs_diff_eq;

    fn vline() -> GeodesicLine {
        GeodesicLine::new(HPoint::b2(0.0), HPoint::infinity(Dim::Two)).unwrap()
    }

    #[test]
    fn cocycle_at_infinity_is_log_height_ratio() {
        let xi = HPoint::infinity(Dim::Two);
        let x = HPoint::h2(0.0, 1.0);
        let y = HPoint::h2(0.0, std::f64::consts::E);
        assert_abs_diff_eq!(busemann_cocycle(&xi, &x, &y).unwrap(), 1.0, epsilon = 1e-12);
        // Horizontal moves at equal height are cocycle-neutral at ∞.
        let z = HPoint::h2(7.3, 1.0);
        assert_abs_diff_eq!(busemann_cocycle(&xi, &x, &z).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn cocycle_at_origin_frozen_value() {
        let xi = HPoint::b2(0.0);
        let x = HPoint::h2(0.0, 1.0);
        let y = HPoint::h2(0.0, 2.0);
        // Moving up the vertical at 0 moves *away* from horoballs at 0.
        assert_abs_diff_eq!(
            busemann_cocycle(&xi, &x, &y).unwrap(),
            -(2.0f64.ln()),
            epsilon = 1e-12
        );
    }

    #[test]
    fn cocycle_identity_chains() {
        let xi = HPoint::b2(1.5);
        let x = HPoint::h2(0.3, 0.9);
        let y = HPoint::h2(-1.0, 2.0);
        let z = HPoint::h2(0.8, 0.4);
        let xy = busemann_cocycle(&xi, &x, &y).unwrap();
        let yz = busemann_cocycle(&xi, &y, &z).unwrap();
        let xz = busemann_cocycle(&xi, &x, &z).unwrap();
        assert_abs_diff_eq!(xy + yz, xz, epsilon = 1e-12);
        // Antisymmetry.
        let yx = busemann_cocycle(&xi, &y, &x).unwrap();
        assert_abs_diff_eq!(xy, -yx, epsilon = 1e-12);
    }

    #[test]
    fn cocycle_is_isometry_equivariant() {
        let g = MobiusMap::from_real([[2.0, 1.0], [1.0, 1.0]]).unwrap();
        let xi = HPoint::b2(0.25);
        let x = HPoint::h2(0.3, 0.9);
        let y = HPoint::h2(-1.0, 2.0);
        let lhs = busemann_cocycle(&xi, &x, &y).unwrap();
        let rhs = busemann_cocycle(
            &g.apply(&xi).unwrap(),
            &g.apply(&x).unwrap(),
            &g.apply(&y).unwrap(),
        )
        .unwrap();
        assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-11);
    }

    #[test]
    fn vertical_line_distance_and_foot() {
        let line = vline();
        let x = HPoint::h2(1.0, 1.0);
        assert_abs_diff_eq!(
            dist_point_to_line(&line, &x).unwrap(),
            1.0f64.asinh(),
            epsilon = 1e-12
        );
        let foot = foot_on_line(&line, &x).unwrap();
        let (w, h) = foot.as_interior().unwrap();
        assert_abs_diff_eq!(w.norm(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(h, 2.0f64.sqrt(), epsilon = 1e-12);
        // The foot realizes the distance.
        assert_abs_diff_eq!(
            dist(&x, &foot).unwrap(),
            dist_point_to_line(&line, &x).unwrap(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn foot_is_orthogonal_minimum() {
        let line = GeodesicLine::new(HPoint::b2(-1.0), HPoint::b2(3.0)).unwrap();
        let x = HPoint::h2(0.4, 2.5);
        let d = dist_point_to_line(&line, &x).unwrap();
        let foot = foot_on_line(&line, &x).unwrap();
        assert_abs_diff_eq!(dist(&x, &foot).unwrap(), d, epsilon = 1e-11);
        // Nearby points of the line are strictly farther.
        let sigma = line.to_axis_map().unwrap();
        let (_, hf) = sigma.apply(&foot).unwrap().as_interior().unwrap();
        for dt in [-0.1, 0.1, 0.01, -0.01] {
            let nearby = sigma
                .inverse()
                .apply(&HPoint::h2(0.0, hf * f64::exp(dt)))
                .unwrap();
            assert!(dist(&x, &nearby).unwrap() > d + 1e-6 * dt * dt);
        }
    }

    #[test]
    fn ray_endpoints_frozen_cases() {
        // Straight up and straight down.
        let up = ray_endpoint(&HPoint::h2(0.0, 2.0), &HPoint::h2(0.0, 3.0)).unwrap();
        assert!(up.is_infinity());
        let down = ray_endpoint(&HPoint::h2(0.0, 3.0), &HPoint::h2(0.0, 2.0)).unwrap();
        assert!(down.same_boundary_point(&HPoint::b2(0.0)));
        // Symmetric pair on the semicircle of radius √2 about 0.
        let e = ray_endpoint(&HPoint::h2(-1.0, 1.0), &HPoint::h2(1.0, 1.0)).unwrap();
        assert_abs_diff_eq!(
            e.as_finite_boundary().unwrap().re,
            2.0f64.sqrt(),
            epsilon = 1e-12
        );
        assert!(ray_endpoint(&HPoint::h2(0.0, 1.0), &HPoint::h2(0.0, 1.0)).is_err());
    }

    #[test]
    fn geodesic_through_orients_from_x_to_y() {
        let x = HPoint::h2(-1.0, 1.0);
        let y = HPoint::h2(1.0, 1.0);
        let line = geodesic_through(&x, &y).unwrap();
        let r2 = 2.0f64.sqrt();
        assert_abs_diff_eq!(
            line.neg_end().as_finite_boundary().unwrap().re,
            -r2,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            line.pos_end().as_finite_boundary().unwrap().re,
            r2,
            epsilon = 1e-12
        );
        // Mixed: interior toward a boundary point.
        let line2 = geodesic_through(&x, &HPoint::infinity(Dim::Two)).unwrap();
        assert!(line2.pos_end().is_infinity());
        assert_abs_diff_eq!(
            line2.neg_end().as_finite_boundary().unwrap().re,
            -1.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn line_parametrization_is_unit_speed() {
        let line = GeodesicLine::new(HPoint::b2(-1.0), HPoint::b2(1.0)).unwrap();
        for (s, t) in [(0.0, 1.0), (-0.7, 0.9), (2.0, 2.5)] {
            let p = line.point_at(s).unwrap();
            let q = line.point_at(t).unwrap();
            assert_abs_diff_eq!(dist(&p, &q).unwrap(), (t - s).abs(), epsilon = 1e-10);
        }
        // Increasing t approaches the positive end (here +1).
        let far = line.point_at(20.0).unwrap();
        let (w, h) = far.as_interior().unwrap();
        assert!((w.re - 1.0).abs() < 1e-6 && h < 1e-6);
    }

    #[test]
    fn walking_along_segments() {
        // Vertical walk has the exact exponential form.
        let x = HPoint::h2(0.0, 1.0);
        let y = HPoint::h2(0.0, std::f64::consts::E * std::f64::consts::E);
        let mid = point_along(&x, &y, 1.0).unwrap();
        let (w, h) = mid.as_interior().unwrap();
        assert_abs_diff_eq!(w.norm(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(h, std::f64::consts::E, epsilon = 1e-12);
        // Walking toward a boundary point covers the requested distance,
        // forward and backward.
        let target = HPoint::b2(1.0);
        for r in [0.5, 2.0, -0.75] {
            let p = point_along(&x, &target, r).unwrap();
            assert_abs_diff_eq!(dist(&x, &p).unwrap(), r.abs(), epsilon = 1e-10);
        }
        // Walking d(x,y) toward y lands on y.
        let z = HPoint::h2(0.9, 0.4);
        let d = dist(&x, &z).unwrap();
        let p = point_along(&x, &z, d).unwrap();
        assert!(dist(&p, &z).unwrap() < 1e-10);
    }

    #[test]
    fn end_product_frozen_values() {
        // On the line the product vanishes.
        assert_abs_diff_eq!(
            gromov_product(&vline(), &HPoint::h2(0.0, 5.0)).unwrap(),
            0.0,
            epsilon = 1e-12
        );
        let unit = GeodesicLine::new(HPoint::b2(-1.0), HPoint::b2(1.0)).unwrap();
        assert_abs_diff_eq!(
            gromov_product(&unit, &HPoint::h2(0.0, 1.0)).unwrap(),
            0.0,
            epsilon = 1e-12
        );
        // Off the line: frozen value log(5/4) at (0, 2).
        assert_abs_diff_eq!(
            gromov_product(&unit, &HPoint::h2(0.0, 2.0)).unwrap(),
            1.25f64.ln(),
            epsilon = 1e-12
        );
        // Nonnegative and dominated by the distance to the line.
        let x0 = HPoint::h2(0.7, 3.0);
        let gp = gromov_product(&unit, &x0).unwrap();
        let d = dist_point_to_line(&unit, &x0).unwrap();
        assert!(gp >= 0.0 && gp <= d + 1e-12);
    }

    #[test]
    fn h3_lines_work_with_complex_endpoints() {
        use num_complex::Complex64;
        let line = GeodesicLine::new(
            HPoint::b3(Complex64::new(0.0, -1.0)),
            HPoint::b3(Complex64::new(0.0, 1.0)),
        )
        .unwrap();
        // Summit of the unit semicircle over the imaginary axis.
        let x = HPoint::h3(Complex64::new(0.0, 0.0), 1.0);
        assert_abs_diff_eq!(dist_point_to_line(&line, &x).unwrap(), 0.0, epsilon = 1e-9);
        let y = HPoint::h3(Complex64::new(0.0, 0.0), 2.0);
        let d = dist_point_to_line(&line, &y).unwrap();
        // Same configuration as the H² frozen case d((0,2), unit circle).
        let expected = dist(&HPoint::h2(0.0, 2.0), &HPoint::h2(0.0, 1.0)).unwrap();
        assert_abs_diff_eq!(d, expected, epsilon = 1e-10);
        let xi = HPoint::b3(Complex64::new(2.0, 1.0));
        let b = busemann_cocycle(&xi, &x, &y).unwrap();
        assert!(b.is_finite());
    }

    #[test]
    fn line_constructor_rejects_bad_input() {
        assert!(GeodesicLine::new(HPoint::b2(0.0), HPoint::b2(0.0)).is_err());
        assert!(GeodesicLine::new(HPoint::b2(0.0), HPoint::h2(0.0, 1.0)).is_err());
        assert!(GeodesicLine::new(
            HPoint::infinity(Dim::Two),
            HPoint::infinity(Dim::Two)
        )
        .is_err());
        assert!(
            GeodesicLine::new(HPoint::b2(0.0), HPoint::infinity(Dim::Three)).is_err()
        );
    }
}
