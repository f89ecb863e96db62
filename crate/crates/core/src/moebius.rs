//! The isometry algebra: determinant-one 2×2 matrices acting on upper
//! half-space by Möbius transformations and their Poincaré extension.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hypgeom::{GeodesicLine, HPoint};
use crate::hypgeom::Dim;

/// Default tolerance for trace-based classification (per-call overridable).
pub const CLASSIFY_TOL: f64 = 1e-9;

/// An orientation-preserving isometry of H² or H³ as a determinant-one 2×2
/// matrix, real for H² and complex for H³.
///
/// The sign ambiguity (±M act identically) is quotiented out by every
/// comparison operation: see [`MobiusMap::proj_dist`].
#[derive(Clone, Copy, Debug)]
pub struct MobiusMap {
    dim: Dim,
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

/// Classification of an isometry by its translation behaviour.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum IsometryClass {
    /// The identity map (±I).
    Identity,
    /// Nontrivial, translation length 0, infimum not attained.
    Parabolic,
    /// Fixes an interior point (H²) or an axis pointwise-rotating (H³).
    Elliptic,
    /// Translates along an axis by a positive length.
    Loxodromic {
        /// The translation length τ > 0.
        translation_length: f64,
    },
}

impl MobiusMap {
    /// Build a map from matrix entries, normalizing the determinant to one.
    ///
    /// H² requires real entries and positive determinant; H³ requires a
    /// nonzero determinant (normalized via the principal square root).
    pub fn new(dim: Dim, entries: [[Complex64; 2]; 2]) -> Result<MobiusMap> {
        let [[a, b], [c, d]] = entries;
        for z in [a, b, c, d] {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::InvalidParameter("matrix entries must be finite".into()));
            }
        }
        let det = a * d - b * c;
        match dim {
            Dim::Two => {
                if a.im != 0.0 || b.im != 0.0 || c.im != 0.0 || d.im != 0.0 {
                    return Err(Error::InvalidParameter(
                        "H2 isometries have real matrix entries".into(),
                    ));
                }
                if det.re.is_nan() || det.re <= 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "H2 isometries need positive determinant, got {}",
                        det.re
                    )));
                }
                let s = det.re.sqrt();
                Ok(MobiusMap { dim, a: a / s, b: b / s, c: c / s, d: d / s })
            }
            Dim::Three => {
                if det.norm() < 1e-300 {
                    return Err(Error::InvalidParameter("singular matrix".into()));
                }
                let s = det.sqrt();
                Ok(MobiusMap { dim, a: a / s, b: b / s, c: c / s, d: d / s })
            }
        }
    }

    /// Convenience constructor for H² from real entries.
    pub fn from_real(entries: [[f64; 2]; 2]) -> Result<MobiusMap> {
        let c = |x: f64| Complex64::new(x, 0.0);
        MobiusMap::new(
            Dim::Two,
            [
                [c(entries[0][0]), c(entries[0][1])],
                [c(entries[1][0]), c(entries[1][1])],
            ],
        )
    }

    /// The identity map.
    pub fn identity(dim: Dim) -> MobiusMap {
        MobiusMap {
            dim,
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
            c: Complex64::new(0.0, 0.0),
            d: Complex64::new(1.0, 0.0),
        }
    }

    /// Model dimension the map acts on.
    pub fn dim(&self) -> Dim {
        self.dim
    }

    /// Matrix entries `[[a, b], [c, d]]` (determinant one).
    pub fn entries(&self) -> [[Complex64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    /// Matrix trace `a + d` (defined up to sign).
    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }

    /// The inverse map (exact for determinant-one matrices).
    pub fn inverse(&self) -> MobiusMap {
        MobiusMap {
            dim: self.dim,
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// Composition `self ∘ other` (matrix product; no re-normalization, so
    /// exact-integer fixtures stay exact).
    pub fn compose(&self, other: &MobiusMap) -> MobiusMap {
        MobiusMap {
            dim: self.dim,
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    /// Integer power by repeated squaring (negative powers via the inverse).
    pub fn pow(&self, n: i64) -> MobiusMap {
        if n == 0 {
            return MobiusMap::identity(self.dim);
        }
        let mut base = if n < 0 { self.inverse() } else { *self };
        let mut e = n.unsigned_abs();
        let mut acc = MobiusMap::identity(self.dim);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// Frobenius distance between the matrices after quotienting the sign:
    /// `min(‖M − N‖_F, ‖M + N‖_F)`.
    pub fn proj_dist(&self, other: &MobiusMap) -> f64 {
        let d1 = (self.a - other.a).norm_sqr()
            + (self.b - other.b).norm_sqr()
            + (self.c - other.c).norm_sqr()
            + (self.d - other.d).norm_sqr();
        let d2 = (self.a + other.a).norm_sqr()
            + (self.b + other.b).norm_sqr()
            + (self.c + other.c).norm_sqr()
            + (self.d + other.d).norm_sqr();
        d1.min(d2).sqrt()
    }

    /// True when the map is ±identity within `tol` (Frobenius).
    pub fn is_identity(&self, tol: f64) -> bool {
        self.proj_dist(&MobiusMap::identity(self.dim)) <= tol
    }

    /// Apply the map to a point: boundary points by the fractional-linear
    /// action, interior points by the Poincaré extension
    ///
    /// ```text
    /// den = |cw + d|² + |c|² h²,   w' = ((aw+b)·conj(cw+d) + a·conj(c)·h²) / den,   h' = h / den.
    /// ```
    pub fn apply(&self, x: &HPoint) -> Result<HPoint> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch(self.dim.n(), x.dim().n()));
        }
        match *x {
            HPoint::Interior { horiz: w, height: h, .. } => {
                let cwd = self.c * w + self.d;
                let den = cwd.norm_sqr() + self.c.norm_sqr() * h * h;
                let wp = ((self.a * w + self.b) * cwd.conj() + self.a * self.c.conj() * h * h)
                    / den;
                HPoint::interior(self.dim, wp, h / den)
            }
            HPoint::Boundary { horiz: xi, .. } => {
                let den = self.c * xi + self.d;
                if den.norm_sqr() == 0.0 {
                    Ok(HPoint::infinity(self.dim))
                } else {
                    HPoint::boundary(self.dim, (self.a * xi + self.b) / den)
                }
            }
            HPoint::Infinity { .. } => {
                if self.c.norm_sqr() == 0.0 {
                    Ok(HPoint::infinity(self.dim))
                } else {
                    HPoint::boundary(self.dim, self.a / self.c)
                }
            }
        }
    }

    /// Classify the isometry using the sign-normalized trace.
    ///
    /// `tol` bounds `|t² − 4|` for the parabolic determination and must be
    /// positive; it is per-call because sweeps legitimately approach the
    /// parabolic locus and need to choose their own resolution.
    pub fn classify(&self, tol: f64) -> Result<IsometryClass> {
        if tol.is_nan() || tol <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "classification tolerance must be positive, got {tol}"
            )));
        }
        if self.is_identity(1e-12) {
            return Ok(IsometryClass::Identity);
        }
        let t = self.trace();
        let t2 = t * t;
        if (t2 - Complex64::new(4.0, 0.0)).norm() <= tol {
            return Ok(IsometryClass::Parabolic);
        }
        match self.dim {
            Dim::Two => {
                if t2.re > 4.0 {
                    Ok(IsometryClass::Loxodromic {
                        translation_length: lox_length(t),
                    })
                } else {
                    Ok(IsometryClass::Elliptic)
                }
            }
            Dim::Three => {
                if t.im.abs() <= tol && t.re.abs() < 2.0 {
                    Ok(IsometryClass::Elliptic)
                } else {
                    Ok(IsometryClass::Loxodromic {
                        translation_length: lox_length(t),
                    })
                }
            }
        }
    }

    /// Translation length τ ≥ 0: positive exactly for loxodromics, zero for
    /// the identity, parabolics and elliptics.
    pub fn translation_length(&self) -> f64 {
        match self.classify(CLASSIFY_TOL) {
            Ok(IsometryClass::Loxodromic { translation_length }) => translation_length,
            _ => 0.0,
        }
    }

    /// The invariant axis of a loxodromic map, oriented from the repelling
    /// to the attracting fixed point.
    pub fn axis(&self) -> Result<GeodesicLine> {
        match self.classify(CLASSIFY_TOL)? {
            IsometryClass::Loxodromic { .. } => {}
            _ => return Err(Error::NotLoxodromic),
        }
        let (p, q);
        if self.c.norm_sqr() == 0.0 {
            // Fixes ∞; the finite fixed point solves (d−a)z = b.
            let z0 = self.b / (self.d - self.a);
            let zpt = HPoint::boundary(self.dim, z0)?;
            let inf = HPoint::infinity(self.dim);
            // Multiplier at ∞ is a/d; |a| > |d| makes ∞ attracting.
            if self.a.norm() > self.d.norm() {
                p = zpt;
                q = inf;
            } else {
                p = inf;
                q = zpt;
            }
        } else {
            // Fixed points solve c z² + (d−a) z − b = 0, discriminant t² − 4.
            let (z1, z2) = match self.dim {
                Dim::Two => {
                    // Keep H² roots exactly real.
                    let t2 = self.trace().re * self.trace().re;
                    let s = (t2 - 4.0).sqrt();
                    let ad = (self.a - self.d).re;
                    let c2 = 2.0 * self.c.re;
                    (
                        Complex64::new((ad + s) / c2, 0.0),
                        Complex64::new((ad - s) / c2, 0.0),
                    )
                }
                Dim::Three => {
                    let t = self.trace();
                    let s = (t * t - Complex64::new(4.0, 0.0)).sqrt();
                    let ad = self.a - self.d;
                    let c2 = self.c * 2.0;
                    ((ad + s) / c2, (ad - s) / c2)
                }
            };
            // Attracting fixed point z has |g'(z)| < 1, i.e. |cz + d| > 1.
            let m1 = (self.c * z1 + self.d).norm();
            let attracting_first = m1 > 1.0;
            let (zr, za) = if attracting_first { (z2, z1) } else { (z1, z2) };
            p = HPoint::boundary(self.dim, zr)?;
            q = HPoint::boundary(self.dim, za)?;
        }
        GeodesicLine::new(p, q)
    }
}

/// Translation length of a loxodromic trace: 2·log of the larger eigenvalue
/// modulus (insensitive to the ±t ambiguity, real part forced ≥ 0).
fn lox_length(t: Complex64) -> f64 {
    let half = t / 2.0;
    let lambda = half + (half * half - Complex64::new(1.0, 0.0)).sqrt();
    let m = lambda.norm();
    let m = if m < 1.0 { 1.0 / m } else { m };
    2.0 * m.ln()
}

impl std::ops::Mul for MobiusMap {
    type Output = MobiusMap;
    fn mul(self, rhs: MobiusMap) -> MobiusMap {
        self.compose(&rhs)
    }
}

impl std::fmt::Display for MobiusMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            crate::util::format_complex(self.a),
            crate::util::format_complex(self.b),
            crate::util::format_complex(self.c),
            crate::util::format_complex(self.d),
        )
    }
}
