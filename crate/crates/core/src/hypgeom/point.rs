//! Points of the upper half-space models, boundary points included.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Model dimension tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Dim {
    /// The hyperbolic plane H² (upper half-plane).
    Two,
    /// Hyperbolic 3-space H³ (upper half-space).
    Three,
}

impl Dim {
    /// The dimension as an integer (2 or 3).
    pub fn n(self) -> usize {
        match self {
            Dim::Two => 2,
            Dim::Three => 3,
        }
    }

    /// Build from an integer.
    pub fn from_n(n: usize) -> Result<Dim> {
        match n {
            2 => Ok(Dim::Two),
            3 => Ok(Dim::Three),
            other => Err(Error::InvalidParameter(format!(
                "dimension must be 2 or 3, got {other}"
            ))),
        }
    }
}

impl std::fmt::Display for Dim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.n())
    }
}

/// A point of H² or H³: an interior point `(horiz, height)`, a finite
/// boundary point `horiz`, or the boundary point at infinity.
///
/// The horizontal coordinate is stored as a complex number; for `Dim::Two`
/// its imaginary part is zero by construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum HPoint {
    /// Interior point with positive height.
    Interior {
        /// Model dimension.
        dim: Dim,
        /// Horizontal coordinate (real for H²).
        horiz: Complex64,
        /// Height above the boundary plane; strictly positive.
        height: f64,
    },
    /// Finite boundary point.
    Boundary {
        /// Model dimension.
        dim: Dim,
        /// Horizontal coordinate (real for H²).
        horiz: Complex64,
    },
    /// The boundary point at infinity.
    Infinity {
        /// Model dimension.
        dim: Dim,
    },
}

impl HPoint {
    /// Interior point constructor with invariant checks.
    pub fn interior(dim: Dim, horiz: Complex64, height: f64) -> Result<HPoint> {
        if !height.is_finite() || height <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "interior height must be positive and finite, got {height}"
            )));
        }
        check_horiz(dim, horiz)?;
        Ok(HPoint::Interior { dim, horiz, height })
    }

    /// Finite boundary point constructor with invariant checks.
    pub fn boundary(dim: Dim, horiz: Complex64) -> Result<HPoint> {
        check_horiz(dim, horiz)?;
        Ok(HPoint::Boundary { dim, horiz })
    }

    /// The boundary point at infinity.
    pub fn infinity(dim: Dim) -> HPoint {
        HPoint::Infinity { dim }
    }

    /// Interior point of H² at `(x, h)`.
    pub fn h2(x: f64, h: f64) -> HPoint {
        HPoint::interior(Dim::Two, Complex64::new(x, 0.0), h).expect("valid H2 point")
    }

    /// Interior point of H³ at `(z, h)`.
    pub fn h3(z: Complex64, h: f64) -> HPoint {
        HPoint::interior(Dim::Three, z, h).expect("valid H3 point")
    }

    /// Finite boundary point of H².
    pub fn b2(x: f64) -> HPoint {
        HPoint::boundary(Dim::Two, Complex64::new(x, 0.0)).expect("valid H2 boundary point")
    }

    /// Finite boundary point of H³.
    pub fn b3(z: Complex64) -> HPoint {
        HPoint::boundary(Dim::Three, z).expect("valid H3 boundary point")
    }

    /// Model dimension of the point.
    pub fn dim(&self) -> Dim {
        match *self {
            HPoint::Interior { dim, .. } | HPoint::Boundary { dim, .. } | HPoint::Infinity { dim } => {
                dim
            }
        }
    }

    /// True for interior points.
    pub fn is_interior(&self) -> bool {
        matches!(self, HPoint::Interior { .. })
    }

    /// True for boundary points, the point at infinity included.
    pub fn is_boundary(&self) -> bool {
        !self.is_interior()
    }

    /// True for the boundary point at infinity.
    pub fn is_infinity(&self) -> bool {
        matches!(self, HPoint::Infinity { .. })
    }

    /// Interior coordinates `(horiz, height)`, or an error.
    pub fn as_interior(&self) -> Result<(Complex64, f64)> {
        match *self {
            HPoint::Interior { horiz, height, .. } => Ok((horiz, height)),
            _ => Err(Error::InvalidParameter(
                "expected an interior point".into(),
            )),
        }
    }

    /// Finite-boundary coordinate, or an error (the point at infinity has
    /// none).
    pub fn as_finite_boundary(&self) -> Result<Complex64> {
        match *self {
            HPoint::Boundary { horiz, .. } => Ok(horiz),
            _ => Err(Error::InvalidParameter(
                "expected a finite boundary point".into(),
            )),
        }
    }

    /// Exact equality of boundary points (used for "distinct endpoints" and
    /// "shared endpoint" decisions). Interior points always compare false.
    pub fn same_boundary_point(&self, other: &HPoint) -> bool {
        match (self, other) {
            (HPoint::Infinity { dim: d1 }, HPoint::Infinity { dim: d2 }) => d1 == d2,
            (
                HPoint::Boundary { dim: d1, horiz: h1 },
                HPoint::Boundary { dim: d2, horiz: h2 },
            ) => d1 == d2 && h1 == h2,
            _ => false,
        }
    }
}

fn check_horiz(dim: Dim, horiz: Complex64) -> Result<()> {
    if !horiz.re.is_finite() || !horiz.im.is_finite() {
        return Err(Error::InvalidParameter(
            "horizontal coordinate must be finite".into(),
        ));
    }
    if dim == Dim::Two && horiz.im != 0.0 {
        return Err(Error::InvalidParameter(format!(
            "H2 points have real horizontal coordinates, got imaginary part {}",
            horiz.im
        )));
    }
    Ok(())
}

/// Check two points share a dimension, returning it.
pub(crate) fn same_dim(x: &HPoint, y: &HPoint) -> Result<Dim> {
    let (dx, dy) = (x.dim(), y.dim());
    if dx != dy {
        return Err(Error::DimensionMismatch(dx.n(), dy.n()));
    }
    Ok(dx)
}

/// Riemannian distance between two interior points.
///
/// Uses the numerically stable exact form `d = 2·asinh(√q)` with
/// `q = (|Δhoriz|² + (h_x − h_y)²) / (4 h_x h_y)`, equivalent to
/// `cosh d = 1 + (|Δhoriz|² + (h_x − h_y)²) / (2 h_x h_y)` but accurate for
/// nearby points.
pub fn dist(x: &HPoint, y: &HPoint) -> Result<f64> {
    same_dim(x, y)?;
    let (wx, hx) = x.as_interior()?;
    let (wy, hy) = y.as_interior()?;
    let q = ((wx - wy).norm_sqr() + (hx - hy) * (hx - hy)) / (4.0 * hx * hy);
    Ok(2.0 * q.sqrt().asinh())
}
