//! Geometry of the upper half-space models of H² and H³.
//!
//! H² is the upper half-plane `{(x, h) : h > 0}` with boundary `ℝ ∪ {∞}`;
//! H³ is the upper half-space `{(z, h) : z ∈ ℂ, h > 0}` with boundary
//! `ℂ ∪ {∞}`. Both share one point type whose horizontal coordinate is a
//! complex number (constrained to be real in H²), so every formula is written
//! once.

mod body;
mod geodesic;
mod point;

pub use body::{body_distance, closest_point_on_body, ConvexBody};
pub use geodesic::{
    busemann_cocycle, dist_point_to_line, foot_on_line, geodesic_through, gromov_product,
    point_along, ray_endpoint, GeodesicLine, OrientedVector,
};
pub use point::{dist, Dim, HPoint};
