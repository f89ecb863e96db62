//! Computational toolkit for discrete isometry groups of hyperbolic 2- and
//! 3-space (Kleinian and Schottky groups), built around the upper half-space
//! models.
//!
//! The crate provides, bottom-up:
//!
//! * [`hypgeom`] — points, geodesics, Busemann cocycles, Gromov products and
//!   convex bodies (balls, horoballs, tubes) with pairwise signed distances;
//! * [`moebius`] — the isometry algebra: determinant-one 2×2 matrices acting
//!   by Möbius transformations and their Poincaré extension, classification
//!   and translation lengths;
//! * [`group`] — reduced words over a symmetric generating set, certified
//!   orbit enumeration within a displacement cutoff, conjugacy classes and
//!   double cosets;
//! * [`exponent`] — two independent critical-exponent estimators and the
//!   bottom-of-spectrum dictionary;
//! * [`measures`] — empirical Patterson-Sullivan boundary measures, conformal
//!   mass transport between basepoints and counting-constant predictions;
//! * [`counting`] — geodesic loop, primitive closed geodesic and
//!   orthogeodesic length series with exponential-law fits;
//! * [`sweep`] — a driver that evaluates every estimator along a convergent
//!   family of groups and reports convergence gaps;
//! * [`io`] — TOML config ingestion (groups, bodies, families) and
//!   deterministic CSV/JSON report writers;
//! * [`selftest`] — the built-in example suite used by the CLI.
//!
//! All core pipelines are deterministic: given the same inputs they produce
//! byte-identical reports at any worker count, with or without the `parallel`
//! feature.

pub mod error;
pub mod util;

pub mod hypgeom;
pub mod moebius;

pub mod group;

pub mod counting;
pub mod exponent;
pub mod measures;
pub mod sweep;

pub mod io;
pub mod selftest;

pub use error::{Error, Result};
