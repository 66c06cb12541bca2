//! Angular convexity `aco`, sorted-sum convolution, loop elimination and
//! hole-free Minkowski sums of simple polygons, with angular-region
//! separation witnesses for exterior points.
//!
//! The measure `aco K <= 0` is the minimum rotation over boundary arcs;
//! `aco K = 0` exactly when `K` is convex. When both summands satisfy
//! `aco > -pi` the Minkowski sum is again a simple polygon and the measure
//! does not drop below the smaller of the two inputs; every exterior point
//! is then separated from the polygon by an angular region of measure
//! `pi + aco K`.

pub mod error;
pub mod geom;
pub mod io;
pub mod minkowski;
pub mod separation;
pub mod simplify;
pub mod sorted_sum;
pub mod svg;
pub mod testgen;

pub use error::{Error, Result};
pub use geom::{
    aco_open, aco_open_bruteforce, aco_polygon, aco_polygon_bruteforce, orient_ccw, signed_angle,
    skew, AcoReport, Polygon, Polyline, Shift, Vec2,
};
