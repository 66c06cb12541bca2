//! Plane primitives: vectors, shifts, polylines, polygons and angular convexity.

mod aco;
mod polygon;
mod polyline;
mod shift;
mod vec2;

pub use aco::{aco_open, aco_open_bruteforce, aco_polygon, aco_polygon_bruteforce, AcoReport};
pub use polygon::{convex_hull, orient_ccw, point_segment_distance, Polygon};
pub use polyline::{segment_intersection, Crossing, Polyline, SegIntersection};
pub use shift::Shift;
pub use vec2::{signed_angle, skew, Vec2};

/// Angular tolerance for opposite/parallel classification, radians.
pub const EPS_ANGLE: f64 = 1e-9;

/// Unit-direction tolerance.
pub const EPS_UNIT: f64 = 1e-12;

/// Relative factor for coincidence tests; multiply by the bounding-box diameter.
pub const EPS_GEOM_REL: f64 = 1e-9;

/// Coincidence tolerance for a figure of the given bounding-box diameter.
pub fn eps_geom(diameter: f64) -> f64 {
    // Guard against degenerate diameters so tolerances never collapse to zero.
    EPS_GEOM_REL * diameter.max(1e-6)
}
