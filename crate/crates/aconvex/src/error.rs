//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by construction, validation and the geometric pipelines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero vector has no direction")]
    ZeroVector,

    #[error("vectors are opposite; the signed angle is undefined")]
    OppositeVectors,

    #[error("polyline is not simple ({0} crossing(s))")]
    NotSimple(usize),

    #[error("closed boundary is not counter-clockwise")]
    NotCcw,

    #[error("polygon area is degenerate")]
    DegenerateArea,

    #[error("invalid polyline: {0}")]
    InvalidPolyline(String),

    #[error("chain start directions are not aligned (angle {0:.6} rad)")]
    StartsNotAligned(f64),

    #[error("chain rotations differ ({0:.6} vs {1:.6} rad)")]
    RotationsDiffer(f64, f64),

    #[error("angular convexity precondition violated (aco {0:.6} <= -pi)")]
    AcoPreconditionViolated(f64),

    #[error("merged chain tags do not match the given source chains")]
    TagMismatch,

    #[error("could not reach general position after {0} attempts")]
    GeneralPositionFailed(u32),

    #[error("polyline is not in general position")]
    NotGeneralPosition,

    #[error("loop rotation {0:.6} <= -pi; the removal lemma does not apply")]
    LoopRotationTooNegative(f64),

    #[error("point lies inside the polygon (or within the boundary band)")]
    PointInsidePolygon,

    #[error("witness search exhausted after {0} refinement rounds")]
    SearchExhausted(u32),

    #[error("polygon is not convex (aco {0:.6})")]
    NotConvex(f64),

    #[error("internal consistency failure: {0}")]
    InternalInconsistency(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
