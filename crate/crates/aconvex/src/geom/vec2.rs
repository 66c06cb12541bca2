use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::geom::EPS_ANGLE;

/// A plane vector (or point) with finite real coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Vec2 {
        debug_assert!(x.is_finite() && y.is_finite(), "non-finite coordinate");
        Vec2 { x, y }
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Unit vector with the same direction.
    pub fn normalized(self) -> Result<Vec2> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroVector);
        }
        Ok(Vec2::new(self.x / n, self.y / n))
    }

    /// Rotate counter-clockwise by `angle` radians.
    pub fn rotated(self, angle: f64) -> Vec2 {
        let (s, c) = angle.sin_cos();
        Vec2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    /// Perpendicular vector, a quarter turn counter-clockwise.
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    /// Polar angle in [0, 2*pi).
    pub fn polar_angle(self) -> f64 {
        let a = self.y.atan2(self.x);
        if a < 0.0 {
            a + std::f64::consts::TAU
        } else {
            a
        }
    }

    pub fn dist(self, other: Vec2) -> f64 {
        (self - other).norm()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x * rhs, self.y * rhs)
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Skew product `[v, w] = v.x * w.y - v.y * w.x`.
///
/// Positive when `w` lies counter-clockwise of `v`.
pub fn skew(v: Vec2, w: Vec2) -> f64 {
    v.x * w.y - v.y * w.x
}

/// Signed angle between two non-opposite, nonzero vectors, in (-pi, pi).
///
/// The magnitude is the unsigned angle; the sign is the sign of the skew
/// product. Same-direction parallel vectors give 0. Opposite vectors are an
/// error: they signal a non-reverse violation upstream.
pub fn signed_angle(v: Vec2, w: Vec2) -> Result<f64> {
    let nv = v.norm();
    let nw = w.norm();
    if nv == 0.0 || nw == 0.0 {
        return Err(Error::ZeroVector);
    }
    let s = skew(v, w);
    let d = v.dot(w);
    if d < 0.0 && s.abs() <= EPS_ANGLE * nv * nw {
        return Err(Error::OppositeVectors);
    }
    // atan2 of (skew, dot) gives the angle with the right sign in one shot,
    // with no branch trouble near +/-pi.
    Ok(s.atan2(d))
}

/// True when `v` and `w` point in opposite directions within tolerance.
pub fn are_opposite(v: Vec2, w: Vec2) -> bool {
    let nv = v.norm();
    let nw = w.norm();
    if nv == 0.0 || nw == 0.0 {
        return false;
    }
    v.dot(w) < 0.0 && skew(v, w).abs() <= EPS_ANGLE * nv * nw
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn skew_direct_formula() {
        assert_eq!(skew(Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)), 1.0);
        assert_eq!(skew(Vec2::new(2.0, 3.0), Vec2::new(4.0, 5.0)), -2.0);
        assert_eq!(skew(Vec2::new(1.0, 2.0), Vec2::new(2.0, 4.0)), 0.0);
    }

    #[test]
    fn signed_angle_quarter_turn() {
        let a = signed_angle(Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)).unwrap();
        assert!((a - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn signed_angle_same_direction() {
        let a = signed_angle(Vec2::new(3.0, 0.0), Vec2::new(5.0, 0.0)).unwrap();
        assert_eq!(a, 0.0);
    }

    #[test]
    fn signed_angle_opposite_is_error() {
        let e = signed_angle(Vec2::new(1.0, 0.0), Vec2::new(-1.0, 0.0));
        assert_eq!(e, Err(Error::OppositeVectors));
    }

    #[test]
    fn signed_angle_zero_vector_is_error() {
        assert_eq!(
            signed_angle(Vec2::ZERO, Vec2::new(1.0, 0.0)),
            Err(Error::ZeroVector)
        );
    }

    #[test]
    fn signed_angle_near_pi_keeps_sign_of_skew() {
        let v = Vec2::new(1.0, 0.0);
        let w = Vec2::new(-1.0, 1e-6);
        let a = signed_angle(v, w).unwrap();
        assert!(a > 0.0 && a < PI);
        let a2 = signed_angle(v, Vec2::new(-1.0, -1e-6)).unwrap();
        assert!(a2 < 0.0 && a2 > -PI);
    }
}
