use crate::error::{Error, Result};
use crate::geom::{Vec2, EPS_UNIT};

/// An edge vector split into a unit direction and a nonnegative length.
///
/// A zero length is permitted only for *virtual* shifts: edges of length zero
/// that carry a definite direction. Virtual shifts participate in rotation
/// but contribute nothing to the geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Shift {
    direction: Vec2,
    length: f64,
    virtual_edge: bool,
}

impl Shift {
    /// Shift with the given direction and positive length.
    pub fn new(direction: Vec2, length: f64) -> Result<Shift> {
        if !direction.is_finite() || !length.is_finite() {
            return Err(Error::InvalidPolyline("non-finite shift".into()));
        }
        if (direction.norm() - 1.0).abs() > EPS_UNIT {
            return Err(Error::InvalidPolyline(format!(
                "shift direction is not unit (norm {})",
                direction.norm()
            )));
        }
        if length <= 0.0 {
            return Err(Error::InvalidPolyline(
                "non-virtual shift must have positive length".into(),
            ));
        }
        Ok(Shift {
            direction,
            length,
            virtual_edge: false,
        })
    }

    /// Shift from a displacement vector.
    pub fn from_vector(v: Vec2) -> Result<Shift> {
        let length = v.norm();
        if length == 0.0 {
            return Err(Error::InvalidPolyline(
                "zero displacement has no direction".into(),
            ));
        }
        Shift::new(v.normalized()?, length)
    }

    /// Zero-length virtual shift with the given direction.
    pub fn virtual_edge(direction: Vec2) -> Result<Shift> {
        let direction = direction.normalized()?;
        Ok(Shift {
            direction,
            length: 0.0,
            virtual_edge: true,
        })
    }

    pub fn direction(&self) -> Vec2 {
        self.direction
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn is_virtual(&self) -> bool {
        self.virtual_edge
    }

    /// The displacement vector `direction * length`.
    pub fn vector(&self) -> Vec2 {
        self.direction * self.length
    }
}
