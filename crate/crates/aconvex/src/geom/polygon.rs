use crate::error::{Error, Result};
use crate::geom::{eps_geom, Polyline, Vec2};

/// A simple polygon: a closed simple boundary oriented counter-clockwise
/// (rotation 2*pi, signed area positive).
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    boundary: Polyline,
}

impl Polygon {
    /// Build from a raw closed vertex list, normalizing the orientation.
    /// Rejects self-intersecting or degenerate input.
    pub fn from_vertices(points: &[Vec2]) -> Result<Polygon> {
        orient_ccw(points)
    }

    /// Wrap an existing boundary chain; it must already be closed, simple
    /// and counter-clockwise.
    pub fn from_boundary(boundary: Polyline) -> Result<Polygon> {
        if !boundary.is_closed() {
            return Err(Error::InvalidPolyline("boundary is not closed".into()));
        }
        let crossings = boundary.self_intersections();
        if !crossings.is_empty() {
            return Err(Error::NotSimple(crossings.len()));
        }
        if signed_area_of(&boundary.vertices()) <= 0.0 {
            return Err(Error::NotCcw);
        }
        Ok(Polygon { boundary })
    }

    pub fn boundary(&self) -> &Polyline {
        &self.boundary
    }

    /// Boundary vertices without the closing repetition.
    pub fn vertices(&self) -> Vec<Vec2> {
        let mut v = self.boundary.vertices();
        v.pop();
        v
    }

    pub fn num_vertices(&self) -> usize {
        self.boundary.shifts().len()
    }

    pub fn signed_area(&self) -> f64 {
        signed_area_of(&self.boundary.vertices())
    }

    pub fn bounding_box(&self) -> (Vec2, Vec2) {
        self.boundary.bounding_box()
    }

    pub fn diameter(&self) -> f64 {
        self.boundary.diameter()
    }

    pub fn translated(&self, by: Vec2) -> Polygon {
        Polygon {
            boundary: self.boundary.translated(by),
        }
    }

    /// Reflection through the origin, re-oriented counter-clockwise.
    pub fn reflected(&self) -> Polygon {
        let pts: Vec<Vec2> = self.vertices().iter().map(|&p| -p).collect();
        Polygon::from_vertices(&pts).expect("reflection preserves simplicity")
    }

    /// Merge runs of consecutive collinear edges into single edges.
    pub fn merge_collinear(&self) -> Polygon {
        let verts = self.vertices();
        let n = verts.len();
        let turns = self.boundary.turn_angles();
        // Vertex i+1 sits between shift i and shift i+1; drop it if the turn
        // there is (numerically) zero.
        let kept: Vec<Vec2> = (0..n)
            .filter(|&i| {
                let turn = turns[(i + n - 1) % n];
                turn.abs() > 1e-12
            })
            .map(|i| verts[i])
            .collect();
        if kept.len() >= 3 {
            if let Ok(p) = Polygon::from_vertices(&kept) {
                return p;
            }
        }
        self.clone()
    }

    /// Even-odd point containment; points within `eps` of the boundary count
    /// as contained (the polygon is a closed region).
    pub fn contains_point(&self, p: Vec2) -> bool {
        if self.distance_to_boundary(p) <= eps_geom(self.diameter()) {
            return true;
        }
        self.contains_point_strict(p)
    }

    /// Even-odd ray crossing test, no boundary band.
    pub fn contains_point_strict(&self, p: Vec2) -> bool {
        let verts = self.vertices();
        let n = verts.len();
        let mut inside = false;
        for i in 0..n {
            let a = verts[i];
            let b = verts[(i + 1) % n];
            if (a.y > p.y) != (b.y > p.y) {
                let x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
                if p.x < x_cross {
                    inside = !inside;
                }
            }
        }
        inside
    }

    pub fn distance_to_boundary(&self, p: Vec2) -> f64 {
        let verts = self.vertices();
        let n = verts.len();
        let mut best = f64::INFINITY;
        for i in 0..n {
            let d = point_segment_distance(p, verts[i], verts[(i + 1) % n]);
            best = best.min(d);
        }
        best
    }

    /// Consistency check used by pipeline validation.
    pub fn validate(&self) -> Result<()> {
        let crossings = self.boundary.self_intersections();
        if !crossings.is_empty() {
            return Err(Error::NotSimple(crossings.len()));
        }
        if self.signed_area() <= 0.0 {
            return Err(Error::NotCcw);
        }
        let rot = self.boundary.rot();
        if (rot - std::f64::consts::TAU).abs() > 1e-9 {
            return Err(Error::InternalInconsistency(format!(
                "boundary rotation {rot} is not 2*pi"
            )));
        }
        Ok(())
    }
}

/// Distance from a point to a segment.
pub fn point_segment_distance(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let d = b - a;
    let len_sq = d.norm_sq();
    if len_sq == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(d) / len_sq).clamp(0.0, 1.0);
    p.dist(a + d * t)
}

/// Normalize a raw closed vertex list into a counter-clockwise polygon.
///
/// Accepts the list with or without the closing repetition of the first
/// vertex. Reverses clockwise input; rejects self-intersecting or
/// degenerate-area input.
pub fn orient_ccw(points: &[Vec2]) -> Result<Polygon> {
    let mut pts: Vec<Vec2> = points.to_vec();
    if pts.len() >= 2 {
        let diam = bbox_diameter(&pts);
        if pts[0].dist(*pts.last().unwrap()) <= eps_geom(diam) {
            pts.pop();
        }
    }
    if pts.len() < 3 {
        return Err(Error::InvalidPolyline(
            "a polygon needs at least 3 vertices".into(),
        ));
    }
    let raw = Polyline::closed_from_vertices(&pts)?;
    let crossings = raw.self_intersections();
    if !crossings.is_empty() {
        return Err(Error::NotSimple(crossings.len()));
    }
    let area = signed_area_closed(&pts);
    let diam = bbox_diameter(&pts);
    if area.abs() <= eps_geom(diam) * diam {
        return Err(Error::DegenerateArea);
    }
    let boundary = if area < 0.0 {
        pts.reverse();
        Polyline::closed_from_vertices(&pts)?
    } else {
        raw
    };
    Ok(Polygon { boundary })
}

fn bbox_diameter(pts: &[Vec2]) -> f64 {
    let mut lo = pts[0];
    let mut hi = pts[0];
    for &p in pts {
        lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    (hi - lo).norm()
}

fn signed_area_closed(pts: &[Vec2]) -> f64 {
    let n = pts.len();
    let mut acc = 0.0;
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        acc += a.x * b.y - b.x * a.y;
    }
    acc * 0.5
}

fn signed_area_of(verts_with_close: &[Vec2]) -> f64 {
    if verts_with_close.len() < 2 {
        return 0.0;
    }
    signed_area_closed(&verts_with_close[..verts_with_close.len() - 1])
}

/// Convex hull of a point set (Andrew's monotone chain), counter-clockwise,
/// collinear points dropped.
pub fn convex_hull(points: &[Vec2]) -> Vec<Vec2> {
    let mut pts: Vec<Vec2> = points.to_vec();
    pts.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
    pts.dedup_by(|a, b| a.dist(*b) == 0.0);
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: Vec2, a: Vec2, b: Vec2| (a - o).x * (b - o).y - (a - o).y * (b - o).x;
    let mut lower: Vec<Vec2> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Vec2> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}
