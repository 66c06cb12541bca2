use crate::error::{Error, Result};
use crate::geom::vec2::are_opposite;
use crate::geom::{eps_geom, signed_angle, skew, Shift, Vec2};

/// An open or closed chain of shifts anchored at a start point.
///
/// Construction validates the non-reverse property (no consecutive pair of
/// opposite directions, virtual shifts included) and, for closed chains, that
/// the shift vectors sum to zero within tolerance. After construction all
/// turn-angle arithmetic is infallible.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    start: Vec2,
    shifts: Vec<Shift>,
    closed: bool,
}

/// A self-intersection of a chain, in arc-length-normalized parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing {
    /// Earlier chain parameter, in [0, 1].
    pub t1: f64,
    /// Later chain parameter, `t1 < t2`.
    pub t2: f64,
    /// The common point.
    pub at: Vec2,
}

impl Polyline {
    pub fn open(start: Vec2, shifts: Vec<Shift>) -> Result<Polyline> {
        Polyline::build(start, shifts, false)
    }

    pub fn closed(start: Vec2, shifts: Vec<Shift>) -> Result<Polyline> {
        Polyline::build(start, shifts, true)
    }

    fn build(start: Vec2, shifts: Vec<Shift>, closed: bool) -> Result<Polyline> {
        if !start.is_finite() {
            return Err(Error::InvalidPolyline("non-finite start".into()));
        }
        if shifts.is_empty() {
            return Err(Error::InvalidPolyline("empty shift sequence".into()));
        }
        let n = shifts.len();
        let pairs = if closed { n } else { n - 1 };
        for i in 0..pairs {
            let a = shifts[i].direction();
            let b = shifts[(i + 1) % n].direction();
            if are_opposite(a, b) {
                return Err(Error::OppositeVectors);
            }
        }
        let chain = Polyline {
            start,
            shifts,
            closed,
        };
        if closed {
            let sum = chain
                .shifts
                .iter()
                .fold(Vec2::ZERO, |acc, s| acc + s.vector());
            if sum.norm() > eps_geom(chain.diameter()) {
                return Err(Error::InvalidPolyline(format!(
                    "closed chain does not close up (gap {})",
                    sum.norm()
                )));
            }
        }
        Ok(chain)
    }

    /// Open chain through the given vertices.
    pub fn from_vertices(points: &[Vec2]) -> Result<Polyline> {
        Polyline::from_vertex_list(points, false)
    }

    /// Closed chain through the given vertices (the last edge returns to the
    /// first point; do not repeat it).
    pub fn closed_from_vertices(points: &[Vec2]) -> Result<Polyline> {
        Polyline::from_vertex_list(points, true)
    }

    fn from_vertex_list(points: &[Vec2], closed: bool) -> Result<Polyline> {
        let need = if closed { 3 } else { 2 };
        if points.len() < need {
            return Err(Error::InvalidPolyline(format!(
                "need at least {need} vertices"
            )));
        }
        let mut shifts = Vec::with_capacity(points.len());
        let last = points.len() - 1;
        for i in 0..last {
            shifts.push(shift_between(points[i], points[i + 1])?);
        }
        if closed {
            shifts.push(shift_between(points[last], points[0])?);
        }
        Polyline::build(points[0], shifts, closed)
    }

    /// Open chain from a first direction plus turn angles and edge lengths.
    pub fn from_turns(
        start: Vec2,
        first_dir: Vec2,
        turns: &[f64],
        lengths: &[f64],
    ) -> Result<Polyline> {
        if lengths.len() != turns.len() + 1 {
            return Err(Error::InvalidPolyline(
                "need one more length than turns".into(),
            ));
        }
        let mut dir = first_dir.normalized()?;
        let mut shifts = Vec::with_capacity(lengths.len());
        shifts.push(Shift::new(dir, lengths[0])?);
        for (turn, len) in turns.iter().zip(&lengths[1..]) {
            dir = dir.rotated(*turn).normalized()?;
            shifts.push(Shift::new(dir, *len)?);
        }
        Polyline::build(start, shifts, false)
    }

    pub fn start(&self) -> Vec2 {
        self.start
    }

    pub fn shifts(&self) -> &[Shift] {
        &self.shifts
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// All derived vertices, by prefix sums: `shifts.len() + 1` points. For a
    /// closed chain the final point returns to the start within tolerance.
    pub fn vertices(&self) -> Vec<Vec2> {
        let mut out = Vec::with_capacity(self.shifts.len() + 1);
        let mut p = self.start;
        out.push(p);
        for s in &self.shifts {
            p = p + s.vector();
            out.push(p);
        }
        out
    }

    pub fn end(&self) -> Vec2 {
        self.shifts
            .iter()
            .fold(self.start, |acc, s| acc + s.vector())
    }

    pub fn total_length(&self) -> f64 {
        self.shifts.iter().map(|s| s.length()).sum()
    }

    pub fn bounding_box(&self) -> (Vec2, Vec2) {
        let mut lo = self.start;
        let mut hi = self.start;
        for v in self.vertices() {
            lo = Vec2::new(lo.x.min(v.x), lo.y.min(v.y));
            hi = Vec2::new(hi.x.max(v.x), hi.y.max(v.y));
        }
        (lo, hi)
    }

    pub fn diameter(&self) -> f64 {
        let (lo, hi) = self.bounding_box();
        (hi - lo).norm()
    }

    /// Signed turn angle at each interior junction; a closed chain also turns
    /// at the wrap-around junction, so it has as many turns as shifts.
    pub fn turn_angles(&self) -> Vec<f64> {
        let n = self.shifts.len();
        let pairs = if self.closed { n } else { n.saturating_sub(1) };
        (0..pairs)
            .map(|i| {
                signed_angle(
                    self.shifts[i].direction(),
                    self.shifts[(i + 1) % n].direction(),
                )
                .expect("non-reverse invariant")
            })
            .collect()
    }

    /// Rotation: the sum of the signed turn angles. A two-vertex chain has
    /// rotation 0; a simple counter-clockwise closed boundary has 2*pi.
    pub fn rot(&self) -> f64 {
        self.turn_angles().iter().sum()
    }

    /// Point at arc-length-normalized parameter `t` in [0, 1].
    pub fn eval(&self, t: f64) -> Vec2 {
        let total = self.total_length();
        let mut remaining = t.clamp(0.0, 1.0) * total;
        let mut p = self.start;
        for s in &self.shifts {
            if remaining <= s.length() {
                return p + s.direction() * remaining.max(0.0);
            }
            remaining -= s.length();
            p = p + s.vector();
        }
        p
    }

    pub fn translated(&self, by: Vec2) -> Polyline {
        Polyline {
            start: self.start + by,
            shifts: self.shifts.clone(),
            closed: self.closed,
        }
    }

    /// Same chain with all zero-length shifts removed.
    pub fn without_virtual_shifts(&self) -> Result<Polyline> {
        let shifts: Vec<Shift> = self
            .shifts
            .iter()
            .copied()
            .filter(|s| !s.is_virtual())
            .collect();
        Polyline::build(self.start, shifts, self.closed)
    }

    /// Geometric edges with positive length, paired with their shift index.
    pub fn real_edges(&self) -> Vec<(usize, Vec2, Vec2)> {
        let verts = self.vertices();
        self.shifts
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_virtual())
            .map(|(i, _)| (i, verts[i], verts[i + 1]))
            .collect()
    }

    /// All self-intersections, ordered by (t1, t2) in arc-length parameters.
    ///
    /// Consecutive edges are allowed to meet at their shared vertex only;
    /// every other contact between edges is reported.
    pub fn self_intersections(&self) -> Vec<Crossing> {
        let eps = eps_geom(self.diameter());
        let edges = self.real_edges();
        let m = edges.len();
        // Arc-length prefix per shift index, for parameter normalization.
        let total = self.total_length().max(f64::MIN_POSITIVE);
        let mut prefix = Vec::with_capacity(self.shifts.len() + 1);
        let mut acc = 0.0;
        prefix.push(0.0);
        for s in &self.shifts {
            acc += s.length();
            prefix.push(acc);
        }
        let param = |edge: usize, t_local: f64| -> f64 {
            (prefix[edge] + t_local * self.shifts[edge].length()) / total
        };

        let mut out = Vec::new();
        for a in 0..m {
            for b in (a + 1)..m {
                let adjacent = b == a + 1 || (self.closed && a == 0 && b == m - 1);
                let (ia, a0, a1) = edges[a];
                let (ib, b0, b1) = edges[b];
                match segment_intersection(a0, a1, b0, b1, eps) {
                    SegIntersection::None => {}
                    SegIntersection::Point { t1, t2, at } => {
                        if adjacent
                            && shares_only_common_vertex(
                                a,
                                b,
                                m,
                                self.closed,
                                t1,
                                t2,
                                eps,
                                a1.dist(a0),
                                b1.dist(b0),
                            )
                        {
                            continue;
                        }
                        let (p1, p2) = (param(ia, t1), param(ib, t2));
                        let (p1, p2) = if p1 <= p2 { (p1, p2) } else { (p2, p1) };
                        out.push(Crossing { t1: p1, t2: p2, at });
                    }
                    SegIntersection::Overlap { mid, .. } => {
                        let (p1, p2) = (param(ia, 0.5), param(ib, 0.5));
                        let (p1, p2) = if p1 <= p2 { (p1, p2) } else { (p2, p1) };
                        out.push(Crossing {
                            t1: p1,
                            t2: p2,
                            at: mid,
                        });
                    }
                }
            }
        }
        out.sort_by(|x, y| (x.t1, x.t2).partial_cmp(&(y.t1, y.t2)).unwrap());
        out
    }

    /// True when the chain has no self-intersections. Consecutive edges may
    /// meet in their shared vertex only.
    pub fn is_simple(&self) -> bool {
        self.self_intersections().is_empty()
    }
}

fn shift_between(a: Vec2, b: Vec2) -> Result<Shift> {
    let d = b - a;
    if d.norm() == 0.0 {
        return Err(Error::InvalidPolyline(format!(
            "consecutive vertices coincide at {a}"
        )));
    }
    Shift::from_vector(d)
}

#[allow(clippy::too_many_arguments)]
fn shares_only_common_vertex(
    a: usize,
    b: usize,
    m: usize,
    closed: bool,
    t1: f64,
    t2: f64,
    eps: f64,
    len_a: f64,
    len_b: f64,
) -> bool {
    // For the pair (a, a+1) the shared vertex is (end of a, start of a+1);
    // for the closed wrap (0, m-1) it is (start of 0, end of m-1).
    let ea = eps / len_a.max(f64::MIN_POSITIVE);
    let eb = eps / len_b.max(f64::MIN_POSITIVE);
    if b == a + 1 {
        (t1 - 1.0).abs() <= ea && t2.abs() <= eb
    } else {
        debug_assert!(closed && a == 0 && b == m - 1);
        t1.abs() <= ea && (t2 - 1.0).abs() <= eb
    }
}

/// Intersection of two segments within an absolute coordinate tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SegIntersection {
    None,
    /// A single common point; `t1`, `t2` are parameters along each segment.
    Point {
        t1: f64,
        t2: f64,
        at: Vec2,
    },
    /// Collinear overlap of positive length; `mid` is the overlap midpoint.
    Overlap {
        t1: (f64, f64),
        t2: (f64, f64),
        mid: Vec2,
    },
}

pub fn segment_intersection(a0: Vec2, a1: Vec2, b0: Vec2, b1: Vec2, eps: f64) -> SegIntersection {
    let d1 = a1 - a0;
    let d2 = b1 - b0;
    let la = d1.norm();
    let lb = d2.norm();
    if la == 0.0 || lb == 0.0 {
        return SegIntersection::None;
    }
    let denom = skew(d1, d2);
    if denom.abs() <= 1e-12 * la * lb {
        // Parallel. Collinear only if b0 sits on the support line of a.
        if skew(b0 - a0, d1).abs() > eps * la {
            return SegIntersection::None;
        }
        let inv = 1.0 / (la * la);
        let s0 = (b0 - a0).dot(d1) * inv;
        let s1 = (b1 - a0).dot(d1) * inv;
        let (lo_b, hi_b) = if s0 <= s1 { (s0, s1) } else { (s1, s0) };
        let lo = lo_b.max(0.0);
        let hi = hi_b.min(1.0);
        let ep = eps / la;
        if hi < lo - ep {
            return SegIntersection::None;
        }
        if hi - lo <= ep {
            // Endpoint touch.
            let t1 = ((lo + hi) * 0.5).clamp(0.0, 1.0);
            let at = a0 + d1 * t1;
            let t2 = (at - b0).dot(d2) / (lb * lb);
            return SegIntersection::Point {
                t1,
                t2: t2.clamp(0.0, 1.0),
                at,
            };
        }
        let mid_t = (lo + hi) * 0.5;
        let mid = a0 + d1 * mid_t;
        let proj = |p: Vec2| (p - b0).dot(d2) / (lb * lb);
        let at_lo = a0 + d1 * lo;
        let at_hi = a0 + d1 * hi;
        return SegIntersection::Overlap {
            t1: (lo, hi),
            t2: (proj(at_lo), proj(at_hi)),
            mid,
        };
    }
    let t1 = skew(b0 - a0, d2) / denom;
    let t2 = skew(b0 - a0, d1) / denom;
    let e1 = eps / la;
    let e2 = eps / lb;
    if t1 < -e1 || t1 > 1.0 + e1 || t2 < -e2 || t2 > 1.0 + e2 {
        return SegIntersection::None;
    }
    let t1 = t1.clamp(0.0, 1.0);
    let t2 = t2.clamp(0.0, 1.0);
    SegIntersection::Point {
        t1,
        t2,
        at: a0 + d1 * t1,
    }
}
