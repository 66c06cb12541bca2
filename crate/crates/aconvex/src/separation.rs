//! Separation witnesses: for a point outside a polygon with `aco > -pi`,
//! an angular region with apex at the point, measure `pi + aco`, whose
//! interior misses the polygon.
//!
//! Everything is computed on the polygon itself. At an edge-interior site
//! the minimum forward/backward arc rotations come exactly from prefix sums
//! of the turn angles; vertices are covered by sites whose tangent sweeps
//! the vertex turn fan, which is the limit the smoothed-curve construction
//! takes there.

use crate::error::{Error, Result};
use crate::geom::{aco_polygon, eps_geom, skew, Polygon, Vec2};

/// Verification slack for the witness measure, radians.
pub const TOL_SEP: f64 = 1e-6;

/// Doublings of the site-scan resolution before giving up.
pub const MAX_REFINE: u32 = 12;

const INITIAL_SAMPLES: usize = 8;

/// A point of the boundary with a definite tangent direction: either
/// interior to an edge, or at a vertex with the tangent somewhere inside
/// the vertex turn fan.
#[derive(Debug, Clone, Copy)]
pub struct BoundarySite {
    edge: usize,
    param: f64,
    point: Vec2,
    tangent: Vec2,
    // Leftover fan rotation ahead of / behind the tangent. Zero for
    // edge-interior sites.
    partial_out: f64,
    partial_in: f64,
    in_edge: usize,
}

impl BoundarySite {
    /// Site strictly inside edge `edge` at local parameter `t` in (0, 1).
    pub fn edge_interior(k: &Polygon, edge: usize, t: f64) -> BoundarySite {
        let verts = k.vertices();
        let n = verts.len();
        assert!(edge < n, "edge index out of range");
        assert!(t > 0.0 && t < 1.0, "edge site parameter must be interior");
        let a = verts[edge];
        let b = verts[(edge + 1) % n];
        BoundarySite {
            edge,
            param: t,
            point: a + (b - a) * t,
            tangent: (b - a).normalized().expect("real edge"),
            partial_out: 0.0,
            partial_in: 0.0,
            in_edge: edge,
        }
    }

    /// Site at vertex `vertex` with the tangent `frac` of the way through
    /// the vertex turn fan (from the incoming towards the outgoing edge).
    pub fn vertex_fan(k: &Polygon, vertex: usize, frac: f64) -> BoundarySite {
        let verts = k.vertices();
        let n = verts.len();
        assert!(vertex < n, "vertex index out of range");
        assert!((0.0..=1.0).contains(&frac));
        let dirs: Vec<Vec2> = k
            .boundary()
            .shifts()
            .iter()
            .map(|s| s.direction())
            .collect();
        let din = dirs[(vertex + n - 1) % n];
        let turn = k.boundary().turn_angles()[(vertex + n - 1) % n];
        let tangent = din.rotated(frac * turn);
        BoundarySite {
            edge: vertex,
            param: 0.0,
            point: verts[vertex],
            tangent,
            partial_out: (1.0 - frac) * turn,
            partial_in: frac * turn,
            in_edge: (vertex + n - 1) % n,
        }
    }

    pub fn edge(&self) -> usize {
        self.edge
    }

    pub fn param(&self) -> f64 {
        self.param
    }

    pub fn point(&self) -> Vec2 {
        self.point
    }

    pub fn tangent(&self) -> Vec2 {
        self.tangent
    }
}

/// Minimum rotation over forward boundary arcs starting at the site.
pub fn gamma_plus(k: &Polygon, site: &BoundarySite) -> f64 {
    let turns = k.boundary().turn_angles();
    let n = turns.len();
    let mut best: f64 = 0.0;
    let mut acc = site.partial_out;
    best = best.min(acc);
    for i in 0..(n - 1) {
        acc += turns[(site.edge + i) % n];
        best = best.min(acc);
    }
    best
}

/// Minimum rotation over backward boundary arcs ending at the site.
pub fn gamma_minus(k: &Polygon, site: &BoundarySite) -> f64 {
    let turns = k.boundary().turn_angles();
    let n = turns.len();
    let mut best: f64 = 0.0;
    let mut acc = site.partial_in;
    best = best.min(acc);
    for i in 0..(n - 1) {
        acc += turns[(site.in_edge + n - 1 - i) % n];
        best = best.min(acc);
    }
    best
}

/// Convex hull of two rays with a common apex, stored as the sweep from
/// `ray1_dir` counter-clockwise to `ray2_dir` over `measure` radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngularRegion {
    pub apex: Vec2,
    pub ray1_dir: Vec2,
    pub ray2_dir: Vec2,
    pub measure: f64,
}

impl AngularRegion {
    pub fn translated(&self, apex: Vec2) -> AngularRegion {
        AngularRegion { apex, ..*self }
    }

    /// The direction splitting the region in half.
    pub fn bisector(&self) -> Vec2 {
        self.ray1_dir.rotated(self.measure * 0.5)
    }
}

/// The angular region at a boundary site: the forward ray is the tangent
/// turned by `gamma_plus`, the backward ray is the reversed tangent turned
/// by `-gamma_minus`, and the outward gap between them measures
/// `pi + gamma_plus + gamma_minus`. Its interior misses the polygon.
pub fn build_region(k: &Polygon, site: &BoundarySite) -> AngularRegion {
    let gp = gamma_plus(k, site);
    let gm = gamma_minus(k, site);
    let ray2 = site.tangent.rotated(gp);
    let ray1 = (-site.tangent).rotated(-gm);
    let measure = std::f64::consts::PI + gp + gm;
    debug_assert!(measure > 0.0 && measure <= std::f64::consts::PI + 1e-9);
    AngularRegion {
        apex: site.point,
        ray1_dir: ray1,
        ray2_dir: ray2,
        measure,
    }
}

/// Closed-cone membership.
pub fn region_contains(a: &AngularRegion, p: Vec2) -> bool {
    let d = p - a.apex;
    if d.norm() == 0.0 {
        return true;
    }
    ccw_from(a.ray1_dir, d) <= a.measure + 1e-9
}

/// Counter-clockwise angle from `from` to `to`, in [0, 2*pi).
fn ccw_from(from: Vec2, to: Vec2) -> f64 {
    let raw = signed_angle_full(from, to);
    raw.rem_euclid(std::f64::consts::TAU)
}

/// Angle allowing the opposite-vector case (returns pi there).
fn signed_angle_full(v: Vec2, w: Vec2) -> f64 {
    skew(v, w).atan2(v.dot(w))
}

/// True when no polygon edge meets the open interior of the region.
/// Apex-on-boundary contact and ray tangency are allowed: the polygon is
/// closed, the region interior open.
pub fn region_disjoint(a: &AngularRegion, k: &Polygon) -> bool {
    let eps = eps_geom(k.diameter() + (a.apex - k.bounding_box().0).norm());
    let strictly_inside = |p: Vec2| -> bool {
        let d = p - a.apex;
        if d.norm() <= eps {
            return false;
        }
        let ang = ccw_from(a.ray1_dir, d);
        ang > 1e-9 && ang < a.measure - 1e-9
    };
    let verts = k.vertices();
    let n = verts.len();
    for i in 0..n {
        let u = verts[i];
        let w = verts[(i + 1) % n];
        if strictly_inside(u) || strictly_inside(w) {
            return false;
        }
        // Split the edge where it crosses each boundary ray and probe the
        // midpoints of the pieces.
        let mut params = vec![0.0, 1.0];
        for ray in [a.ray1_dir, a.ray2_dir] {
            if let Some(t) = ray_segment_param(a.apex, ray, u, w) {
                params.push(t);
            }
        }
        params.sort_by(|x, y| x.partial_cmp(y).unwrap());
        for pair in params.windows(2) {
            let mid = u + (w - u) * ((pair[0] + pair[1]) * 0.5);
            if strictly_inside(mid) {
                return false;
            }
        }
    }
    true
}

/// Parameter along [u, w] where the ray from `apex` in direction `d` meets
/// it, if it does.
fn ray_segment_param(apex: Vec2, d: Vec2, u: Vec2, w: Vec2) -> Option<f64> {
    let e = w - u;
    let denom = skew(d, e);
    if denom.abs() < 1e-15 {
        return None;
    }
    let s = skew(u - apex, e) / denom;
    let t = skew(u - apex, d) / -denom;
    if s >= 0.0 && (0.0..=1.0).contains(&t) {
        Some(t)
    } else {
        None
    }
}

/// All scan sites for one round, in boundary order: fan samples at each
/// vertex followed by interior samples of the outgoing edge.
pub fn boundary_sites(k: &Polygon, per_edge: usize) -> Vec<BoundarySite> {
    let n = k.num_vertices();
    let turns = k.boundary().turn_angles();
    let mut out = Vec::with_capacity(n * 2 * per_edge);
    for e in 0..n {
        let turn = turns[(e + n - 1) % n];
        if turn.abs() > 1e-12 {
            for i in 0..per_edge {
                let frac = (i as f64 + 0.5) / per_edge as f64;
                out.push(BoundarySite::vertex_fan(k, e, frac));
            }
        }
        for i in 0..per_edge {
            let t = (i as f64 + 0.5) / per_edge as f64;
            out.push(BoundarySite::edge_interior(k, e, t));
        }
    }
    out
}

/// Constructive separation: an angular region with apex `x`, measure at
/// least `pi + aco K - TOL_SEP`, whose interior misses `K`.
///
/// Scans boundary sites tracking the angle from the region bisector to the
/// direction towards `x`; the bisector makes one full turn per boundary
/// traversal while the direction to `x` makes none, so a sign crossing
/// exists. Crossings are refined by bisection inside their edge or fan
/// piece, every candidate witness is verified exactly, and the scan density
/// doubles on failure up to [`MAX_REFINE`] rounds before reporting
/// [`Error::SearchExhausted`] — never an unverified witness.
pub fn separate(k: &Polygon, x: Vec2) -> Result<AngularRegion> {
    let aco = aco_polygon(k).value;
    if aco <= -std::f64::consts::PI + 1e-9 {
        return Err(Error::AcoPreconditionViolated(aco));
    }
    if k.distance_to_boundary(x) <= eps_geom(k.diameter()) || k.contains_point_strict(x) {
        return Err(Error::PointInsidePolygon);
    }
    let threshold = std::f64::consts::PI + aco - TOL_SEP;

    let mismatch = |site: &BoundarySite| -> f64 {
        let region = build_region(k, site);
        signed_angle_full(region.bisector(), x - site.point)
    };
    let verify = |site: &BoundarySite| -> Option<AngularRegion> {
        let witness = build_region(k, site).translated(x);
        (witness.measure >= threshold && region_disjoint(&witness, k)).then_some(witness)
    };

    let mut per_edge = INITIAL_SAMPLES;
    for _round in 0..=MAX_REFINE {
        let sites = boundary_sites(k, per_edge);
        let values: Vec<f64> = sites.iter().map(&mismatch).collect();
        // Candidate order: the straightest alignments first.
        let mut order: Vec<usize> = (0..sites.len()).collect();
        order.sort_by(|&a, &b| values[a].abs().partial_cmp(&values[b].abs()).unwrap());
        for &i in order.iter().take(8) {
            if let Some(w) = verify(&sites[i]) {
                return Ok(w);
            }
        }
        // Sign crossings between consecutive sites, refined by bisection
        // inside their edge or fan piece.
        let total = sites.len();
        for i in 0..total {
            let j = (i + 1) % total;
            let (fi, fj) = (values[i], values[j]);
            if fi == 0.0 || fi.signum() == fj.signum() || (fi - fj).abs() >= std::f64::consts::PI {
                continue;
            }
            if let Some(w) = bisect_crossing(k, &sites[i], &sites[j], fi, &mismatch, &verify) {
                return Ok(w);
            }
        }
        per_edge *= 2;
    }
    Err(Error::SearchExhausted(MAX_REFINE))
}

/// Bisection between two same-piece sites with opposite mismatch signs.
fn bisect_crossing(
    k: &Polygon,
    a: &BoundarySite,
    b: &BoundarySite,
    f_a: f64,
    mismatch: &dyn Fn(&BoundarySite) -> f64,
    verify: &dyn Fn(&BoundarySite) -> Option<AngularRegion>,
) -> Option<AngularRegion> {
    let same_edge_piece = a.edge == b.edge && a.param > 0.0 && b.param > 0.0;
    let same_fan_piece = a.edge == b.edge && a.param == 0.0 && b.param == 0.0;
    if !(same_edge_piece || same_fan_piece) {
        // Junction-straddling pair: verify both ends, refinement shrinks
        // the straddle on the next round.
        return verify(a).or_else(|| verify(b));
    }
    let make = |pos: f64| -> BoundarySite {
        if same_edge_piece {
            BoundarySite::edge_interior(k, a.edge, pos)
        } else {
            BoundarySite::vertex_fan(k, a.edge, pos)
        }
    };
    let (mut lo, mut hi) = if same_edge_piece {
        (a.param, b.param)
    } else {
        let frac_of = |s: &BoundarySite| {
            let turn = s.partial_in + s.partial_out;
            if turn.abs() < 1e-15 {
                0.5
            } else {
                s.partial_in / turn
            }
        };
        (frac_of(a), frac_of(b))
    };
    let mut f_lo = f_a;
    for _ in 0..64 {
        let mid = 0.5 * (lo + hi);
        let site = make(mid.clamp(1e-9, 1.0 - 1e-9));
        if let Some(w) = verify(&site) {
            return Some(w);
        }
        let f_mid = mismatch(&site);
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::orient_ccw;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn v(x: f64, y: f64) -> Vec2 {
        Vec2::new(x, y)
    }

    fn square() -> Polygon {
        orient_ccw(&[v(0., 0.), v(1., 0.), v(1., 1.), v(0., 1.)]).unwrap()
    }

    fn lshape() -> Polygon {
        orient_ccw(&[
            v(0., 0.),
            v(2., 0.),
            v(2., 1.),
            v(1., 1.),
            v(1., 2.),
            v(0., 2.),
        ])
        .unwrap()
    }

    #[test]
    fn gammas_vanish_on_convex_polygons() {
        let k = square();
        for e in 0..4 {
            let site = BoundarySite::edge_interior(&k, e, 0.37);
            assert_eq!(gamma_plus(&k, &site), 0.0);
            assert_eq!(gamma_minus(&k, &site), 0.0);
        }
    }

    #[test]
    fn gamma_plus_sees_the_reflex_turn_ahead() {
        // Site on the edge entering the reflex vertex (1,1): the first
        // forward prefix is the reflex turn itself.
        let k = lshape();
        let site = BoundarySite::edge_interior(&k, 2, 0.5);
        assert!((gamma_plus(&k, &site) + FRAC_PI_2).abs() < 1e-12);
        assert_eq!(gamma_minus(&k, &site), 0.0);
    }

    #[test]
    fn gamma_sum_bounds_aco() {
        let k = lshape();
        let aco = aco_polygon(&k).value;
        for e in 0..k.num_vertices() {
            for t in [0.25, 0.5, 0.75] {
                let site = BoundarySite::edge_interior(&k, e, t);
                assert!(gamma_plus(&k, &site) + gamma_minus(&k, &site) >= aco - 1e-9);
            }
            for frac in [0.25, 0.75] {
                let site = BoundarySite::vertex_fan(&k, e, frac);
                assert!(gamma_plus(&k, &site) + gamma_minus(&k, &site) >= aco - 1e-9);
            }
        }
    }

    #[test]
    fn convex_edge_region_is_the_outer_half_plane() {
        let k = square();
        // Bottom edge, tangent (1,0): the region spans from (-1,0)
        // counter-clockwise through the outward normal (0,-1) to (1,0).
        let site = BoundarySite::edge_interior(&k, 0, 0.5);
        let region = build_region(&k, &site);
        assert!((region.measure - PI).abs() < 1e-12);
        assert!(region.ray1_dir.dist(v(-1., 0.)) < 1e-12);
        assert!(region.ray2_dir.dist(v(1., 0.)) < 1e-12);
        assert!(region.bisector().dist(v(0., -1.)) < 1e-12);
        assert!(region_contains(&region, v(0.5, -1.0)));
        assert!(!region_contains(&region, v(0.5, 1.0)));
        assert!(region_disjoint(&region, &k));
    }

    #[test]
    fn lshape_site_after_reflex_has_half_measure() {
        let k = lshape();
        // Edge 3 leaves the reflex vertex; gamma_minus = -pi/2 there.
        let site = BoundarySite::edge_interior(&k, 3, 0.5);
        let region = build_region(&k, &site);
        assert!((region.measure - FRAC_PI_2).abs() < 1e-12);
        assert!(region_disjoint(&region, &k));
    }

    #[test]
    fn region_interior_hits_are_detected() {
        let region = AngularRegion {
            apex: v(2., 2.),
            ray1_dir: v(0., -1.),
            ray2_dir: v(0., 1.),
            measure: PI,
        };
        // The unit square pokes into the right half-plane wedge? No: it
        // lies left of x=2. Shift the apex so it does.
        assert!(region_disjoint(&region, &square()));
        let shifted = AngularRegion {
            apex: v(0.5, 0.5),
            ..region
        };
        assert!(!region_disjoint(&shifted, &square()));
    }

    #[test]
    fn region_contains_basics() {
        let region = AngularRegion {
            apex: v(0., 0.),
            ray1_dir: v(1., 0.),
            ray2_dir: v(0., 1.),
            measure: FRAC_PI_2,
        };
        assert!(region_contains(&region, v(1., 1.)));
        assert!(!region_contains(&region, v(-1., 0.5)));
        assert!(region_contains(&region, v(0., 0.)));
    }

    #[test]
    fn separate_square_from_the_right() {
        let k = square();
        let w = separate(&k, v(2.0, 0.5)).unwrap();
        assert_eq!(w.apex, v(2.0, 0.5));
        assert!(w.measure >= PI - 1e-9);
        assert!(region_disjoint(&w, &k));
    }

    #[test]
    fn separate_rejects_interior_points() {
        assert_eq!(
            separate(&square(), v(0.5, 0.5)),
            Err(Error::PointInsidePolygon)
        );
    }

    #[test]
    fn separate_handles_the_lshape_notch() {
        let k = lshape();
        // A point nestled outside the reflex corner.
        let w = separate(&k, v(1.5, 1.5)).unwrap();
        assert!(w.measure >= PI + aco_polygon(&k).value - TOL_SEP);
        assert!(region_disjoint(&w, &k));
    }

    #[test]
    fn separate_various_exterior_points() {
        let k = lshape();
        let aco = aco_polygon(&k).value;
        for x in [
            v(3.0, 0.5),
            v(-1.0, -1.0),
            v(0.5, 3.0),
            v(2.5, 2.5),
            v(1.2, 1.9),
            v(10.0, 0.0),
        ] {
            let w = separate(&k, x).expect("witness must exist");
            assert_eq!(w.apex, x);
            assert!(w.measure >= PI + aco - TOL_SEP);
            assert!(region_disjoint(&w, &k), "witness at {x} not disjoint");
        }
    }

    #[test]
    fn separate_rejects_uncertified_polygons() {
        let u = orient_ccw(&[
            v(0., 0.),
            v(5., 0.),
            v(5., 4.),
            v(3., 4.),
            v(3., 1.),
            v(1., 1.),
            v(1., 3.),
            v(2., 3.),
            v(2., 4.),
            v(0., 4.),
        ])
        .unwrap();
        assert!(matches!(
            separate(&u, v(7., 7.)),
            Err(Error::AcoPreconditionViolated(_))
        ));
    }

    #[test]
    fn bisector_winds_once_around_the_boundary() {
        let k = lshape();
        let x = v(4.0, 4.0);
        let sites = boundary_sites(&k, 16);
        let mut nu_total = 0.0;
        let mut mu_total = 0.0;
        let mut prev: Option<(Vec2, Vec2)> = None;
        for site in &sites {
            let region = build_region(&k, site);
            let nu = region.bisector();
            let mu = (x - site.point()).normalized().unwrap();
            if let Some((pn, pm)) = prev {
                nu_total += signed_angle_full(pn, nu);
                mu_total += signed_angle_full(pm, mu);
            }
            prev = Some((nu, mu));
        }
        // Close the loop back to the first site.
        let first = build_region(&k, &sites[0]);
        let (pn, pm) = prev.unwrap();
        nu_total += signed_angle_full(pn, first.bisector());
        mu_total += signed_angle_full(pm, (x - sites[0].point()).normalized().unwrap());
        assert!(
            (nu_total - std::f64::consts::TAU).abs() < 1e-6,
            "bisector degree: {nu_total}"
        );
        assert!(mu_total.abs() < 1e-6, "mu degree: {mu_total}");
    }
}
