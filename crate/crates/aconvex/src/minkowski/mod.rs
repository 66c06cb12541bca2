//! Minkowski sums of simple polygons with hole-freeness certification.
//!
//! When both inputs have angular convexity above -pi the sum is again a
//! simple polygon and its angular convexity is at least the smaller of the
//! two inputs. Inputs that fail the certificate are refused rather than
//! risking a sum with holes.
//!
//! The sum polygon is derived from the reduced convolution of the two
//! boundaries: every edge paired with every compatible convex vertex fan of
//! the other polygon. All convolution segments lie inside the sum and cover
//! its boundary, so the outer face of their arrangement is the boundary.
//! A single greedy sorted-sum pass over the two whole boundary cycles is
//! also provided ([`sorted_sum_pipeline`]); it produces the correct sum for
//! convex-leaning inputs and is kept as the merge trace, but it can mispair
//! edges when both summands are non-convex (see the module tests), which is
//! why the arrangement route is authoritative.

mod convolution;

use crate::error::{Error, Result};
use crate::geom::{
    aco_polygon, eps_geom, orient_ccw, segment_intersection, Polygon, Polyline, SegIntersection,
    Shift, Vec2, EPS_ANGLE,
};
use crate::simplify::{eliminate_loops, is_general_position, perturb_general_position};
use crate::sorted_sum::{sorted_sum, MergedChain};

use convolution::{outer_boundary, reduced_convolution_segments};

const DEFAULT_SEED: u64 = 0x05ee_dac0;

/// Hole-freeness certificate for a pair of summands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertReport {
    pub aco_k: f64,
    pub aco_l: f64,
    /// Both inputs above -pi: the sum is simple and obeys the bound.
    pub certified: bool,
    /// Lower bound for the sum's angular convexity, `min(aco_k, aco_l)`;
    /// meaningful when certified.
    pub aco_lower_bound: f64,
}

/// A certified Minkowski sum: the polygon, the certificate it was computed
/// under, and the sorted-sum merge trace of the aligned boundary cycles.
#[derive(Debug, Clone)]
pub struct SumResult {
    pub polygon: Polygon,
    pub certificate: CertReport,
    pub trace: MergedChain,
}

/// Compute both angular convexities; certified iff both exceed -pi.
pub fn certify(k: &Polygon, l: &Polygon) -> CertReport {
    let aco_k = aco_polygon(k).value;
    let aco_l = aco_polygon(l).value;
    let threshold = -std::f64::consts::PI + EPS_ANGLE;
    CertReport {
        aco_k,
        aco_l,
        certified: aco_k > threshold && aco_l > threshold,
        aco_lower_bound: aco_k.min(aco_l),
    }
}

/// Reflection through the origin: the sum `reflect(a) + b` is the no-fit
/// set of translations of `a` that collide with `b`.
pub fn reflect(k: &Polygon) -> Polygon {
    k.reflected()
}

/// Cut both boundaries at their bottommost-then-leftmost vertex and align
/// them to start and end with direction (1, 0), inserting zero-length
/// virtual edges where no horizontal-rightward edge exists.
///
/// The horizontal direction is legal at the cut because the outward normal
/// (0, -1) is supported there. Both output chains are open with rotation
/// exactly 2*pi, satisfying the sorted-sum preconditions for any valid
/// counter-clockwise pair.
pub fn align_cycles(k: &Polygon, l: &Polygon) -> (Polyline, Polyline) {
    (cut_bottom_left(k), cut_bottom_left(l))
}

fn cut_bottom_left(k: &Polygon) -> Polyline {
    let verts = k.vertices();
    let n = verts.len();
    let cut = (0..n)
        .min_by(|&a, &b| {
            (verts[a].y, verts[a].x)
                .partial_cmp(&(verts[b].y, verts[b].x))
                .unwrap()
        })
        .unwrap();
    let shifts = k.boundary().shifts();
    let east = Vec2::new(1.0, 0.0);
    let mut out: Vec<Shift> = Vec::with_capacity(n + 2);
    let first_dir = shifts[cut].direction();
    if first_dir.dist(east) > 1e-12 {
        out.push(Shift::virtual_edge(east).expect("unit direction"));
    }
    for i in 0..n {
        out.push(shifts[(cut + i) % n]);
    }
    // The incoming edge at a bottom-left cut always points strictly
    // downward, so the trailing virtual edge is always needed to end the
    // chain horizontal and make the open rotation a full turn.
    out.push(Shift::virtual_edge(east).expect("unit direction"));
    Polyline::open(verts[cut], out).expect("cutting a valid polygon keeps it non-reverse")
}

/// Membership oracle for the sum, straight from the definition:
/// `p` is in `K + L` iff `K` meets `L` reflected through the origin and
/// translated by `p`. Independent of the convolution pipeline.
pub fn member(k: &Polygon, l: &Polygon, p: Vec2) -> bool {
    let (klo, khi) = k.bounding_box();
    let (llo, lhi) = l.bounding_box();
    let eps = eps_geom((khi - klo).norm() + (lhi - llo).norm());
    // Bounding box of p - L.
    let tlo = p - lhi;
    let thi = p - llo;
    if tlo.x > khi.x + eps || thi.x < klo.x - eps || tlo.y > khi.y + eps || thi.y < klo.y - eps {
        return false;
    }
    let kv = k.vertices();
    let mv: Vec<Vec2> = l.vertices().iter().map(|&w| p - w).collect();
    for q in &mv {
        if point_in_cycle(&kv, *q, eps) {
            return true;
        }
    }
    for q in &kv {
        if point_in_cycle(&mv, *q, eps) {
            return true;
        }
    }
    let nk = kv.len();
    let nm = mv.len();
    for i in 0..nk {
        let (a0, a1) = (kv[i], kv[(i + 1) % nk]);
        for j in 0..nm {
            let (b0, b1) = (mv[j], mv[(j + 1) % nm]);
            if segment_intersection(a0, a1, b0, b1, eps) != SegIntersection::None {
                return true;
            }
        }
    }
    false
}

fn point_in_cycle(cycle: &[Vec2], p: Vec2, eps: f64) -> bool {
    let n = cycle.len();
    for i in 0..n {
        if crate::geom::point_segment_distance(p, cycle[i], cycle[(i + 1) % n]) <= eps {
            return true;
        }
    }
    let mut inside = false;
    for i in 0..n {
        let a = cycle[i];
        let b = cycle[(i + 1) % n];
        if (a.y > p.y) != (b.y > p.y) {
            let x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if p.x < x_cross {
                inside = !inside;
            }
        }
    }
    inside
}

/// Classic slope-sorted edge merge for convex polygons; the reference
/// implementation the general pipeline is differentially tested against.
pub fn convex_sum(k: &Polygon, l: &Polygon) -> Result<Polygon> {
    for poly in [k, l] {
        let aco = aco_polygon(poly).value;
        if aco < -EPS_ANGLE {
            return Err(Error::NotConvex(aco));
        }
    }
    let (ka, la) = align_cycles(k, l);
    let kv: Vec<Vec2> = ka
        .shifts()
        .iter()
        .filter(|s| !s.is_virtual())
        .map(|s| s.vector())
        .collect();
    let lv: Vec<Vec2> = la
        .shifts()
        .iter()
        .filter(|s| !s.is_virtual())
        .map(|s| s.vector())
        .collect();
    // After a bottom-left cut the polar angles of a convex cycle ascend
    // within [0, 2*pi), so a plain two-pointer merge sorts all edges.
    let mut verts = vec![ka.start() + la.start()];
    let mut cur = verts[0];
    let (mut i, mut j) = (0usize, 0usize);
    while i < kv.len() || j < lv.len() {
        let take_k = if i == kv.len() {
            false
        } else if j == lv.len() {
            true
        } else {
            kv[i].polar_angle() <= lv[j].polar_angle()
        };
        let step = if take_k {
            i += 1;
            kv[i - 1]
        } else {
            j += 1;
            lv[j - 1]
        };
        cur = cur + step;
        verts.push(cur);
    }
    verts.pop(); // the cycle closes back onto the start
    orient_ccw(&verts)
}

/// Certified Minkowski sum; refuses uncertified inputs.
///
/// The polygon comes from the reduced convolution's outer face and is
/// validated before it is returned: simple, rotation 2*pi, angular
/// convexity no worse than the certificate bound, and spot-checked for
/// membership agreement against [`member`]. A validation failure is
/// retried once on perturbed input and otherwise surfaces as
/// [`Error::InternalInconsistency`] rather than a silently wrong polygon.
pub fn minkowski_sum(k: &Polygon, l: &Polygon) -> Result<SumResult> {
    minkowski_sum_seeded(k, l, DEFAULT_SEED)
}

/// [`minkowski_sum`] with an explicit seed for the perturbation retry.
pub fn minkowski_sum_seeded(k: &Polygon, l: &Polygon, seed: u64) -> Result<SumResult> {
    let certificate = certify(k, l);
    if !certificate.certified {
        return Err(Error::AcoPreconditionViolated(
            certificate.aco_k.min(certificate.aco_l),
        ));
    }
    let (ka, la) = align_cycles(k, l);
    let trace = sorted_sum(&ka, &la)?;
    let polygon = match sum_polygon(k, l, certificate.aco_lower_bound) {
        Ok(p) => p,
        Err(first_err) => {
            // Degenerate incidence in the arrangement; nudge the inputs at
            // noise scale and try once more.
            let magnitude = eps_geom(k.diameter() + l.diameter());
            let kp = perturb_polygon(k, magnitude, seed)?;
            let lp = perturb_polygon(l, magnitude, seed ^ 1)?;
            let recert = certify(&kp, &lp);
            if !recert.certified {
                return Err(first_err);
            }
            sum_polygon(&kp, &lp, recert.aco_lower_bound).map_err(|_| first_err)?
        }
    };
    Ok(SumResult {
        polygon,
        certificate,
        trace,
    })
}

fn perturb_polygon(k: &Polygon, magnitude: f64, seed: u64) -> Result<Polygon> {
    let chain = perturb_general_position(k.boundary(), magnitude, seed)?;
    orient_ccw(&chain.vertices())
}

fn sum_polygon(k: &Polygon, l: &Polygon, aco_bound: f64) -> Result<Polygon> {
    let segments = reduced_convolution_segments(k, l);
    let eps = eps_geom(k.diameter() + l.diameter());
    let cycle = outer_boundary(&segments, eps)?;
    let polygon = orient_ccw(&cycle)?;
    polygon.validate()?;
    let aco = aco_polygon(&polygon).value;
    if aco < aco_bound - 1e-9 {
        return Err(Error::InternalInconsistency(format!(
            "sum aco {aco} below certified bound {aco_bound}"
        )));
    }
    verify_probes(k, l, &polygon)?;
    Ok(polygon)
}

/// Deterministic probe grid: the computed polygon must agree with the
/// membership oracle away from the float-ambiguous boundary band.
fn verify_probes(k: &Polygon, l: &Polygon, sum: &Polygon) -> Result<()> {
    const GRID: usize = 12;
    let (klo, khi) = k.bounding_box();
    let (llo, lhi) = l.bounding_box();
    let lo = klo + llo;
    let hi = khi + lhi;
    let band = 10.0 * eps_geom((hi - lo).norm());
    for i in 0..GRID {
        for j in 0..GRID {
            let p = Vec2::new(
                lo.x + (i as f64 + 0.5) / GRID as f64 * (hi.x - lo.x),
                lo.y + (j as f64 + 0.5) / GRID as f64 * (hi.y - lo.y),
            );
            if sum.distance_to_boundary(p) <= band {
                continue;
            }
            if sum.contains_point_strict(p) != member(k, l, p) {
                return Err(Error::InternalInconsistency(format!(
                    "membership disagreement at {p}"
                )));
            }
        }
    }
    Ok(())
}

/// The literal cut-merge-close pipeline: align the cycles, take the sorted
/// sum, drop virtual edges, close the chain, and eliminate loops (after a
/// general-position nudge) if it self-intersects.
///
/// For convex pairs this reproduces the classic edge merge. When both
/// summands are non-convex the single greedy pass can pair an edge with the
/// wrong fan and the closed result, while simple, need not bound the sum;
/// [`minkowski_sum`] therefore derives its polygon from the arrangement and
/// keeps this chain only as the merge trace.
pub fn sorted_sum_pipeline(k: &Polygon, l: &Polygon, seed: u64) -> Result<Polygon> {
    let (ka, la) = align_cycles(k, l);
    let merged = sorted_sum(&ka, &la)?;
    let real = merged.without_virtual_shifts()?;
    let closed = Polyline::closed(real.result().start(), real.result().shifts().to_vec())?;
    let simple = if closed.is_simple() {
        closed
    } else {
        let gp = if is_general_position(&closed) {
            closed
        } else {
            perturb_general_position(&closed, 1e-7 * closed.diameter(), seed)?
        };
        eliminate_loops(&gp)?
    };
    let mut verts = simple.vertices();
    verts.pop();
    orient_ccw(&verts)
}
