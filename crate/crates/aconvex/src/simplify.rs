//! General-position perturbation, ordered self-intersection events, single
//! loop removal and full loop elimination with rotation control.
//!
//! Removing the chain between the two parameters of a self-intersection and
//! rejoining at the crossing changes the rotation by a multiple of 2*pi;
//! when the excised loop has rotation above -pi the rotation cannot
//! increase, and repeatedly removing the first crossing turns any chain with
//! `aco > -pi` into a simple one without raising its rotation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::{eps_geom, segment_intersection, Polyline, SegIntersection, Vec2, EPS_ANGLE};

/// A self-intersection `p(t1) = p(t2)` in arc-length-normalized chain
/// parameters, `t1 < t2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntersectionEvent {
    pub t1: f64,
    pub t2: f64,
    pub point: Vec2,
}

/// General position: distinct vertices; pairwise edge intersections in at
/// most one point, that point being a shared vertex or interior to both
/// edges; no three edges through a common point.
pub fn is_general_position(p: &Polyline) -> bool {
    let eps = eps_geom(p.diameter());
    let verts = p.vertices();
    let unique = if p.is_closed() {
        verts.len() - 1
    } else {
        verts.len()
    };
    for a in 0..unique {
        for b in (a + 1)..unique {
            if verts[a].dist(verts[b]) <= eps {
                return false;
            }
        }
    }

    let edges = p.real_edges();
    let m = edges.len();
    let mut interior_contacts: Vec<(Vec2, usize, usize)> = Vec::new();
    for a in 0..m {
        for b in (a + 1)..m {
            let adjacent = b == a + 1 || (p.is_closed() && a == 0 && b == m - 1);
            let (_, a0, a1) = edges[a];
            let (_, b0, b1) = edges[b];
            match segment_intersection(a0, a1, b0, b1, eps) {
                SegIntersection::None => {}
                SegIntersection::Overlap { .. } => return false,
                SegIntersection::Point { t1, t2, at } => {
                    let ea = eps / a1.dist(a0).max(f64::MIN_POSITIVE);
                    let eb = eps / b1.dist(b0).max(f64::MIN_POSITIVE);
                    if adjacent {
                        let at_shared = if b == a + 1 {
                            (t1 - 1.0).abs() <= ea && t2.abs() <= eb
                        } else {
                            t1.abs() <= ea && (t2 - 1.0).abs() <= eb
                        };
                        if !at_shared {
                            return false;
                        }
                    } else {
                        let interior_1 = t1 > ea && t1 < 1.0 - ea;
                        let interior_2 = t2 > eb && t2 < 1.0 - eb;
                        if !interior_1 || !interior_2 {
                            return false;
                        }
                        interior_contacts.push((at, a, b));
                    }
                }
            }
        }
    }
    // No triple points: two crossings at the same location would put three
    // or more distinct edges through it.
    for i in 0..interior_contacts.len() {
        for j in (i + 1)..interior_contacts.len() {
            let (pi, a1, b1) = interior_contacts[i];
            let (pj, a2, b2) = interior_contacts[j];
            if pi.dist(pj) <= eps {
                let mut set = vec![a1, b1, a2, b2];
                set.sort_unstable();
                set.dedup();
                if set.len() >= 3 {
                    return false;
                }
            }
        }
    }
    true
}

/// Displace every vertex by a seeded pseudo-random offset of norm below
/// `magnitude` until the chain reaches general position, retrying with fresh
/// draws up to 64 times.
pub fn perturb_general_position(p: &Polyline, magnitude: f64, seed: u64) -> Result<Polyline> {
    assert!(magnitude > 0.0, "perturbation magnitude must be positive");
    const ATTEMPTS: u32 = 64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = p.without_virtual_shifts()?;
    let verts = base.vertices();
    let unique = if base.is_closed() {
        verts.len() - 1
    } else {
        verts.len()
    };
    for _ in 0..ATTEMPTS {
        let mut moved = Vec::with_capacity(unique);
        for v in verts.iter().take(unique) {
            let angle = rng.gen_range(0.0..std::f64::consts::TAU);
            let radius = magnitude * rng.gen_range(0.0f64..1.0).sqrt() * 0.999;
            moved.push(*v + Vec2::new(angle.cos(), angle.sin()) * radius);
        }
        let candidate = if base.is_closed() {
            Polyline::closed_from_vertices(&moved)
        } else {
            Polyline::from_vertices(&moved)
        };
        if let Ok(c) = candidate {
            if is_general_position(&c) {
                return Ok(c);
            }
        }
    }
    Err(Error::GeneralPositionFailed(ATTEMPTS))
}

/// The first self-intersection with respect to the parameterization:
/// smallest `t1`, ties broken by smallest `t2`. `None` for a simple chain.
pub fn first_self_intersection(p: &Polyline) -> Result<Option<IntersectionEvent>> {
    if !is_general_position(p) {
        return Err(Error::NotGeneralPosition);
    }
    Ok(p.self_intersections().first().map(|c| IntersectionEvent {
        t1: c.t1,
        t2: c.t2,
        point: c.at,
    }))
}

/// Excise the sub-chain between `e.t1` and `e.t2` and rejoin at the
/// crossing point, materializing the junction as an explicit vertex.
///
/// Requires the excised loop to have rotation above -pi; then the rotation
/// of the result never exceeds the input's, and the change is a multiple
/// of 2*pi.
pub fn remove_loop(p: &Polyline, e: &IntersectionEvent) -> Result<Polyline> {
    if p.shifts().iter().any(|s| s.is_virtual()) {
        return Err(Error::InvalidPolyline(
            "drop virtual shifts before loop removal".into(),
        ));
    }
    let (loop_rot, _, _) = loop_rotation(p, e)?;
    if loop_rot <= -std::f64::consts::PI + EPS_ANGLE {
        return Err(Error::LoopRotationTooNegative(loop_rot));
    }
    rejoin(p, e)
}

fn locate(p: &Polyline, t: f64) -> (usize, f64) {
    // Map an arc-length parameter to (real edge position, local parameter).
    let total = p.total_length();
    let mut remaining = t.clamp(0.0, 1.0) * total;
    let edges = p.real_edges();
    for (pos, (_, a, b)) in edges.iter().enumerate() {
        let len = b.dist(*a);
        if remaining <= len || pos == edges.len() - 1 {
            return (pos, (remaining / len).clamp(0.0, 1.0));
        }
        remaining -= len;
    }
    unreachable!("empty chain");
}

fn loop_rotation(p: &Polyline, e: &IntersectionEvent) -> Result<(f64, usize, usize)> {
    let eps = eps_geom(p.diameter());
    if p.eval(e.t1).dist(e.point) > eps * 10.0 || p.eval(e.t2).dist(e.point) > eps * 10.0 {
        return Err(Error::InternalInconsistency(
            "intersection event does not lie on the chain".into(),
        ));
    }
    let (i, _) = locate(p, e.t1);
    let (j, _) = locate(p, e.t2);
    if i == j {
        return Err(Error::InternalInconsistency(
            "self-intersection within a single edge".into(),
        ));
    }
    let edges = p.real_edges();
    let dirs: Vec<Vec2> = edges
        .iter()
        .map(|(_, a, b)| (*b - *a) * (1.0 / b.dist(*a)))
        .collect();
    // Turns at the vertices interior to the loop: between edges i..j.
    let mut rot = 0.0;
    for k in i..j {
        rot += crate::geom::signed_angle(dirs[k], dirs[k + 1]).expect("non-reverse invariant");
    }
    Ok((rot, i, j))
}

fn rejoin(p: &Polyline, e: &IntersectionEvent) -> Result<Polyline> {
    let (_, i, j) = loop_rotation(p, e)?;
    let eps = eps_geom(p.diameter());
    let edges = p.real_edges();
    let mut pts: Vec<Vec2> = Vec::new();
    // Vertices up to the start of edge i, the junction, then from the end
    // of edge j onward.
    for (pos, (_, a, _)) in edges.iter().enumerate() {
        if pos > i {
            break;
        }
        pts.push(*a);
    }
    pts.push(e.point);
    for (pos, (_, _, b)) in edges.iter().enumerate() {
        if pos >= j {
            pts.push(*b);
        }
    }
    // Drop junction duplicates snapped against neighbouring vertices.
    pts.dedup_by(|a, b| a.dist(*b) <= eps);
    if p.is_closed() {
        if pts.len() > 1 && pts[0].dist(*pts.last().unwrap()) <= eps {
            pts.pop();
        }
        Polyline::closed_from_vertices(&pts)
    } else {
        Polyline::from_vertices(&pts)
    }
}

/// Remove all loops, always excising at the first self-intersection, until
/// the chain is simple. Requires general position and `aco > -pi`; then the
/// rotation never increases and the endpoints are preserved.
pub fn eliminate_loops(p: &Polyline) -> Result<Polyline> {
    if p.shifts().iter().any(|s| s.is_virtual()) {
        return Err(Error::InvalidPolyline(
            "drop virtual shifts before loop elimination".into(),
        ));
    }
    if !is_general_position(p) {
        return Err(Error::NotGeneralPosition);
    }
    let aco = min_turn_window(p);
    if aco <= -std::f64::consts::PI + EPS_ANGLE {
        return Err(Error::AcoPreconditionViolated(aco));
    }
    let mut chain = p.clone();
    let budget = p.shifts().len() * p.shifts().len() + 4;
    for _ in 0..budget {
        let crossings = chain.self_intersections();
        let Some(first) = crossings.first() else {
            return Ok(chain);
        };
        let event = IntersectionEvent {
            t1: first.t1,
            t2: first.t2,
            point: first.at,
        };
        chain = match remove_loop(&chain, &event) {
            Ok(c) => c,
            // Unreachable when aco > -pi holds; surface as a consistency
            // failure rather than a precondition error.
            Err(Error::LoopRotationTooNegative(r)) => {
                return Err(Error::InternalInconsistency(format!(
                    "loop with rotation {r} under aco > -pi"
                )))
            }
            Err(other) => return Err(other),
        };
    }
    Err(Error::InternalInconsistency(
        "loop elimination did not terminate".into(),
    ))
}

/// Minimum contiguous turn-window sum (cyclic for closed chains): the
/// angular convexity without requiring a `Polygon`.
fn min_turn_window(p: &Polyline) -> f64 {
    let turns = p.turn_angles();
    let n = p.shifts().len();
    if p.is_closed() {
        let mut best: f64 = 0.0;
        for a in 0..n {
            let mut sum = 0.0;
            for w in 0..n.saturating_sub(1) {
                sum += turns[(a + w) % n];
                best = best.min(sum);
            }
        }
        best
    } else {
        let mut best: f64 = 0.0;
        for a in 0..turns.len() {
            let mut sum = 0.0;
            for t in &turns[a..] {
                sum += t;
                best = best.min(sum);
            }
        }
        best
    }
}
