//! Reduced convolution of two polygon boundaries and extraction of the
//! outer face of the resulting segment arrangement.
//!
//! Every convolution segment is an edge of one polygon translated by a
//! vertex of the other whose (convex) direction fan contains the edge
//! direction. All such segments lie inside the Minkowski sum, and the sum's
//! boundary is covered by them, so the boundary of the unbounded face of
//! the arrangement is exactly the outer boundary of the sum.

use crate::error::{Error, Result};
use crate::geom::{segment_intersection, signed_angle, Polygon, SegIntersection, Vec2};

#[derive(Debug, Clone, Copy)]
pub(crate) struct ConvSegment {
    pub a: Vec2,
    pub b: Vec2,
}

/// True when `d` lies in the closed counter-clockwise fan from `din` to
/// `dout` (a convex vertex fan; the turn is in [0, pi)).
fn fan_contains(din: Vec2, dout: Vec2, d: Vec2, slack: f64) -> bool {
    let turn = match signed_angle(din, dout) {
        Ok(t) => t,
        Err(_) => return false,
    };
    debug_assert!(turn >= -slack);
    match signed_angle(din, d) {
        Ok(a) => a >= -slack && a <= turn + slack,
        Err(_) => false,
    }
}

/// All reduced-convolution segments: edges of `k` against compatible convex
/// vertex fans of `l`, and vice versa.
pub(crate) fn reduced_convolution_segments(k: &Polygon, l: &Polygon) -> Vec<ConvSegment> {
    let mut out = Vec::new();
    emit_one_side(k, l, &mut out);
    emit_one_side(l, k, &mut out);
    out
}

fn emit_one_side(edges_of: &Polygon, fans_of: &Polygon, out: &mut Vec<ConvSegment>) {
    let ev = edges_of.vertices();
    let en = ev.len();
    let fv = fans_of.vertices();
    let fn_ = fv.len();
    let fan_dirs: Vec<Vec2> = fans_of
        .boundary()
        .shifts()
        .iter()
        .map(|s| s.direction())
        .collect();
    let fan_turns = fans_of.boundary().turn_angles();
    let slack = 1e-9;
    for i in 0..en {
        let dir = (ev[(i + 1) % en] - ev[i]).normalized().expect("real edge");
        for j in 0..fn_ {
            // Fan at vertex j sits between the incoming and outgoing edges;
            // reflex fans never support boundary contact and are skipped.
            let din = fan_dirs[(j + fn_ - 1) % fn_];
            let dout = fan_dirs[j];
            if fan_turns[(j + fn_ - 1) % fn_] < -slack {
                continue;
            }
            if fan_contains(din, dout, dir, slack) {
                out.push(ConvSegment {
                    a: ev[i] + fv[j],
                    b: ev[(i + 1) % en] + fv[j],
                });
            }
        }
    }
}

/// Boundary of the unbounded face of the segment arrangement, as a
/// counter-clockwise vertex cycle.
///
/// Pipeline: merge collinear overlapping segments into maximal pieces,
/// split everything at crossings and junctions, snap endpoints into nodes,
/// then walk from the lexicographically lowest node taking at each step the
/// first outgoing edge counter-clockwise from the reversed arrival
/// direction.
pub(crate) fn outer_boundary(segments: &[ConvSegment], eps: f64) -> Result<Vec<Vec2>> {
    let kept: Vec<ConvSegment> = segments
        .iter()
        .copied()
        .filter(|s| s.a.dist(s.b) > eps)
        .collect();
    if kept.is_empty() {
        return Err(Error::InternalInconsistency(
            "no convolution segments".into(),
        ));
    }
    let merged = merge_collinear_overlaps(&kept, eps);
    let pieces = split_at_crossings(&merged, eps);
    let (nodes, edges) = build_graph(&pieces, eps)?;
    walk_outer_face(&nodes, &edges)
}

fn merge_collinear_overlaps(segments: &[ConvSegment], eps: f64) -> Vec<ConvSegment> {
    let n = segments.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = x;
        while parent[c] != r {
            let next = parent[c];
            parent[c] = r;
            c = next;
        }
        r
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if collinear_touch_or_overlap(&segments[i], &segments[j], eps) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        let r = find(&mut parent, i);
        groups[r].push(i);
    }
    let mut out = Vec::new();
    for group in groups.into_iter().filter(|g| !g.is_empty()) {
        if group.len() == 1 {
            out.push(segments[group[0]]);
            continue;
        }
        // Project every endpoint onto the direction of the first segment and
        // keep the extreme interval.
        let base = segments[group[0]];
        let dir = (base.b - base.a).normalized().expect("positive length");
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        let mut lo_p = base.a;
        let mut hi_p = base.b;
        for &idx in &group {
            for p in [segments[idx].a, segments[idx].b] {
                let s = (p - base.a).dot(dir);
                if s < lo {
                    lo = s;
                    lo_p = p;
                }
                if s > hi {
                    hi = s;
                    hi_p = p;
                }
            }
        }
        out.push(ConvSegment { a: lo_p, b: hi_p });
    }
    out
}

fn collinear_touch_or_overlap(s1: &ConvSegment, s2: &ConvSegment, eps: f64) -> bool {
    let d1 = s1.b - s1.a;
    let l1 = d1.norm();
    let d2 = s2.b - s2.a;
    if crate::geom::skew(d1, d2).abs() > 1e-9 * l1 * d2.norm() {
        return false;
    }
    if crate::geom::skew(s2.a - s1.a, d1).abs() > eps * l1 {
        return false;
    }
    // 1-D interval touch/overlap along the common line.
    let t0 = (s2.a - s1.a).dot(d1) / (l1 * l1);
    let t1 = (s2.b - s1.a).dot(d1) / (l1 * l1);
    let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
    let ep = eps / l1;
    hi >= -ep && lo <= 1.0 + ep
}

fn split_at_crossings(segments: &[ConvSegment], eps: f64) -> Vec<ConvSegment> {
    let n = segments.len();
    let mut out = Vec::new();
    for i in 0..n {
        let s = &segments[i];
        let len = s.a.dist(s.b);
        let mut params = vec![0.0, 1.0];
        for (j, other) in segments.iter().enumerate() {
            if i == j {
                continue;
            }
            if let SegIntersection::Point { t1, .. } =
                segment_intersection(s.a, s.b, other.a, other.b, eps)
            {
                params.push(t1);
            }
        }
        params.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let ep = eps / len;
        params.dedup_by(|a, b| (*a - *b).abs() <= ep);
        for w in params.windows(2) {
            let (a, b) = (s.a + (s.b - s.a) * w[0], s.a + (s.b - s.a) * w[1]);
            if a.dist(b) > eps {
                out.push(ConvSegment { a, b });
            }
        }
    }
    out
}

type Graph = (Vec<Vec2>, Vec<Vec<usize>>);

fn build_graph(pieces: &[ConvSegment], eps: f64) -> Result<Graph> {
    let snap = eps * 2.0;
    let mut nodes: Vec<Vec2> = Vec::new();
    let node_of = |p: Vec2, nodes: &mut Vec<Vec2>| -> usize {
        for (i, q) in nodes.iter().enumerate() {
            if q.dist(p) <= snap {
                return i;
            }
        }
        nodes.push(p);
        nodes.len() - 1
    };
    let mut adjacency: Vec<Vec<usize>> = Vec::new();
    let mut edge_set: Vec<(usize, usize)> = Vec::new();
    for s in pieces {
        let a = node_of(s.a, &mut nodes);
        let b = node_of(s.b, &mut nodes);
        if a == b {
            continue;
        }
        let key = (a.min(b), a.max(b));
        if edge_set.contains(&key) {
            continue;
        }
        edge_set.push(key);
        adjacency.resize(nodes.len(), Vec::new());
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    adjacency.resize(nodes.len(), Vec::new());
    if nodes.is_empty() {
        return Err(Error::InternalInconsistency("empty arrangement".into()));
    }
    Ok((nodes, adjacency))
}

fn walk_outer_face(nodes: &[Vec2], adjacency: &[Vec<usize>]) -> Result<Vec<Vec2>> {
    let start = (0..nodes.len())
        .min_by(|&a, &b| {
            (nodes[a].y, nodes[a].x)
                .partial_cmp(&(nodes[b].y, nodes[b].x))
                .unwrap()
        })
        .expect("nonempty graph");
    if adjacency[start].is_empty() {
        return Err(Error::InternalInconsistency(
            "isolated node in arrangement".into(),
        ));
    }
    // At the lowest node every incident edge points weakly upward; the most
    // clockwise one (smallest polar angle) starts the counter-clockwise
    // outer cycle.
    let first = *adjacency[start]
        .iter()
        .min_by(|&&a, &&b| {
            let pa = (nodes[a] - nodes[start]).polar_angle();
            let pb = (nodes[b] - nodes[start]).polar_angle();
            pa.partial_cmp(&pb).unwrap()
        })
        .unwrap();

    let mut cycle = vec![start];
    let (mut prev, mut cur) = (start, first);
    let budget = 4 * adjacency.iter().map(|a| a.len()).sum::<usize>() + 8;
    for _ in 0..budget {
        if cur == start {
            break;
        }
        cycle.push(cur);
        let back = (nodes[prev] - nodes[cur]).polar_angle();
        let next = *adjacency[cur]
            .iter()
            .min_by(|&&a, &&b| {
                let ga = ccw_gap(back, (nodes[a] - nodes[cur]).polar_angle());
                let gb = ccw_gap(back, (nodes[b] - nodes[cur]).polar_angle());
                ga.partial_cmp(&gb).unwrap()
            })
            .expect("walk entered an isolated node");
        prev = cur;
        cur = next;
    }
    if cur != start {
        return Err(Error::InternalInconsistency(
            "outer-face walk did not close".into(),
        ));
    }
    // A repeated node means the boundary pinches; the certified theory
    // forbids it, so surface the failure instead of returning a bad cycle.
    let mut seen = cycle.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != cycle.len() {
        return Err(Error::InternalInconsistency(
            "outer boundary touches itself".into(),
        ));
    }
    Ok(cycle.into_iter().map(|i| nodes[i]).collect())
}

/// Counter-clockwise gap from angle `from` to angle `to`, in (0, 2*pi].
fn ccw_gap(from: f64, to: f64) -> f64 {
    let mut g = (to - from).rem_euclid(std::f64::consts::TAU);
    if g <= 1e-12 {
        g = std::f64::consts::TAU;
    }
    g
}
