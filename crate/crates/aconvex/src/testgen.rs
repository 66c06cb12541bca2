//! Deterministic random shape generators for the test and acceptance
//! suites: convex hulls, rectilinear staircases and notched rectangles,
//! radial stars, open chain pairs for the merge lemmas, and
//! self-intersecting chains for loop elimination.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geom::{aco_polygon, convex_hull, orient_ccw, Polygon, Polyline, Vec2};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Convex polygon: hull of `n` random points in a disk.
pub fn convex_polygon(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> Polygon {
    loop {
        let pts: Vec<Vec2> = (0..n.max(3))
            .map(|_| {
                let a = rng.gen_range(0.0..std::f64::consts::TAU);
                let r = scale * rng.gen_range(0.2f64..1.0).sqrt();
                Vec2::new(r * a.cos(), r * a.sin())
            })
            .collect();
        let hull = convex_hull(&pts);
        if hull.len() >= 3 {
            if let Ok(p) = orient_ccw(&hull) {
                return p;
            }
        }
    }
}

/// Rectilinear staircase: isolated reflex corners, so `aco` is 0 (one
/// step) or -pi/2 and the polygon is always certified.
pub fn staircase_polygon(rng: &mut ChaCha8Rng, steps: usize, scale: f64) -> Polygon {
    let k = steps.clamp(1, 12);
    let w = scale;
    let h = scale * rng.gen_range(0.5..1.5);
    let mut xs = distinct_sorted(rng, k - 1, 0.05 * w, 0.95 * w);
    xs.reverse(); // descending
    let ys = distinct_sorted(rng, k - 1, 0.05 * h, 0.95 * h);
    let mut verts = vec![Vec2::new(0.0, 0.0), Vec2::new(w, 0.0)];
    let mut prev_x = w;
    for i in 0..k - 1 {
        verts.push(Vec2::new(prev_x, ys[i]));
        verts.push(Vec2::new(xs[i], ys[i]));
        prev_x = xs[i];
    }
    verts.push(Vec2::new(prev_x, h));
    verts.push(Vec2::new(0.0, h));
    orient_ccw(&verts).expect("staircase construction is simple")
}

/// Rectangle with a rectangular notch cut into the top edge: an adjacent
/// reflex pair, `aco = -pi` exactly (not certified).
pub fn notched_rectangle(rng: &mut ChaCha8Rng, scale: f64) -> Polygon {
    let w = scale;
    let h = scale * rng.gen_range(0.5..1.2);
    let a = rng.gen_range(0.15 * w..0.45 * w);
    let b = rng.gen_range(a + 0.1 * w..0.9 * w);
    let depth = rng.gen_range(0.2 * h..0.8 * h);
    orient_ccw(&[
        Vec2::new(0.0, 0.0),
        Vec2::new(w, 0.0),
        Vec2::new(w, h),
        Vec2::new(b, h),
        Vec2::new(b, h - depth),
        Vec2::new(a, h - depth),
        Vec2::new(a, h),
        Vec2::new(0.0, h),
    ])
    .expect("notched rectangle is simple")
}

/// Radial star: angularly sorted vertices at random radii. Simple by
/// construction; spiky radii can push `aco` to -pi and beyond.
pub fn star_polygon(rng: &mut ChaCha8Rng, n: usize, irregularity: f64) -> Polygon {
    let n = n.max(4);
    loop {
        let mut angles: Vec<f64> = (0..n)
            .map(|_| rng.gen_range(0.0..std::f64::consts::TAU))
            .collect();
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let min_gap = angles
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(std::f64::consts::TAU + angles[0] - angles[n - 1], f64::min);
        // A 20th of the mean gap keeps spikes manageable and stays
        // attainable at every n.
        if min_gap < std::f64::consts::TAU / (20.0 * n as f64) {
            continue;
        }
        let pts: Vec<Vec2> = angles
            .iter()
            .map(|&a| {
                let r = 1.0 + irregularity * rng.gen_range(-0.9f64..1.0);
                Vec2::new(r * a.cos(), r * a.sin())
            })
            .collect();
        if let Ok(p) = orient_ccw(&pts) {
            return p;
        }
    }
}

/// A random simple polygon from a mixed family (convex, staircase,
/// notched, star), with up to `max_n` vertices. No aco constraint.
pub fn simple_polygon(rng: &mut ChaCha8Rng, max_n: usize) -> Polygon {
    let family = rng.gen_range(0..4);
    let n = rng.gen_range(3..=max_n.max(5));
    match family {
        0 => convex_polygon(rng, n.max(3), 1.0),
        1 => staircase_polygon(rng, n.clamp(1, 6), 1.0),
        2 => notched_rectangle(rng, 1.0),
        _ => star_polygon(rng, n.max(4), 0.6),
    }
}

/// A polygon certified for the Minkowski theorems: `aco > -pi` with margin.
pub fn certified_polygon(rng: &mut ChaCha8Rng, max_n: usize) -> Polygon {
    loop {
        let family = rng.gen_range(0..3);
        let n = rng.gen_range(3..=max_n.max(5));
        let p = match family {
            0 => convex_polygon(rng, n.max(3), 1.0),
            1 => staircase_polygon(rng, n.clamp(1, 6), 1.0),
            _ => star_polygon(rng, n.max(4), 0.35),
        };
        if aco_polygon(&p).value > -std::f64::consts::PI + 0.05 {
            return p;
        }
    }
}

/// An open chain built from bounded random turns, rejecting any with a
/// turn window at or below -pi.
pub fn open_chain(rng: &mut ChaCha8Rng, shifts: usize) -> Polyline {
    loop {
        let turns: Vec<f64> = (0..shifts - 1)
            .map(|_| rng.gen_range(-1.25f64..1.25))
            .collect();
        if min_window(&turns) <= -std::f64::consts::PI + 0.1 {
            continue;
        }
        let lengths: Vec<f64> = (0..shifts).map(|_| rng.gen_range(0.2..2.0)).collect();
        let start = Vec2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if let Ok(chain) = Polyline::from_turns(start, Vec2::new(1.0, 0.0), &turns, &lengths) {
            return chain;
        }
    }
}

/// A pair of valid sorted-sum inputs: common random start direction, equal
/// rotations, both with `aco > -pi`.
pub fn chain_pair(rng: &mut ChaCha8Rng, n_p: usize, n_q: usize) -> (Polyline, Polyline) {
    let n_p = n_p.max(2);
    let n_q = n_q.max(2);
    let dirs = Vec2::new(1.0, 0.0).rotated(rng.gen_range(0.0..std::f64::consts::TAU));
    loop {
        // P: bounded turns, total rotation small enough for Q to match.
        let turns_p: Vec<f64> = (0..n_p - 1)
            .map(|_| rng.gen_range(-1.25f64..1.25))
            .collect();
        if min_window(&turns_p) <= -std::f64::consts::PI + 0.1 {
            continue;
        }
        let rot_p: f64 = turns_p.iter().sum();
        if rot_p.abs() > 0.9 * (n_q as f64 - 1.0) {
            continue;
        }
        // Q: raw turns shifted uniformly so the totals agree exactly.
        let raw: Vec<f64> = (0..n_q - 1).map(|_| rng.gen_range(-0.8f64..0.8)).collect();
        let adjust = (rot_p - raw.iter().sum::<f64>()) / (n_q as f64 - 1.0);
        let turns_q: Vec<f64> = raw.iter().map(|t| t + adjust).collect();
        if turns_q.iter().any(|t| t.abs() >= 1.45)
            || min_window(&turns_q) <= -std::f64::consts::PI + 0.1
        {
            continue;
        }
        let lengths_p: Vec<f64> = (0..n_p).map(|_| rng.gen_range(0.2..2.0)).collect();
        let lengths_q: Vec<f64> = (0..n_q).map(|_| rng.gen_range(0.2..2.0)).collect();
        let start_p = Vec2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let start_q = Vec2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let p = Polyline::from_turns(start_p, dirs, &turns_p, &lengths_p);
        let q = Polyline::from_turns(start_q, dirs, &turns_q, &lengths_q);
        if let (Ok(p), Ok(q)) = (p, q) {
            return (p, q);
        }
    }
}

/// A self-intersecting chain in general position with `aco > -pi`.
pub fn self_intersecting_chain(rng: &mut ChaCha8Rng, shifts: usize) -> Polyline {
    self_intersecting_chain_with(rng, shifts, 1)
}

/// As [`self_intersecting_chain`], requiring at least `min_crossings`
/// self-intersections.
pub fn self_intersecting_chain_with(
    rng: &mut ChaCha8Rng,
    shifts: usize,
    min_crossings: usize,
) -> Polyline {
    loop {
        let chain = open_chain(rng, shifts);
        if chain.self_intersections().len() >= min_crossings
            && crate::simplify::is_general_position(&chain)
        {
            return chain;
        }
    }
}

/// A chain of `k` loop motifs at disjoint parameter intervals: exactly one
/// crossing each, so full elimination takes exactly `k` removals.
pub fn chained_loops(k: usize) -> Polyline {
    let unit = [
        Vec2::new(0.0, 0.0),
        Vec2::new(2.0, 0.0),
        Vec2::new(2.0, 2.0),
        Vec2::new(1.0, 2.0),
        Vec2::new(1.0, -1.0),
        Vec2::new(3.0, -1.0),
    ];
    let mut verts = Vec::new();
    for i in 0..k.max(1) {
        let off = Vec2::new(4.0 * i as f64, 0.0);
        for p in unit {
            verts.push(p + off);
        }
    }
    verts.push(Vec2::new(4.0 * k.max(1) as f64, 0.0));
    Polyline::from_vertices(&verts).expect("motif chain is non-reverse")
}

/// A point strictly outside the polygon, clear of the boundary band.
pub fn exterior_point(rng: &mut ChaCha8Rng, k: &Polygon) -> Vec2 {
    let (lo, hi) = k.bounding_box();
    let span = hi - lo;
    let margin = span.norm() * 0.5;
    loop {
        let p = Vec2::new(
            rng.gen_range(lo.x - margin..hi.x + margin),
            rng.gen_range(lo.y - margin..hi.y + margin),
        );
        if !k.contains_point_strict(p) && k.distance_to_boundary(p) > span.norm() * 1e-6 {
            return p;
        }
    }
}

/// `count` sorted values spread in (lo, hi), separated by at least 2% span.
fn distinct_sorted(rng: &mut ChaCha8Rng, count: usize, lo: f64, hi: f64) -> Vec<f64> {
    let span = hi - lo;
    loop {
        let mut v: Vec<f64> = (0..count).map(|_| rng.gen_range(lo..hi)).collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if v.windows(2).all(|w| w[1] - w[0] > 0.02 * span) {
            return v;
        }
    }
}

fn min_window(turns: &[f64]) -> f64 {
    let mut best: f64 = 0.0;
    for a in 0..turns.len() {
        let mut acc = 0.0;
        for t in &turns[a..] {
            acc += t;
            best = best.min(acc);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::aco_polygon;

    #[test]
    fn staircases_are_certified() {
        let mut r = rng(11);
        for _ in 0..20 {
            let steps = r.gen_range(1..=8);
            let p = staircase_polygon(&mut r, steps, 1.0);
            let aco = aco_polygon(&p).value;
            assert!(aco > -std::f64::consts::PI + 0.1);
        }
    }

    #[test]
    fn notched_rectangles_have_aco_minus_pi() {
        let mut r = rng(12);
        for _ in 0..10 {
            let p = notched_rectangle(&mut r, 1.0);
            assert!((aco_polygon(&p).value + std::f64::consts::PI).abs() < 1e-9);
        }
    }

    #[test]
    fn chain_pairs_satisfy_the_merge_preconditions() {
        let mut r = rng(13);
        for _ in 0..20 {
            let (p, q) = chain_pair(&mut r, 6, 5);
            assert!(crate::sorted_sum::validate_pair(&p, &q).is_ok());
        }
    }

    #[test]
    fn chained_loops_cross_once_per_motif_in_parameter_order() {
        let c = chained_loops(3);
        assert_eq!(c.self_intersections().len(), 3);
        let first = crate::simplify::first_self_intersection(&c)
            .unwrap()
            .unwrap();
        assert!(first.point.dist(Vec2::new(1.0, 0.0)) < 1e-9);
    }

    #[test]
    fn generators_are_deterministic() {
        let a = convex_polygon(&mut rng(7), 10, 1.0);
        let b = convex_polygon(&mut rng(7), 10, 1.0);
        assert_eq!(a.vertices(), b.vertices());
    }
}
