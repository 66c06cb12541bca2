use crate::geom::{signed_angle, Polygon, Polyline};

/// Angular convexity of a chain or polygon boundary: the minimum rotation
/// over contiguous sub-chains, together with the arc achieving it.
///
/// The value is always <= 0, and 0 exactly when every turn is nonnegative
/// (a convex boundary). The witness is the shift range `[witness_start,
/// witness_end]`, inclusive; on a polygon it may wrap past the end.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AcoReport {
    pub value: f64,
    pub witness_start: usize,
    pub witness_end: usize,
}

/// Angular convexity of an open chain.
///
/// Minimum of `rot` over all contiguous sub-chains; a single shift has
/// rotation 0, so the result is never positive.
pub fn aco_open(p: &Polyline) -> AcoReport {
    assert!(!p.is_closed(), "aco_open expects an open chain");
    let turns = p.turn_angles();
    let n = p.shifts().len();
    // Prefix sums of the turn sequence: window [a, b) of turns is the
    // rotation of the sub-chain of shifts [a, b].
    let mut prefix = vec![0.0; turns.len() + 1];
    for (i, t) in turns.iter().enumerate() {
        prefix[i + 1] = prefix[i] + t;
    }
    let mut best = f64::INFINITY;
    let mut witness = (0, 0);
    for width in 0..n {
        for a in 0..(n - width) {
            let sum = prefix[a + width] - prefix[a];
            if sum < best - 1e-12 {
                best = sum;
                witness = (a, a + width);
            }
        }
    }
    AcoReport {
        value: best.min(0.0),
        witness_start: witness.0,
        witness_end: witness.1,
    }
}

/// Angular convexity of a polygon boundary.
///
/// Minimum cyclic-window sum of the boundary turn angles over windows of
/// fewer than `n` turns (every boundary arc is simple because the boundary
/// is). Result in (-inf, 0].
pub fn aco_polygon(k: &Polygon) -> AcoReport {
    let turns = k.boundary().turn_angles();
    let n = turns.len();
    // Doubled turn array so cyclic windows become plain windows.
    let mut prefix = vec![0.0; 2 * n + 1];
    for i in 0..2 * n {
        prefix[i + 1] = prefix[i] + turns[i % n];
    }
    let mut best = f64::INFINITY;
    let mut witness = (0, 0);
    for width in 0..n {
        for a in 0..n {
            let sum = prefix[a + width] - prefix[a];
            if sum < best - 1e-12 {
                best = sum;
                witness = (a, (a + width) % n);
            }
        }
    }
    AcoReport {
        value: best.min(0.0),
        witness_start: witness.0,
        witness_end: witness.1,
    }
}

/// Oracle for [`aco_open`]: explicit enumeration of every contiguous
/// sub-chain, re-deriving each rotation from the shift directions.
pub fn aco_open_bruteforce(p: &Polyline) -> AcoReport {
    assert!(!p.is_closed());
    let dirs: Vec<_> = p.shifts().iter().map(|s| s.direction()).collect();
    let n = dirs.len();
    let mut best = f64::INFINITY;
    let mut witness = (0, 0);
    for a in 0..n {
        for b in a..n {
            let mut rot = 0.0;
            for i in a..b {
                rot += signed_angle(dirs[i], dirs[i + 1]).expect("non-reverse invariant");
            }
            if rot < best - 1e-12 {
                best = rot;
                witness = (a, b);
            }
        }
    }
    AcoReport {
        value: best.min(0.0),
        witness_start: witness.0,
        witness_end: witness.1,
    }
}

/// Oracle for [`aco_polygon`]: explicit enumeration of every boundary arc.
pub fn aco_polygon_bruteforce(k: &Polygon) -> AcoReport {
    let dirs: Vec<_> = k
        .boundary()
        .shifts()
        .iter()
        .map(|s| s.direction())
        .collect();
    let n = dirs.len();
    let mut best = f64::INFINITY;
    let mut witness = (0, 0);
    for a in 0..n {
        for len in 1..=n {
            let mut rot = 0.0;
            for i in 0..(len - 1) {
                rot += signed_angle(dirs[(a + i) % n], dirs[(a + i + 1) % n])
                    .expect("non-reverse invariant");
            }
            if rot < best - 1e-12 {
                best = rot;
                witness = (a, (a + len - 1) % n);
            }
        }
    }
    AcoReport {
        value: best.min(0.0),
        witness_start: witness.0,
        witness_end: witness.1,
    }
}
