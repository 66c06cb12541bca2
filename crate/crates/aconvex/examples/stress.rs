// Robustness probe: certified sums over many seeds and sizes, probe-checked.
use aconvex::geom::{aco_polygon, eps_geom, Vec2};
use aconvex::minkowski::{certify, member, minkowski_sum};
use aconvex::separation::{region_disjoint, separate};
use aconvex::testgen;
use rand::Rng;

fn main() {
    let mut sums = 0usize;
    let mut witnesses = 0usize;
    for seed in [1u64, 2, 3, 4, 5, 77, 1234, 99999] {
        let mut rng = testgen::rng(seed);
        for case in 0..25 {
            let k = testgen::certified_polygon(&mut rng, 24);
            let l = testgen::certified_polygon(&mut rng, 24);
            let cert = certify(&k, &l);
            let sum = match minkowski_sum(&k, &l) {
                Ok(s) => s,
                Err(e) => panic!("seed {seed} case {case}: sum failed: {e}"),
            };
            sum.polygon.validate().unwrap();
            assert!(aco_polygon(&sum.polygon).value >= cert.aco_lower_bound - 1e-9);
            let (klo, khi) = k.bounding_box();
            let (llo, lhi) = l.bounding_box();
            let (lo, hi) = (klo + llo, khi + lhi);
            let band = 10.0 * eps_geom((hi - lo).norm());
            for gi in 0..30 {
                for gj in 0..30 {
                    let p = Vec2::new(
                        lo.x + (gi as f64 + 0.5) / 30.0 * (hi.x - lo.x),
                        lo.y + (gj as f64 + 0.5) / 30.0 * (hi.y - lo.y),
                    );
                    if sum.polygon.distance_to_boundary(p) <= band {
                        continue;
                    }
                    assert_eq!(
                        sum.polygon.contains_point_strict(p),
                        member(&k, &l, p),
                        "seed {seed} case {case}: disagreement at {p}"
                    );
                }
            }
            sums += 1;
            // A couple of separation witnesses per polygon too.
            for _ in 0..2 {
                let x = testgen::exterior_point(&mut rng, &k);
                match separate(&k, x) {
                    Ok(w) => {
                        assert!(region_disjoint(&w, &k), "seed {seed}: witness not disjoint");
                        witnesses += 1;
                    }
                    Err(e) => panic!("seed {seed}: separate failed at {x}: {e}"),
                }
            }
            let _ = rng.gen_range(0..2); // decorrelate streams slightly
        }
    }
    println!("stress: {sums} sums and {witnesses} witnesses verified across 8 seeds");
}
