//! SVG 1.1 figure emission: filled polygons, separation wedges, and slope
//! diagrams (cumulative turn angle against normalized arc length).

use crate::geom::{Polygon, Vec2};
use crate::io::fmt_sig;
use crate::separation::AngularRegion;

const WIDTH: f64 = 800.0;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

/// A figure under construction. Coordinates are fitted to the union
/// bounding box with a 5% margin; polygons are filled at 30% opacity;
/// witness regions are drawn as clipped wedges.
#[derive(Default)]
pub struct Scene {
    polygons: Vec<(String, Polygon)>,
    regions: Vec<AngularRegion>,
    slope_diagrams: bool,
}

impl Scene {
    pub fn new() -> Scene {
        Scene::default()
    }

    pub fn add_polygon(&mut self, name: &str, k: &Polygon) -> &mut Scene {
        self.polygons.push((name.to_string(), k.clone()));
        self
    }

    pub fn add_region(&mut self, region: &AngularRegion) -> &mut Scene {
        self.regions.push(*region);
        self
    }

    /// Also draw one slope diagram per polygon below the main viewport.
    pub fn with_slope_diagrams(&mut self) -> &mut Scene {
        self.slope_diagrams = true;
        self
    }

    pub fn render(&self) -> String {
        let (lo, hi) = self.world_box();
        let span_x = (hi.x - lo.x).max(1e-9);
        let span_y = (hi.y - lo.y).max(1e-9);
        let scale = WIDTH / span_x;
        let main_h = span_y * scale;
        let band_h = 180.0;
        let total_h = if self.slope_diagrams {
            main_h + band_h * self.polygons.len() as f64
        } else {
            main_h
        };
        // Flip y: geometry grows upward, SVG downward.
        let map = |p: Vec2| -> (f64, f64) { ((p.x - lo.x) * scale, (hi.y - p.y) * scale) };

        let mut body = String::new();
        for (i, region) in self.regions.iter().enumerate() {
            body.push_str(&self.wedge_path(region, span_x + span_y, map, i));
        }
        for (i, (name, poly)) in self.polygons.iter().enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            let pts: Vec<String> = poly
                .vertices()
                .iter()
                .map(|&p| {
                    let (x, y) = map(p);
                    format!("{},{}", fmt_sig(x, 8), fmt_sig(y, 8))
                })
                .collect();
            body.push_str(&format!(
                "  <polygon points=\"{}\" fill=\"{color}\" fill-opacity=\"0.3\" \
                 stroke=\"{color}\" stroke-width=\"1.5\"><title>{name}</title></polygon>\n",
                pts.join(" ")
            ));
        }
        if self.slope_diagrams {
            for (i, (name, poly)) in self.polygons.iter().enumerate() {
                let top = main_h + band_h * i as f64;
                body.push_str(&self.slope_diagram(name, poly, top, band_h, i));
            }
        }
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
             width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n{body}</svg>\n",
            w = fmt_sig(WIDTH, 8),
            h = fmt_sig(total_h.max(10.0), 8),
        )
    }

    fn world_box(&self) -> (Vec2, Vec2) {
        let mut bounds: Option<(Vec2, Vec2)> = None;
        let mut grow = |p: Vec2| {
            bounds = Some(match bounds {
                None => (p, p),
                Some((lo, hi)) => (
                    Vec2::new(lo.x.min(p.x), lo.y.min(p.y)),
                    Vec2::new(hi.x.max(p.x), hi.y.max(p.y)),
                ),
            });
        };
        for (_, poly) in &self.polygons {
            let (a, b) = poly.bounding_box();
            grow(a);
            grow(b);
        }
        for r in &self.regions {
            grow(r.apex);
        }
        let Some((lo, hi)) = bounds else {
            return (Vec2::ZERO, Vec2::new(1.0, 1.0));
        };
        let margin = (hi - lo).norm().max(1e-9) * 0.05;
        (
            lo - Vec2::new(margin, margin),
            hi + Vec2::new(margin, margin),
        )
    }

    fn wedge_path(
        &self,
        region: &AngularRegion,
        reach: f64,
        map: impl Fn(Vec2) -> (f64, f64),
        idx: usize,
    ) -> String {
        let r = reach * 2.0;
        let mut pts = vec![region.apex];
        let arc_steps = 24;
        for s in 0..=arc_steps {
            let ang = region.measure * s as f64 / arc_steps as f64;
            pts.push(region.apex + region.ray1_dir.rotated(ang) * r);
        }
        let mapped: Vec<String> = pts
            .iter()
            .map(|&p| {
                let (x, y) = map(p);
                format!("{},{}", fmt_sig(x, 8), fmt_sig(y, 8))
            })
            .collect();
        let color = PALETTE[(idx + 3) % PALETTE.len()];
        format!(
            "  <polygon points=\"{}\" fill=\"{color}\" fill-opacity=\"0.15\" \
             stroke=\"{color}\" stroke-dasharray=\"6 3\" stroke-width=\"1\"/>\n",
            mapped.join(" ")
        )
    }

    /// Step plot of the boundary direction lift against arc length, with
    /// the angular-convexity witness arc shaded.
    fn slope_diagram(
        &self,
        name: &str,
        poly: &Polygon,
        top: f64,
        band_h: f64,
        idx: usize,
    ) -> String {
        let color = PALETTE[idx % PALETTE.len()];
        let shifts = poly.boundary().shifts();
        let turns = poly.boundary().turn_angles();
        let total: f64 = poly.boundary().total_length();
        let mut lift = shifts[0].direction().polar_angle();
        let mut arc = 0.0;
        let mut lifts = Vec::with_capacity(shifts.len() + 1);
        for (i, s) in shifts.iter().enumerate() {
            lifts.push((arc / total, lift));
            arc += s.length();
            if i < turns.len() {
                lift += turns[i];
            }
        }
        lifts.push((1.0, lift));
        let (lo_l, hi_l) = lifts
            .iter()
            .fold((f64::MAX, f64::MIN), |(a, b), &(_, l)| (a.min(l), b.max(l)));
        let pad = 14.0;
        let y_of = |l: f64| top + pad + (hi_l - l) / (hi_l - lo_l).max(1e-9) * (band_h - 2.0 * pad);
        let x_of = |t: f64| t * WIDTH;

        let mut d = String::new();
        for (i, &(t, l)) in lifts.iter().enumerate() {
            if i == 0 {
                d.push_str(&format!(
                    "M {} {}",
                    fmt_sig(x_of(t), 8),
                    fmt_sig(y_of(l), 8)
                ));
            } else {
                // Horizontal run at the previous lift, then the jump.
                let prev = lifts[i - 1].1;
                d.push_str(&format!(
                    " L {} {} L {} {}",
                    fmt_sig(x_of(t), 8),
                    fmt_sig(y_of(prev), 8),
                    fmt_sig(x_of(t), 8),
                    fmt_sig(y_of(l), 8)
                ));
            }
        }
        // Witness arc of the angular convexity, shaded.
        let report = crate::geom::aco_polygon(poly);
        let prefix: Vec<f64> = {
            let mut acc = 0.0;
            let mut v = vec![0.0];
            for s in shifts {
                acc += s.length();
                v.push(acc);
            }
            v
        };
        let (ws, we) = (report.witness_start, report.witness_end);
        let x0 = prefix[ws] / total;
        let x1 = if we >= ws {
            prefix[we + 1] / total
        } else {
            1.0 // wrapped witness: shade to the end of the band
        };
        format!(
            "  <g><text x=\"4\" y=\"{ty}\" font-size=\"12\" fill=\"{color}\">{name}: slope \
             diagram, aco = {aco}</text>\n  <rect x=\"{rx}\" y=\"{rt}\" width=\"{rw}\" \
             height=\"{rh}\" fill=\"#d62728\" fill-opacity=\"0.12\"/>\n  <path d=\"{d}\" \
             fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/></g>\n",
            ty = fmt_sig(top + 12.0, 8),
            aco = crate::io::fmt_radians(report.value),
            rx = fmt_sig(x_of(x0), 8),
            rt = fmt_sig(top + pad, 8),
            rw = fmt_sig((x_of(x1) - x_of(x0)).max(1.0), 8),
            rh = fmt_sig(band_h - 2.0 * pad, 8),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::orient_ccw;

    fn v(x: f64, y: f64) -> Vec2 {
        Vec2::new(x, y)
    }

    #[test]
    fn render_contains_the_polygon_and_valid_svg_envelope() {
        let poly = orient_ccw(&[
            v(0., 0.),
            v(2., 0.),
            v(2., 1.),
            v(1., 1.),
            v(1., 2.),
            v(0., 2.),
        ])
        .unwrap();
        let mut scene = Scene::new();
        scene.add_polygon("lshape", &poly).with_slope_diagrams();
        let svg = scene.render();
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert!(svg.contains("<polygon"));
        assert!(svg.contains("slope diagram"));
        assert!(svg.contains("fill-opacity=\"0.3\""));
    }

    #[test]
    fn render_is_deterministic() {
        let poly = orient_ccw(&[v(0., 0.), v(1., 0.), v(0.5, 1.)]).unwrap();
        let mut a = Scene::new();
        a.add_polygon("t", &poly);
        let mut b = Scene::new();
        b.add_polygon("t", &poly);
        assert_eq!(a.render(), b.render());
    }

    #[test]
    fn wedge_is_rendered_dashed() {
        let poly = orient_ccw(&[v(0., 0.), v(1., 0.), v(0.5, 1.)]).unwrap();
        let region = crate::separation::separate(&poly, v(3.0, 0.5)).unwrap();
        let mut scene = Scene::new();
        scene.add_polygon("t", &poly).add_region(&region);
        let svg = scene.render();
        assert!(svg.contains("stroke-dasharray"));
    }
}
