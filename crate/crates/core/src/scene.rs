//! Figure descriptions rendered to standalone SVG.
//!
//! Rendering is deterministic: fixed element order, fixed decimal precision,
//! no timestamps, so equal scenes give byte-identical files.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::family::{FamilySample, PonceletConfig};
use crate::geom::{CircleSpec, PlacedConic, Point};
use crate::loci::Polyline;
use crate::triangle::Triangle;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SceneDescription {
    pub circles: Vec<CircleSpec>,
    pub conics: Vec<PlacedConic>,
    pub triangles: Vec<Triangle>,
    pub polylines: Vec<Polyline>,
    pub labels: Vec<(Point, String)>,
}

const CURVE_SAMPLES: usize = 256;
const HYPERBOLA_T: f64 = 2.0;

impl SceneDescription {
    /// Circumcircle, conic and the given family members.
    pub fn for_family(config: &PonceletConfig, samples: &[FamilySample]) -> Self {
        SceneDescription {
            circles: vec![config.circle],
            conics: vec![PlacedConic::new(config.conic, Point::ORIGIN, 0.0)],
            triangles: samples.iter().map(|s| s.triangle).collect(),
            ..Default::default()
        }
    }

    fn conic_paths(&self) -> Vec<(Vec<Point>, bool)> {
        self.conics
            .iter()
            .flat_map(|c| {
                let closed = c.base.beta > 0.0;
                c.outline(CURVE_SAMPLES, HYPERBOLA_T).into_iter().map(move |p| (p, closed))
            })
            .collect()
    }

    fn bounds(&self, conic_paths: &[(Vec<Point>, bool)]) -> (Point, Point) {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        let mut add = |p: Point| {
            if p.is_finite() {
                lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
                hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
            }
        };
        for c in &self.circles {
            add(c.center - Point::new(c.radius, c.radius));
            add(c.center + Point::new(c.radius, c.radius));
        }
        conic_paths.iter().flat_map(|(p, _)| p).for_each(|&p| add(p));
        self.triangles.iter().flat_map(|t| t.vertices()).for_each(&mut add);
        self.polylines.iter().flat_map(|p| &p.points).for_each(|&p| add(p));
        self.labels.iter().for_each(|(p, _)| add(*p));
        if !lo.x.is_finite() {
            return (Point::new(-1.0, -1.0), Point::new(1.0, 1.0));
        }
        let pad = 0.05 * (hi.x - lo.x).max(hi.y - lo.y).max(1e-9);
        (lo - Point::new(pad, pad), hi + Point::new(pad, pad))
    }

    /// SVG 1.1 document `width_px` wide with a y-up coordinate system.
    pub fn to_svg(&self, width_px: u32) -> String {
        let conic_paths = self.conic_paths();
        let (lo, hi) = self.bounds(&conic_paths);
        let (w, h) = (hi.x - lo.x, hi.y - lo.y);
        let height_px = (width_px as f64 * h / w).round().max(1.0) as u32;
        let stroke = 0.003 * w.max(h);
        let n = |x: f64| {
            let s = format!("{x:.6}");
            if s == "-0.000000" { "0.000000".to_string() } else { s }
        };
        let pts = |ps: &[Point]| ps.iter().map(|p| format!("{},{}", n(p.x), n(p.y))).collect::<Vec<_>>().join(" ");

        let mut s = String::new();
        s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
        let _ = writeln!(
            s,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width_px}\" height=\"{height_px}\" viewBox=\"{} {} {} {}\">",
            n(lo.x),
            n(-hi.y),
            n(w),
            n(h)
        );
        let _ = writeln!(s, "<g transform=\"scale(1,-1)\" fill=\"none\" stroke-width=\"{}\">", n(stroke));
        for c in &self.circles {
            let _ = writeln!(
                s,
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" stroke=\"black\"/>",
                n(c.center.x),
                n(c.center.y),
                n(c.radius)
            );
        }
        for (p, closed) in &conic_paths {
            let tag = if *closed { "polygon" } else { "polyline" };
            let _ = writeln!(s, "<{tag} points=\"{}\" stroke=\"blue\"/>", pts(p));
        }
        for t in &self.triangles {
            let _ = writeln!(s, "<polygon points=\"{}\" stroke=\"green\"/>", pts(&t.vertices()));
        }
        for pl in &self.polylines {
            let tag = if pl.closed { "polygon" } else { "polyline" };
            let _ = writeln!(s, "<{tag} points=\"{}\" stroke=\"red\"/>", pts(&pl.points));
        }
        s.push_str("</g>\n");
        if !self.labels.is_empty() {
            let _ = writeln!(s, "<g font-size=\"{}\" fill=\"black\">", n(0.03 * w.max(h)));
            for (p, text) in &self.labels {
                let _ = writeln!(s, "<text x=\"{}\" y=\"{}\">{}</text>", n(p.x), n(-p.y), escape(text));
            }
            s.push_str("</g>\n");
        }
        s.push_str("</svg>\n");
        s
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
