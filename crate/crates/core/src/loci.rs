//! Sampled curves: orthic-vertex locus, Cassini ovals and the circumcenter
//! locus of Remark-type curves, and the fixed tangential loci.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{admissible_arcs, triangle_at, PonceletConfig, Scenario};
use crate::geom::{CircleSpec, PlacedConic, Point};
use crate::invariants::tangential_family_objects;
use crate::triangle::altitude_foot;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polyline {
    pub points: Vec<Point>,
    pub closed: bool,
}

impl Polyline {
    pub fn new(points: Vec<Point>, closed: bool) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidArgument(format!("a polyline needs 2 points, got {}", points.len())));
        }
        if let Some(p) = points.iter().find(|p| !p.is_finite()) {
            return Err(Error::InvalidArgument(format!("non-finite polyline point {p:?}")));
        }
        Ok(Polyline { points, closed })
    }
}

fn require_n(n: usize) -> Result<()> {
    if n < 16 {
        return Err(Error::InvalidArgument(format!("need at least 16 samples, got {n}")));
    }
    Ok(())
}

/// Closed form of the foot of the altitude from the vertex at angle `theta`,
/// for a conic centered at the circumcenter.
pub fn orthic_vertex(r: f64, c: f64, theta: f64) -> Point {
    let (s, co) = theta.sin_cos();
    let (r2, c2) = (r * r, c * c);
    let den = 2.0 * r2 * ((r2 + c2).powi(2) - 4.0 * r2 * c2 * co * co);
    let f = -r * co * (r2 + c2) * ((r2 - c2).powi(2) - 4.0 * r2 * c2 * s * s) / den;
    let g = -r * s * (r2 - c2) * ((r2 + c2).powi(2) + 4.0 * r2 * c2 * co * co) / den;
    Point::new(f, g)
}

/// Feet of the altitudes from `A` over the family, sampled at `n` vertex
/// angles. Each point is checked against the constructed triangle.
pub fn orthic_vertex_locus(config: &PonceletConfig, n: usize) -> Result<Polyline> {
    require_n(n)?;
    if config.scenario != Scenario::CenterCoincident {
        return Err(Error::UnsupportedScenario("the orthic locus formula needs a centered conic".into()));
    }
    let (r, c) = (config.radius(), config.c());
    let class = admissible_arcs(config);
    let mut points = Vec::with_capacity(n);
    for theta in class.sample_angles(n) {
        let p = orthic_vertex(r, c, theta);
        let t = triangle_at(config, theta)?.triangle;
        let foot = altitude_foot(t.a, t.b, t.c);
        if p.dist(foot) > 1e-8 * r {
            return Err(Error::Verification(format!("orthic locus point {p:?} misses the foot {foot:?} at {theta}")));
        }
        points.push(p);
    }
    Polyline::new(points, class.is_full_circle())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CassiniVariant {
    /// `R^2 = d+ d-`: Cassini oval, a lemniscate at `R = c`.
    Oval,
    /// Circumcenter locus when the circumradius equals the major axis.
    MajorAxisLocus,
}

/// Coefficients `(p, q)` of `r^4 - 2 p r^2 + q = 0` at polar angle `phi`.
fn polar_quadratic(variant: CassiniVariant, r: f64, c: f64, phi: f64) -> (f64, f64) {
    let (r2, c2) = (r * r, c * c);
    let k = (2.0 * phi).cos();
    match variant {
        CassiniVariant::Oval => (c2 * k, c2 * c2 - r2 * r2),
        CassiniVariant::MajorAxisLocus => (r2 + c2 * k, 2.0 * r2 * c2 + c2 * c2),
    }
}

/// Left-hand side of the implicit equation.
pub fn cassini_implicit(variant: CassiniVariant, r: f64, c: f64, p: Point) -> f64 {
    let (r2, c2) = (r * r, c * c);
    let (x2, y2) = (p.x * p.x, p.y * p.y);
    let s = x2 + y2;
    match variant {
        CassiniVariant::Oval => s * s - (r2 * r2 - c2 * c2) - 2.0 * c2 * (x2 - y2),
        CassiniVariant::MajorAxisLocus => s * s - 2.0 * r2 * s - 2.0 * c2 * (x2 - y2) + 2.0 * r2 * c2 + c2 * c2,
    }
}

/// Samples the curve in polar form at `n` angles. Angles without a real
/// branch are skipped, so the curve may come back in several pieces (two
/// ovals, or the two lemniscate lobes).
pub fn cassini_locus(r: f64, c: f64, n: usize, variant: CassiniVariant) -> Result<Vec<Polyline>> {
    require_n(n)?;
    if !(r > 0.0) || !(c >= 0.0) || !r.is_finite() || !c.is_finite() {
        return Err(Error::InvalidArgument(format!("need R > 0 and c >= 0, got R = {r}, c = {c}")));
    }
    let phis: Vec<f64> = (0..n).map(|k| TAU * k as f64 / n as f64).collect();
    // outer and inner radius per angle, when real
    let radii: Vec<Option<(f64, Option<f64>)>> = phis
        .iter()
        .map(|&phi| {
            let (p, q) = polar_quadratic(variant, r, c, phi);
            let disc = p * p - q;
            if disc < 0.0 {
                return None;
            }
            let root = disc.sqrt();
            let outer = p + root;
            if outer <= 0.0 {
                return None;
            }
            // a zero radius is the lemniscate node, not a branch
            let inner = p - root;
            Some((outer.sqrt(), (inner > 0.0 && root > 0.0).then(|| inner.sqrt())))
        })
        .collect();

    let at = |phi: f64, rho: f64| Point::new(rho * phi.cos(), rho * phi.sin());
    let mut out = Vec::new();
    if radii.iter().all(|v| v.is_some_and(|(_, inner)| inner.is_none())) {
        let pts = phis.iter().zip(&radii).map(|(&phi, v)| at(phi, v.unwrap().0)).collect();
        out.push(Polyline::new(pts, true)?);
    } else {
        // start right after a gap so no run wraps around
        let start = radii.iter().position(|v| v.is_none()).map_or(0, |i| i + 1);
        let mut run: Vec<usize> = Vec::new();
        for k in 0..=n {
            let i = (start + k) % n;
            if k < n && radii[i].is_some() {
                run.push(i);
                continue;
            }
            if !run.is_empty() {
                let mut pts: Vec<Point> = run.iter().map(|&j| at(phis[j], radii[j].unwrap().0)).collect();
                pts.extend(run.iter().rev().filter_map(|&j| radii[j].unwrap().1.map(|rho| at(phis[j], rho))));
                if pts.len() >= 2 {
                    out.push(Polyline::new(pts, true)?);
                }
                run.clear();
            }
        }
    }

    let scale4 = (r * r + c * c).powi(2);
    for pl in &out {
        for p in &pl.points {
            if cassini_implicit(variant, r, c, *p).abs() > 1e-9 * scale4 {
                return Err(Error::Verification(format!("locus point {p:?} is off the curve")));
            }
        }
    }
    Ok(out)
}

/// Fixed curve carrying the vertices of the tangential triangles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum TangentialLocus {
    Circle(CircleSpec),
    Ellipse(PlacedConic),
}

pub fn tangential_vertex_locus(config: &PonceletConfig) -> Result<TangentialLocus> {
    let obj = tangential_family_objects(config)?;
    match (obj.circumcircle, obj.circum_ellipse) {
        (Some(c), _) => Ok(TangentialLocus::Circle(c)),
        (None, Some(e)) => Ok(TangentialLocus::Ellipse(e)),
        _ => Err(Error::Verification("no tangential locus".into())),
    }
}
