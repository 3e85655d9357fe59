//! The one-parameter family of triangles inscribed in a circle and
//! circumscribed about a central conic in standard position.
//!
//! A family member is built from one vertex: `A` is the circle point at angle
//! `theta` about the circle's center, the two tangents from `A` to the conic
//! meet the circle again at the other two vertices, and the third side closes
//! on its own (the porism). Its tangency residual is reported, never forced.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{map_slice, ExecMode};
use crate::geom::{
    circle_line_second_intersection, conic_params, line_conic_tangency, tangents_from_point,
    CentralConicStd, CircleSpec, ConicKind, Line, Point,
};
use crate::tol::tolerance;
use crate::triangle::Triangle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scenario {
    CenterCoincident,
    FocusCoincident,
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TriangleKind {
    AllAcute,
    AllObtuse,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PonceletConfig {
    pub circle: CircleSpec,
    pub conic: CentralConicStd,
    pub d_plus: f64,
    pub d_minus: f64,
    pub scenario: Scenario,
}

/// `(R^2 - d+^2)(R^2 - d-^2) - 4 beta R^2`, zero exactly for a 3-Poncelet pair.
///
/// For a hyperbola `beta = -b^2`, so the sign `epsilon` of the conic is
/// already carried by `beta`.
pub fn check_criterion(circle: &CircleSpec, conic: &CentralConicStd) -> f64 {
    let (dp, dm) = focal_distances(circle.center, conic);
    let r2 = circle.radius * circle.radius;
    (r2 - dp * dp) * (r2 - dm * dm) - 4.0 * conic.beta * r2
}

fn focal_distances(center: Point, conic: &CentralConicStd) -> (f64, f64) {
    let c = conic.focal_distance();
    (center.dist(Point::new(c, 0.0)), center.dist(Point::new(-c, 0.0)))
}

impl PonceletConfig {
    /// Validates the pair and derives `d+`, `d-` and the scenario.
    pub fn new(circle: CircleSpec, conic: CentralConicStd) -> Result<Self> {
        let circle = CircleSpec::new(circle.center, circle.radius)?;
        let conic = CentralConicStd::new(conic.alpha, conic.beta)?;
        if conic.kind() == ConicKind::Ellipse && conic.alpha < conic.beta {
            return Err(Error::InvalidConic(
                "the focal axis must lie on the x-axis (alpha >= beta)".into(),
            ));
        }
        let r = circle.radius;
        let tol = tolerance();
        let residual = check_criterion(&circle, &conic);
        if residual.abs() > tol * r.powi(4) {
            return Err(Error::NotPonceletPair { residual });
        }
        let (d_plus, d_minus) = focal_distances(circle.center, &conic);
        let scenario = if circle.center.norm() <= tol * r {
            Scenario::CenterCoincident
        } else if d_plus.min(d_minus) <= tol * r {
            Scenario::FocusCoincident
        } else {
            Scenario::General
        };
        Ok(PonceletConfig { circle, conic, d_plus, d_minus, scenario })
    }

    pub fn radius(&self) -> f64 {
        self.circle.radius
    }

    /// Linear eccentricity of the conic.
    pub fn c(&self) -> f64 {
        self.conic.focal_distance()
    }

    /// `+1` when the circle is centered at `(c, 0)`, `-1` at `(-c, 0)`.
    pub fn focus_side(&self) -> f64 {
        if self.circle.center.x >= 0.0 {
            1.0
        } else {
            -1.0
        }
    }

    fn require_special(&self, what: &str) -> Result<()> {
        if self.scenario == Scenario::General {
            return Err(Error::UnsupportedScenario(format!(
                "{what} needs the circumcenter at the center or a focus of the conic"
            )));
        }
        Ok(())
    }
}

/// Builds the standard configuration for a given circumradius and linear
/// eccentricity. The focus case puts the circle at `(c, 0)`.
pub fn make_config(r: f64, c: f64, scenario: Scenario) -> Result<PonceletConfig> {
    if !(r > 0.0) || !r.is_finite() || !(c >= 0.0) || !c.is_finite() {
        return Err(Error::InvalidArgument(format!("need R > 0 and c >= 0, got R = {r}, c = {c}")));
    }
    let tol = tolerance();
    let (center, alpha, beta) = match scenario {
        Scenario::CenterCoincident => {
            if (r - c).abs() <= tol * r {
                return Err(Error::DegenerateConic("R = c leaves no central conic".into()));
            }
            let a = (r * r + c * c) / (2.0 * r);
            let b = (r * r - c * c) / (2.0 * r);
            (Point::ORIGIN, a * a, b * b)
        }
        Scenario::FocusCoincident => {
            if (r - 2.0 * c).abs() <= tol * r {
                return Err(Error::DegenerateConic("R = 2c leaves no central conic".into()));
            }
            (Point::new(c, 0.0), r * r / 4.0, r * r / 4.0 - c * c)
        }
        Scenario::General => {
            return Err(Error::UnsupportedScenario("use general_config for an arbitrary center".into()))
        }
    };
    PonceletConfig::new(CircleSpec::new(center, r)?, CentralConicStd::new(alpha, beta)?)
}

/// The unique conic with foci `(+-c, 0)` making a 3-Poncelet pair with the
/// circle of radius `r` about `center`.
pub fn general_config(center: Point, r: f64, c: f64) -> Result<PonceletConfig> {
    if !(r > 0.0) || !(c >= 0.0) {
        return Err(Error::InvalidArgument(format!("need R > 0 and c >= 0, got R = {r}, c = {c}")));
    }
    let dp = center.dist(Point::new(c, 0.0));
    let dm = center.dist(Point::new(-c, 0.0));
    let r2 = r * r;
    let beta = (r2 - dp * dp) * (r2 - dm * dm) / (4.0 * r2);
    if beta.abs() <= tolerance() * r2 {
        return Err(Error::DegenerateConic("a focus lies on the circle".into()));
    }
    let alpha = beta + c * c;
    if !(alpha > 0.0) {
        return Err(Error::DegenerateConic(format!("alpha = {alpha} is not positive")));
    }
    PonceletConfig::new(CircleSpec::new(center, r)?, CentralConicStd::new(alpha, beta)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilySample {
    pub theta: f64,
    pub triangle: Triangle,
    pub closure_residual: f64,
}

/// Tangent construction without arc bookkeeping; `None` when `theta` gives no
/// proper triangle.
fn construct(config: &PonceletConfig, theta: f64) -> Option<FamilySample> {
    let tol = tolerance();
    let r = config.circle.radius;
    let theta = theta.rem_euclid(TAU);
    let a = config.circle.point_at(theta);
    if config.conic.beta.signum() * config.conic.implicit(a) <= tol {
        return None;
    }
    let lines = tangents_from_point(&config.conic, a);
    if lines.len() != 2 {
        return None;
    }
    let b = circle_line_second_intersection(&config.circle, &lines[0], a).ok()?;
    let c = circle_line_second_intersection(&config.circle, &lines[1], a).ok()?;
    let t = Triangle::new(a, b, c);
    if t.det().abs() <= tol * r * r {
        return None;
    }
    let closing = Line::through(b, c).ok()?;
    let closure_residual = line_conic_tangency(&config.conic, &closing).abs();
    Some(FamilySample { theta, triangle: t.to_ccw(), closure_residual })
}

/// The family member with vertex `A` at angle `theta`; `A, B, C` run
/// counterclockwise on the circle.
pub fn triangle_at(config: &PonceletConfig, theta: f64) -> Result<FamilySample> {
    construct(config, theta).ok_or_else(|| Error::InadmissibleVertex {
        theta: theta.rem_euclid(TAU),
        arcs: admissible_arcs(config).admissible_arcs,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyClassification {
    pub conic_kind: ConicKind,
    /// `None` for a general-position circumcenter.
    pub triangle_kind: Option<TriangleKind>,
    /// Open arcs `(lo, hi)` with `lo` in `[0, 2 pi)`; an arc wrapping past
    /// angle zero has `hi > 2 pi`.
    pub admissible_arcs: Vec<(f64, f64)>,
    /// Points where the circle meets the conic.
    pub boundary_points: Vec<Point>,
    /// Circle points whose tangent touches the conic; the triangle there
    /// collapses, so they split admissible arcs.
    pub degenerate_points: Vec<Point>,
    pub right_triangle_count_bound: u32,
}

impl FamilyClassification {
    pub fn contains(&self, theta: f64) -> bool {
        let t = theta.rem_euclid(TAU);
        self.admissible_arcs
            .iter()
            .any(|&(lo, hi)| (t > lo && t < hi) || (t + TAU > lo && t + TAU < hi) || (lo == 0.0 && hi == TAU && t == 0.0))
    }

    pub fn total_length(&self) -> f64 {
        self.admissible_arcs.iter().map(|(lo, hi)| hi - lo).sum()
    }

    pub fn is_full_circle(&self) -> bool {
        self.admissible_arcs == [(0.0, TAU)]
    }

    /// `n` angles spread evenly over the admissible arcs. On a full circle
    /// these are `2 pi k / n`; otherwise they sit at cell midpoints so no
    /// sample lands on an arc endpoint.
    pub fn sample_angles(&self, n: usize) -> Vec<f64> {
        if n == 0 || self.admissible_arcs.is_empty() {
            return Vec::new();
        }
        if self.is_full_circle() {
            return (0..n).map(|k| TAU * k as f64 / n as f64).collect();
        }
        let step = self.total_length() / n as f64;
        let mut out = Vec::with_capacity(n);
        let mut arc = 0;
        let mut offset = 0.0;
        for k in 0..n {
            let mut s = (k as f64 + 0.5) * step - offset;
            while arc + 1 < self.admissible_arcs.len() {
                let len = self.admissible_arcs[arc].1 - self.admissible_arcs[arc].0;
                if s < len {
                    break;
                }
                s -= len;
                offset += len;
                arc += 1;
            }
            out.push((self.admissible_arcs[arc].0 + s).rem_euclid(TAU));
        }
        out
    }
}

const SCAN: usize = 2880;

fn bisect(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn scan_roots(f: impl Fn(f64) -> f64) -> Vec<f64> {
    let mut roots = Vec::new();
    let step = TAU / SCAN as f64;
    let mut prev = f(0.0);
    for i in 1..=SCAN {
        let t = step * i as f64;
        let cur = f(t);
        if prev == 0.0 {
            roots.push(t - step);
        } else if cur != 0.0 && (cur > 0.0) != (prev > 0.0) {
            roots.push(bisect(&f, t - step, t));
        }
        prev = cur;
    }
    roots.into_iter().map(|t| t.rem_euclid(TAU)).collect()
}

fn exterior_fn(config: &PonceletConfig) -> impl Fn(f64) -> f64 + '_ {
    move |t| config.conic.beta.signum() * config.conic.implicit(config.circle.point_at(t))
}

fn degeneracy_fn(config: &PonceletConfig) -> impl Fn(f64) -> f64 + '_ {
    move |t| {
        let (s, c) = t.sin_cos();
        let o = config.circle.center;
        let w = -(c * o.x + s * o.y + config.circle.radius);
        config.conic.alpha * c * c + config.conic.beta * s * s - w * w
    }
}

fn analytic_boundary(config: &PonceletConfig) -> Option<Vec<Point>> {
    let r = config.radius();
    let c = config.c();
    match config.scenario {
        Scenario::CenterCoincident => {
            if r >= c {
                return Some(Vec::new());
            }
            let (r2, c2) = (r * r, c * c);
            let x = (r2 + c2) * ((r2 + c2) * (3.0 * r2 - c2)).sqrt() / (4.0 * r2 * c);
            let y = (r2 - c2) * (-(r2 - c2) * (3.0 * r2 + c2)).sqrt() / (4.0 * r2 * c);
            // X+-, then Y+-
            Some(vec![Point::new(x, -y), Point::new(-x, -y), Point::new(x, y), Point::new(-x, y)])
        }
        Scenario::FocusCoincident => {
            if r >= 2.0 * c {
                return Some(Vec::new());
            }
            let side = config.focus_side();
            let x = 3.0 * r * r / (4.0 * c);
            let y = (-(r - 2.0 * c) * (r + 2.0 * c) * (3.0 * r - 2.0 * c) * (3.0 * r + 2.0 * c)).sqrt()
                / (4.0 * c);
            Some(vec![Point::new(side * x, y), Point::new(side * x, -y)])
        }
        Scenario::General => None,
    }
}

fn dedup_sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    let mut out: Vec<f64> = Vec::with_capacity(v.len());
    for t in v {
        if out.last().is_none_or(|&l| t - l > 1e-12) {
            out.push(t);
        }
    }
    if out.len() > 1 && out[0] + TAU - out[out.len() - 1] <= 1e-12 {
        out.pop();
    }
    out
}

/// Admissible arcs of the vertex angle and the points that bound them.
///
/// Arc endpoints are found numerically (sign changes of the exterior test and
/// of the circle-tangent tangency, refined by bisection); each arc is then
/// kept when the family triangle at its midpoint exists and closes.
pub fn admissible_arcs(config: &PonceletConfig) -> FamilyClassification {
    let r = config.radius();
    let ext = exterior_fn(config);
    let deg = degeneracy_fn(config);
    let boundary_thetas = scan_roots(&ext);
    let degenerate_thetas = scan_roots(&deg);
    let cuts = dedup_sorted(boundary_thetas.iter().chain(&degenerate_thetas).copied().collect());

    let good = |t: f64| construct(config, t).is_some_and(|s| s.closure_residual <= 1e-6 * r * r);
    let mut arcs = Vec::new();
    if cuts.is_empty() {
        if good(0.0) && good(std::f64::consts::PI) {
            arcs.push((0.0, TAU));
        }
    } else {
        for (i, &lo) in cuts.iter().enumerate() {
            let hi = if i + 1 < cuts.len() { cuts[i + 1] } else { cuts[0] + TAU };
            if good(0.5 * (lo + hi)) {
                arcs.push((lo, hi));
            }
        }
    }
    arcs.sort_by(|a, b| a.0.total_cmp(&b.0));

    let boundary_points = analytic_boundary(config)
        .unwrap_or_else(|| boundary_thetas.iter().map(|&t| config.circle.point_at(t)).collect());
    let degenerate_points = degenerate_thetas.iter().map(|&t| config.circle.point_at(t)).collect();

    let conic_kind = config.conic.kind();
    let triangle_kind = match config.scenario {
        Scenario::CenterCoincident if r > config.c() => Some(TriangleKind::AllAcute),
        Scenario::CenterCoincident => Some(TriangleKind::AllObtuse),
        Scenario::FocusCoincident if conic_kind == ConicKind::Ellipse => Some(TriangleKind::AllAcute),
        Scenario::FocusCoincident => Some(TriangleKind::AllObtuse),
        Scenario::General => None,
    };
    FamilyClassification {
        conic_kind,
        triangle_kind,
        admissible_arcs: arcs,
        boundary_points,
        degenerate_points,
        right_triangle_count_bound: 0,
    }
}

/// Classification of a centered or focal family.
pub fn classify(config: &PonceletConfig) -> Result<FamilyClassification> {
    config.require_special("classification")?;
    let r = config.radius();
    let c = config.c();
    match config.scenario {
        Scenario::CenterCoincident if 3.0 * r * r <= c * c => {
            return Err(Error::InfeasibleConfig(format!("3R^2 = {} does not exceed c^2 = {}", 3.0 * r * r, c * c)))
        }
        Scenario::FocusCoincident if 3.0 * r <= 2.0 * c => {
            return Err(Error::InfeasibleConfig(format!("3R = {} does not exceed 2c = {}", 3.0 * r, 2.0 * c)))
        }
        _ => {}
    }
    // one focus inside and one outside the circle exactly for hyperbolas
    let same_side = (r - config.d_plus) * (r - config.d_minus) > 0.0;
    let expected = if same_side { ConicKind::Ellipse } else { ConicKind::Hyperbola };
    if expected != config.conic.kind() {
        return Err(Error::GeometricInconsistency(format!(
            "focus positions imply {expected:?} but beta gives {:?}",
            config.conic.kind()
        )));
    }
    Ok(admissible_arcs(config))
}

/// Circle carrying the orthocenters of the family: centered at the
/// reflection of the circumcenter in the conic center, radius `d+ d- / R`.
/// The radius is zero in the focal case.
pub fn orthocenter_circle(config: &PonceletConfig) -> CircleSpec {
    CircleSpec { center: -config.circle.center, radius: config.d_plus * config.d_minus / config.radius() }
}

/// Discriminant deciding whether the circumcircle meets the orthocenter
/// circle; negative means no right triangle in the family.
pub fn orthocenter_circle_disc(config: &PonceletConfig) -> f64 {
    let r2 = config.radius().powi(2);
    let p = config.d_plus * config.d_minus;
    let o2 = config.circle.center.norm_sq();
    -((r2 + p).powi(2) - 4.0 * r2 * o2) * ((r2 - p).powi(2) - 4.0 * r2 * o2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisRelations {
    pub r_from_axes: f64,
    pub oh: f64,
}

/// Circumradius recovered from the semi-axes and the constant `|OH|`.
pub fn axis_relations(config: &PonceletConfig) -> Result<AxisRelations> {
    config.require_special("axis relations")?;
    let p = conic_params(&config.conic)?;
    let r = config.radius();
    let c = config.c();
    let rel = match config.scenario {
        Scenario::CenterCoincident => AxisRelations {
            r_from_axes: if r > c { p.a + p.b } else { p.a - p.b },
            oh: c * c / r,
        },
        _ => AxisRelations { r_from_axes: 2.0 * p.a, oh: 2.0 * c },
    };
    if (rel.r_from_axes - r).abs() > tolerance() * r {
        return Err(Error::Verification(format!(
            "semi-axes give R = {} but the circle has radius {r}",
            rel.r_from_axes
        )));
    }
    Ok(rel)
}

/// Family members at `n` angles spread over the admissible arcs.
pub fn sample_family(config: &PonceletConfig, n: usize, mode: ExecMode) -> Result<Vec<FamilySample>> {
    let class = admissible_arcs(config);
    let thetas = class.sample_angles(n);
    let samples: Vec<FamilySample> =
        map_slice(&thetas, mode, |&t| construct(config, t)).into_iter().flatten().collect();
    if samples.len() < n.clamp(1, 3) {
        return Err(Error::InsufficientSamples { found: samples.len(), needed: n.clamp(1, 3) });
    }
    Ok(samples)
}
