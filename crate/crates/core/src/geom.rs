//! Points, lines, circles and central conics in standard position.
//!
//! A central conic is `x^2/alpha + y^2/beta = 1` with `alpha > 0` and
//! `beta != 0`. Its Joachimsthal symbol
//! `S(P, Q) = x_P x_Q / alpha + y_P y_Q / beta - 1` drives polars, tangents
//! and section ratios along tangent chords.

use std::f64::consts::TAU;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol::tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    /// Point at angle `theta` on the circle of radius `r` about `center`.
    pub fn polar(center: Point, r: f64, theta: f64) -> Self {
        Point::new(center.x + r * theta.cos(), center.y + r * theta.sin())
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the planar cross product.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    pub fn midpoint(self, other: Point) -> Point {
        Point::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }

    /// Counterclockwise rotation about the origin.
    pub fn rotate(self, angle: f64) -> Point {
        let (s, c) = angle.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Mul<Point> for f64 {
    type Output = Point;
    fn mul(self, p: Point) -> Point {
        p * self
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// The line `u x + v y + w = 0`, stored with `u^2 + v^2 = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line {
    pub u: f64,
    pub v: f64,
    pub w: f64,
}

impl Line {
    pub fn new(u: f64, v: f64, w: f64) -> Result<Self> {
        let n = u.hypot(v);
        if !(n > 0.0) || !n.is_finite() || !w.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "line coefficients ({u}, {v}, {w}) do not define a line"
            )));
        }
        Ok(Line { u: u / n, v: v / n, w: w / n })
    }

    pub fn through(p: Point, q: Point) -> Result<Self> {
        let d = q - p;
        Line::new(d.y, -d.x, p.y * d.x - p.x * d.y)
            .map_err(|_| Error::GeometricInconsistency("line through coincident points".into()))
    }

    /// Signed distance of `p` from the line.
    pub fn eval(&self, p: Point) -> f64 {
        self.u * p.x + self.v * p.y + self.w
    }

    /// Unit direction vector along the line.
    pub fn direction(&self) -> Point {
        Point::new(-self.v, self.u)
    }

    pub fn normal(&self) -> Point {
        Point::new(self.u, self.v)
    }

    /// Intersection point, `None` for (numerically) parallel lines.
    pub fn intersect(&self, other: &Line) -> Option<Point> {
        let det = self.u * other.v - self.v * other.u;
        if det.abs() < 1e-15 {
            return None;
        }
        Some(Point::new(
            (self.v * other.w - other.v * self.w) / det,
            (other.u * self.w - self.u * other.w) / det,
        ))
    }

    /// Orthogonal projection of `p` onto the line.
    pub fn project(&self, p: Point) -> Point {
        p - self.normal() * self.eval(p)
    }

    /// True when both lines describe the same locus (coefficients agree up to sign).
    pub fn same_as(&self, other: &Line, tol: f64) -> bool {
        let d1 = (self.u - other.u).abs() + (self.v - other.v).abs() + (self.w - other.w).abs();
        let d2 = (self.u + other.u).abs() + (self.v + other.v).abs() + (self.w + other.w).abs();
        d1.min(d2) < tol
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleSpec {
    pub center: Point,
    pub radius: f64,
}

impl CircleSpec {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() || !center.is_finite() {
            return Err(Error::InvalidArgument(format!("circle radius {radius} must be positive")));
        }
        Ok(CircleSpec { center, radius })
    }

    /// `|P - center|^2 - r^2`.
    pub fn residual(&self, p: Point) -> f64 {
        (p - self.center).norm_sq() - self.radius * self.radius
    }

    pub fn point_at(&self, theta: f64) -> Point {
        Point::polar(self.center, self.radius, theta)
    }

    /// Angle of `p` seen from the center, in `[0, 2*pi)`.
    pub fn angle_of(&self, p: Point) -> f64 {
        let d = p - self.center;
        d.y.atan2(d.x).rem_euclid(TAU)
    }

    /// Tangent line at the circle point `p`.
    pub fn tangent_at(&self, p: Point) -> Line {
        let n = (p - self.center) * (1.0 / self.radius);
        Line { u: n.x, v: n.y, w: -n.dot(p) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConicKind {
    Ellipse,
    Hyperbola,
}

/// `x^2/alpha + y^2/beta = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CentralConicStd {
    pub alpha: f64,
    pub beta: f64,
}

impl CentralConicStd {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::InvalidConic(format!("alpha = {alpha} must be positive")));
        }
        if beta == 0.0 || !beta.is_finite() {
            return Err(Error::InvalidConic(format!("beta = {beta} must be finite and nonzero")));
        }
        Ok(CentralConicStd { alpha, beta })
    }

    /// Ellipse from its semi-axes along x and y.
    pub fn ellipse(semi_x: f64, semi_y: f64) -> Result<Self> {
        CentralConicStd::new(semi_x * semi_x, semi_y * semi_y)
    }

    pub fn kind(&self) -> ConicKind {
        if self.beta > 0.0 {
            ConicKind::Ellipse
        } else {
            ConicKind::Hyperbola
        }
    }

    /// Linear eccentricity when the focal axis is x (`alpha >= beta`).
    pub fn focal_distance(&self) -> f64 {
        (self.alpha - self.beta).max(0.0).sqrt()
    }

    /// `S_PP`: negative inside an ellipse, zero on the conic.
    pub fn implicit(&self, p: Point) -> f64 {
        joachimsthal(self, p, p)
    }

    /// True when two real tangents can be drawn from `p`.
    ///
    /// Tangents exist iff `alpha * beta * S_PP > 0`; for a hyperbola this is
    /// the region between the branches.
    pub fn is_exterior(&self, p: Point, tol: f64) -> bool {
        self.beta.signum() * self.implicit(p) > tol
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConicParams {
    pub kind: ConicKind,
    /// Semi-major (transverse for hyperbolas) axis.
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub e: f64,
    pub foci: (Point, Point),
    /// True when an ellipse was supplied with `alpha < beta`.
    pub major_on_y: bool,
}

impl ConicParams {
    /// Rebuilds `(alpha, beta)`.
    pub fn to_std(&self) -> CentralConicStd {
        let (a2, b2) = (self.a * self.a, self.b * self.b);
        match (self.kind, self.major_on_y) {
            (ConicKind::Ellipse, false) => CentralConicStd { alpha: a2, beta: b2 },
            (ConicKind::Ellipse, true) => CentralConicStd { alpha: b2, beta: a2 },
            (ConicKind::Hyperbola, _) => CentralConicStd { alpha: a2, beta: -b2 },
        }
    }
}

pub fn conic_params(conic: &CentralConicStd) -> Result<ConicParams> {
    let conic = CentralConicStd::new(conic.alpha, conic.beta)?;
    let (alpha, beta) = (conic.alpha, conic.beta);
    let params = match conic.kind() {
        ConicKind::Ellipse => {
            let major_on_y = alpha < beta;
            let (a, b) = if major_on_y { (beta.sqrt(), alpha.sqrt()) } else { (alpha.sqrt(), beta.sqrt()) };
            let c = (alpha - beta).abs().sqrt();
            let foci = if major_on_y {
                (Point::new(0.0, c), Point::new(0.0, -c))
            } else {
                (Point::new(c, 0.0), Point::new(-c, 0.0))
            };
            ConicParams { kind: ConicKind::Ellipse, a, b, c, e: c / a, foci, major_on_y }
        }
        ConicKind::Hyperbola => {
            let (a, b) = (alpha.sqrt(), (-beta).sqrt());
            let c = (alpha - beta).sqrt();
            ConicParams {
                kind: ConicKind::Hyperbola,
                a,
                b,
                c,
                e: c / a,
                foci: (Point::new(c, 0.0), Point::new(-c, 0.0)),
                major_on_y: false,
            }
        }
    };
    Ok(params)
}

/// `S_PQ = x_P x_Q / alpha + y_P y_Q / beta - 1`.
pub fn joachimsthal(conic: &CentralConicStd, p: Point, q: Point) -> f64 {
    p.x * q.x / conic.alpha + p.y * q.y / conic.beta - 1.0
}

/// Polar of `p`; the tangent at `p` when `p` lies on the conic.
pub fn polar_line(conic: &CentralConicStd, p: Point) -> Result<Line> {
    let (u, v) = (p.x / conic.alpha, p.y / conic.beta);
    if u == 0.0 && v == 0.0 {
        return Err(Error::NoPolar);
    }
    Line::new(u, v, -1.0)
}

/// `alpha u^2 + beta v^2 - w^2` for a normalized line; zero iff tangent.
pub fn line_conic_tangency(conic: &CentralConicStd, line: &Line) -> f64 {
    conic.alpha * line.u * line.u + conic.beta * line.v * line.v - line.w * line.w
}

/// Point of contact of a tangent line (the pole of the line).
pub fn tangency_point(conic: &CentralConicStd, line: &Line) -> Option<Point> {
    if line.w.abs() < 1e-300 {
        return None;
    }
    Some(Point::new(-conic.alpha * line.u / line.w, -conic.beta * line.v / line.w))
}

/// Tangent lines from `p`, sorted by the counterclockwise angle of their
/// contact points in `[0, 2*pi)`.
///
/// Line normals `(u, v)` through `p` solve the binary quadratic
/// `(alpha - x^2) u^2 - 2 x y u v + (beta - y^2) v^2 = 0`, whose
/// discriminant is `alpha * beta * S_PP`.
pub fn tangents_from_point(conic: &CentralConicStd, p: Point) -> Vec<Line> {
    let tol = tolerance();
    let s_pp = conic.implicit(p);
    if s_pp.abs() < tol {
        return polar_line(conic, p).into_iter().collect();
    }
    let qa = conic.alpha - p.x * p.x;
    let qb = -p.x * p.y;
    let qc = conic.beta - p.y * p.y;
    let disc = qb * qb - qa * qc;
    if disc <= 0.0 {
        return Vec::new();
    }
    let root = disc.sqrt();
    let q = if qb >= 0.0 { -(qb + root) } else { -(qb - root) };
    let mut lines: Vec<(f64, Line)> = [(q, qa), (qc, q)]
        .into_iter()
        .filter_map(|(u, v)| {
            let n = u.hypot(v);
            if !(n > 0.0) {
                return None;
            }
            let (u, v) = (u / n, v / n);
            let line = Line { u, v, w: -(u * p.x + v * p.y) };
            let t = tangency_point(conic, &line)?;
            Some((t.y.atan2(t.x).rem_euclid(TAU), line))
        })
        .collect();
    lines.sort_by(|a, b| a.0.total_cmp(&b.0));
    lines.into_iter().map(|(_, l)| l).collect()
}

/// Second intersection of `line` with `circle`, given one intersection `p`.
///
/// Returns `p` itself when the line is tangent to the circle.
pub fn circle_line_second_intersection(circle: &CircleSpec, line: &Line, p: Point) -> Result<Point> {
    let tol = tolerance();
    let r = circle.radius;
    let dist = line.eval(circle.center);
    if dist.abs() > r * (1.0 + tol) {
        return Err(Error::GeometricInconsistency(format!(
            "line misses the circle (distance {} > radius {r})",
            dist.abs()
        )));
    }
    if circle.residual(p).abs() > tol.sqrt() * r * r || line.eval(p).abs() > tol.sqrt() * r {
        return Err(Error::GeometricInconsistency("start point is not on both circle and line".into()));
    }
    let d = line.direction();
    let t = -2.0 * d.dot(p - circle.center);
    Ok(p + d * t)
}

/// A standard conic rotated by `rotation` and then translated to `center`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlacedConic {
    pub base: CentralConicStd,
    pub center: Point,
    /// Radians in `(-pi/2, pi/2]`.
    pub rotation: f64,
}

impl PlacedConic {
    pub fn new(base: CentralConicStd, center: Point, rotation: f64) -> Self {
        PlacedConic { base, center, rotation: reduce_half_turn(rotation) }
    }

    pub fn to_local(&self, p: Point) -> Point {
        (p - self.center).rotate(-self.rotation)
    }

    pub fn to_world(&self, p: Point) -> Point {
        p.rotate(self.rotation) + self.center
    }

    /// `S_PP` of the base conic at the preimage of `p`.
    pub fn implicit(&self, p: Point) -> f64 {
        self.base.implicit(self.to_local(p))
    }

    pub fn line_to_local(&self, line: &Line) -> Line {
        let n = line.normal().rotate(-self.rotation);
        Line { u: n.x, v: n.y, w: line.w + line.normal().dot(self.center) }
    }

    /// Tangency residual of a world-frame line, measured in the conic frame.
    pub fn tangency(&self, line: &Line) -> f64 {
        line_conic_tangency(&self.base, &self.line_to_local(line))
    }

    /// Contact point of a tangent world-frame line.
    pub fn tangency_point(&self, line: &Line) -> Option<Point> {
        tangency_point(&self.base, &self.line_to_local(line)).map(|p| self.to_world(p))
    }

    pub fn params(&self) -> Result<ConicParams> {
        conic_params(&self.base)
    }

    pub fn foci(&self) -> Result<(Point, Point)> {
        let p = self.params()?;
        Ok((self.to_world(p.foci.0), self.to_world(p.foci.1)))
    }

    /// Closed outline for an ellipse, or the two branches of a hyperbola cut
    /// at parameter `|t| <= t_max`.
    pub fn outline(&self, n: usize, t_max: f64) -> Vec<Vec<Point>> {
        let n = n.max(8);
        let sa = self.base.alpha.sqrt();
        let sb = self.base.beta.abs().sqrt();
        match self.base.kind() {
            ConicKind::Ellipse => vec![(0..n)
                .map(|k| {
                    let t = TAU * k as f64 / n as f64;
                    self.to_world(Point::new(sa * t.cos(), sb * t.sin()))
                })
                .collect()],
            ConicKind::Hyperbola => [1.0, -1.0]
                .iter()
                .map(|&side| {
                    (0..=n)
                        .map(|k| {
                            let t = -t_max + 2.0 * t_max * k as f64 / n as f64;
                            self.to_world(Point::new(side * sa * t.cosh(), sb * t.sinh()))
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

/// Reduces an axis angle to `(-pi/2, pi/2]`.
pub fn reduce_half_turn(theta: f64) -> f64 {
    let half = std::f64::consts::PI;
    let mut t = theta.rem_euclid(half);
    if t > 0.5 * half {
        t -= half;
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn placed_conic_frames() {
        let pc = PlacedConic::new(CentralConicStd::new(4.0, 1.0).unwrap(), Point::new(1.0, 2.0), 0.3);
        let p = Point::new(-0.4, 0.7);
        let q = pc.to_world(pc.to_local(p));
        assert!(p.dist(q) < 1e-15);
        // the image of the vertex tangent x = 2 is tangent in world coordinates
        let a = pc.to_world(Point::new(2.0, -1.0));
        let b = pc.to_world(Point::new(2.0, 1.0));
        assert!(pc.tangency(&Line::through(a, b).unwrap()).abs() < 1e-14);
        assert_relative_eq!(reduce_half_turn(-std::f64::consts::FRAC_PI_2), std::f64::consts::FRAC_PI_2);
        assert_relative_eq!(reduce_half_turn(3.0), 3.0 - std::f64::consts::PI);
    }

    fn c1()-> CentralConicStd {
        CentralConicStd::new(25.0 / 16.0, 9.0 / 16.0).unwrap()
    }

    #[test]
    fn params_of_axis_aligned_ellipse() {
        let p = conic_params(&CentralConicStd::new(1.5625, 0.5625).unwrap()).unwrap();
        assert_eq!(p.kind, ConicKind::Ellipse);
        assert_relative_eq!(p.a, 1.25);
        assert_relative_eq!(p.b, 0.75);
        assert_relative_eq!(p.c, 1.0);
        assert_relative_eq!(p.e, 0.8);
        assert_eq!(p.foci, (Point::new(1.0, 0.0), Point::new(-1.0, 0.0)));
    }

    #[test]
    fn params_of_circle_and_hyperbola() {
        let p = conic_params(&CentralConicStd::new(1.0, 1.0).unwrap()).unwrap();
        assert_eq!((p.a, p.b, p.c, p.e), (1.0, 1.0, 0.0, 0.0));

        let h = conic_params(&CentralConicStd::new(0.5625, -0.4375).unwrap()).unwrap();
        assert_eq!(h.kind, ConicKind::Hyperbola);
        assert_relative_eq!(h.a, 0.75);
        assert_relative_eq!(h.b, 0.661437827766, epsilon = 1e-12);
        assert_relative_eq!(h.c, 1.0);
        assert_relative_eq!(h.e, 4.0 / 3.0);
    }

    #[test]
    fn major_axis_on_y_when_alpha_below_beta() {
        let p = conic_params(&CentralConicStd::new(0.5625, 1.5625).unwrap()).unwrap();
        assert!(p.major_on_y);
        assert_eq!(p.foci.0, Point::new(0.0, 1.0));
        assert_eq!(p.to_std(), CentralConicStd::new(0.5625, 1.5625).unwrap());
    }

    #[test]
    fn invalid_conics_rejected() {
        assert!(matches!(CentralConicStd::new(0.0, 1.0), Err(Error::InvalidConic(_))));
        assert!(matches!(CentralConicStd::new(1.0, 0.0), Err(Error::InvalidConic(_))));
        assert!(conic_params(&CentralConicStd { alpha: -1.0, beta: 1.0 }).is_err());
    }

    #[test]
    fn joachimsthal_examples() {
        let c = c1();
        assert_eq!(joachimsthal(&c, Point::ORIGIN, Point::ORIGIN), -1.0);
        let a = Point::new(0.0, 2.0);
        let b = Point::new(-55f64.sqrt() / 4.0, -0.75);
        assert_relative_eq!(joachimsthal(&c, a, b), -11.0 / 3.0, epsilon = 1e-12);
        assert_relative_eq!(joachimsthal(&c, b, b), 2.2, epsilon = 1e-12);
    }

    #[test]
    fn polar_examples() {
        let unit = CentralConicStd::new(1.0, 1.0).unwrap();
        let l = polar_line(&unit, Point::new(2.0, 0.0)).unwrap();
        assert!(l.same_as(&Line::new(1.0, 0.0, -0.5).unwrap(), 1e-15));

        let l = polar_line(&c1(), Point::new(1.25, 0.0)).unwrap();
        assert!(l.same_as(&Line::new(1.0, 0.0, -1.25).unwrap(), 1e-15));

        let l = polar_line(&c1(), Point::new(0.0, 2.0)).unwrap();
        assert!(l.same_as(&Line::new(0.0, 1.0, -9.0 / 32.0).unwrap(), 1e-15));
        for t in tangents_from_point(&c1(), Point::new(0.0, 2.0)) {
            let touch = tangency_point(&c1(), &t).unwrap();
            assert!(l.eval(touch).abs() < 1e-12);
        }

        assert_eq!(polar_line(&c1(), Point::ORIGIN), Err(Error::NoPolar));
    }

    #[test]
    fn tangents_from_exterior_point_of_unit_circle() {
        let unit = CentralConicStd::new(1.0, 1.0).unwrap();
        let lines = tangents_from_point(&unit, Point::new(2.0, 0.0));
        assert_eq!(lines.len(), 2);
        let touches: Vec<Point> = lines.iter().map(|l| tangency_point(&unit, l).unwrap()).collect();
        let h = 3f64.sqrt() / 2.0;
        assert_relative_eq!(touches[0].x, 0.5, epsilon = 1e-12);
        assert_relative_eq!(touches[0].y, h, epsilon = 1e-12);
        assert_relative_eq!(touches[1].y, -h, epsilon = 1e-12);
    }

    #[test]
    fn tangent_counts() {
        assert!(tangents_from_point(&c1(), Point::ORIGIN).is_empty());
        assert_eq!(tangents_from_point(&c1(), Point::new(1.25, 0.0)).len(), 1);
        // between the branches of a hyperbola two tangents exist although S_PP < 0
        let h = CentralConicStd::new(0.5625, -0.4375).unwrap();
        assert_eq!(tangents_from_point(&h, Point::new(0.0, 0.5)).len(), 2);
        assert!(tangents_from_point(&h, Point::new(3.0, 0.0)).is_empty());
    }

    #[test]
    fn tangency_residual_examples() {
        let unit = CentralConicStd::new(1.0, 1.0).unwrap();
        assert_eq!(line_conic_tangency(&unit, &Line::new(1.0, 0.0, -1.0).unwrap()), 0.0);
        assert_eq!(line_conic_tangency(&c1(), &Line::new(1.0, 0.0, -1.25).unwrap()), 0.0);
        assert_eq!(line_conic_tangency(&c1(), &Line::new(0.0, 1.0, 0.75).unwrap()), 0.0);
    }

    #[test]
    fn second_intersection_examples() {
        let unit = CircleSpec::new(Point::ORIGIN, 1.0).unwrap();
        let x_axis = Line::new(0.0, 1.0, 0.0).unwrap();
        let q = circle_line_second_intersection(&unit, &x_axis, Point::new(1.0, 0.0)).unwrap();
        assert_relative_eq!(q.x, -1.0);
        assert!(q.y.abs() < 1e-15);

        let c = CircleSpec::new(Point::new(1.0, 0.0), 2.5).unwrap();
        let q = circle_line_second_intersection(&c, &x_axis, Point::new(-1.5, 0.0)).unwrap();
        assert_relative_eq!(q.x, 3.5);

        let tangent = Line::new(1.0, 0.0, -1.0).unwrap();
        let q = circle_line_second_intersection(&unit, &tangent, Point::new(1.0, 0.0)).unwrap();
        assert_eq!(q, Point::new(1.0, 0.0));

        let miss = Line::new(1.0, 0.0, -3.0).unwrap();
        assert!(matches!(
            circle_line_second_intersection(&unit, &miss, Point::new(1.0, 0.0)),
            Err(Error::GeometricInconsistency(_))
        ));
    }
}
