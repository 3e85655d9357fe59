//! Triangle centers and derived triangles.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{CircleSpec, Point};
use crate::tol::tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Triangle {
    pub a: Point,
    pub b: Point,
    pub c: Point,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AngleKind {
    Acute,
    Right,
    Obtuse,
}

impl Triangle {
    pub const fn new(a: Point, b: Point, c: Point) -> Self {
        Triangle { a, b, c }
    }

    pub fn vertices(&self) -> [Point; 3] {
        [self.a, self.b, self.c]
    }

    /// The determinant `|x y 1|` over the three vertices: twice the signed area.
    pub fn det(&self) -> f64 {
        (self.b - self.a).cross(self.c - self.a)
    }

    pub fn area(&self) -> f64 {
        0.5 * self.det().abs()
    }

    pub fn is_ccw(&self) -> bool {
        self.det() > 0.0
    }

    /// Same vertex set, listed counterclockwise (swaps `b` and `c` if needed).
    pub fn to_ccw(&self) -> Triangle {
        if self.is_ccw() {
            *self
        } else {
            Triangle::new(self.a, self.c, self.b)
        }
    }

    /// Squared side lengths `[|BC|^2, |CA|^2, |AB|^2]`, each opposite its vertex.
    pub fn sides_sq(&self) -> [f64; 3] {
        [
            (self.b - self.c).norm_sq(),
            (self.c - self.a).norm_sq(),
            (self.a - self.b).norm_sq(),
        ]
    }

    pub fn sides(&self) -> [f64; 3] {
        self.sides_sq().map(f64::sqrt)
    }

    /// Longest side, used as the length scale for tolerances.
    pub fn scale(&self) -> f64 {
        self.sides_sq().into_iter().fold(0.0, f64::max).sqrt()
    }

    pub fn centroid(&self) -> Point {
        (self.a + self.b + self.c) * (1.0 / 3.0)
    }

    pub fn is_finite(&self) -> bool {
        self.vertices().iter().all(|p| p.is_finite())
    }

    pub fn check_nondegenerate(&self) -> Result<()> {
        let s = self.scale();
        if !self.is_finite() || !(s > 0.0) || self.det().abs() <= tolerance() * s * s {
            return Err(Error::DegenerateTriangle(format!(
                "vertices {:?}, {:?}, {:?} are (nearly) collinear",
                self.a, self.b, self.c
            )));
        }
        Ok(())
    }

    /// Cosines of the angles at `a`, `b`, `c` by the law of cosines.
    pub fn cosines(&self) -> [f64; 3] {
        let [a2, b2, c2] = self.sides_sq();
        let [a, b, c] = [a2.sqrt(), b2.sqrt(), c2.sqrt()];
        [
            (b2 + c2 - a2) / (2.0 * b * c),
            (c2 + a2 - b2) / (2.0 * c * a),
            (a2 + b2 - c2) / (2.0 * a * b),
        ]
    }

    /// Index (0 = `a`, 1 = `b`, 2 = `c`) of the vertex opposite the longest side.
    pub fn largest_angle_index(&self) -> usize {
        let s = self.sides_sq();
        let mut idx = 0;
        for i in 1..3 {
            if s[i] > s[idx] {
                idx = i;
            }
        }
        idx
    }

    /// Compares the longest squared side with the sum of the other two, with a
    /// relative band of width `tol` counted as right.
    pub fn angle_kind(&self, tol: f64) -> AngleKind {
        let s = self.sides_sq();
        let i = self.largest_angle_index();
        let longest = s[i];
        let rest = s[(i + 1) % 3] + s[(i + 2) % 3];
        let diff = longest - rest;
        if diff.abs() <= tol * longest {
            AngleKind::Right
        } else if diff > 0.0 {
            AngleKind::Obtuse
        } else {
            AngleKind::Acute
        }
    }

    /// Cyclic relabeling that puts vertex `i` first.
    pub fn rotated(&self, i: usize) -> Triangle {
        let v = self.vertices();
        Triangle::new(v[i % 3], v[(i + 1) % 3], v[(i + 2) % 3])
    }

    pub fn incircle(&self) -> Result<CircleSpec> {
        self.check_nondegenerate()?;
        let [la, lb, lc] = self.sides();
        let p = la + lb + lc;
        let center = (self.a * la + self.b * lb + self.c * lc) * (1.0 / p);
        CircleSpec::new(center, 2.0 * self.area() / p)
    }

    /// Reflection residual of the vertex set under `x -> mirror(x)`:
    /// the largest distance from a mirrored vertex to its nearest vertex.
    pub fn symmetry_residual(&self, mirror: impl Fn(Point) -> Point) -> f64 {
        let v = self.vertices();
        v.iter()
            .map(|&p| {
                let q = mirror(p);
                v.iter().map(|&r| r.dist(q)).fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    }
}

/// Circumcenter, circumradius, orthocenter, centroid, nine-point center and
/// de Longchamps point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CenterSet {
    pub o: Point,
    pub r: f64,
    pub h: Point,
    pub g: Point,
    pub n: Point,
    pub l: Point,
}

impl CenterSet {
    pub fn oh(&self) -> f64 {
        self.o.dist(self.h)
    }

    pub fn circumcircle(&self) -> CircleSpec {
        CircleSpec { center: self.o, radius: self.r }
    }
}

pub fn circumcenter(t: &Triangle) -> Result<Point> {
    t.check_nondegenerate()?;
    // solve for the center relative to `a` to keep the linear system well scaled
    let b = t.b - t.a;
    let c = t.c - t.a;
    let d = 2.0 * b.cross(c);
    let (b2, c2) = (b.norm_sq(), c.norm_sq());
    let rel = Point::new((c.y * b2 - b.y * c2) / d, (b.x * c2 - c.x * b2) / d);
    Ok(t.a + rel)
}

pub fn center_set(t: &Triangle) -> Result<CenterSet> {
    let o = circumcenter(t)?;
    let r = (t.a.dist(o) + t.b.dist(o) + t.c.dist(o)) / 3.0;
    let g = t.centroid();
    let h = 3.0 * g - 2.0 * o;
    Ok(CenterSet { o, r, h, g, n: o.midpoint(h), l: 2.0 * o - h })
}

/// Foot of the perpendicular from `p` to the line through `q` and `r`.
pub fn altitude_foot(p: Point, q: Point, r: Point) -> Point {
    let (dx, dy) = (q.x - r.x, q.y - r.y);
    let den = dx * dx + dy * dy;
    let cr = q.x * r.y - r.x * q.y;
    Point::new(
        (dx * (p.x * dx + p.y * dy) - dy * cr) / den,
        (dy * (p.y * dy + p.x * dx) + dx * cr) / den,
    )
}

/// Orthocenter as the intersection of two altitudes (independent of the
/// Euler-line shortcut used by [`center_set`]).
pub fn orthocenter_by_altitudes(t: &Triangle) -> Result<Point> {
    t.check_nondegenerate()?;
    // altitudes through a and b: (X - a).(c - b) = 0, (X - b).(a - c) = 0
    let n1 = t.c - t.b;
    let n2 = t.a - t.c;
    let (k1, k2) = (n1.dot(t.a), n2.dot(t.b));
    let det = n1.cross(n2);
    Ok(Point::new((k1 * n2.y - k2 * n1.y) / det, (n1.x * k2 - n2.x * k1) / det))
}

fn require_oblique(t: &Triangle, what: &str) -> Result<()> {
    t.check_nondegenerate()?;
    if t.angle_kind(tolerance()) == AngleKind::Right {
        return Err(Error::RightTriangle(format!("{what} is undefined for a right triangle")));
    }
    Ok(())
}

/// Feet of the altitudes `(H_A, H_B, H_C)`.
pub fn orthic_triangle(t: &Triangle) -> Result<Triangle> {
    require_oblique(t, "the orthic triangle")?;
    Ok(Triangle::new(
        altitude_foot(t.a, t.b, t.c),
        altitude_foot(t.b, t.c, t.a),
        altitude_foot(t.c, t.a, t.b),
    ))
}

pub fn homothety(p: Point, center: Point, k: f64) -> Point {
    center + (p - center) * k
}

pub fn homothety_image(t: &Triangle, center: Point, k: f64) -> Result<Triangle> {
    if k == 0.0 || !k.is_finite() {
        return Err(Error::ZeroRatio);
    }
    Ok(Triangle::new(homothety(t.a, center, k), homothety(t.b, center, k), homothety(t.c, center, k)))
}

/// Triangle bounded by the tangents to the circumcircle at the vertices.
/// Vertex `i` of the result is the pole of the side opposite vertex `i`.
pub fn tangential_triangle(t: &Triangle) -> Result<Triangle> {
    require_oblique(t, "the tangential triangle")?;
    let cs = center_set(t)?;
    let pole = |p: Point, q: Point| -> Result<Point> {
        let m = p.midpoint(q) - cs.o;
        let d2 = m.norm_sq();
        if d2.sqrt() <= tolerance() * cs.r {
            return Err(Error::RightTriangle("tangents at a diameter are parallel".into()));
        }
        Ok(cs.o + m * (cs.r * cs.r / d2))
    };
    Ok(Triangle::new(pole(t.b, t.c)?, pole(t.c, t.a)?, pole(t.a, t.b)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarCircle {
    pub center: Point,
    pub radius: f64,
}

/// `[|AH| |HH_A|, |BH| |HH_B|, |CH| |HH_C|]`.
pub fn orthocenter_power_products(t: &Triangle) -> Result<[f64; 3]> {
    let h = center_set(t)?.h;
    let feet = orthic_triangle(t)?;
    Ok([
        t.a.dist(h) * h.dist(feet.a),
        t.b.dist(h) * h.dist(feet.b),
        t.c.dist(h) * h.dist(feet.c),
    ])
}

pub fn polar_circle(t: &Triangle) -> Result<PolarCircle> {
    t.check_nondegenerate()?;
    if t.angle_kind(tolerance()) != AngleKind::Obtuse {
        return Err(Error::PolarCircleUndefined);
    }
    let h = center_set(t)?.h;
    let products = orthocenter_power_products(t)?;
    let mean = products.iter().sum::<f64>() / 3.0;
    Ok(PolarCircle { center: h, radius: mean.sqrt() })
}

/// `(|AB|^2 + |BC|^2 + |CA|^2) - (9 R^2 - |OH|^2)`.
pub fn euler_identity_residual(t: &Triangle) -> Result<f64> {
    let cs = center_set(t)?;
    let sum: f64 = t.sides_sq().iter().sum();
    Ok(sum - (9.0 * cs.r * cs.r - cs.oh().powi(2)))
}
