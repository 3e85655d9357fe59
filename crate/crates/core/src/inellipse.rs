//! Special conics inscribed in a given triangle: the inellipse centered at
//! the circumcenter, the conic with foci at the circumcenter and orthocenter,
//! and the Steiner in- and circumellipse.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::PonceletConfig;
use crate::geom::{reduce_half_turn, CentralConicStd, CircleSpec, ConicKind, PlacedConic, Point};
use crate::tol::tolerance;
use crate::triangle::{center_set, AngleKind, Triangle};

fn require_oblique(t: &Triangle) -> Result<()> {
    t.check_nondegenerate()?;
    if t.angle_kind(tolerance()) == AngleKind::Right {
        return Err(Error::RightTriangle(
            "the orthocenter lies on the circumcircle, so no such central conic exists".into(),
        ));
    }
    Ok(())
}

/// Axis direction of the inellipse centered at the circumcenter, from the
/// foci read off a complex quadratic. `t` must already be translated so the
/// circumcenter is the origin.
fn axis_angle(t: &Triangle) -> f64 {
    let t = t.to_ccw();
    let det2 = |p: Point, q: Point| p.cross(q);
    let d = det2(t.a, t.b) + det2(t.b, t.c) + det2(t.c, t.a);
    let l = 2.0 * det2(t.b, t.c) - d;
    let m = -2.0 * det2(t.a, t.c) - d;
    let n = 2.0 * det2(t.a, t.b) - d;
    let z = |p: Point| Complex64::new(p.x, p.y);
    let (za, zb, zc) = (z(t.a), z(t.b), z(t.c));
    let alpha = Complex64::new(-d, 0.0);
    let beta = l * (zb + zc) + m * (zc + za) + n * (za + zb);
    let gamma = l * zb * zc + m * zc * za + n * za * zb;
    let w = (beta * beta - 4.0 * alpha * gamma).sqrt() / alpha;
    if w.re.abs() < tolerance() * w.norm() {
        return std::f64::consts::FRAC_PI_2;
    }
    reduce_half_turn((w.im / w.re).atan())
}

/// The unique inscribed ellipse whose center is the circumcenter.
pub fn inellipse_centered_at_circumcenter(t: &Triangle) -> Result<PlacedConic> {
    require_oblique(t)?;
    let cs = center_set(t)?;
    let r = cs.r;
    let c = (r * cs.oh()).sqrt();
    let a = (r * r + c * c) / (2.0 * r);
    let b = (r * r - c * c).abs() / (2.0 * r);
    let base = CentralConicStd::ellipse(a, b)?;
    let rotation = if c <= tolerance() * r {
        0.0
    } else {
        let local = Triangle::new(t.a - cs.o, t.b - cs.o, t.c - cs.o);
        axis_angle(&local)
    };
    Ok(PlacedConic::new(base, cs.o, rotation))
}

/// The inscribed central conic with foci at the circumcenter and the
/// orthocenter: an ellipse for acute triangles, a hyperbola for obtuse ones.
pub fn conic_with_foci_o_h(t: &Triangle) -> Result<PlacedConic> {
    require_oblique(t)?;
    let cs = center_set(t)?;
    let r = cs.r;
    let c = 0.5 * cs.oh();
    let a2 = r * r / 4.0;
    let beta = a2 - c * c;
    if beta.abs() <= tolerance() * r * r {
        return Err(Error::RightTriangle("R = |OH|".into()));
    }
    let rotation = if c <= tolerance() * r {
        0.0
    } else {
        let d = cs.h - cs.o;
        d.y.atan2(d.x)
    };
    Ok(PlacedConic::new(CentralConicStd::new(a2, beta)?, cs.o.midpoint(cs.h), rotation))
}

/// `X -> M X + t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineMap {
    pub m11: f64,
    pub m12: f64,
    pub m21: f64,
    pub m22: f64,
    pub t: Point,
}

impl AffineMap {
    pub fn det(&self) -> f64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn apply(&self, p: Point) -> Point {
        Point::new(self.m11 * p.x + self.m12 * p.y + self.t.x, self.m21 * p.x + self.m22 * p.y + self.t.y)
    }

    pub fn linear(&self, p: Point) -> Point {
        Point::new(self.m11 * p.x + self.m12 * p.y, self.m21 * p.x + self.m22 * p.y)
    }

    pub fn inverse(&self) -> Result<AffineMap> {
        let d = self.det();
        if d == 0.0 || !d.is_finite() {
            return Err(Error::DegenerateTriangle("affine map is singular".into()));
        }
        let (m11, m12, m21, m22) = (self.m22 / d, -self.m12 / d, -self.m21 / d, self.m11 / d);
        let t = Point::new(-(m11 * self.t.x + m12 * self.t.y), -(m21 * self.t.x + m22 * self.t.y));
        Ok(AffineMap { m11, m12, m21, m22, t })
    }

    /// Image of the circle `|x - center| = rho` as a placed ellipse.
    pub fn image_of_circle(&self, center: Point, rho: f64) -> Result<PlacedConic> {
        // semi-axes and directions from the eigen-decomposition of M M^T
        let p = self.m11 * self.m11 + self.m12 * self.m12;
        let q = self.m11 * self.m21 + self.m12 * self.m22;
        let r = self.m21 * self.m21 + self.m22 * self.m22;
        let mid = 0.5 * (p + r);
        let rad = (0.25 * (p - r) * (p - r) + q * q).sqrt();
        let (big, small) = (mid + rad, (mid - rad).max(0.0));
        let angle = 0.5 * (2.0 * q).atan2(p - r);
        let base = CentralConicStd::ellipse(rho * big.sqrt(), rho * small.sqrt())?;
        Ok(PlacedConic::new(base, self.apply(center), angle))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SteinerEllipses {
    pub inellipse: PlacedConic,
    pub circumellipse: PlacedConic,
    /// Sends the triangle to `(0,0), (1,0), (1/2, sqrt(3)/2)`.
    pub map: AffineMap,
}

pub fn steiner_ellipses(t: &Triangle) -> Result<SteinerEllipses> {
    t.check_nondegenerate()?;
    let (a, b, c) = (t.a, t.b, t.c);
    let g = t.centroid();
    let d = t.det();
    let s3 = 3f64.sqrt();
    let m11 = -1.5 * (g.y - c.y) / d;
    let m12 = 1.5 * (g.x - c.x) / d;
    let m21 = 0.5 * s3 * (a.y - b.y) / d;
    let m22 = -0.5 * s3 * (a.x - b.x) / d;
    let lin = AffineMap { m11, m12, m21, m22, t: Point::ORIGIN };
    let map = AffineMap { t: -lin.linear(a), ..lin };
    // inverse with the closed-form columns B - A and -sqrt(3) (G - C)
    let inv = AffineMap {
        m11: b.x - a.x,
        m12: -s3 * (g.x - c.x),
        m21: b.y - a.y,
        m22: -s3 * (g.y - c.y),
        t: a,
    };
    let center = Point::new(0.5, s3 / 6.0);
    Ok(SteinerEllipses {
        inellipse: inv.image_of_circle(center, s3 / 6.0)?,
        circumellipse: inv.image_of_circle(center, s3 / 3.0)?,
        map,
    })
}

/// Moves `circle` into the frame of `conic` (focal axis along x) and builds
/// the corresponding standard configuration.
pub fn to_standard_config(circle: &CircleSpec, conic: &PlacedConic) -> Result<PonceletConfig> {
    let mut placed = *conic;
    if placed.base.kind() == ConicKind::Ellipse && placed.base.alpha < placed.base.beta {
        placed = PlacedConic::new(
            CentralConicStd::new(placed.base.beta, placed.base.alpha)?,
            placed.center,
            placed.rotation + std::f64::consts::FRAC_PI_2,
        );
    }
    let center = placed.to_local(circle.center);
    PonceletConfig::new(CircleSpec::new(center, circle.radius)?, placed.base)
}
