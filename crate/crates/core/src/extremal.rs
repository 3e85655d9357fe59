//! Area of the family triangles as a function of one vertex's x-coordinate,
//! its extremal values, and the tangency section ratios at the extremal
//! triangles.
//!
//! In the focal case `x` is measured in the conic's frame (the conic centered
//! at the origin, the circle at `(+-c, 0)`), as is every coordinate here.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::ExecMode;
use crate::family::{classify, FamilySample, PonceletConfig, Scenario};
use crate::geom::{joachimsthal, ConicKind, Point};
use crate::optimize::{grid_golden_max, grid_golden_min, Extremum, GRID};
use crate::tol::tolerance;

/// Relative agreement required between the closed forms and the optimizer.
pub const EXTREMA_REL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AreaPoint {
    pub x: f64,
    pub area: f64,
}

impl From<Extremum> for AreaPoint {
    fn from(e: Extremum) -> Self {
        AreaPoint { x: e.x, area: e.value }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AreaProfile {
    pub scenario: Scenario,
    pub conic_kind: ConicKind,
    pub domain: (f64, f64),
    pub critical_points: Vec<f64>,
    /// Closed-form maximum.
    pub max: AreaPoint,
    /// Closed-form minimum; absent for obtuse families, whose area tends to
    /// zero towards degenerate members.
    pub min: Option<AreaPoint>,
    pub oracle_max: AreaPoint,
    pub oracle_min: Option<AreaPoint>,
}

impl AreaProfile {
    /// Largest relative gap between closed form and optimizer.
    pub fn oracle_disagreement(&self) -> f64 {
        let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(f64::MIN_POSITIVE);
        let mut worst = rel(self.max.area, self.oracle_max.area);
        if let (Some(m), Some(o)) = (self.min, self.oracle_min) {
            worst = worst.max(rel(m.area, o.area));
        }
        worst
    }
}

/// Focal-case reflection taking the circle to `(c, 0)`.
fn side(config: &PonceletConfig) -> f64 {
    if config.scenario == Scenario::FocusCoincident {
        config.focus_side()
    } else {
        1.0
    }
}

fn require_special(config: &PonceletConfig) -> Result<()> {
    if config.scenario == Scenario::General {
        return Err(Error::UnsupportedScenario(
            "the area function needs the circumcenter at the center or a focus".into(),
        ));
    }
    Ok(())
}

/// Range of vertex x-coordinates over the family.
pub fn area_domain(config: &PonceletConfig) -> Result<(f64, f64)> {
    require_special(config)?;
    let (r, c) = (config.radius(), config.c());
    let (r2, c2) = (r * r, c * c);
    Ok(match config.scenario {
        Scenario::CenterCoincident if r > c => (-r, r),
        Scenario::CenterCoincident => {
            let x = (r2 + c2) * ((r2 + c2) * (3.0 * r2 - c2)).max(0.0).sqrt() / (4.0 * r2 * c);
            (-x, x)
        }
        _ => {
            let hi = if config.conic.kind() == ConicKind::Ellipse { c + r } else { 3.0 * r2 / (4.0 * c) };
            let (lo, hi) = (c - r, hi);
            if side(config) > 0.0 {
                (lo, hi)
            } else {
                (-hi, -lo)
            }
        }
    })
}

fn area_formula(config: &PonceletConfig, x: f64) -> f64 {
    let (r, c) = (config.radius(), config.c());
    match config.scenario {
        Scenario::CenterCoincident => {
            let (r2, c2, x2) = (r * r, c * c, x * x);
            let s = r2 + c2;
            let num = ((r2 - c2).powi(2) - 4.0 * (r2 * r2 - c2 * x2)).abs();
            let rad = (s.powi(3) * (3.0 * r2 - c2) - 16.0 * r2 * r2 * c2 * x2).max(0.0).sqrt();
            num * rad / (4.0 * r2 * (s * s - 4.0 * c2 * x2))
        }
        _ => {
            let x = side(config) * x;
            let a = r / 2.0;
            let e = c / a;
            let rad = (3.0 - 4.0 * e * x / (a + e * x)).max(0.0).sqrt();
            a * ((3.0 - e * e) * a + 2.0 * e * x).abs() * rad
        }
    }
}

/// Area of the family triangle having a vertex with x-coordinate `x`.
pub fn area_function(config: &PonceletConfig, x: f64) -> Result<f64> {
    let (lo, hi) = area_domain(config)?;
    let slack = tolerance() * config.radius();
    if !(x >= lo - slack && x <= hi + slack) {
        return Err(Error::OutOfDomain { x, lo, hi });
    }
    Ok(area_formula(config, x.clamp(lo, hi)))
}

/// Vertex angle on the circle for the vertex at `x`, taking `y >= 0`.
pub fn theta_for_x(config: &PonceletConfig, x: f64) -> Result<f64> {
    let r = config.radius();
    let dx = x - config.circle.center.x;
    if dx.abs() > r * (1.0 + tolerance()) {
        return Err(Error::OutOfDomain { x, lo: config.circle.center.x - r, hi: config.circle.center.x + r });
    }
    let dx = dx.clamp(-r, r);
    Ok(((r * r - dx * dx).max(0.0).sqrt()).atan2(dx))
}

/// Points where the circumcircle meets the pedal curve of the conic with
/// respect to the circumcenter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PedalIntersections {
    pub points: Vec<Point>,
}

/// `y > 0` of the focal-case intersection points, or `None` when the circles
/// do not meet.
pub fn pedal_focus_y(r: f64, c: f64) -> Option<f64> {
    let p = -(r - 2.0 * c) * (r + 2.0 * c) * (3.0 * r - 2.0 * c) * (3.0 * r + 2.0 * c);
    (p > 0.0).then(|| p.sqrt() / (8.0 * c))
}

/// The same coordinate with the divisor under the root, as printed. Not
/// the intersection; see the tests.
pub fn pedal_focus_y_paper_literal(r: f64, c: f64) -> Option<f64> {
    let p = -(r - 2.0 * c) * (r + 2.0 * c) * (3.0 * r - 2.0 * c) * (3.0 * r + 2.0 * c);
    (p > 0.0).then(|| (p / (8.0 * c)).sqrt())
}

/// Residuals of `p` in the circumcircle and pedal-curve equations.
pub fn pedal_residuals(config: &PonceletConfig, p: Point) -> (f64, f64) {
    let circle = config.circle.residual(p);
    let (al, be) = (config.conic.alpha, config.conic.beta);
    let pedal = match config.scenario {
        Scenario::CenterCoincident => p.norm_sq().powi(2) - al * p.x * p.x - be * p.y * p.y,
        _ => p.norm_sq() - al,
    };
    (circle, pedal)
}

pub fn pedal_intersections(config: &PonceletConfig) -> Result<PedalIntersections> {
    require_special(config)?;
    let (r, c) = (config.radius(), config.c());
    let (r2, c2) = (r * r, c * c);
    let mut points = Vec::new();
    match config.scenario {
        Scenario::CenterCoincident => {
            let y2 = -(r2 - c2) * (3.0 * r2 + c2) / (4.0 * c2);
            if c > 0.0 && y2 > 0.0 {
                let x = ((r2 + c2) * (3.0 * r2 - c2)).max(0.0).sqrt() / (2.0 * c);
                let y = y2.sqrt();
                for (sx, sy) in [(1.0, 1.0), (-1.0, 1.0), (1.0, -1.0), (-1.0, -1.0)] {
                    points.push(Point::new(sx * x, sy * y));
                }
            }
        }
        _ => {
            if let Some(y) = pedal_focus_y(r, c) {
                let x = -side(config) * (3.0 * r2 - 4.0 * c2) / (8.0 * c);
                points.push(Point::new(x, y));
                points.push(Point::new(x, -y));
            }
        }
    }
    Ok(PedalIntersections { points })
}

fn critical_points(config: &PonceletConfig) -> Vec<f64> {
    let (r, c) = (config.radius(), config.c());
    let mut v = match config.scenario {
        Scenario::CenterCoincident if r > c => {
            let a = (r * r + c * c) / (2.0 * r);
            vec![-a, 0.0, a]
        }
        Scenario::CenterCoincident => vec![0.0],
        _ if config.conic.kind() == ConicKind::Ellipse => vec![-side(config) * r / 2.0, side(config) * r / 2.0],
        _ => vec![side(config) * r / 2.0],
    };
    v.sort_by(f64::total_cmp);
    v
}

/// Closed-form extremal areas and where they occur.
pub fn closed_form_extrema(config: &PonceletConfig) -> Result<(AreaPoint, Option<AreaPoint>)> {
    require_special(config)?;
    let (r, c) = (config.radius(), config.c());
    let (r2, c2) = (r * r, c * c);
    Ok(match config.scenario {
        Scenario::CenterCoincident => {
            let max = AreaPoint { x: 0.0, area: (3.0 * r2 - c2).powf(1.5) * (r2 + c2).sqrt() / (4.0 * r2) };
            let min = (r > c).then(|| AreaPoint {
                x: (r2 + c2) / (2.0 * r),
                area: (3.0 * r2 + c2).powf(1.5) * (r2 - c2).abs().sqrt() / (4.0 * r2),
            });
            (max, min)
        }
        _ => {
            let a = r / 2.0;
            let e = c / a;
            let s = side(config);
            let max = AreaPoint { x: s * a, area: a * a * (1.0 + e).sqrt() * (3.0 - e).powf(1.5) };
            let min = (e < 1.0).then(|| AreaPoint { x: -s * a, area: a * a * (1.0 - e).sqrt() * (3.0 + e).powf(1.5) });
            (max, min)
        }
    })
}

/// Extremal areas from the closed forms, confirmed by grid plus
/// golden-section optimization of the area function.
pub fn extremal_triangles(config: &PonceletConfig, mode: ExecMode) -> Result<AreaProfile> {
    require_special(config)?;
    classify(config)?;
    let domain = area_domain(config)?;
    let (max, min) = closed_form_extrema(config)?;
    let f = |x: f64| area_formula(config, x);
    let oracle_max: AreaPoint = grid_golden_max(f, domain.0, domain.1, GRID, mode)?.into();
    let oracle_min: Option<AreaPoint> = if min.is_some() {
        Some(grid_golden_min(f, domain.0, domain.1, GRID, mode)?.into())
    } else {
        None
    };
    let profile = AreaProfile {
        scenario: config.scenario,
        conic_kind: config.conic.kind(),
        domain,
        critical_points: critical_points(config),
        max,
        min,
        oracle_max,
        oracle_min,
    };
    let gap = profile.oracle_disagreement();
    if gap > EXTREMA_REL_TOL {
        return Err(Error::Verification(format!("closed-form extremal areas differ from the optimizer by {gap:e}")));
    }
    Ok(profile)
}

/// `(x, f(x), is_critical)` at `n` equispaced points of the domain, with the
/// critical points merged in.
pub fn area_samples(config: &PonceletConfig, n: usize) -> Result<Vec<(f64, f64, bool)>> {
    let (lo, hi) = area_domain(config)?;
    let crit = critical_points(config);
    let mut xs: Vec<(f64, bool)> = (0..n.max(2))
        .map(|i| (lo + (hi - lo) * i as f64 / (n.max(2) - 1) as f64, false))
        .collect();
    xs.extend(crit.into_iter().filter(|&x| x >= lo && x <= hi).map(|x| (x, true)));
    xs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(xs.into_iter().map(|(x, k)| (x, area_formula(config, x), k)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    AB,
    BC,
    CA,
}

/// `|PT| / |TQ|` for the side `PQ` touching the conic at `T`, from the
/// double root of the Joachimsthal section equation.
pub fn tangency_ratio(config: &PonceletConfig, sample: &FamilySample, side: Side) -> Result<f64> {
    let t = &sample.triangle;
    let (p, q) = match side {
        Side::AB => (t.a, t.b),
        Side::BC => (t.b, t.c),
        Side::CA => (t.c, t.a),
    };
    let conic = &config.conic;
    let (spp, spq, sqq) = (joachimsthal(conic, p, p), joachimsthal(conic, p, q), joachimsthal(conic, q, q));
    let scale = spp.abs().max(sqq.abs()).max(spq.abs()).max(1.0);
    if spp.signum() != sqq.signum() || (spq * spq - spp * sqq).abs() > tolerance().sqrt() * scale * scale {
        return Err(Error::SectionRatio(format!(
            "side is not tangent: S_PP = {spp}, S_PQ = {spq}, S_QQ = {sqq}"
        )));
    }
    Ok((spq / sqq).abs())
}
