//! Scalar and object invariants of a family, measured on raw triangles and
//! compared with their closed forms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{map_slice, ExecMode};
use crate::family::{sample_family, PonceletConfig, Scenario};
use crate::geom::{conic_params, CentralConicStd, CircleSpec, PlacedConic, Point};
use crate::tol::tolerance;
use crate::triangle::{center_set, orthic_triangle, polar_circle, AngleKind, Triangle};

/// Invariants of one triangle. Orthic fields are `None` when undefined
/// (right triangles; the inradius for obtuse and the polar radius for acute
/// triangles).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InvariantRecord {
    pub sin2_sum: f64,
    pub cos_product: f64,
    pub ah_bh_ch: f64,
    pub area_ratio_orthic: Option<f64>,
    pub orthic_inradius: Option<f64>,
    pub orthic_angle_expr: Option<f64>,
    pub polar_radius: Option<f64>,
    pub oh_distance: f64,
    pub side_sq_sum: f64,
    /// Incenter of the orthic triangle (acute triangles).
    pub orthic_incenter: Option<Point>,
    /// Center of the polar circle (obtuse triangles).
    pub polar_center: Option<Point>,
}

impl InvariantRecord {
    /// Named scalar fields, in a fixed order.
    pub fn scalars(&self) -> Vec<(&'static str, Option<f64>)> {
        vec![
            ("ah_bh_ch", Some(self.ah_bh_ch)),
            ("area_ratio_orthic", self.area_ratio_orthic),
            ("cos_product", Some(self.cos_product)),
            ("oh_distance", Some(self.oh_distance)),
            ("orthic_angle_expr", self.orthic_angle_expr),
            ("orthic_inradius", self.orthic_inradius),
            ("polar_radius", self.polar_radius),
            ("side_sq_sum", Some(self.side_sq_sum)),
            ("sin2_sum", Some(self.sin2_sum)),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Invariant,
    NotInvariant,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub name: String,
    pub sample_count: usize,
    pub mean: f64,
    pub max_abs_deviation: f64,
    pub expected: Option<f64>,
    pub verdict: Verdict,
}

impl InvariantReport {
    pub fn from_values(name: &str, values: &[f64], expected: Option<f64>) -> Self {
        let n = values.len();
        let mean = values.iter().sum::<f64>() / n.max(1) as f64;
        let max_abs_deviation = values.iter().map(|v| (v - mean).abs()).fold(0.0, f64::max);
        let tol = tolerance();
        let bound = if mean.abs() > tol { tol * mean.abs() } else { tol };
        let verdict = if max_abs_deviation < bound { Verdict::Invariant } else { Verdict::NotInvariant };
        InvariantReport { name: name.to_string(), sample_count: n, mean, max_abs_deviation, expected, verdict }
    }

    /// Relative gap between the measured mean and the closed form.
    pub fn expected_rel_error(&self) -> Option<f64> {
        self.expected.map(|e| {
            let d = (self.mean - e).abs();
            if e == 0.0 {
                d
            } else {
                d / e.abs()
            }
        })
    }
}

/// All invariants of `t`, computed from side lengths and constructed points.
pub fn invariants_of(t: &Triangle) -> Result<InvariantRecord> {
    let cs = center_set(t)?;
    let cosines = t.cosines();
    let sin2_sum: f64 = cosines.iter().map(|c| 1.0 - c * c).sum();
    let cos_product = cosines.iter().product();
    let ah_bh_ch = t.a.dist(cs.h) * t.b.dist(cs.h) * t.c.dist(cs.h);
    let side_sq_sum = t.sides_sq().iter().sum();

    let kind = t.angle_kind(tolerance());
    let mut rec = InvariantRecord {
        sin2_sum,
        cos_product,
        ah_bh_ch,
        area_ratio_orthic: None,
        orthic_inradius: None,
        orthic_angle_expr: None,
        polar_radius: None,
        oh_distance: cs.oh(),
        side_sq_sum,
        orthic_incenter: None,
        polar_center: None,
    };
    if kind == AngleKind::Right {
        return Ok(rec);
    }
    // put the largest angle first so the sign flip lands on the obtuse vertex
    let lead = t.rotated(t.largest_angle_index());
    let orthic = orthic_triangle(&lead)?;
    let oc = orthic.cosines();
    let eps = if kind == AngleKind::Obtuse { -1.0 } else { 1.0 };
    rec.orthic_angle_expr = Some(eps * oc[0] + oc[1] + oc[2]);
    rec.area_ratio_orthic = Some(t.area() / orthic.area());
    match kind {
        AngleKind::Acute => {
            let inc = orthic.incircle()?;
            rec.orthic_inradius = Some(inc.radius);
            rec.orthic_incenter = Some(inc.center);
        }
        _ => {
            let pc = polar_circle(t)?;
            rec.polar_radius = Some(pc.radius);
            rec.polar_center = Some(pc.center);
        }
    }
    Ok(rec)
}

/// Closed-form values for a centered or focal family. `orthic_incenter` and
/// `polar_center` are filled only where the family pins them (the focal case).
pub fn expected_invariants(config: &PonceletConfig) -> Result<InvariantRecord> {
    let r = config.radius();
    let c = config.c();
    let p = conic_params(&config.conic)?;
    let (a, b) = (p.a, p.b);
    let rec = match config.scenario {
        Scenario::CenterCoincident => {
            let acute = r > c;
            let eps = if acute { 1.0 } else { -1.0 };
            let oh = c * c / r;
            InvariantRecord {
                sin2_sum: 2.25 - c.powi(4) / (4.0 * r.powi(4)),
                cos_product: 0.125 - oh * oh / (8.0 * r * r),
                ah_bh_ch: 4.0 * a * b * (a + eps * b),
                area_ratio_orthic: Some(r * r / (a * b)),
                orthic_inradius: acute.then(|| a * b / (a + b)),
                orthic_angle_expr: Some(eps * (1.5 - 0.5 * (c / r).powi(4))),
                polar_radius: (!acute).then(|| (2.0 * a * b).sqrt()),
                oh_distance: oh,
                side_sq_sum: 9.0 * r * r - oh * oh,
                orthic_incenter: None,
                polar_center: None,
            }
        }
        Scenario::FocusCoincident => {
            let acute = config.conic.beta > 0.0;
            let eps = if acute { 1.0 } else { -1.0 };
            let oh = 2.0 * c;
            let other_focus = Point::new(-config.focus_side() * c, 0.0);
            InvariantRecord {
                sin2_sum: 2.25 - c * c / (r * r),
                cos_product: 0.125 - oh * oh / (8.0 * r * r),
                ah_bh_ch: 8.0 * a * b * b,
                area_ratio_orthic: Some(4.0 * a * a / (b * b)),
                orthic_inradius: acute.then(|| b * b / (2.0 * a)),
                orthic_angle_expr: Some(eps * (1.5 - 2.0 * (c / r).powi(2))),
                polar_radius: (!acute).then(|| 2f64.sqrt() * b),
                oh_distance: oh,
                side_sq_sum: 9.0 * r * r - oh * oh,
                orthic_incenter: acute.then_some(other_focus),
                polar_center: (!acute).then_some(other_focus),
            }
        }
        Scenario::General => {
            return Err(Error::UnsupportedScenario(
                "closed forms exist only for a centered or focal circumcenter".into(),
            ))
        }
    };
    Ok(rec)
}

/// Evaluates [`invariants_of`] on `n` family members and reports the spread
/// of each quantity, sorted by name.
pub fn sweep(config: &PonceletConfig, n: usize, mode: ExecMode) -> Result<Vec<InvariantReport>> {
    if n < 3 {
        return Err(Error::InsufficientSamples { found: n, needed: 3 });
    }
    let samples = sample_family(config, n, mode)?;
    let records: Vec<InvariantRecord> = map_slice(&samples, mode, |s| invariants_of(&s.triangle))
        .into_iter()
        .collect::<Result<_>>()?;
    if records.len() < 3 {
        return Err(Error::InsufficientSamples { found: records.len(), needed: 3 });
    }
    let expected = expected_invariants(config).ok();
    let exp_scalars = expected.map(|e| e.scalars());

    let mut reports = Vec::new();
    for (i, (name, _)) in records[0].scalars().into_iter().enumerate() {
        let values: Vec<f64> = records.iter().filter_map(|r| r.scalars()[i].1).collect();
        if values.len() < 3 {
            continue;
        }
        let exp = exp_scalars.as_ref().and_then(|e| e[i].1);
        reports.push(InvariantReport::from_values(name, &values, exp));
    }
    if config.scenario == Scenario::FocusCoincident {
        let pinned: [(&str, fn(&InvariantRecord) -> Option<Point>, Option<Point>); 2] = [
            ("orthic_incenter", |r| r.orthic_incenter, expected.and_then(|e| e.orthic_incenter)),
            ("polar_center", |r| r.polar_center, expected.and_then(|e| e.polar_center)),
        ];
        for (name, get, exp) in pinned {
            let pts: Vec<Point> = records.iter().filter_map(get).collect();
            if pts.len() < 3 {
                continue;
            }
            let xs: Vec<f64> = pts.iter().map(|p| p.x).collect();
            let ys: Vec<f64> = pts.iter().map(|p| p.y).collect();
            reports.push(InvariantReport::from_values(&format!("{name}_x"), &xs, exp.map(|p| p.x)));
            reports.push(InvariantReport::from_values(&format!("{name}_y"), &ys, exp.map(|p| p.y)));
        }
    }
    reports.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(reports)
}

/// Fixed objects carrying the tangential triangles of a family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TangentialObjects {
    /// Focal case: every tangential vertex lies on this circle.
    pub circumcircle: Option<CircleSpec>,
    /// Centered case: every tangential vertex lies on this ellipse.
    pub circum_ellipse: Option<PlacedConic>,
    /// Circumradius shared by all tangential triangles.
    pub r_t: f64,
}

pub fn tangential_family_objects(config: &PonceletConfig) -> Result<TangentialObjects> {
    let r = config.radius();
    let c = config.c();
    let tol = tolerance();
    match config.scenario {
        Scenario::FocusCoincident => {
            let den = r * r - 4.0 * c * c;
            if den.abs() <= tol * r * r {
                return Err(Error::DegenerateConic("R = 2c".into()));
            }
            let h = config.focus_side() * c * (5.0 * r * r - 4.0 * c * c) / den;
            let radius = 2.0 * r.powi(3) / den.abs();
            Ok(TangentialObjects {
                circumcircle: Some(CircleSpec::new(Point::new(h, 0.0), radius)?),
                circum_ellipse: None,
                r_t: radius,
            })
        }
        Scenario::CenterCoincident => {
            let den = r * r - c * c;
            if den.abs() <= tol * r * r {
                return Err(Error::DegenerateConic("R = c".into()));
            }
            let sx = 2.0 * r.powi(3) / (r * r + c * c);
            let sy = 2.0 * r.powi(3) / den.abs();
            let base = CentralConicStd::ellipse(sx, sy)?;
            Ok(TangentialObjects {
                circumcircle: None,
                circum_ellipse: Some(PlacedConic::new(base, Point::ORIGIN, 0.0)),
                r_t: 2.0 * r.powi(5) / (r.powi(4) - c.powi(4)).abs(),
            })
        }
        Scenario::General => Err(Error::UnsupportedScenario(
            "tangential triangles have fixed loci only for a centered or focal circumcenter".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{make_config, triangle_at};
    use approx::assert_relative_eq;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn record_examples() {
        let c1 = make_config(2.0, 1.0, Scenario::CenterCoincident).unwrap();
        let rec = invariants_of(&triangle_at(&c1, FRAC_PI_2).unwrap().triangle).unwrap();
        assert_relative_eq!(rec.sin2_sum, 2.234375, epsilon = 1e-12);
        assert_relative_eq!(rec.sin2_sum - 2.0 - 2.0 * rec.cos_product, 0.0, epsilon = 1e-12);

        let f1 = make_config(2.5, 1.0, Scenario::FocusCoincident).unwrap();
        let rec = invariants_of(&triangle_at(&f1, 1.0).unwrap().triangle).unwrap();
        assert_relative_eq!(rec.sin2_sum, 2.09, epsilon = 1e-12);

        let d = std::f64::consts::PI / 180.0;
        let eq = Triangle::new(
            Point::polar(Point::ORIGIN, 1.0, 90.0 * d),
            Point::polar(Point::ORIGIN, 1.0, 210.0 * d),
            Point::polar(Point::ORIGIN, 1.0, 330.0 * d),
        );
        let rec = invariants_of(&eq).unwrap();
        assert_relative_eq!(rec.sin2_sum, 2.25, epsilon = 1e-14);
        assert_relative_eq!(rec.cos_product, 0.125, epsilon = 1e-14);
    }

    #[test]
    fn expected_examples() {
        let e = expected_invariants(&make_config(2.0, 1.0, Scenario::CenterCoincident).unwrap()).unwrap();
        assert_relative_eq!(e.ah_bh_ch, 7.5, epsilon = 1e-12);
        assert_relative_eq!(e.area_ratio_orthic.unwrap(), 64.0 / 15.0, epsilon = 1e-12);
        assert_relative_eq!(e.orthic_inradius.unwrap(), 0.46875, epsilon = 1e-12);

        let e = expected_invariants(&make_config(2.5, 1.0, Scenario::FocusCoincident).unwrap()).unwrap();
        assert_relative_eq!(e.ah_bh_ch, 5.625, epsilon = 1e-12);
        assert_relative_eq!(e.area_ratio_orthic.unwrap(), 100.0 / 9.0, epsilon = 1e-12);
        assert_relative_eq!(e.orthic_inradius.unwrap(), 0.225, epsilon = 1e-12);

        let e = expected_invariants(&make_config(0.7, 1.0, Scenario::CenterCoincident).unwrap()).unwrap();
        assert_relative_eq!(e.polar_radius.unwrap(), 0.880572, epsilon = 1e-6);
        assert!(e.orthic_inradius.is_none());
    }

    #[test]
    fn tangential_objects_examples() {
        let t = tangential_family_objects(&make_config(1.5, 1.0, Scenario::CenterCoincident).unwrap()).unwrap();
        assert_relative_eq!(t.r_t, 3.738461538, epsilon = 1e-8);
        let e = t.circum_ellipse.unwrap().base;
        assert_relative_eq!(e.alpha.sqrt(), 2.076923077, epsilon = 1e-8);
        assert_relative_eq!(e.beta.sqrt(), 5.4, epsilon = 1e-12);

        let t = tangential_family_objects(&make_config(2.0, 1.0, Scenario::CenterCoincident).unwrap()).unwrap();
        assert_relative_eq!(t.r_t, 64.0 / 15.0, epsilon = 1e-12);

        let t = tangential_family_objects(&make_config(2.5, 1.0, Scenario::FocusCoincident).unwrap()).unwrap();
        let circle = t.circumcircle.unwrap();
        assert_relative_eq!(circle.center.x, 109.0 / 9.0, epsilon = 1e-12);
        assert_relative_eq!(circle.radius, 125.0 / 9.0, epsilon = 1e-12);
    }

    #[test]
    fn verdict_thresholds() {
        let r = InvariantReport::from_values("x", &[1.0, 1.0 + 1e-12, 1.0 - 1e-12], Some(1.0));
        assert_eq!(r.verdict, Verdict::Invariant);
        let r = InvariantReport::from_values("x", &[1.0, 1.1, 0.9], None);
        assert_eq!(r.verdict, Verdict::NotInvariant);
    }
}
