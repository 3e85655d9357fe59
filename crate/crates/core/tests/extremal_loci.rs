use poncelet::exec::ExecMode;
use poncelet::extremal::{
    area_domain, area_function, area_samples, extremal_triangles, pedal_intersections, pedal_residuals, theta_for_x,
};
use poncelet::family::{admissible_arcs, make_config, triangle_at, PonceletConfig, Scenario};
use poncelet::geom::Point;
use poncelet::loci::{cassini_implicit, cassini_locus, orthic_vertex_locus, CassiniVariant};
use poncelet::scene::SceneDescription;
use poncelet::triangle::Triangle;

fn named() -> Vec<(&'static str, PonceletConfig)> {
    vec![
        ("C1", make_config(2.0, 1.0, Scenario::CenterCoincident).unwrap()),
        ("C2", make_config(0.7, 1.0, Scenario::CenterCoincident).unwrap()),
        ("C3", make_config(1.5, 1.0, Scenario::CenterCoincident).unwrap()),
        ("F1", make_config(2.5, 1.0, Scenario::FocusCoincident).unwrap()),
        ("F2", make_config(1.5, 1.0, Scenario::FocusCoincident).unwrap()),
    ]
}

/// Mirror-symmetry residual of the vertex set.
fn mirror_residual(t: &Triangle, mirror: impl Fn(Point) -> Point) -> f64 {
    t.vertices()
        .iter()
        .map(|&v| t.vertices().iter().map(|&w| mirror(v).dist(w)).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
}

#[test]
fn area_function_matches_fifty_constructed_members() {
    for (name, cfg) in named() {
        let arcs = admissible_arcs(&cfg);
        let r2 = cfg.radius().powi(2);
        for theta in arcs.sample_angles(50) {
            let t = triangle_at(&cfg, theta).unwrap().triangle;
            let f = area_function(&cfg, t.a.x).unwrap();
            assert!((f - t.area()).abs() < 1e-9 * r2, "{name} at {theta}: {f} vs {}", t.area());
        }
    }
}

#[test]
fn extremal_members_are_mirror_symmetric() {
    for (name, cfg) in named() {
        let p = extremal_triangles(&cfg, ExecMode::Sequential).unwrap();
        let r = cfg.radius();
        let mut checks = vec![(p.max.x, true)];
        if let Some(m) = p.min {
            checks.push((m.x, false));
        }
        for (x, is_max) in checks {
            let t = triangle_at(&cfg, theta_for_x(&cfg, x).unwrap()).unwrap().triangle;
            let about_y = cfg.scenario == Scenario::CenterCoincident && is_max;
            let res = if about_y {
                mirror_residual(&t, |v| Point::new(-v.x, v.y))
            } else {
                mirror_residual(&t, |v| Point::new(v.x, -v.y))
            };
            assert!(res < 1e-9 * r, "{name} extremum at x = {x}: symmetry residual {res}");
            let area = if is_max { p.max.area } else { p.min.unwrap().area };
            assert!((t.area() - area).abs() < 1e-9 * r * r, "{name}: {} vs {area}", t.area());
        }
    }
}

#[test]
fn hyperbola_area_decays_towards_the_domain_end() {
    let cfg = make_config(1.5, 1.0, Scenario::FocusCoincident).unwrap();
    let (_, hi) = area_domain(&cfg).unwrap();
    let mut prev = f64::INFINITY;
    for k in 1..=12 {
        let x = hi - 10f64.powi(-k);
        let f = area_function(&cfg, x).unwrap();
        assert!(f > 0.0 && f < prev, "area {f} at {x} not decreasing");
        prev = f;
    }
    assert!(prev < 1e-4);
}

#[test]
fn pedal_points_satisfy_both_curves() {
    for (name, cfg) in named() {
        let pts = pedal_intersections(&cfg).unwrap().points;
        let obtuse = matches!(name, "C2" | "F2");
        assert_eq!(!pts.is_empty(), obtuse, "{name}");
        let scale = cfg.radius().max(cfg.c());
        for p in pts {
            let (circle, pedal) = pedal_residuals(&cfg, p);
            assert!(circle.abs() < 1e-10 * cfg.radius().powi(2), "{name}: {circle}");
            assert!(pedal.abs() < 1e-9 * scale.powi(4), "{name}: {pedal}");
        }
    }
}

#[test]
fn area_samples_include_critical_points() {
    let cfg = make_config(1.5, 1.0, Scenario::CenterCoincident).unwrap();
    let rows = area_samples(&cfg, 101).unwrap();
    let crit: Vec<f64> = rows.iter().filter(|r| r.2).map(|r| r.0).collect();
    assert_eq!(crit.len(), 3);
    assert!(rows.windows(2).all(|w| w[0].0 <= w[1].0));
    assert!(rows.iter().all(|r| r.1 >= 0.0));
}

#[test]
fn loci_points_satisfy_their_equations() {
    for (r, c) in [(1.0, 1.0), (2f64.sqrt(), 1.0), (0.9, 1.0), (3.0, 1.0)] {
        for variant in [CassiniVariant::Oval, CassiniVariant::MajorAxisLocus] {
            let scale4 = (r * r + c * c) * (r * r + c * c);
            for pl in cassini_locus(r, c, 400, variant).unwrap() {
                assert!(pl.points.len() >= 2);
                for p in pl.points {
                    assert!(cassini_implicit(variant, r, c, p).abs() < 1e-9 * scale4);
                }
            }
        }
    }
    let c1 = make_config(2.0, 1.0, Scenario::CenterCoincident).unwrap();
    let locus = orthic_vertex_locus(&c1, 360).unwrap();
    let svg = SceneDescription { polylines: vec![locus], ..SceneDescription::for_family(&c1, &[]) }.to_svg(300);
    assert!(svg.contains("<polygon"));
}
