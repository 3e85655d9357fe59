//! Command-line front end. Every subcommand is a thin adapter over the
//! library; exit codes are 0 on success, 2 on bad input and 3 when a
//! numerical self-check fails.

mod args;

use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Value};

use args::*;
use poncelet::exec::ExecMode;
use poncelet::export::{
    area_csv, family_csv, fmt_num, json_envelope, orbit_csv, polylines_csv, report_csv,
};
use poncelet::extremal::{area_samples, extremal_triangles, theta_for_x};
use poncelet::family::{
    check_criterion, classify, general_config, make_config, sample_family, triangle_at, FamilySample, PonceletConfig,
    Scenario,
};
use poncelet::geom::{PlacedConic, Point};
use poncelet::inellipse::{conic_with_foci_o_h, inellipse_centered_at_circumcenter, steiner_ellipses};
use poncelet::invariants::{expected_invariants, sweep, tangential_family_objects, Verdict};
use poncelet::loci::{cassini_locus, orthic_vertex_locus, tangential_vertex_locus, CassiniVariant, TangentialLocus};
use poncelet::scene::SceneDescription;
use poncelet::sequence::{dynamics_orbit, dynamics_orbit_paper_literal, homothetic_tower, poncelet_iterate, verify_states, RatioBase};
use poncelet::tol::set_tolerance;
use poncelet::triangle::Triangle;
use poncelet::Error;

const SVG_WIDTH: u32 = 800;

enum Failure {
    Input(String),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification(_) => Failure::Verify(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Out = Result<String, Failure>;

struct Ctx {
    format: Option<Format>,
    mode: ExecMode,
}

impl Ctx {
    /// Picks the requested format, or the command's default, rejecting
    /// formats the command cannot produce.
    fn pick(&self, command: &str, allowed: &[Format]) -> Result<Format, Failure> {
        let f = self.format.unwrap_or(allowed[0]);
        if allowed.contains(&f) {
            Ok(f)
        } else {
            Err(Failure::Input(format!("{command} cannot write {f:?} output")))
        }
    }
}

fn json_text(command: &str, payload: Value) -> Out {
    let v = json_envelope(command, payload)?;
    Ok(serde_json::to_string_pretty(&v).expect("serializable") + "\n")
}

fn build_config(a: &FamilyArgs) -> Result<PonceletConfig, Failure> {
    Ok(match a.scenario {
        ScenarioArg::Center => make_config(a.r, a.c, Scenario::CenterCoincident)?,
        ScenarioArg::Focus => make_config(a.r, a.c, Scenario::FocusCoincident)?,
        ScenarioArg::General => general_config(Point::new(a.ox, a.oy), a.r, a.c)?,
    })
}

fn triangle_from(a: &TriangleArgs) -> Result<Triangle, Failure> {
    let v = &a.triangle;
    if v.len() != 6 || v.iter().any(|x| !x.is_finite()) {
        return Err(Failure::Input(format!("--triangle needs 6 finite numbers, got {}", v.len())));
    }
    Ok(Triangle::new(Point::new(v[0], v[1]), Point::new(v[2], v[3]), Point::new(v[4], v[5])))
}

fn family_svg(cfg: &PonceletConfig, samples: &[FamilySample]) -> String {
    SceneDescription::for_family(cfg, samples).to_svg(SVG_WIDTH)
}

fn family(cmd: &FamilyCmd, ctx: &Ctx) -> Out {
    match cmd {
        FamilyCmd::Check(a) => {
            ctx.pick("family check", &[Format::Json])?;
            let cfg = build_config(a)?;
            let residual = check_criterion(&cfg.circle, &cfg.conic);
            let class = if cfg.scenario == Scenario::General {
                poncelet::family::admissible_arcs(&cfg)
            } else {
                classify(&cfg)?
            };
            json_text(
                "family check",
                json!({
                    "criterion_residual": residual,
                    "scenario": cfg.scenario,
                    "config": cfg,
                    "classification": class,
                }),
            )
        }
        FamilyCmd::Sample { family: a, n, theta } => {
            let f = ctx.pick("family sample", &[Format::Json, Format::Csv, Format::Svg])?;
            let cfg = build_config(a)?;
            let samples = if theta.is_empty() {
                sample_family(&cfg, *n, ctx.mode)?
            } else {
                theta.iter().map(|&t| triangle_at(&cfg, t)).collect::<Result<Vec<_>, _>>()?
            };
            match f {
                Format::Json => json_text("family sample", json!({ "config": cfg, "samples": samples })),
                Format::Csv => Ok(family_csv(&samples)?),
                Format::Svg => Ok(family_svg(&cfg, &samples)),
            }
        }
        FamilyCmd::Sweep { family: a, n } => {
            let f = ctx.pick("family sweep", &[Format::Csv, Format::Json, Format::Svg])?;
            let cfg = build_config(a)?;
            let samples = sample_family(&cfg, *n, ctx.mode)?;
            let worst = samples.iter().map(|s| s.closure_residual).fold(0.0, f64::max);
            if worst > 1e-6 * cfg.radius().powi(2) {
                return Err(Failure::Verify(format!("closure residual {} exceeds the bound", fmt_num(worst))));
            }
            match f {
                Format::Csv => Ok(family_csv(&samples)?),
                Format::Json => json_text("family sweep", json!({ "config": cfg, "samples": samples })),
                Format::Svg => Ok(family_svg(&cfg, &samples)),
            }
        }
    }
}

fn invariants(cmd: &InvariantsCmd, ctx: &Ctx) -> Out {
    match cmd {
        InvariantsCmd::Sweep { family: a, n } => {
            let f = ctx.pick("invariants sweep", &[Format::Csv, Format::Json])?;
            let cfg = build_config(a)?;
            let reports = sweep(&cfg, *n, ctx.mode)?;
            let text = match f {
                Format::Csv => report_csv(&reports)?,
                _ => json_text("invariants sweep", json!({ "config": cfg, "reports": reports }))?,
            };
            // a special family must come out invariant and on its closed forms
            if cfg.scenario != Scenario::General {
                for r in &reports {
                    let off = r.expected_rel_error().is_some_and(|e| e > 1e-6);
                    if r.verdict != Verdict::Invariant || off {
                        return Err(Failure::Verify(format!(
                            "{}: verdict {:?}, mean {} vs expected {:?}",
                            r.name, r.verdict, fmt_num(r.mean), r.expected
                        )));
                    }
                }
            }
            Ok(text)
        }
        InvariantsCmd::Expected(a) => {
            ctx.pick("invariants expected", &[Format::Json])?;
            let cfg = build_config(a)?;
            let tangential = tangential_family_objects(&cfg)?;
            json_text(
                "invariants expected",
                json!({ "invariants": expected_invariants(&cfg)?, "tangential": tangential }),
            )
        }
    }
}

fn conic_scene(t: &Triangle, conics: Vec<PlacedConic>) -> String {
    SceneDescription { triangles: vec![*t], conics, ..Default::default() }.to_svg(SVG_WIDTH)
}

fn construct(cmd: &ConstructCmd, ctx: &Ctx) -> Out {
    let (name, a) = match cmd {
        ConstructCmd::Inellipse(a) => ("construct inellipse", a),
        ConstructCmd::OhConic(a) => ("construct oh-conic", a),
        ConstructCmd::Steiner(a) => ("construct steiner", a),
    };
    let f = ctx.pick(name, &[Format::Json, Format::Svg])?;
    let t = triangle_from(a)?;
    let (payload, conics) = match cmd {
        ConstructCmd::Inellipse(_) => {
            let c = inellipse_centered_at_circumcenter(&t)?;
            (json!({ "triangle": t, "conic": c, "params": c.params()? }), vec![c])
        }
        ConstructCmd::OhConic(_) => {
            let c = conic_with_foci_o_h(&t)?;
            (json!({ "triangle": t, "conic": c, "params": c.params()?, "foci": c.foci()? }), vec![c])
        }
        ConstructCmd::Steiner(_) => {
            let s = steiner_ellipses(&t)?;
            (json!({ "triangle": t, "steiner": s }), vec![s.inellipse, s.circumellipse])
        }
    };
    match f {
        Format::Svg => Ok(conic_scene(&t, conics)),
        _ => json_text(name, payload),
    }
}

fn sequence(cmd: &SequenceCmd, ctx: &Ctx) -> Out {
    match cmd {
        SequenceCmd::Homothety { family: a, theta, ratio, n } => {
            let f = ctx.pick("sequence homothety", &[Format::Json, Format::Svg])?;
            let cfg = build_config(a)?;
            let t = triangle_at(&cfg, *theta)?.triangle;
            let base = match ratio {
                RatioArg::Anti => RatioBase::AntiComplementary,
                RatioArg::Medial => RatioBase::Medial,
            };
            let tower = homothetic_tower(&t, base, *n)?;
            match f {
                Format::Svg => {
                    let mut triangles = vec![t];
                    triangles.extend(tower.iter().map(|l| l.triangle));
                    Ok(SceneDescription { triangles, ..Default::default() }.to_svg(SVG_WIDTH))
                }
                _ => json_text("sequence homothety", json!({ "seed": t, "ratio": base.ratio(), "levels": tower })),
            }
        }
        SequenceCmd::Iterate { c, r, n, check } => {
            let f = ctx.pick("sequence iterate", &[Format::Csv, Format::Json])?;
            let states = poncelet_iterate(*c, *r, *n)?;
            let closure = if *check > 0 { Some(verify_states(&states, *check, ctx.mode)?) } else { None };
            if closure.is_some_and(|w| w > 1e-9) {
                return Err(Failure::Verify(format!("state closure residual {}", fmt_num(closure.unwrap()))));
            }
            match f {
                Format::Csv => Ok(orbit_csv(&states)?),
                _ => json_text("sequence iterate", json!({ "states": states, "max_closure_residual": closure })),
            }
        }
        SequenceCmd::Orbit { x0, n, literal } => {
            let f = ctx.pick("sequence orbit", &[Format::Csv, Format::Json])?;
            let xs = if *literal { dynamics_orbit_paper_literal(*x0, *n)? } else { dynamics_orbit(*x0, *n)? };
            match f {
                Format::Json => json_text("sequence orbit", json!({ "x0": x0, "literal": literal, "orbit": xs })),
                _ => {
                    // the reconciled orbit is the ratio c/R of the pair iteration with R0 = 1
                    if *literal {
                        let mut s = String::from("step,x\n");
                        for (k, x) in xs.iter().enumerate() {
                            s.push_str(&format!("{k},{}\n", fmt_num(*x)));
                        }
                        Ok(s)
                    } else {
                        let states = poncelet_iterate(*x0, 1.0, *n + 1)?;
                        for (s, x) in states.iter().zip(&xs) {
                            if (s.x() - x).abs() > 1e-9 * x.abs().max(1.0) {
                                return Err(Failure::Verify(format!("orbit {x} differs from c/R {}", s.x())));
                            }
                        }
                        Ok(orbit_csv(&states)?)
                    }
                }
            }
        }
    }
}

fn extremal(a: &FamilyArgs, samples: usize, ctx: &Ctx) -> Out {
    let f = ctx.pick("extremal", &[Format::Json, Format::Csv, Format::Svg])?;
    let cfg = build_config(a)?;
    let profile = extremal_triangles(&cfg, ctx.mode)?;
    match f {
        Format::Json => json_text("extremal", serde_json::to_value(&profile).expect("serializable")),
        Format::Csv => Ok(area_csv(&area_samples(&cfg, samples)?)?),
        Format::Svg => {
            let mut members = vec![triangle_at(&cfg, theta_for_x(&cfg, profile.max.x)?)?];
            if let Some(m) = profile.min {
                members.push(triangle_at(&cfg, theta_for_x(&cfg, m.x)?)?);
            }
            Ok(family_svg(&cfg, &members))
        }
    }
}

fn locus(cmd: &LocusCmd, ctx: &Ctx) -> Out {
    match cmd {
        LocusCmd::Orthic { r, c, n } => {
            let f = ctx.pick("locus orthic", &[Format::Csv, Format::Json, Format::Svg])?;
            let cfg = make_config(*r, *c, Scenario::CenterCoincident)?;
            let pl = orthic_vertex_locus(&cfg, *n)?;
            match f {
                Format::Csv => Ok(polylines_csv(std::slice::from_ref(&pl))?),
                Format::Json => json_text("locus orthic", json!({ "config": cfg, "polyline": pl })),
                Format::Svg => Ok(SceneDescription { polylines: vec![pl], ..SceneDescription::for_family(&cfg, &[]) }
                    .to_svg(SVG_WIDTH)),
            }
        }
        LocusCmd::Cassini { r, c, n, variant } => {
            let f = ctx.pick("locus cassini", &[Format::Csv, Format::Json, Format::Svg])?;
            let v = match variant {
                CassiniArg::Oval => CassiniVariant::Oval,
                CassiniArg::MajorAxis => CassiniVariant::MajorAxisLocus,
            };
            let pieces = cassini_locus(*r, *c, *n, v)?;
            match f {
                Format::Csv => Ok(polylines_csv(&pieces)?),
                Format::Json => json_text("locus cassini", json!({ "R": r, "c": c, "variant": v, "polylines": pieces })),
                Format::Svg => {
                    let labels = vec![(Point::new(-c, 0.0), "F-".to_string()), (Point::new(*c, 0.0), "F+".to_string())];
                    Ok(SceneDescription { polylines: pieces, labels, ..Default::default() }.to_svg(SVG_WIDTH))
                }
            }
        }
        LocusCmd::Tangential(a) => {
            let f = ctx.pick("locus tangential", &[Format::Json, Format::Svg])?;
            let cfg = build_config(a)?;
            let locus = tangential_vertex_locus(&cfg)?;
            match f {
                Format::Json => json_text("locus tangential", json!({ "config": cfg, "locus": locus })),
                _ => {
                    let mut scene = SceneDescription::for_family(&cfg, &[]);
                    match locus {
                        TangentialLocus::Circle(c) => scene.circles.push(c),
                        TangentialLocus::Ellipse(e) => scene.conics.push(e),
                    }
                    Ok(scene.to_svg(SVG_WIDTH))
                }
            }
        }
    }
}

fn run(cli: &Cli) -> Out {
    if !(cli.tol > 0.0 && cli.tol < 1.0) {
        return Err(Failure::Input(format!("--tol must lie in (0, 1), got {}", cli.tol)));
    }
    set_tolerance(cli.tol);
    let ctx = Ctx {
        format: cli.format,
        mode: if cli.sequential { ExecMode::Sequential } else { ExecMode::default() },
    };
    match &cli.command {
        Command::Family(c) => family(c, &ctx),
        Command::Invariants(c) => invariants(c, &ctx),
        Command::Construct(c) => construct(c, &ctx),
        Command::Sequence(c) => sequence(c, &ctx),
        Command::Extremal { family: a, samples } => extremal(a, *samples, &ctx),
        Command::Locus(c) => locus(c, &ctx),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let text = match run(&cli) {
        Ok(t) => t,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Verify(msg)) => {
            eprintln!("verification failed: {msg}");
            return ExitCode::from(3);
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::SUCCESS
}
