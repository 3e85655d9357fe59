//! Sequences of triangles and conics: homothetic towers about the centroid
//! and the iteration that replaces a focal pair by the pair carried by its
//! tangential triangles.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{map_slice, ExecMode};
use crate::family::{sample_family, PonceletConfig};
use crate::geom::{CentralConicStd, CircleSpec, Point};
use crate::tol::tolerance;
use crate::triangle::{center_set, homothety, homothety_image, Triangle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RatioBase {
    /// Ratio `-2`: anticomplementary triangles.
    AntiComplementary,
    /// Ratio `-1/2`: medial triangles.
    Medial,
}

impl RatioBase {
    pub fn ratio(self) -> f64 {
        match self {
            RatioBase::AntiComplementary => -2.0,
            RatioBase::Medial => -0.5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FociPair {
    pub f1: Point,
    pub f2: Point,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TowerLevel {
    pub level: usize,
    pub triangle: Triangle,
    /// Images of the circumcenter and orthocenter of the seed triangle.
    pub foci: FociPair,
}

/// Levels `1..=n` of the tower `H_{G, k^j}(t)`. Foci come from applying the
/// same homothety to `O` and `H`.
pub fn homothetic_tower(t: &Triangle, base: RatioBase, n: usize) -> Result<Vec<TowerLevel>> {
    if n < 1 {
        return Err(Error::InvalidArgument("a tower needs at least one level".into()));
    }
    let cs = center_set(t)?;
    let g = cs.g;
    (1..=n)
        .map(|j| {
            let k = base.ratio().powi(j as i32);
            Ok(TowerLevel {
                level: j,
                triangle: homothety_image(t, g, k)?,
                foci: FociPair { f1: homothety(cs.o, g, k), f2: homothety(cs.h, g, k) },
            })
        })
        .collect()
}

/// The focus formulas exactly as printed for the towers. They agree with
/// [`homothetic_tower`] at level 1 only; kept to document the discrepancy.
pub fn paper_literal_tower_foci(o: Point, h: Point, base: RatioBase, n: usize) -> FociPair {
    let k = base.ratio().powi(n as i32);
    match base {
        RatioBase::AntiComplementary => FociPair { f1: (2.0 + k) * o + h, f2: 2.0 * o + (1.0 + k) * h },
        RatioBase::Medial => FociPair { f1: (2.0 + k) * o + h, f2: 2.0 * o + (-1.0 + k) * h },
    }
}

/// One state of the focal-pair iteration: circle `(x - c)^2 + y^2 = R^2` and
/// conic `x^2/alpha + y^2/beta = 1` with `alpha = R^2/4`, `beta = alpha - c^2`.
///
/// `c` is signed: the circle center is the focus `(c, 0)`, which may fall on
/// the negative axis after a hyperbolic step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SequenceState {
    pub n: usize,
    pub c: f64,
    pub r: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl SequenceState {
    pub fn new(n: usize, c: f64, r: f64) -> Self {
        let alpha = r * r / 4.0;
        SequenceState { n, c, r, alpha, beta: alpha - c * c }
    }

    pub fn x(&self) -> f64 {
        self.c / self.r
    }

    pub fn circle(&self) -> Result<CircleSpec> {
        CircleSpec::new(Point::new(self.c, 0.0), self.r)
    }

    pub fn conic(&self) -> Result<CentralConicStd> {
        CentralConicStd::new(self.alpha, self.beta)
    }

    pub fn config(&self) -> Result<PonceletConfig> {
        PonceletConfig::new(self.circle()?, self.conic()?)
    }
}

/// The map `(c, R) -> (c(5R^2 - 4c^2)/(R^2 - 4c^2), 2R^3/|R^2 - 4c^2|)`.
pub fn iterate_step(c: f64, r: f64) -> Option<(f64, f64)> {
    let den = r * r - 4.0 * c * c;
    if den.abs() <= tolerance() * r * r {
        return None;
    }
    Some((c * (5.0 * r * r - 4.0 * c * c) / den, 2.0 * r.powi(3) / den.abs()))
}

/// States `1..=n`, the first being `(c, R)` itself.
pub fn poncelet_iterate(c: f64, r: f64, n: usize) -> Result<Vec<SequenceState>> {
    if !(r > 0.0) || !(c >= 0.0) || !r.is_finite() || !c.is_finite() {
        return Err(Error::InvalidArgument(format!("need R > 0 and c >= 0, got R = {r}, c = {c}")));
    }
    let mut out = Vec::with_capacity(n);
    let (mut c, mut r) = (c, r);
    for k in 1..=n {
        out.push(SequenceState::new(k, c, r));
        if k == n {
            break;
        }
        (c, r) = iterate_step(c, r).ok_or(Error::SingularIteration { step: k })?;
    }
    Ok(out)
}

/// Checks that every state is a 3-Poncelet pair whose family closes at
/// `samples` angles; returns the largest closure residual relative to `R^2`.
pub fn verify_states(states: &[SequenceState], samples: usize, mode: ExecMode) -> Result<f64> {
    let worst = map_slice(states, mode, |s| -> Result<f64> {
        let cfg = s.config()?;
        let fam = sample_family(&cfg, samples, ExecMode::Sequential)?;
        if fam.len() < samples {
            return Err(Error::InsufficientSamples { found: fam.len(), needed: samples });
        }
        Ok(fam.iter().map(|f| f.closure_residual / (s.r * s.r)).fold(0.0, f64::max))
    });
    worst.into_iter().try_fold(0.0_f64, |acc, w| w.map(|w| acc.max(w)))
}

fn orbit_with(x0: f64, n: usize, step: impl Fn(f64) -> f64) -> Result<Vec<f64>> {
    if !(x0 >= 0.0) || !x0.is_finite() {
        return Err(Error::InvalidArgument(format!("x0 = {x0} must be finite and nonnegative")));
    }
    let tol = tolerance();
    let mut out = Vec::with_capacity(n + 1);
    let mut x = x0;
    for k in 0..=n {
        out.push(x);
        if k == n {
            break;
        }
        if (x.abs() - 0.5).abs() < tol {
            return Err(Error::SingularIteration { step: k });
        }
        x = step(x);
    }
    Ok(out)
}

/// Normalized dynamics `x = c / R`, exactly the ratio of successive
/// [`poncelet_iterate`] states: `x' = x (5 - 4x^2) sgn(1 - 4x^2) / 2`.
/// Returns `x_0, ..., x_n`.
pub fn dynamics_orbit(x0: f64, n: usize) -> Result<Vec<f64>> {
    orbit_with(x0, n, |x| 0.5 * x * (5.0 - 4.0 * x * x) * (1.0 - 4.0 * x * x).signum())
}

/// The printed one-dimensional map `x' = x (5 - 4x^2) / (2 (1 - 4x^2))`,
/// which does not match the ratio `c'/R'` of the pair iteration.
pub fn dynamics_orbit_paper_literal(x0: f64, n: usize) -> Result<Vec<f64>> {
    orbit_with(x0, n, |x| x * (5.0 - 4.0 * x * x) / (2.0 * (1.0 - 4.0 * x * x)))
}
