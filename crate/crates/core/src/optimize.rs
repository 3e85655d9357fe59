//! Deterministic one-dimensional optimization: a uniform grid locates the best
//! cell, golden-section search refines inside the neighbouring cells.

use crate::error::{Error, Result};
use crate::exec::{map_indexed, ExecMode};

/// Default number of grid cells.
pub const GRID: usize = 10_000;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub x: f64,
    pub value: f64,
}

/// Golden-section search for a maximum of a unimodal `f` on `[lo, hi]`.
pub fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> Extremum {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if hi - lo <= 4.0 * f64::EPSILON * (lo.abs() + hi.abs()).max(f64::MIN_POSITIVE) {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    // endpoints are candidates too: the maximum may sit on the boundary
    [(lo, f(lo)), (x1, f1), (x2, f2), (hi, f(hi))]
        .into_iter()
        .fold(Extremum { x: lo, value: f64::NEG_INFINITY }, |best, (x, v)| {
            if v > best.value {
                Extremum { x, value: v }
            } else {
                best
            }
        })
}

/// Global maximum of `f` on `[lo, hi]` by a `grid`-cell scan plus
/// golden-section refinement around the best node.
pub fn grid_golden_max<F>(f: F, lo: f64, hi: f64, grid: usize, mode: ExecMode) -> Result<Extremum>
where
    F: Fn(f64) -> f64 + Sync + Send,
{
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() || grid < 2 {
        return Err(Error::InvalidArgument(format!("bad search interval [{lo}, {hi}] with {grid} cells")));
    }
    let step = (hi - lo) / grid as f64;
    let node = |i: usize| if i == grid { hi } else { lo + step * i as f64 };
    let values = map_indexed(grid + 1, mode, |i| f(node(i)));
    let (best, _) = values
        .iter()
        .enumerate()
        .filter(|(_, v)| v.is_finite())
        .fold((usize::MAX, f64::NEG_INFINITY), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
    if best == usize::MAX {
        return Err(Error::Verification("objective is not finite anywhere on the grid".into()));
    }
    let a = node(best.saturating_sub(1));
    let b = node((best + 1).min(grid));
    let refined = golden_max(&f, a, b);
    Ok(if refined.value >= values[best] { refined } else { Extremum { x: node(best), value: values[best] } })
}

/// Global minimum, via [`grid_golden_max`] on `-f`.
pub fn grid_golden_min<F>(f: F, lo: f64, hi: f64, grid: usize, mode: ExecMode) -> Result<Extremum>
where
    F: Fn(f64) -> f64 + Sync + Send,
{
    let e = grid_golden_max(|x| -f(x), lo, hi, grid, mode)?;
    Ok(Extremum { x: e.x, value: -e.value })
}
