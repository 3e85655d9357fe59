//! Process-wide relative tolerance.
//!
//! Length comparisons use `tol * R`, quadratic-form residuals `tol * R^2`,
//! quartic residuals `tol * R^4`, where `R` is the circumradius of the
//! configuration at hand. Set the value before any parallel work starts.

use std::sync::atomic::{AtomicU64, Ordering};

/// Default relative tolerance.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

static TOLERANCE_BITS: AtomicU64 = AtomicU64::new(0x3E11_2E0B_E826_D695); // 1e-9

/// Current relative tolerance.
pub fn tolerance() -> f64 {
    f64::from_bits(TOLERANCE_BITS.load(Ordering::Relaxed))
}

/// Overrides the relative tolerance. Non-positive or non-finite values are ignored.
pub fn set_tolerance(tol: f64) {
    if tol.is_finite() && tol > 0.0 {
        TOLERANCE_BITS.store(tol.to_bits(), Ordering::Relaxed);
    }
}

/// Restores [`DEFAULT_TOLERANCE`].
pub fn reset_tolerance() {
    set_tolerance(DEFAULT_TOLERANCE);
}
