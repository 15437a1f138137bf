//! Tolerances and comparison helpers shared by the identity checks.

use num_complex::Complex64;

/// Relative tolerance for two evaluations of the same identity.
pub const IDENTITY_REL_TOL: f64 = 1e-8;
/// Absolute floor under relative comparisons; values this small are zero.
pub const ABS_FLOOR: f64 = 1e-10;

/// `|actual - expected| / max(|expected|, ABS_FLOOR)`.
pub fn relative_error(actual: Complex64, expected: Complex64) -> f64 {
    (actual - expected).norm() / expected.norm().max(ABS_FLOOR)
}

/// Relative agreement within `rel`, with [`ABS_FLOOR`] absolute slack.
pub fn approx_eq(a: Complex64, b: Complex64, rel: f64) -> bool {
    (a - b).norm() <= rel * a.norm().max(b.norm()) + ABS_FLOOR
}

pub(crate) fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}
