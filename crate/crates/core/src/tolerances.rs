//! Desk-scale tolerances for the asymptotic statements being checked.
//!
//! The asymptotics come without explicit constants, so every threshold here
//! is a calibration choice. They live in this one file so the checks in the
//! CLI and in the test suites cannot drift apart.

/// |N_a(T) − main term| ≤ COUNT_LOG_FACTOR · log T.
pub const COUNT_LOG_FACTOR: f64 = 10.0;

/// |mean ζ(δ_a) − (a + 1)| at the reference height.
pub const MEAN_TOL: f64 = 0.1;

/// Smallest T at which the CLI applies [`MEAN_TOL`] to a verify run.
pub const MEAN_CHECK_MIN_T: f64 = 2000.0;

/// Slack when requiring the mean error to shrink with T.
pub const MEAN_TREND_SLACK: f64 = 1.5;

/// Exponent of T in the normalized error of the value sum (1/2 + ε, ε = 0.1).
pub const SUM_ERROR_EXPONENT: f64 = 0.6;

/// Allowed growth of the normalized sum error relative to its value at the
/// smallest height of a sweep.
pub const NORMALIZED_ERROR_GROWTH: f64 = 10.0;

/// |β_a − curve σ(γ_a)| above [`CURVE_CHECK_MIN_T`].
pub const CURVE_DEVIATION_TOL: f64 = 0.02;
pub const CURVE_CHECK_MIN_T: f64 = 200.0;

/// Extra allowance on |β_a − 1/2| beyond |log|a|| / log(T/2π).
pub const CLUSTER_EXTRA: f64 = 0.05;

/// Relative slack when requiring per-block maxima to decrease.
pub const BLOCK_DECREASE_SLACK: f64 = 0.10;

/// Relative agreement of sum_main with (1 + a)·n_main at η = 0.
pub const MAIN_TERM_IDENTITY_TOL: f64 = 1e-9;

/// |reflected mean − (1 + 1/a)|; a purely imaginary a gets the wider one.
pub const REFLECTED_MEAN_TOL: f64 = 0.1;
pub const REFLECTED_MEAN_TOL_IMAGINARY: f64 = 0.15;

/// Agreement of a = 1 a-point heights with Gram points.
pub const GRAM_TOL: f64 = 1e-8;
