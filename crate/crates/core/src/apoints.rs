//! a-points of Δ: solutions of Δ(s) = a in the upper half-plane.
//!
//! Above a height floor every a-point sits on its own branch k of the phase
//! congruence t·log(2πe/t) + π/4 ≡ arg a (mod 2π), close to the curve
//! σ = 1/2 − log|a| / log(t/2π). [`enumerate`] seeds one Newton solve per
//! branch; [`count_contour`] counts the same population independently with
//! the argument principle.

use std::f64::consts::{FRAC_PI_4, PI, TAU};

use log::{debug, info};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complexfn::{delta_logderiv, ln_delta, ComplexValue};
use crate::error::{Error, Result};
use crate::quadrature;

const LN_2PI_E: f64 = 2.837_877_066_409_345_5;

/// Lowest admissible height floor.
pub const MIN_T_FLOOR: f64 = 20.0;

/// Points closer than this are the same a-point.
pub const DUPLICATE_DISTANCE: f64 = 1e-6;

/// Contour heights are kept at least `NUDGE_C / log T` away from predicted
/// a-points when the gap allows it.
pub const NUDGE_C: f64 = 0.1;

/// Maximum distance of the contour winding number from an integer.
pub const WINDING_INTEGER_TOL: f64 = 1e-3;

/// Error budget of the contour integral, in units of the winding number.
pub const WINDING_QUAD_TOL: f64 = 1e-4;

/// Damping used when a first Newton attempt fails to converge.
const RETRY_DAMPING: f64 = 0.5;

/// Length of the initial quadrature panels on the vertical edges; below the
/// half-period of the integrand for all supported heights.
const VERTICAL_PANEL: f64 = 0.5;

/// The nonzero target a, with log|a| and arg a cached.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TargetValue {
    pub value: ComplexValue,
    pub log_modulus: f64,
    /// Principal argument in (−π, π].
    pub phase: f64,
}

impl TargetValue {
    pub fn new(value: ComplexValue) -> Result<Self> {
        if value == Complex64::new(0.0, 0.0) {
            return Err(Error::ZeroTarget);
        }
        if !value.re.is_finite() || !value.im.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "target a = {value} is not finite"
            )));
        }
        // −0.0 imaginary parts would otherwise give arg = −π
        let phase = match value.arg() {
            p if p <= -PI => PI,
            p => p,
        };
        Ok(Self {
            value,
            log_modulus: value.norm().ln(),
            phase,
        })
    }

    pub fn from_parts(re: f64, im: f64) -> Result<Self> {
        Self::new(Complex64::new(re, im))
    }

    pub fn modulus(&self) -> f64 {
        self.log_modulus.exp()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.value.conj()).expect("conjugate of a nonzero target")
    }

    /// log a on the principal branch.
    pub fn ln(&self) -> Complex64 {
        Complex64::new(self.log_modulus, self.phase)
    }
}

/// One located a-point δ = β + iγ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct APoint {
    /// Phase-winding index, recomputed at the converged height.
    pub branch: i64,
    pub location: ComplexValue,
    /// |Δ(δ) − a|
    pub residual: f64,
    pub iterations: usize,
}

impl APoint {
    pub fn beta(&self) -> f64 {
        self.location.re
    }

    pub fn gamma(&self) -> f64 {
        self.location.im
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Height floor: only a-points with γ > t_min are considered.
    pub t_min: f64,
    pub residual_tol: f64,
    pub max_iter: usize,
    /// Newton step multiplier in (0, 1].
    pub damping: f64,
}

impl SolverConfig {
    /// Defaults for a target: t_min = max(30, 2π·exp(2|log|a||)), which keeps
    /// every seed within 1/2 of the critical line.
    pub fn for_target(a: &TargetValue) -> Self {
        Self {
            t_min: default_t_min(a),
            residual_tol: 1e-10,
            max_iter: 50,
            damping: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_min >= MIN_T_FLOOR) || !self.t_min.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "t_min must be >= {MIN_T_FLOOR}, got {}",
                self.t_min
            )));
        }
        if !(1e-12..=1e-6).contains(&self.residual_tol) {
            return Err(Error::InvalidConfig(format!(
                "residual_tol must lie in [1e-12, 1e-6], got {:e}",
                self.residual_tol
            )));
        }
        if self.max_iter < 8 {
            return Err(Error::InvalidConfig(format!(
                "max_iter must be >= 8, got {}",
                self.max_iter
            )));
        }
        if !(self.damping > 0.0 && self.damping <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "damping must lie in (0, 1], got {}",
                self.damping
            )));
        }
        Ok(())
    }
}

pub fn default_t_min(a: &TargetValue) -> f64 {
    30f64.max(TAU * (2.0 * a.log_modulus.abs()).exp())
}

/// t·log(2πe/t) + π/4, the leading phase of Δ(σ + it). Strictly decreasing
/// for t > 2π.
pub fn phase_function(t: f64) -> f64 {
    t * (LN_2PI_E - t.ln()) + FRAC_PI_4
}

/// Real-valued branch coordinate (arg a − phase(t)) / 2π; a-point k sits
/// near the height where this equals k. Increasing in t for t > 2π.
pub fn branch_coordinate(a: &TargetValue, t: f64) -> f64 {
    (a.phase - phase_function(t)) / TAU
}

/// Mean distance between consecutive a-point heights near t.
pub fn seed_spacing(t: f64) -> f64 {
    TAU / (t / TAU).ln()
}

/// The unique t > 2πe with t·log(2πe/t) + π/4 − arg a = −2πk.
pub fn seed_gamma(a: &TargetValue, k: i64) -> Result<f64> {
    let target = a.phase - TAU * k as f64;
    let floor = TAU * std::f64::consts::E;
    // phase_function(2πe) = π/4
    if !(target < FRAC_PI_4) {
        return Err(Error::NoSolution { branch: k });
    }
    let g = |t: f64| phase_function(t) - target;
    let mut lo = floor;
    let mut hi = 2.0 * floor;
    while g(hi) > 0.0 {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Newton polish, d/dt phase = log(2π/t)
    let mut t = 0.5 * (lo + hi);
    for _ in 0..3 {
        let slope = (TAU / t).ln();
        let next = t - g(t) / slope;
        if !(next > floor) {
            break;
        }
        t = next;
    }
    Ok(t)
}

/// 1/2 − log|a| / log(γ/2π).
pub fn seed_beta(a: &TargetValue, gamma: f64) -> Result<f64> {
    curve_sigma_for(a.log_modulus, gamma)
}

/// σ on the curve 1/2 − log|a| / log(t/2π), given log|a|.
pub fn curve_sigma_for(log_modulus: f64, t: f64) -> Result<f64> {
    if !(t > TAU) {
        return Err(Error::Domain(format!(
            "curve height must exceed 2*pi, got {t}"
        )));
    }
    Ok(0.5 - log_modulus / (t / TAU).ln())
}

/// Seed location for branch k.
pub fn seed(a: &TargetValue, k: i64) -> Result<ComplexValue> {
    let gamma = seed_gamma(a, k)?;
    Ok(Complex64::new(seed_beta(a, gamma)?, gamma))
}

/// Branch indices whose seeds lie in (lo, hi].
fn branch_range(a: &TargetValue, lo: f64, hi: f64) -> std::ops::RangeInclusive<i64> {
    let first = branch_coordinate(a, lo).floor() as i64 + 1;
    let last = branch_coordinate(a, hi).floor() as i64;
    first..=last
}

/// Damped Newton refinement of a seed to an a-point, requiring the seed to
/// lie above the configured floor.
pub fn refine(a: &TargetValue, seed: ComplexValue, cfg: &SolverConfig) -> Result<APoint> {
    cfg.validate()?;
    if !(seed.im >= cfg.t_min) {
        return Err(Error::Domain(format!(
            "seed height {} is below t_min = {}",
            seed.im, cfg.t_min
        )));
    }
    newton(a, seed, cfg)
}

/// Newton on F(s) = Δ(s) − a with F'(s) = Δ(s)·(Δ'/Δ)(s).
pub(crate) fn newton(a: &TargetValue, seed: ComplexValue, cfg: &SolverConfig) -> Result<APoint> {
    let max_move = 0.5 * seed_spacing(seed.im.max(TAU * 1.5));
    let mut s = seed;
    let mut residual = f64::INFINITY;
    for iter in 0..=cfg.max_iter {
        let ln_d = ln_delta(s)?.ok_or(Error::Drift {
            re: s.re,
            im: s.im,
            reason: "reached a zero of delta",
        })?;
        let d = ln_d.exp();
        let f = d - a.value;
        residual = f.norm();
        if residual <= cfg.residual_tol {
            return Ok(APoint {
                branch: branch_coordinate(a, s.im).round() as i64,
                location: s,
                residual,
                iterations: iter,
            });
        }
        if iter == cfg.max_iter {
            break;
        }
        let step = f / (d * delta_logderiv(s)?);
        s -= step * cfg.damping;
        if !(s.re > -1.0 && s.re < 2.0) {
            return Err(Error::Drift {
                re: s.re,
                im: s.im,
                reason: "real part left (-1, 2)",
            });
        }
        if !((s - seed).norm() <= max_move) || !(s.im > 0.0) {
            return Err(Error::Drift {
                re: s.re,
                im: s.im,
                reason: "moved more than half the local seed spacing",
            });
        }
    }
    Err(Error::NonConvergence {
        iterations: cfg.max_iter,
        residual,
    })
}

fn solve_branch(a: &TargetValue, k: i64, cfg: &SolverConfig) -> Result<APoint> {
    let start = seed(a, k)?;
    match newton(a, start, cfg) {
        Err(Error::NonConvergence { .. }) => {
            debug!("branch {k}: retrying with damping {RETRY_DAMPING}");
            let damped = SolverConfig {
                damping: cfg.damping.min(RETRY_DAMPING),
                max_iter: cfg.max_iter * 2,
                ..*cfg
            };
            newton(a, start, &damped)
        }
        other => other,
    }
}

/// All a-points with γ ∈ (t_min, T], sorted by increasing γ.
pub fn enumerate(a: &TargetValue, t_max: f64, cfg: &SolverConfig) -> Result<Vec<APoint>> {
    enumerate_between(a, cfg.t_min, t_max, cfg)
}

/// All a-points with γ ∈ (t_lo, t_hi], sorted by increasing γ; requires
/// t_lo ≥ cfg.t_min.
pub fn enumerate_between(
    a: &TargetValue,
    t_lo: f64,
    t_hi: f64,
    cfg: &SolverConfig,
) -> Result<Vec<APoint>> {
    cfg.validate()?;
    if !(t_lo >= cfg.t_min) || !(t_hi > t_lo) {
        return Err(Error::Domain(format!(
            "need t_min = {} <= {t_lo} < {t_hi}",
            cfg.t_min
        )));
    }
    // seeds one unit beyond each end catch points whose seed and root
    // straddle a boundary
    let branches: Vec<i64> = branch_range(a, t_lo - 1.0, t_hi + 1.0).collect();
    let solved = branches
        .par_iter()
        .map(|&k| solve_branch(a, k, cfg).map_err(|e| e.with_branch(k)))
        .collect::<Result<Vec<_>>>()?;

    let mut points: Vec<APoint> = solved
        .into_iter()
        .filter(|p| p.gamma() > t_lo && p.gamma() <= t_hi)
        .collect();
    points.sort_by(|x, y| x.gamma().total_cmp(&y.gamma()));
    points.dedup_by(|next, prev| (next.location - prev.location).norm() < DUPLICATE_DISTANCE);
    Ok(points)
}

/// Horizontal extent of the counting rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourOptions {
    pub left: f64,
    pub right: f64,
}

impl Default for ContourOptions {
    fn default() -> Self {
        Self {
            left: -1.0,
            right: 2.0,
        }
    }
}

/// Result of an argument-principle count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContourCount {
    pub count: usize,
    /// (1/2πi)∮ Δ'/(Δ − a) before rounding.
    pub winding: Complex64,
    /// Heights of the horizontal edges after nudging.
    pub t_bottom: f64,
    pub t_top: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Moves a horizontal edge within [h, h+1) towards the middle of the gap
/// between the predicted a-points around it, without crossing a prediction.
pub fn nudge_height(a: &TargetValue, h: f64, t_ref: f64) -> Result<f64> {
    let margin = NUDGE_C / t_ref.ln();
    let k = branch_coordinate(a, h).floor() as i64;
    let below = seed_gamma(a, k).ok();
    let above = seed_gamma(a, k + 1)?;
    let clear_below = below.map_or(true, |g| h - g >= margin);
    if clear_below && above - h >= margin {
        return Ok(h);
    }
    let mid = match below {
        Some(g) => 0.5 * (g + above),
        None => h,
    };
    let nudged = if mid > h { mid.min(h + 0.999) } else { h };
    if nudged == h {
        info!("contour edge at t={h} stays within {margin:.4} of a predicted a-point");
    } else {
        info!("contour edge nudged from t={h} to t={nudged}");
    }
    Ok(nudged)
}

/// Number of a-points with t0 < γ ≤ T and β ∈ (−1, 2), by the argument
/// principle on the rectangle −1 + it0, 2 + it0, 2 + iT, −1 + iT.
pub fn count_contour(a: &TargetValue, t0: f64, t_max: f64) -> Result<usize> {
    Ok(count_contour_with(a, t0, t_max, ContourOptions::default())?.count)
}

pub fn count_contour_with(
    a: &TargetValue,
    t0: f64,
    t_max: f64,
    opts: ContourOptions,
) -> Result<ContourCount> {
    if !(t0 >= MIN_T_FLOOR) || !(t_max > t0) || !t_max.is_finite() {
        return Err(Error::Domain(format!(
            "contour needs {MIN_T_FLOOR} <= t0 < T, got t0 = {t0}, T = {t_max}"
        )));
    }
    if !(opts.left < opts.right) {
        return Err(Error::Domain(
            "contour left edge must be left of right edge".into(),
        ));
    }
    let bottom = nudge_height(a, t0, t_max)?;
    let top = nudge_height(a, t_max, t_max)?;

    let integrand = |s: Complex64| -> Result<Complex64> {
        let ln_d = ln_delta(s)?.ok_or_else(|| {
            Error::Domain(format!("contour passes through a zero of delta at {s}"))
        })?;
        let ratio = (a.ln() - ln_d).exp();
        let logderiv = delta_logderiv(s)?;
        if ratio.norm() <= 1.0 {
            Ok(logderiv / (1.0 - ratio))
        } else {
            let inv = ratio.inv();
            Ok(logderiv * inv / (inv - 1.0))
        }
    };

    let i = Complex64::i();
    let width = opts.right - opts.left;
    let height = top - bottom;
    // per-edge absolute tolerance on ∮, so the sum stays under WINDING_QUAD_TOL
    let edge_tol = 0.25 * WINDING_QUAD_TOL * TAU;
    let vertical_panels = (height / VERTICAL_PANEL).ceil() as usize;
    let horizontal_panels = (width / VERTICAL_PANEL).ceil() as usize;

    let ((bottom_int, right_int), (top_int, left_int)) = rayon::join(
        || {
            rayon::join(
                || {
                    quadrature::integrate(
                        &|x| integrand(Complex64::new(x, bottom)),
                        opts.left,
                        opts.right,
                        horizontal_panels,
                        edge_tol,
                    )
                },
                || {
                    quadrature::integrate(
                        &|t| integrand(Complex64::new(opts.right, t)),
                        bottom,
                        top,
                        vertical_panels,
                        edge_tol,
                    )
                },
            )
        },
        || {
            rayon::join(
                || {
                    quadrature::integrate(
                        &|x| integrand(Complex64::new(x, top)),
                        opts.left,
                        opts.right,
                        horizontal_panels,
                        edge_tol,
                    )
                },
                || {
                    quadrature::integrate(
                        &|t| integrand(Complex64::new(opts.left, t)),
                        bottom,
                        top,
                        vertical_panels,
                        edge_tol,
                    )
                },
            )
        },
    );
    let (bottom_int, right_int, top_int, left_int) = (bottom_int?, right_int?, top_int?, left_int?);

    // counterclockwise: bottom →, right ↑, top ←, left ↓
    let contour = bottom_int.value + i * right_int.value - top_int.value - i * left_int.value;
    let winding = contour / (TAU * i);
    let error_estimate =
        (bottom_int.error + right_int.error + top_int.error + left_int.error) / TAU;
    let nearest = winding.re.round();
    let off = (winding - nearest).norm();
    if !(off <= WINDING_INTEGER_TOL) || nearest < 0.0 {
        return Err(Error::Quadrature {
            value: winding.re,
            tol: WINDING_INTEGER_TOL,
        });
    }
    debug!(
        "contour [{}, {}] x [{bottom}, {top}]: winding {winding} (error estimate {error_estimate:e})",
        opts.left, opts.right
    );
    Ok(ContourCount {
        count: nearest as usize,
        winding,
        t_bottom: bottom,
        t_top: top,
        error_estimate,
        evaluations: bottom_int.evaluations
            + right_int.evaluations
            + top_int.evaluations
            + left_int.evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexfn::{delta, theta_rs};

    fn target(re: f64, im: f64) -> TargetValue {
        TargetValue::from_parts(re, im).unwrap()
    }

    fn theta_root(k: i64, lo: f64, hi: f64) -> f64 {
        let goal = k as f64 * PI;
        let (mut lo, mut hi) = (lo, hi);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if theta_rs(mid).unwrap() < goal {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn target_value_decomposition() {
        assert_eq!(TargetValue::from_parts(0.0, 0.0), Err(Error::ZeroTarget));
        for &(re, im) in &[
            (1.0, 0.0),
            (-1.0, 0.0),
            (0.0, 1.0),
            (0.25, 0.433),
            (-3.0, -4.0),
        ] {
            let a = target(re, im);
            let back = Complex64::from_polar(1.0, a.phase) * a.log_modulus.exp();
            assert!((back - a.value).norm() <= 1e-14 * a.value.norm().max(1.0));
            assert!(a.phase > -PI && a.phase <= PI);
        }
        assert_eq!(target(-1.0, 0.0).conj().phase, PI);
    }

    #[test]
    fn solver_config_bounds() {
        let a = target(2.0, 0.0);
        let cfg = SolverConfig::for_target(&a);
        assert_eq!(cfg.t_min, 30.0);
        assert!(cfg.validate().is_ok());
        assert!((default_t_min(&target(10.0, 0.0)) - TAU * 100.0).abs() < 1e-9);
        let bad = [
            SolverConfig { t_min: 19.0, ..cfg },
            SolverConfig {
                residual_tol: 1e-13,
                ..cfg
            },
            SolverConfig {
                residual_tol: 1e-5,
                ..cfg
            },
            SolverConfig { max_iter: 7, ..cfg },
            SolverConfig {
                damping: 0.0,
                ..cfg
            },
            SolverConfig {
                damping: 1.5,
                ..cfg
            },
        ];
        for b in bad {
            assert!(b.validate().is_err(), "{b:?}");
        }
    }

    #[test]
    fn seed_gamma_near_gram_points() {
        // a = 1: branch k is the Gram point θ(t) = kπ
        let a = target(1.0, 0.0);
        for k in 3..12 {
            let t = seed_gamma(&a, k).unwrap();
            let gram = theta_root(k, t - 2.0, t + 2.0);
            assert!((t - gram).abs() < 0.5, "k={k}: seed {t}, gram {gram}");
        }
    }

    #[test]
    fn seed_gamma_monotone_and_admissible() {
        let a = target(0.3, -0.8);
        let mut prev = 0.0;
        for k in 1..40 {
            let t = seed_gamma(&a, k).unwrap();
            assert!(t > prev && t > TAU * std::f64::consts::E);
            assert!((branch_coordinate(&a, t) - k as f64).abs() < 1e-9);
            prev = t;
        }
        assert!(matches!(
            seed_gamma(&a, -1),
            Err(Error::NoSolution { branch: -1 })
        ));
    }

    #[test]
    fn seed_gamma_phase_sensitivity() {
        let a = target(1.0, 0.0);
        let b = TargetValue::new(Complex64::from_polar(1.0, 1e-3)).unwrap();
        for k in [5, 50, 500] {
            let ta = seed_gamma(&a, k).unwrap();
            let tb = seed_gamma(&b, k).unwrap();
            let bound = 1e-3 / (ta / TAU).ln() * (1.0 + 1e-2);
            assert!((tb - ta).abs() <= bound, "k={k}");
        }
    }

    #[test]
    fn seed_beta_values() {
        let one = target(1.0, 0.0);
        assert_eq!(seed_beta(&one, 123.4).unwrap(), 0.5);
        let e = target(std::f64::consts::E, 0.0);
        let g = TAU * std::f64::consts::E.powi(2);
        assert!(seed_beta(&e, g).unwrap().abs() < 1e-15);
        let ten = target(10.0, 0.0);
        assert!((seed_beta(&ten, 1000.0).unwrap() - 0.045_830_294_841_429_4).abs() < 1e-14);
        assert!(seed_beta(&ten, TAU).is_err());
    }

    #[test]
    fn refine_first_gram_point() {
        let a = target(1.0, 0.0);
        let cfg = SolverConfig::for_target(&a);
        let g0 = theta_root(0, 10.0, 20.0);
        let p = newton(&a, Complex64::new(0.5, 17.85), &cfg).unwrap();
        assert!((p.beta() - 0.5).abs() < 1e-10);
        assert!((p.gamma() - 17.845_599_5).abs() < 1e-7);
        assert!((p.gamma() - g0).abs() < 1e-9);
        assert!(p.residual <= 1e-10);
        // 17.85 is below the admissible floor for the public entry point
        assert!(refine(&a, Complex64::new(0.5, 17.85), &cfg).is_err());
    }

    #[test]
    fn refine_large_modulus_lies_left() {
        let a = target(2.0, 0.0);
        let cfg = SolverConfig::for_target(&a);
        let p = refine(&a, seed(&a, 20).unwrap(), &cfg).unwrap();
        assert!(p.beta() < 0.5);
        assert!(p.residual <= cfg.residual_tol);
        assert!((delta(p.location).unwrap() - a.value).norm() <= cfg.residual_tol);
        assert_eq!(p.branch, 20);
    }

    #[test]
    fn refine_reports_non_convergence() {
        let a = target(0.0, 1.0);
        let cfg = SolverConfig {
            max_iter: 8,
            damping: 0.01,
            ..SolverConfig::for_target(&a)
        };
        let r = refine(&a, seed(&a, 30).unwrap(), &cfg);
        assert!(matches!(r, Err(Error::NonConvergence { .. })), "{r:?}");
    }

    #[test]
    fn refine_rejects_far_seed() {
        let a = target(1.0, 0.0);
        let cfg = SolverConfig::for_target(&a);
        let r = refine(&a, Complex64::new(1.9, 100.0), &cfg);
        assert!(matches!(r, Err(Error::Drift { .. })), "{r:?}");
    }

    #[test]
    fn enumerate_is_sorted_and_solved() {
        let a = target(-1.0, 0.0);
        let cfg = SolverConfig::for_target(&a);
        let pts = enumerate(&a, 300.0, &cfg).unwrap();
        assert!(pts.windows(2).all(|w| w[0].gamma() < w[1].gamma()));
        assert!(pts.windows(2).all(|w| w[1].branch == w[0].branch + 1));
        for p in &pts {
            assert!(p.gamma() > cfg.t_min && p.gamma() <= 300.0);
            assert!((delta(p.location).unwrap() - a.value).norm() <= cfg.residual_tol);
        }
    }

    #[test]
    fn contour_matches_enumeration_low() {
        let a = target(1.0, 0.0);
        let cfg = SolverConfig {
            t_min: 20.0,
            ..SolverConfig::for_target(&a)
        };
        let pts = enumerate(&a, 100.0, &cfg).unwrap();
        let count = count_contour(&a, 20.0, 100.0).unwrap();
        assert_eq!(pts.len(), count);
        let main = 100.0 / TAU * (100.0 / (TAU * std::f64::consts::E)).ln();
        assert!((count as f64 - main).abs() <= 5.0 + 2.0 * 100f64.ln());
    }

    #[test]
    fn contour_left_edge_invariance() {
        let a = target(0.0, 1.0);
        let wide = count_contour_with(&a, 30.0, 150.0, ContourOptions::default()).unwrap();
        let narrow = count_contour_with(
            &a,
            30.0,
            150.0,
            ContourOptions {
                left: -0.7,
                right: 2.0,
            },
        )
        .unwrap();
        assert_eq!(wide.count, narrow.count);
    }

    #[test]
    fn contour_rejects_bad_heights() {
        let a = target(1.0, 0.0);
        assert!(count_contour(&a, 10.0, 100.0).is_err());
        assert!(count_contour(&a, 50.0, 40.0).is_err());
    }
}
