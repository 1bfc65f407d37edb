//! Complex special functions: log-gamma, digamma, the functional-equation
//! factor Δ(s) = 2^s π^(s-1) Γ(1-s) sin(πs/2), its logarithmic derivative,
//! the leading Stirling approximation of Δ, and the Riemann–Siegel theta.
//!
//! Everything runs in binary64. Δ is assembled in log-space and only
//! exponentiated at the end, so heights up to ~10^5 stay representable.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, LN_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A point of the complex plane, s = σ + it.
pub type ComplexValue = Complex64;

const LN_PI: f64 = 1.144_729_885_849_400_2;
const LN_2PI: f64 = 1.837_877_066_409_345_5;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_7;

/// Below this modulus the Stirling series is not trusted; arguments are
/// shifted upward with the recurrence first.
const STIRLING_MIN_ABS: f64 = 12.0;

/// Above this |Im w| the trigonometric functions switch to their
/// dominant-exponential forms (the subdominant term is below e^-40).
const TRIG_EXP_SWITCH: f64 = 20.0;

/// B_{2k} / (2k (2k-1)), k = 1..10.
const LOG_GAMMA_COEFFS: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

/// B_{2k} / (2k), k = 1..10.
const DIGAMMA_COEFFS: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32_760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
    43867.0 / 14_364.0,
    -174_611.0 / 6600.0,
];

fn is_integer(x: f64) -> bool {
    x.is_finite() && x == x.round()
}

fn is_gamma_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && is_integer(z.re)
}

/// Number of unit shifts that move `z` into the Stirling region.
fn stirling_shift(z: Complex64) -> usize {
    let mut n = 0usize;
    let mut w = z;
    while w.re < 0.0 || w.norm() < STIRLING_MIN_ABS {
        w.re += 1.0;
        n += 1;
    }
    n
}

/// Principal branch of log Γ(z): the analytic continuation from the positive
/// real axis, continuous on the plane cut along the non-positive reals. The
/// imaginary part is not reduced mod 2π.
pub fn log_gamma(z: ComplexValue) -> Result<ComplexValue> {
    if is_gamma_pole(z) {
        return Err(Error::Pole {
            function: "log_gamma",
            re: z.re,
            im: z.im,
        });
    }
    let n = stirling_shift(z);
    let mut shift = Complex64::new(0.0, 0.0);
    for k in 0..n {
        shift += (z + k as f64).ln();
    }
    Ok(log_gamma_stirling(z + n as f64) - shift)
}

fn log_gamma_stirling(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut power = inv;
    for &c in &LOG_GAMMA_COEFFS {
        series += power * c;
        power *= inv2;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_2PI + series
}

/// ψ(z) = Γ'(z)/Γ(z).
pub fn digamma(z: ComplexValue) -> Result<ComplexValue> {
    if is_gamma_pole(z) {
        return Err(Error::Pole {
            function: "digamma",
            re: z.re,
            im: z.im,
        });
    }
    let n = stirling_shift(z);
    let mut shift = Complex64::new(0.0, 0.0);
    for k in 0..n {
        shift += (z + k as f64).inv();
    }
    let w = z + n as f64;
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut power = inv2;
    for &c in &DIGAMMA_COEFFS {
        series += power * c;
        power *= inv2;
    }
    Ok(w.ln() - inv * 0.5 - series - shift)
}

/// log sin(w), valid as a logarithm (exp gives sin w) for any non-zero w.
fn ln_sin(w: Complex64) -> Complex64 {
    let i = Complex64::i();
    if w.im > TRIG_EXP_SWITCH {
        let q = (i * w * 2.0).exp();
        Complex64::new(-LN_2, FRAC_PI_2) - i * w + (1.0 - q).ln()
    } else if w.im < -TRIG_EXP_SWITCH {
        let q = (-i * w * 2.0).exp();
        Complex64::new(-LN_2, -FRAC_PI_2) + i * w + (1.0 - q).ln()
    } else {
        w.sin().ln()
    }
}

fn ln_cos(w: Complex64) -> Complex64 {
    let i = Complex64::i();
    if w.im > TRIG_EXP_SWITCH {
        let q = (i * w * 2.0).exp();
        Complex64::new(-LN_2, 0.0) - i * w + (1.0 + q).ln()
    } else if w.im < -TRIG_EXP_SWITCH {
        let q = (-i * w * 2.0).exp();
        Complex64::new(-LN_2, 0.0) + i * w + (1.0 + q).ln()
    } else {
        w.cos().ln()
    }
}

fn cot(w: Complex64) -> Complex64 {
    let i = Complex64::i();
    if w.im > TRIG_EXP_SWITCH {
        let q = (i * w * 2.0).exp();
        -i * (1.0 + q) / (1.0 - q)
    } else if w.im < -TRIG_EXP_SWITCH {
        let q = (-i * w * 2.0).exp();
        i * (1.0 + q) / (1.0 - q)
    } else {
        w.cos() / w.sin()
    }
}

fn tan(w: Complex64) -> Complex64 {
    let i = Complex64::i();
    if w.im > TRIG_EXP_SWITCH {
        let q = (i * w * 2.0).exp();
        i * (1.0 - q) / (1.0 + q)
    } else if w.im < -TRIG_EXP_SWITCH {
        let q = (-i * w * 2.0).exp();
        -i * (1.0 - q) / (1.0 + q)
    } else {
        w.sin() / w.cos()
    }
}

/// Where Δ vanishes (non-positive even integers) or has a pole (positive odd
/// integers). `None` for every other point.
fn delta_special_point(s: Complex64) -> Option<bool> {
    if s.im != 0.0 || !is_integer(s.re) {
        return None;
    }
    let n = s.re as i64;
    if n <= 0 && n % 2 == 0 {
        Some(true)
    } else if n > 0 && n % 2 == 1 {
        Some(false)
    } else {
        None
    }
}

/// log Δ(s), or `None` where Δ(s) = 0.
///
/// Left of the critical line the defining product is used. Right of it the
/// reflected form Δ(s) = (2π)^s / (2 Γ(s) cos(πs/2)) keeps Γ away from its
/// poles, and makes Δ(s)Δ(1-s) = 1 hold up to rounding.
pub(crate) fn ln_delta(s: ComplexValue) -> Result<Option<ComplexValue>> {
    match delta_special_point(s) {
        Some(true) => return Ok(None),
        Some(false) => {
            return Err(Error::Pole {
                function: "delta",
                re: s.re,
                im: s.im,
            })
        }
        None => {}
    }
    let half_pi_s = s * FRAC_PI_2;
    let value = if s.re <= 0.5 {
        s * LN_2 + (s - 1.0) * LN_PI + log_gamma(1.0 - s)? + ln_sin(half_pi_s)
    } else {
        s * LN_2PI - LN_2 - log_gamma(s)? - ln_cos(half_pi_s)
    };
    Ok(Some(value))
}

/// Δ(s) = 2^s π^(s-1) Γ(1-s) sin(πs/2).
///
/// Exactly zero at the non-positive even integers; a pole error at the
/// positive odd integers.
pub fn delta(s: ComplexValue) -> Result<ComplexValue> {
    Ok(ln_delta(s)?.map_or(Complex64::new(0.0, 0.0), |l| l.exp()))
}

/// Δ'(s)/Δ(s) = log 2π − ψ(1−s) + (π/2) cot(πs/2).
///
/// Errors at the zeros and poles of Δ. At the positive even integers,
/// where the two terms of the formula above are individually singular,
/// the equivalent form log 2π − ψ(s) + (π/2) tan(πs/2) is finite and used.
pub fn delta_logderiv(s: ComplexValue) -> Result<ComplexValue> {
    if delta_special_point(s).is_some() {
        return Err(Error::Singular {
            function: "delta_logderiv",
            re: s.re,
            im: s.im,
        });
    }
    let w = s * FRAC_PI_2;
    if s.re <= 0.5 {
        Ok(LN_2PI - digamma(1.0 - s)? + cot(w) * FRAC_PI_2)
    } else {
        Ok(LN_2PI - digamma(s)? + tan(w) * FRAC_PI_2)
    }
}

/// Leading Stirling term (t/2π)^(1/2 − s) · exp(i(t + π/4)), for t ≥ 1 and
/// σ ≥ −2.
pub fn delta_asymptotic(s: ComplexValue) -> Result<ComplexValue> {
    if !(s.im >= 1.0 && s.re >= -2.0) {
        return Err(Error::Domain(format!(
            "delta_asymptotic needs Im s >= 1 and Re s >= -2, got {s}"
        )));
    }
    let t = s.im;
    let log_height = (t / (2.0 * PI)).ln();
    Ok(((0.5 - s) * log_height + Complex64::new(0.0, t + FRAC_PI_4)).exp())
}

/// Riemann–Siegel theta, θ(t) = Im log Γ(1/4 + it/2) − (t/2) log π.
/// On the critical line Δ(1/2 + it) = exp(−2iθ(t)).
pub fn theta_rs(t: f64) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("theta_rs needs t > 0, got {t}")));
    }
    let lg = log_gamma(Complex64::new(0.25, 0.5 * t))?;
    Ok(lg.im - 0.5 * t * LN_PI)
}

#[cfg(test)]
mod tests {
    use super::*;

    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn log_gamma_closed_forms() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-14);
        assert!(log_gamma(c(2.0, 0.0)).unwrap().norm() < 1e-14);
        let half = log_gamma(c(0.5, 0.0)).unwrap();
        assert!((half.re - 0.5 * LN_PI).abs() < 1e-14);
        assert!(half.im.abs() < 1e-15);
        // Γ(5) = 24
        assert!((log_gamma(c(5.0, 0.0)).unwrap().re - 24f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn log_gamma_poles() {
        for n in [0.0, -1.0, -7.0] {
            assert!(matches!(log_gamma(c(n, 0.0)), Err(Error::Pole { .. })));
            assert!(matches!(digamma(c(n, 0.0)), Err(Error::Pole { .. })));
        }
        assert!(log_gamma(c(-1.0, 1e-3)).is_ok());
    }

    #[test]
    fn log_gamma_recurrence_and_continuity() {
        // log Γ(z+1) = log Γ(z) + log z, branch-continuous for Im z > 0
        for &(re, im) in &[(0.3, 0.2), (-0.7, 3.0), (1.5, 40.0), (-1.0, 5000.0)] {
            let z = c(re, im);
            let lhs = log_gamma(z + 1.0).unwrap();
            let rhs = log_gamma(z).unwrap() + z.ln();
            assert!((lhs - rhs).norm() < 1e-10 * (1.0 + lhs.norm()), "{z}");
        }
        // crossing the Stirling switch radius must not jump
        let a = log_gamma(c(0.5, 11.999_999)).unwrap();
        let b = log_gamma(c(0.5, 12.000_001)).unwrap();
        assert!((a - b).norm() < 1e-5);
    }

    #[test]
    fn digamma_closed_forms() {
        assert!((digamma(c(1.0, 0.0)).unwrap().re + EULER_GAMMA).abs() < 1e-14);
        assert!((digamma(c(2.0, 0.0)).unwrap().re - (1.0 - EULER_GAMMA)).abs() < 1e-14);
        let half = digamma(c(0.5, 0.0)).unwrap();
        assert!((half.re - (-EULER_GAMMA - 2.0 * LN_2)).abs() < 1e-14);
    }

    #[test]
    fn digamma_recurrence() {
        for &(re, im) in &[(0.3, 0.2), (-2.5, 1.0), (0.5, 300.0)] {
            let z = c(re, im);
            let diff = digamma(z + 1.0).unwrap() - digamma(z).unwrap() - z.inv();
            assert!(diff.norm() < 1e-12, "{z}: {diff}");
        }
    }

    #[test]
    fn delta_special_values() {
        assert_eq!(delta(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert_eq!(delta(c(-4.0, 0.0)).unwrap(), c(0.0, 0.0));
        let m1 = delta(c(-1.0, 0.0)).unwrap();
        assert!((m1.re + 1.0 / (2.0 * PI * PI)).abs() < 1e-15);
        assert!(m1.im.abs() < 1e-15);
        // Δ(2) = ζ(2)/ζ(−1) = −2π²
        let two = delta(c(2.0, 0.0)).unwrap();
        assert!((two.re + 2.0 * PI * PI).abs() < 1e-12);
        for n in [1.0, 3.0, 9.0] {
            assert!(matches!(delta(c(n, 0.0)), Err(Error::Pole { .. })));
        }
        assert!((delta(c(0.5, 25.0)).unwrap().norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn delta_logderiv_singularities_and_asymptote() {
        for n in [0.0, -2.0, 1.0, 5.0] {
            assert!(matches!(
                delta_logderiv(c(n, 0.0)),
                Err(Error::Singular { .. })
            ));
        }
        assert!(delta_logderiv(c(-1.0, 0.0)).is_ok());
        assert!(delta_logderiv(c(2.0, 0.0)).is_ok());
        let v = delta_logderiv(c(0.5, 50.0)).unwrap();
        let target = -(50.0 / (2.0 * PI)).ln();
        assert!((v - target).norm() <= 0.05, "{v}");
        assert!((target + 2.0742).abs() < 1e-4);
    }

    #[test]
    fn delta_logderiv_reflection() {
        for &(re, im) in &[(0.1, 30.0), (-0.8, 2.5), (1.7, 700.0)] {
            let s = c(re, im);
            let d = delta_logderiv(s).unwrap() - delta_logderiv(1.0 - s).unwrap();
            assert!(d.norm() < 1e-11, "{s}: {d}");
        }
    }

    #[test]
    fn delta_logderiv_matches_finite_difference() {
        let s = c(-1.3, 0.7);
        let h = 1e-5;
        let fd = (delta(s + h).unwrap().ln() - delta(s - h).unwrap().ln()) / (2.0 * h);
        let exact = delta_logderiv(s).unwrap();
        assert!((fd - exact).norm() < 1e-6, "{fd} vs {exact}");
    }

    #[test]
    fn delta_asymptotic_contract() {
        let s = c(2.0, 100.0);
        let ratio = delta(s).unwrap() / delta_asymptotic(s).unwrap();
        assert!((ratio - 1.0).norm() <= 0.02);
        for t in [1.0, 7.5, 2.0 * PI, 1234.5] {
            let v = delta_asymptotic(c(0.5, t)).unwrap();
            assert!((v.norm() - 1.0).abs() < 1e-15);
        }
        let at_2pi = delta_asymptotic(c(0.5, 2.0 * PI)).unwrap();
        let expected = (2.0 * PI + FRAC_PI_4).rem_euclid(2.0 * PI);
        assert!((at_2pi.arg().rem_euclid(2.0 * PI) - expected).abs() < 1e-12);
        assert!(delta_asymptotic(c(0.5, 0.5)).is_err());
        assert!(delta_asymptotic(c(-2.5, 10.0)).is_err());
    }

    #[test]
    fn theta_zero_by_bisection() {
        let (mut lo, mut hi) = (10.0, 20.0);
        assert!(theta_rs(lo).unwrap() < 0.0 && theta_rs(hi).unwrap() > 0.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if theta_rs(mid).unwrap() < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((lo - 17.845_599_5).abs() < 1e-7);
        assert!(theta_rs(0.0).is_err());
    }

    #[test]
    fn theta_classical_asymptotic() {
        let t: f64 = 100.0;
        let approx = 0.5 * t * (t / (2.0 * PI)).ln() - 0.5 * t - PI / 8.0;
        assert!((theta_rs(t).unwrap() - approx).abs() <= 1.0 / (48.0 * t) + 1e-4);
    }

    #[test]
    fn theta_matches_delta_on_critical_line() {
        let t = 30.0;
        let via_theta = Complex64::from_polar(1.0, -2.0 * theta_rs(t).unwrap());
        assert!((via_theta - delta(c(0.5, t)).unwrap()).norm() <= 1e-9);
    }
}
