//! Riemann zeta via Euler–Maclaurin summation, continued to the left with
//! the functional equation ζ(s) = Δ(s) ζ(1−s).

use std::sync::OnceLock;

use log::info;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complexfn::{delta, ComplexValue};
use crate::error::{Error, Result};
use crate::summation::ComplexKahanSum;

/// Largest |Im s| the Euler–Maclaurin path accepts.
pub const MAX_HEIGHT: f64 = 1e5;

/// Minimum truncation point of the Dirichlet sum.
const MIN_CUTOFF: usize = 30;

/// B_{2k} / (2k)!, k = 1..16.
const EM_COEFFS: [f64; 16] = [
    0.083_333_333_333_333_333,
    -0.001_388_888_888_888_888_9,
    3.306_878_306_878_306_9e-5,
    -8.267_195_767_195_767_2e-7,
    2.087_675_698_786_809_9e-8,
    -5.284_190_138_687_493_2e-10,
    1.338_253_653_068_467_9e-11,
    -3.389_680_296_322_582_9e-13,
    8.586_062_056_277_844_6e-15,
    -2.174_868_698_558_061_9e-16,
    5.509_002_828_360_229_5e-18,
    -1.395_446_468_581_252_3e-19,
    3.534_707_039_629_467_5e-21,
    -8.953_517_427_037_546_9e-23,
    2.267_952_452_337_683_1e-24,
    -5.744_790_668_872_202_4e-26,
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaEvalConfig {
    /// Number of Bernoulli correction terms.
    pub em_order: usize,
    /// Truncation point N as a multiple of |Im s|.
    pub cutoff_factor: f64,
    /// Below this real part the functional equation is used.
    pub fe_switch_sigma: f64,
}

impl Default for ZetaEvalConfig {
    fn default() -> Self {
        Self {
            em_order: 10,
            cutoff_factor: 1.0,
            fe_switch_sigma: 0.0,
        }
    }
}

impl ZetaEvalConfig {
    pub fn validate(&self) -> Result<()> {
        if !(4..=16).contains(&self.em_order) {
            return Err(Error::InvalidConfig(format!(
                "em_order must lie in [4, 16], got {}",
                self.em_order
            )));
        }
        if !(self.cutoff_factor >= 1.0) || !self.cutoff_factor.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "cutoff_factor must be >= 1, got {}",
                self.cutoff_factor
            )));
        }
        if !(-1.0..0.5).contains(&self.fe_switch_sigma) {
            return Err(Error::InvalidConfig(format!(
                "fe_switch_sigma must lie in [-1, 1/2), got {}",
                self.fe_switch_sigma
            )));
        }
        Ok(())
    }

    /// Truncation point N = max(30, ceil(cutoff_factor · |Im s|)).
    pub fn cutoff(&self, s: ComplexValue) -> usize {
        MIN_CUTOFF.max((self.cutoff_factor * s.im.abs()).ceil() as usize)
    }
}

/// ln n for n < len, built once and shared read-only.
fn log_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let len = MAX_HEIGHT as usize + MIN_CUTOFF + 2;
        (0..len)
            .map(|n| {
                if n == 0 {
                    f64::NEG_INFINITY
                } else {
                    (n as f64).ln()
                }
            })
            .collect()
    })
}

#[inline]
fn ln_n(table: &[f64], n: usize) -> f64 {
    table.get(n).copied().unwrap_or_else(|| (n as f64).ln())
}

/// n^(−s) = exp(−s ln n).
#[inline]
fn pow_neg(ln: f64, s: Complex64) -> Complex64 {
    Complex64::from_polar((-s.re * ln).exp(), -s.im * ln)
}

/// Euler–Maclaurin evaluation of ζ(s):
/// Σ_{n<N} n^(−s) + N^(1−s)/(s−1) + N^(−s)/2 + Σ_k B_{2k}/(2k)! · (s)_{2k−1} N^(−s−2k+1).
pub fn zeta_em(s: ComplexValue, cfg: &ZetaEvalConfig) -> Result<ComplexValue> {
    cfg.validate()?;
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole {
            function: "zeta",
            re: 1.0,
            im: 0.0,
        });
    }
    if !(s.re >= cfg.fe_switch_sigma) || !(s.im.abs() <= MAX_HEIGHT) {
        return Err(Error::Domain(format!(
            "zeta_em needs Re s >= {} and |Im s| <= {MAX_HEIGHT}, got {s}",
            cfg.fe_switch_sigma
        )));
    }
    let table = log_table();
    let cutoff = cfg.cutoff(s);

    let mut acc = ComplexKahanSum::new();
    for n in 1..cutoff {
        acc.add(pow_neg(ln_n(table, n), s));
    }

    let ln_cut = ln_n(table, cutoff);
    let n_pow = pow_neg(ln_cut, s);
    let big_n = cutoff as f64;
    let mut tail = n_pow * big_n / (s - 1.0) + n_pow * 0.5;

    // (s)(s+1)...(s+2k-2) · N^(-s-2k+1)
    let inv_n2 = 1.0 / (big_n * big_n);
    let mut rising = s;
    let mut power = n_pow / big_n;
    for (k, &coeff) in EM_COEFFS.iter().take(cfg.em_order).enumerate() {
        tail += rising * power * coeff;
        let j = 2.0 * k as f64;
        rising *= (s + j + 1.0) * (s + j + 2.0);
        power *= inv_n2;
    }
    acc.add(tail);
    Ok(acc.value())
}

/// ζ(s) on the whole plane minus s = 1 (within the supported heights).
pub fn zeta(s: ComplexValue, cfg: &ZetaEvalConfig) -> Result<ComplexValue> {
    if s.re >= cfg.fe_switch_sigma {
        zeta_em(s, cfg)
    } else {
        let factor = delta(s)?;
        if factor == Complex64::new(0.0, 0.0) {
            cfg.validate()?;
            return Ok(factor);
        }
        Ok(factor * zeta_em(1.0 - s, cfg)?)
    }
}

/// Largest normalized size of ζ seen on a grid, for the growth monitors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthMonitor {
    /// max |ζ(σ+it)| / (1 + t^((1−σ)/2 + 0.1)) over σ ∈ [0, 1]
    pub strip_max: f64,
    /// max |ζ(σ+it)| / t^(1/2 − σ + 0.1) over σ ∈ [−1, 0]
    pub left_max: f64,
    pub samples: usize,
}

/// Exponent slack used by the growth monitors.
pub const GROWTH_EPS: f64 = 0.1;

/// Samples |ζ| against its convexity-type growth bounds up to height
/// `t_max`. Soft diagnostic: the result is logged, never asserted on.
pub fn growth_monitor(t_max: f64, cfg: &ZetaEvalConfig) -> Result<GrowthMonitor> {
    let t_max = t_max.min(MAX_HEIGHT);
    let heights: Vec<f64> = (0..40)
        .map(|j| 10.0 * (t_max / 10.0).powf(j as f64 / 39.0))
        .collect();
    let sigmas: Vec<f64> = (0..=8).map(|j| -1.0 + 0.25 * j as f64).collect();
    let points: Vec<(f64, f64)> = sigmas
        .iter()
        .flat_map(|&sigma| heights.iter().map(move |&t| (sigma, t)))
        .collect();
    let ratios = points
        .par_iter()
        .map(|&(sigma, t)| {
            let z = zeta(Complex64::new(sigma, t), cfg)?.norm();
            let ratio = if sigma >= 0.0 {
                z / (1.0 + t.powf((1.0 - sigma) / 2.0 + GROWTH_EPS))
            } else {
                z / t.powf(0.5 - sigma + GROWTH_EPS)
            };
            Ok((sigma, ratio))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut monitor = GrowthMonitor {
        strip_max: 0.0,
        left_max: 0.0,
        samples: ratios.len(),
    };
    for (sigma, ratio) in ratios {
        // σ = 0 belongs to both bounds
        if sigma >= 0.0 {
            monitor.strip_max = monitor.strip_max.max(ratio);
        }
        if sigma <= 0.0 {
            monitor.left_max = monitor.left_max.max(ratio);
        }
    }
    info!(
        "zeta growth monitor up to t={t_max}: strip max {:.4}, left max {:.4} ({} samples)",
        monitor.strip_max, monitor.left_max, monitor.samples
    );
    Ok(monitor)
}
