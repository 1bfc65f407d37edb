//! Main terms of the counting and value-sum asymptotics, and the empirical
//! quantities they are checked against.

use std::f64::consts::{E, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::apoints::{self, curve_sigma_for, APoint, SolverConfig, TargetValue};
use crate::complexfn::ComplexValue;
use crate::error::{Error, Result};
use crate::summation::ComplexKahanSum;
use crate::tolerances::SUM_ERROR_EXPONENT;
use crate::zetacore::{zeta, ZetaEvalConfig};

/// Largest shift η accepted by the value-sum checks.
pub const MAX_ETA: f64 = 0.9;

/// Solver and ζ settings for a verification run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub solver: SolverConfig,
    pub zeta: ZetaEvalConfig,
}

impl PipelineConfig {
    pub fn for_target(a: &TargetValue) -> Self {
        Self {
            solver: SolverConfig::for_target(a),
            zeta: ZetaEvalConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.solver.validate()?;
        self.zeta.validate()
    }
}

fn check_height(t_max: f64) -> Result<()> {
    if !(t_max > TAU * E) || !t_max.is_finite() {
        return Err(Error::Domain(format!("T must exceed 2*pi*e, got {t_max}")));
    }
    Ok(())
}

fn check_eta(eta: f64) -> Result<()> {
    if !(0.0..=MAX_ETA).contains(&eta) {
        return Err(Error::Domain(format!(
            "eta must lie in [0, {MAX_ETA}], got {eta}"
        )));
    }
    Ok(())
}

/// (T/2π) log(T/2πe).
pub fn n_main(t_max: f64) -> Result<f64> {
    check_height(t_max)?;
    let x = t_max / TAU;
    Ok(x * (x / E).ln())
}

/// (T/2π) log(T/2πe) + a/(1−η) (T/2π)^(1−η) log(T/2π) − a/(1−η)² (T/2π)^(1−η).
pub fn sum_main(a: &TargetValue, eta: f64, t_max: f64) -> Result<ComplexValue> {
    check_eta(eta)?;
    let count_term = n_main(t_max)?;
    let x = t_max / TAU;
    let w = 1.0 - eta;
    let scale = x.powf(w);
    Ok(count_term + a.value * (scale * x.ln() / w - scale / (w * w)))
}

/// Empirical value sum over the a-points up to T next to its main term.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SumReport {
    pub a: ComplexValue,
    pub eta: f64,
    #[serde(rename = "T")]
    pub t_max: f64,
    /// Height floor of the enumeration; the few a-points below it are not
    /// in the sum and only shift it by a bounded amount.
    pub t_min: f64,
    pub count: usize,
    pub n_main: f64,
    pub empirical_sum: ComplexValue,
    pub main_term: ComplexValue,
    pub abs_error: f64,
    /// abs_error / T^(1/2 + 0.1)
    pub normalized_error: f64,
}

impl SumReport {
    pub fn mean(&self) -> ComplexValue {
        self.empirical_sum / self.count as f64
    }
}

/// Σ ζ(point + shift) accumulated in the order of `points`. The ζ values are
/// computed in parallel; the reduction is sequential so the result does not
/// depend on the worker count.
pub fn zeta_sum_at(
    points: &[APoint],
    map: impl Fn(ComplexValue) -> ComplexValue + Sync,
    cfg: &ZetaEvalConfig,
) -> Result<ComplexValue> {
    let values = points
        .par_iter()
        .map(|p| zeta(map(p.location), cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(values.into_iter().collect::<ComplexKahanSum>().value())
}

/// Builds the report for an already enumerated population (sorted by γ,
/// all with γ ≤ T).
pub fn sum_report_from_points(
    a: &TargetValue,
    eta: f64,
    t_max: f64,
    points: &[APoint],
    cfg: &PipelineConfig,
) -> Result<SumReport> {
    let main_term = sum_main(a, eta, t_max)?;
    let empirical = zeta_sum_at(points, |d| d + eta, &cfg.zeta)?;
    let abs_error = (empirical - main_term).norm();
    Ok(SumReport {
        a: a.value,
        eta,
        t_max,
        t_min: cfg.solver.t_min,
        count: points.len(),
        n_main: n_main(t_max)?,
        empirical_sum: empirical,
        main_term,
        abs_error,
        normalized_error: abs_error / t_max.powf(SUM_ERROR_EXPONENT),
    })
}

/// Σ ζ(η + δ_a) over t_min < γ_a ≤ T.
pub fn empirical_sum(
    a: &TargetValue,
    eta: f64,
    t_max: f64,
    cfg: &PipelineConfig,
) -> Result<SumReport> {
    check_eta(eta)?;
    check_height(t_max)?;
    cfg.validate()?;
    let points = apoints::enumerate(a, t_max, &cfg.solver)?;
    sum_report_from_points(a, eta, t_max, &points, cfg)
}

fn check_mean_height(t_max: f64, cfg: &PipelineConfig) -> Result<()> {
    if !(t_max > cfg.solver.t_min + 50.0) {
        return Err(Error::Domain(format!(
            "mean needs T > t_min + 50 = {}, got {t_max}",
            cfg.solver.t_min + 50.0
        )));
    }
    Ok(())
}

/// Mean of ζ(δ_a) over t_min < γ_a ≤ T; tends to a + 1.
pub fn mean_zeta(a: &TargetValue, t_max: f64, cfg: &PipelineConfig) -> Result<ComplexValue> {
    check_mean_height(t_max, cfg)?;
    Ok(empirical_sum(a, 0.0, t_max, cfg)?.mean())
}

/// Mean of ζ(1 − δ_a) over t_min < γ_a ≤ T; tends to 1 + 1/a.
pub fn reflected_mean(a: &TargetValue, t_max: f64, cfg: &PipelineConfig) -> Result<ComplexValue> {
    check_mean_height(t_max, cfg)?;
    cfg.validate()?;
    let points = apoints::enumerate(a, t_max, &cfg.solver)?;
    reflected_mean_from_points(&points, &cfg.zeta)
}

pub fn reflected_mean_from_points(points: &[APoint], cfg: &ZetaEvalConfig) -> Result<ComplexValue> {
    if points.is_empty() {
        return Err(Error::Domain("no a-points to average over".into()));
    }
    Ok(zeta_sum_at(points, |d| 1.0 - d, cfg)? / points.len() as f64)
}

pub fn mean_zeta_from_points(points: &[APoint], cfg: &ZetaEvalConfig) -> Result<ComplexValue> {
    if points.is_empty() {
        return Err(Error::Domain("no a-points to average over".into()));
    }
    Ok(zeta_sum_at(points, |d| d, cfg)? / points.len() as f64)
}

/// The conjugates of a's a-points: the lower half-plane a-points of conj a.
pub fn conjugate_points(points: &[APoint]) -> Vec<APoint> {
    points
        .iter()
        .map(|p| APoint {
            branch: -p.branch,
            location: p.location.conj(),
            ..*p
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveSample {
    pub t: f64,
    pub sigma: f64,
}

/// Point of the curve σ = 1/2 − log|a| / log(t/2π) near which a-points of
/// targets with modulus |a| lie.
pub fn curve_sigma(modulus: f64, t: f64) -> Result<CurveSample> {
    if !(modulus > 0.0) || !modulus.is_finite() {
        return Err(Error::Domain(format!(
            "modulus must be positive, got {modulus}"
        )));
    }
    if !(t > TAU * 1.1) {
        return Err(Error::Domain(format!("curve needs t > 2*pi*1.1, got {t}")));
    }
    Ok(CurveSample {
        t,
        sigma: curve_sigma_for(modulus.ln(), t)?,
    })
}

/// `count` samples of the curve on a log-spaced grid over [t_lo, t_hi], plus
/// the round heights 1, 2, 5 × 10^k inside that range.
pub fn curve_grid(modulus: f64, t_lo: f64, t_hi: f64, count: usize) -> Result<Vec<CurveSample>> {
    if !(t_hi > t_lo) || count < 2 {
        return Err(Error::Domain(
            "curve grid needs t_lo < t_hi and 2+ samples".into(),
        ));
    }
    let ratio = t_hi / t_lo;
    let mut heights: Vec<f64> = (0..count)
        .map(|j| {
            if j + 1 == count {
                t_hi
            } else {
                t_lo * ratio.powf(j as f64 / (count - 1) as f64)
            }
        })
        .collect();
    for decade in 0..6 {
        for m in [1.0, 2.0, 5.0] {
            let t = m * 10f64.powi(decade);
            if t > t_lo && t < t_hi {
                heights.push(t);
            }
        }
    }
    heights.sort_by(f64::total_cmp);
    heights.dedup();
    heights
        .into_iter()
        .map(|t| curve_sigma(modulus, t))
        .collect()
}

/// max |β_a − 1/2| over a-points in one dyadic block [lo, hi).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClusterBlock {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
    pub max_dev: f64,
}

/// Per-block maxima over [2^j t_min, 2^(j+1) t_min), the last block cut at T.
pub fn clustering_report(
    a: &TargetValue,
    t_max: f64,
    cfg: &PipelineConfig,
) -> Result<Vec<ClusterBlock>> {
    cfg.validate()?;
    if !(t_max >= 4.0 * cfg.solver.t_min) {
        return Err(Error::Domain(format!(
            "clustering needs T >= 4 t_min = {}, got {t_max}",
            4.0 * cfg.solver.t_min
        )));
    }
    let points = apoints::enumerate(a, t_max, &cfg.solver)?;
    Ok(clustering_from_points(&points, cfg.solver.t_min, t_max))
}

pub fn clustering_from_points(points: &[APoint], t_min: f64, t_max: f64) -> Vec<ClusterBlock> {
    let mut blocks = Vec::new();
    let mut lo = t_min;
    while lo < t_max {
        let hi = (2.0 * lo).min(t_max);
        let members = points
            .iter()
            .filter(|p| p.gamma() >= lo && (p.gamma() < hi || (hi == t_max && p.gamma() <= hi)));
        let (count, max_dev) = members.fold((0, 0.0f64), |(n, m), p| {
            (n + 1, m.max((p.beta() - 0.5).abs()))
        });
        blocks.push(ClusterBlock {
            lo,
            hi,
            count,
            max_dev,
        });
        lo *= 2.0;
    }
    blocks
}

/// True when every block maximum is at most (1 + slack) times the previous.
pub fn blocks_decrease(blocks: &[ClusterBlock], slack: f64) -> bool {
    blocks
        .windows(2)
        .all(|w| w[1].max_dev <= w[0].max_dev * (1.0 + slack))
}
