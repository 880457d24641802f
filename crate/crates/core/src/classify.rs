//! Numerical soft/hard classification of boundary points.
//!
//! A radial probe fits |w(rho e^{i theta1})| along a rho ladder against
//! constant, logarithmic, and power-law growth models. The verdict is
//! refined by walking the integral-differential chain: differentiation
//! grades soft points, integration grades hard ones.

use serde::Serialize;

use crate::boundary::RhoLadder;
use crate::chain::{angular_derivative, angular_primitive};
use crate::error::{Error, Result};
use crate::inner::{DiskPoint, TaylorCoefficients};

/// Default cap on chain steps while searching for a degree.
pub const DEFAULT_MAX_STEPS: usize = 6;

/// Default ceiling on the estimated truncation tail at the deepest
/// rung before a probe is declared truncation-limited.
pub const DEFAULT_GUARD_TOL: f64 = 1e-3;

/// Bounded when the spread of |w| over the top half of the ladder is
/// below this fraction of its mean.
const CONSTANT_SPREAD: f64 = 0.05;

/// Log beats power when its residual is below this fraction of the
/// power-law residual.
const LOG_VS_POWER: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Regular,
    Soft,
    BorderlineHard,
    Hard,
}

/// Raw radial probe: growth model of |w| along the ladder.
#[derive(Debug, Clone, Serialize)]
pub struct ProbeResult {
    pub bounded: bool,
    /// Fitted p in |w| ~ (1-rho)^{-p}; 0 when bounded or logarithmic.
    pub growth_exponent: f64,
    pub log_flag: bool,
    /// Fitted slope of |w| against ln(1/(1-rho)).
    pub log_slope: f64,
    /// Normalized residuals of the two unbounded-growth fits.
    pub residual_log: f64,
    pub residual_power: f64,
    /// |w| at each rung.
    pub magnitudes: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SingularityReport {
    pub theta1: f64,
    pub verdict: Verdict,
    pub growth_exponent: f64,
    pub log_flag: bool,
    /// n_s >= 1 for soft, n_h >= 0 for hard; absent when the search hit
    /// max_steps (possible infinitely soft/hard point).
    pub degree: Option<usize>,
    /// True when the degree search exhausted max_steps.
    pub degree_capped: bool,
    pub diagnostics: Vec<String>,
    pub probe: ProbeResult,
}

fn fit_line(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
    let denom = n * sxx - sx * sx;
    let slope = (n * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / n;
    (slope, intercept)
}

fn rms(v: &[f64]) -> f64 {
    (v.iter().map(|x| x * x).sum::<f64>() / v.len() as f64).sqrt()
}

/// Probe |w| along the ladder at fixed theta1 and pick the best growth
/// model. Errors out when the truncation tail at the deepest rung
/// could contaminate the fit.
pub fn probe_point(
    tc: &TaylorCoefficients,
    theta1: f64,
    ladder: &RhoLadder,
    guard_tol: f64,
) -> Result<ProbeResult> {
    ladder.validate()?;
    if ladder.rhos.len() < 4 {
        return Err(Error::InvalidLadder(
            "classification needs at least 4 rungs".into(),
        ));
    }
    let mags: Vec<f64> = ladder
        .rhos
        .iter()
        .map(|&rho| {
            let p = DiskPoint::new(rho, theta1)?;
            Ok(tc.evaluate(&p).norm())
        })
        .collect::<Result<_>>()?;

    // Truncation guard, relative to the probed magnitude so that
    // legitimately divergent probes are not rejected for a tail that
    // is negligible against their growth.
    let deepest = *ladder.rhos.last().unwrap();
    let tail = tc.tail_estimate(deepest);
    let limit = guard_tol * mags.last().unwrap().max(1.0);
    if tail >= limit {
        return Err(Error::TruncationLimited {
            rho: deepest,
            tail,
            limit,
        });
    }

    // Constant model: spread over the deep half of the ladder.
    let half = &mags[mags.len() / 2..];
    let mean = half.iter().sum::<f64>() / half.len() as f64;
    let spread = half.iter().fold(0.0_f64, |a, &v| a.max(v))
        - half.iter().fold(f64::INFINITY, |a, &v| a.min(v));
    if spread < CONSTANT_SPREAD * mean || spread < 1e-9 {
        return Ok(ProbeResult {
            bounded: true,
            growth_exponent: 0.0,
            log_flag: false,
            log_slope: 0.0,
            residual_log: 0.0,
            residual_power: 0.0,
            magnitudes: mags,
        });
    }

    // Log model: |w| = a + b * L with L = ln(1/(1-rho)).
    let ls: Vec<f64> = ladder.rhos.iter().map(|&r| -(1.0 - r).ln()).collect();
    let (b_log, a_log) = fit_line(&ls, &mags);
    let resid_log: Vec<f64> = ls
        .iter()
        .zip(&mags)
        .map(|(&l, &m)| m - (a_log + b_log * l))
        .collect();

    // Power model: ln|w| = a + p * L, fitted in log space and compared
    // in |w| space.
    let log_mags: Vec<f64> = mags.iter().map(|&m| m.max(1e-300).ln()).collect();
    let (p_pow, a_pow) = fit_line(&ls, &log_mags);
    let resid_pow: Vec<f64> = ls
        .iter()
        .zip(&mags)
        .map(|(&l, &m)| m - (a_pow + p_pow * l).exp())
        .collect();

    let scale = rms(&mags).max(1e-300);
    let residual_log = rms(&resid_log) / scale;
    let residual_power = rms(&resid_pow) / scale;
    let log_wins = residual_log < LOG_VS_POWER * residual_power;

    Ok(ProbeResult {
        bounded: false,
        growth_exponent: if log_wins { 0.0 } else { p_pow },
        log_flag: log_wins,
        log_slope: b_log,
        residual_log,
        residual_power,
        magnitudes: mags,
    })
}

/// Full classification at theta1: probe, then walk the chain to grade
/// the singularity. `regular_hint` should be set only when catalog
/// metadata certifies that the entry has no singularity at theta1; a
/// boundedness probe alone cannot distinguish regular from soft.
pub fn classify_point(
    tc: &TaylorCoefficients,
    theta1: f64,
    ladder: &RhoLadder,
    max_steps: usize,
    guard_tol: f64,
    regular_hint: bool,
) -> Result<SingularityReport> {
    if max_steps < 1 {
        return Err(Error::InvalidArgument("max_steps must be >= 1".into()));
    }
    let probe0 = probe_point(tc, theta1, ladder, guard_tol)?;
    let mut diagnostics = Vec::new();

    if probe0.bounded {
        if regular_hint {
            diagnostics.push("bounded; catalog metadata certifies no singularity".into());
            return Ok(SingularityReport {
                theta1,
                verdict: Verdict::Regular,
                growth_exponent: 0.0,
                log_flag: false,
                degree: None,
                degree_capped: false,
                diagnostics,
                probe: probe0,
            });
        }
        // Soft-or-regular: grade by repeated angular differentiation.
        diagnostics.push("bounded probe: soft-or-regular".into());
        let mut cur = tc.clone();
        let mut degree = None;
        for step in 1..=max_steps {
            cur = angular_derivative(&cur);
            let probe = probe_point(&cur, theta1, ladder, guard_tol)?;
            if !probe.bounded {
                degree = Some(step);
                break;
            }
        }
        let capped = degree.is_none();
        if capped {
            diagnostics.push(format!(
                "still bounded after {max_steps} differentiations: degree >= {max_steps}, possibly infinitely soft or regular"
            ));
        }
        return Ok(SingularityReport {
            theta1,
            verdict: Verdict::Soft,
            growth_exponent: 0.0,
            log_flag: false,
            degree,
            degree_capped: capped,
            diagnostics,
            probe: probe0,
        });
    }

    // Unbounded: grade by repeated angular integration.
    let mut cur = tc.clone();
    let mut integrations = None;
    for step in 1..=max_steps {
        cur = angular_primitive(&cur);
        let probe = probe_point(&cur, theta1, ladder, guard_tol)?;
        if probe.bounded {
            integrations = Some(step);
            break;
        }
    }
    let (verdict, degree, capped) = match integrations {
        Some(1) => (Verdict::BorderlineHard, Some(0), false),
        Some(s) => (Verdict::Hard, Some(s - 1), false),
        None => {
            diagnostics.push(format!(
                "still unbounded after {max_steps} integrations: possibly infinitely hard"
            ));
            (Verdict::Hard, None, true)
        }
    };
    Ok(SingularityReport {
        theta1,
        verdict,
        growth_exponent: probe0.growth_exponent,
        log_flag: probe0.log_flag,
        degree,
        degree_capped: capped,
        diagnostics,
        probe: probe0,
    })
}
