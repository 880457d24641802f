//! Boundary-value recovery: the real function on the circle as the
//! rho -> 1- limit of u(rho, theta), with optional Richardson
//! acceleration, plus Abel-Poisson summation of the Fourier series and
//! whole-circle error grids.

use std::f64::consts::PI;

use serde::Serialize;

use crate::catalog::RealFunctionSpec;
use crate::error::{Error, Result};
use crate::fourier::FourierCoefficients;
use crate::inner::{DiskPoint, TaylorCoefficients};

/// Default threshold on the last successive difference for declaring
/// convergence.
pub const DEFAULT_CONVERGENCE_THRESHOLD: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Extrapolation {
    None,
    Richardson,
}

/// Increasing sequence of radii approaching 1 from below.
#[derive(Debug, Clone)]
pub struct RhoLadder {
    pub rhos: Vec<f64>,
    pub extrapolation: Extrapolation,
}

impl RhoLadder {
    /// rho_j = 1 - 2^{-j} for j = lo..=hi.
    pub fn geometric(lo: u32, hi: u32, extrapolation: Extrapolation) -> Result<RhoLadder> {
        if hi < lo {
            return Err(Error::InvalidLadder(format!(
                "empty range {lo}..={hi}"
            )));
        }
        let rhos = (lo..=hi).map(|j| 1.0 - 0.5_f64.powi(j as i32)).collect();
        let ladder = RhoLadder {
            rhos,
            extrapolation,
        };
        ladder.validate()?;
        Ok(ladder)
    }

    /// The default recovery ladder: j = 4..=14 with Richardson
    /// acceleration.
    pub fn default_recovery() -> RhoLadder {
        RhoLadder::geometric(4, 14, Extrapolation::Richardson).unwrap()
    }

    pub fn validate(&self) -> Result<()> {
        if self.rhos.is_empty() {
            return Err(Error::InvalidLadder("no rungs".into()));
        }
        for w in self.rhos.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::InvalidLadder(
                    "rungs must be strictly increasing".into(),
                ));
            }
        }
        let last = *self.rhos.last().unwrap();
        if !(0.0..1.0).contains(&self.rhos[0]) || last >= 1.0 {
            return Err(Error::InvalidLadder(
                "rungs must lie in (0, 1)".into(),
            ));
        }
        if self.extrapolation == Extrapolation::Richardson && self.rhos.len() < 2 {
            return Err(Error::InvalidLadder(
                "richardson needs at least two rungs".into(),
            ));
        }
        Ok(())
    }
}

/// Per-rho estimates of u(rho, theta) with an extrapolated boundary
/// value and a convergence verdict.
#[derive(Debug, Clone, Serialize)]
pub struct RecoveryResult {
    pub theta: f64,
    /// (rho, u) pairs aligned with the ladder.
    pub estimates: Vec<(f64, f64)>,
    pub extrapolated: f64,
    pub converged: bool,
    /// Last successive difference between ladder estimates.
    pub residual: f64,
    /// Set when the truncation tail at the deepest rung may exceed a
    /// tenth of the convergence threshold; the limit estimate is then
    /// dominated by series truncation, not boundary behavior.
    pub truncation_limited: bool,
}

fn finish(
    theta: f64,
    estimates: Vec<(f64, f64)>,
    ladder: &RhoLadder,
    threshold: f64,
    truncation_limited: bool,
) -> RecoveryResult {
    let m = estimates.len();
    let residual = if m >= 2 {
        (estimates[m - 1].1 - estimates[m - 2].1).abs()
    } else {
        f64::INFINITY
    };
    let mut extrapolated = estimates[m - 1].1;

    if ladder.extrapolation == Extrapolation::Richardson && m >= 3 {
        let h: Vec<f64> = estimates.iter().map(|&(r, _)| 1.0 - r).collect();
        let u: Vec<f64> = estimates.iter().map(|&(_, v)| v).collect();
        let d1 = u[m - 2] - u[m - 3];
        let d2 = u[m - 1] - u[m - 2];
        // Error model u_j = L + C (1 - rho_j): accept only when the
        // last three estimates fit it to within 10%.
        let pred = d1 * (h[m - 1] - h[m - 2]) / (h[m - 2] - h[m - 3]);
        let scale = d1.abs().max(d2.abs());
        if scale > 0.0 && (d2 - pred).abs() <= 0.1 * scale {
            let c = d2 / (h[m - 1] - h[m - 2]);
            extrapolated = u[m - 1] - c * h[m - 1];
        }
    }

    RecoveryResult {
        theta,
        estimates,
        extrapolated,
        converged: residual < threshold,
        residual,
        truncation_limited,
    }
}

/// Estimate f(theta) as the radial limit of Re w(rho e^{i theta}).
/// Non-convergence is reported, not thrown: hard boundary points
/// legitimately fail to converge.
pub fn radial_recover(
    tc: &TaylorCoefficients,
    theta: f64,
    ladder: &RhoLadder,
    threshold: f64,
) -> Result<RecoveryResult> {
    ladder.validate()?;
    let mut estimates = Vec::with_capacity(ladder.rhos.len());
    for &rho in &ladder.rhos {
        let p = DiskPoint::new(rho, theta)?;
        estimates.push((rho, tc.evaluate(&p).re));
    }
    let last = *ladder.rhos.last().unwrap();
    let limited = tc.tail_estimate(last) >= 0.1 * threshold;
    Ok(finish(theta, estimates, ladder, threshold, limited))
}

/// Abel-Poisson summation of the Fourier series: the real-series face
/// of `radial_recover`, summed directly from (alpha, beta).
pub fn abel_sum(
    fc: &FourierCoefficients,
    theta: f64,
    ladder: &RhoLadder,
    threshold: f64,
) -> Result<RecoveryResult> {
    ladder.validate()?;
    let n = fc.order();
    let mut estimates = Vec::with_capacity(ladder.rhos.len());
    for &rho in &ladder.rhos {
        if !(0.0..1.0).contains(&rho) {
            return Err(Error::RhoOutOfRange { rho });
        }
        let mut sum = 0.5 * fc.alpha0;
        let mut rho_k = 1.0;
        for k in 1..=n {
            rho_k *= rho;
            let kt = k as f64 * theta;
            sum += (fc.alpha[k - 1] * kt.cos() + fc.beta[k - 1] * kt.sin()) * rho_k;
        }
        estimates.push((rho, sum));
    }
    let last = *ladder.rhos.last().unwrap();
    let decile_start = (9 * n) / 10;
    let decile = (decile_start.max(1)..=n)
        .map(|k| fc.alpha[k - 1].hypot(fc.beta[k - 1]))
        .fold(0.0, f64::max);
    let cap = decile.min(4.0 * fc.m);
    let tail = cap * last.powi(n as i32 + 1) / (1.0 - last);
    let limited = tail >= 0.1 * threshold;
    Ok(finish(theta, estimates, ladder, threshold, limited))
}

/// L1 (arc-length normalized) and Linf errors between the catalog rule
/// and Re w on a uniform theta grid at fixed rho, excluding
/// neighborhoods of declared singular points.
pub fn grid_error(
    spec: &RealFunctionSpec,
    tc: &TaylorCoefficients,
    rho: f64,
    grid_size: usize,
    exclusion_radius: f64,
) -> Result<(f64, f64)> {
    if grid_size == 0 {
        return Err(Error::InvalidArgument("grid size must be positive".into()));
    }
    if exclusion_radius < 0.0 {
        return Err(Error::InvalidArgument(
            "exclusion radius must be nonnegative".into(),
        ));
    }
    let circ_dist = |a: f64, b: f64| {
        let mut d = (a - b).abs() % (2.0 * PI);
        if d > PI {
            d = 2.0 * PI - d;
        }
        d
    };
    let step = 2.0 * PI / grid_size as f64;
    let mut l1 = 0.0;
    let mut linf = 0.0_f64;
    let mut included = 0usize;
    for i in 0..grid_size {
        let theta = -PI + (i as f64 + 0.5) * step;
        if spec
            .singular_points
            .iter()
            .any(|sp| circ_dist(theta, sp.theta) <= exclusion_radius)
        {
            continue;
        }
        let target = spec.eval_real(theta)?;
        let p = DiskPoint::new(rho, theta)?;
        let err = (tc.evaluate(&p).re - target).abs();
        l1 += err;
        linf = linf.max(err);
        included += 1;
    }
    if included == 0 {
        return Err(Error::EmptyGrid);
    }
    Ok((l1 / included as f64, linf))
}
