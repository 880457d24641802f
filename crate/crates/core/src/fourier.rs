//! Fourier coefficients of a catalog function by singularity-aware
//! adaptive quadrature, plus the triangle-inequality coefficient
//! bounds.

use std::f64::consts::PI;

use crate::catalog::RealFunctionSpec;
use crate::error::{Error, Result};
use crate::quad::{integrate, QuadConfig};

/// Bound-check slack absorbing quadrature noise.
pub const BOUND_TOL: f64 = 1e-8;

/// (alpha_0, {alpha_k}, {beta_k}) up to order N, with the average M of
/// |f| over the period attached. Every coefficient is bounded by 2M in
/// magnitude, up to quadrature noise.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierCoefficients {
    pub alpha0: f64,
    /// alpha_k for k = 1..=N.
    pub alpha: Vec<f64>,
    /// beta_k for k = 1..=N.
    pub beta: Vec<f64>,
    /// (1/2pi) * integral of |f| over the period.
    pub m: f64,
    /// Worst per-integral absolute error estimate actually achieved.
    /// Meaningful for best-effort (essential-oscillation) entries.
    pub achieved_abs_err: f64,
}

impl FourierCoefficients {
    pub fn order(&self) -> usize {
        self.alpha.len()
    }
}

/// Ratios of the observed coefficient magnitudes to their 2M bound.
#[derive(Debug, Clone, Copy)]
pub struct BoundReport {
    pub max_alpha_ratio: f64,
    pub max_beta_ratio: f64,
    pub violation: bool,
}

/// Compute alpha_0, alpha_k, beta_k (k <= n) and M for `spec`.
/// Integration panels are split at every declared singular and jump
/// point. Entries with an essential oscillation run under a reduced
/// panel cap and report achieved accuracy instead of failing.
pub fn compute_coefficients(
    spec: &RealFunctionSpec,
    n: usize,
    quad: &QuadConfig,
) -> Result<FourierCoefficients> {
    if n < 1 {
        return Err(Error::InvalidArgument("order N must be >= 1".into()));
    }
    if quad.max_panels == 0 {
        return Err(Error::InvalidArgument(
            "quadrature budget must be positive".into(),
        ));
    }

    let breakpoints = spec.breakpoints();
    let best_effort = spec.has_essential();
    let budget = if best_effort {
        quad.max_panels.min(quad.essential_panel_cap)
    } else {
        quad.max_panels
    };

    let mut worst_err = 0.0_f64;
    let mut run = |g: &dyn Fn(f64) -> f64, k: usize| -> Result<f64> {
        let out = integrate(g, -PI, PI, &breakpoints, quad, budget);
        if !out.converged && !best_effort {
            return Err(Error::QuadratureNonConvergence {
                k,
                achieved: out.abs_err,
                requested: quad.abs_tol.max(quad.rel_tol * out.value.abs()),
            });
        }
        if out.abs_err > worst_err {
            worst_err = out.abs_err;
        }
        Ok(out.value)
    };

    let m = run(&|t| spec.eval_raw(t).abs(), 0)? / (2.0 * PI);
    let alpha0 = run(&|t| spec.eval_raw(t), 0)? / PI;

    let mut alpha = Vec::with_capacity(n);
    let mut beta = Vec::with_capacity(n);
    for k in 1..=n {
        let kf = k as f64;
        alpha.push(run(&|t| spec.eval_raw(t) * (kf * t).cos(), k)? / PI);
        beta.push(run(&|t| spec.eval_raw(t) * (kf * t).sin(), k)? / PI);
    }

    Ok(FourierCoefficients {
        alpha0,
        alpha,
        beta,
        m,
        achieved_abs_err: worst_err,
    })
}

/// Report max |alpha_k| / 2M and max |beta_k| / 2M (alpha_0 included on
/// the alpha side) and flag any ratio above 1 + BOUND_TOL.
pub fn verify_bounds(fc: &FourierCoefficients) -> BoundReport {
    let two_m = 2.0 * fc.m;
    let ratio = |v: f64| -> f64 {
        if v.abs() <= BOUND_TOL {
            0.0
        } else if two_m == 0.0 {
            f64::INFINITY
        } else {
            v.abs() / two_m
        }
    };
    let max_alpha_ratio = fc
        .alpha
        .iter()
        .map(|&a| ratio(a))
        .fold(ratio(fc.alpha0), f64::max);
    let max_beta_ratio = fc.beta.iter().map(|&b| ratio(b)).fold(0.0, f64::max);
    let limit = if two_m == 0.0 {
        1.0
    } else {
        1.0 + BOUND_TOL / two_m
    };
    BoundReport {
        max_alpha_ratio,
        max_beta_ratio,
        violation: max_alpha_ratio > limit || max_beta_ratio > limit,
    }
}
