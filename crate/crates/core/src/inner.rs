//! Taylor coefficients of the disk-side analytic function: assembly
//! from Fourier coefficients, Horner evaluation on the open disk, and
//! conjugation.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::FourierCoefficients;

/// A point of the open unit disk in polar coordinates. `rho < 1`
/// strictly; boundary values are only reached as limits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint {
    rho: f64,
    theta: f64,
}

impl DiskPoint {
    pub fn new(rho: f64, theta: f64) -> Result<DiskPoint> {
        if !(0.0..1.0).contains(&rho) {
            return Err(Error::RhoOutOfRange { rho });
        }
        if !(-PI..=PI).contains(&theta) {
            return Err(Error::ThetaOutOfRange { theta });
        }
        Ok(DiskPoint { rho, theta })
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn z(&self) -> Complex64 {
        Complex64::from_polar(self.rho, self.theta)
    }
}

/// Truncated Taylor coefficients c_0..c_N of an inner analytic
/// function. The universal currency between modules: immutable after
/// construction, order preserved by every operation.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorCoefficients {
    c: Vec<Complex64>,
    /// Free-text lineage: source function and operations applied.
    pub provenance: String,
    /// The integrability average M of the source real function, when
    /// the coefficients came from Fourier data. Carries the 4M bound.
    pub bound_m: Option<f64>,
}

impl TaylorCoefficients {
    pub fn new(c: Vec<Complex64>, provenance: impl Into<String>) -> Self {
        assert!(!c.is_empty(), "at least c_0 is required");
        TaylorCoefficients {
            c,
            provenance: provenance.into(),
            bound_m: None,
        }
    }

    /// Truncation order N (the highest retained power).
    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.c[k]
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.c
    }

    pub fn is_proper(&self) -> bool {
        self.c[0] == Complex64::ZERO
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Estimate of the discarded tail sum_{k>N} |c_k| rho^k.
    ///
    /// Majorant coefficient: the 4M bound when Fourier provenance is
    /// known, intersected with the largest coefficient magnitude in the
    /// top decile of retained orders (a decay heuristic; the pure 4M
    /// geometric bound declares essentially every desk-scale truncation
    /// insufficient at deep ladders).
    pub fn tail_estimate(&self, rho: f64) -> f64 {
        let n = self.order();
        let start = (9 * n) / 10;
        let decile = self.c[start..]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        let cap = match self.bound_m {
            Some(m) => decile.min(4.0 * m),
            None => decile.min(self.max_abs()),
        };
        if cap == 0.0 || rho == 0.0 {
            return 0.0;
        }
        cap * rho.powi(n as i32 + 1) / (1.0 - rho)
    }

    /// Horner evaluation of the partial sum at z = rho e^{i theta}.
    pub fn evaluate(&self, p: &DiskPoint) -> Complex64 {
        let z = p.z();
        let mut acc = Complex64::ZERO;
        for &ck in self.c.iter().rev() {
            acc = acc * z + ck;
        }
        acc
    }

    /// The conjugate function -i w, whose real part is the imaginary
    /// part of w.
    pub fn conjugate(&self) -> TaylorCoefficients {
        let minus_i = Complex64::new(0.0, -1.0);
        TaylorCoefficients {
            c: self.c.iter().map(|&ck| minus_i * ck).collect(),
            provenance: format!("{} | conjugate", self.provenance),
            bound_m: self.bound_m,
        }
    }
}

/// c_0 = alpha_0 / 2, c_k = alpha_k - i beta_k.
pub fn from_fourier(fc: &FourierCoefficients) -> TaylorCoefficients {
    let n = fc.order();
    let mut c = Vec::with_capacity(n + 1);
    c.push(Complex64::new(0.5 * fc.alpha0, 0.0));
    for k in 1..=n {
        c.push(Complex64::new(fc.alpha[k - 1], -fc.beta[k - 1]));
    }
    TaylorCoefficients {
        c,
        provenance: "from_fourier".to_string(),
        bound_m: Some(fc.m),
    }
}

/// Exact closed-form inner analytic functions used as oracles. All
/// logarithms take the principal branch; every branch point sits on the
/// unit circle, with cuts extending outward.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedFormInner {
    /// -2i ln(1+z): disk side of the sawtooth.
    SawtoothW,
    /// -(2i/pi) ln((1+z)/(1-z)): disk side of the square wave.
    SquareWaveW,
    /// -ln(1-z): disk side of -ln(2|sin(theta/2)|).
    NegLogOneMinusZ,
    /// exp(z): disk side of e^{cos theta} cos(sin theta).
    ExpZ,
}

pub fn closed_form_eval(cf: ClosedFormInner, p: &DiskPoint) -> Complex64 {
    let z = p.z();
    let one = Complex64::ONE;
    let two_i = Complex64::new(0.0, 2.0);
    match cf {
        ClosedFormInner::SawtoothW => -two_i * (one + z).ln(),
        ClosedFormInner::SquareWaveW => -two_i / PI * ((one + z) / (one - z)).ln(),
        ClosedFormInner::NegLogOneMinusZ => -(one - z).ln(),
        ClosedFormInner::ExpZ => z.exp(),
    }
}
