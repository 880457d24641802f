//! The shared coefficient file format.
//!
//! JSON object {name, N, M, alpha0, alpha, beta} with optional Taylor
//! extension fields c_re/c_im and a provenance note. Doubles are
//! serialized losslessly: a write-then-read round trip reproduces bit
//! identical values.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fourier::FourierCoefficients;
use crate::inner::TaylorCoefficients;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CoefficientFile {
    pub name: String,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "M")]
    pub m: f64,
    pub alpha0: f64,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_re: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_im: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
}

impl CoefficientFile {
    pub fn from_fourier(name: &str, fc: &FourierCoefficients) -> Self {
        CoefficientFile {
            name: name.to_string(),
            n: fc.order(),
            m: fc.m,
            alpha0: fc.alpha0,
            alpha: fc.alpha.clone(),
            beta: fc.beta.clone(),
            c_re: None,
            c_im: None,
            provenance: None,
        }
    }

    pub fn from_taylor(name: &str, tc: &TaylorCoefficients) -> Self {
        let n = tc.order();
        // The Fourier face of the same data: alpha_k = Re c_k,
        // beta_k = -Im c_k, alpha_0 = 2 Re c_0.
        let alpha: Vec<f64> = (1..=n).map(|k| tc.coeff(k).re).collect();
        let beta: Vec<f64> = (1..=n).map(|k| -tc.coeff(k).im).collect();
        CoefficientFile {
            name: name.to_string(),
            n,
            m: tc.bound_m.unwrap_or(0.0),
            alpha0: 2.0 * tc.coeff(0).re,
            alpha,
            beta,
            c_re: Some(tc.coeffs().iter().map(|c| c.re).collect()),
            c_im: Some(tc.coeffs().iter().map(|c| c.im).collect()),
            provenance: Some(tc.provenance.clone()),
        }
    }

    /// Taylor view: uses c_re/c_im when present, otherwise converts
    /// from the Fourier fields.
    pub fn taylor(&self) -> TaylorCoefficients {
        if let (Some(re), Some(im)) = (&self.c_re, &self.c_im) {
            let c: Vec<Complex64> = re
                .iter()
                .zip(im)
                .map(|(&r, &i)| Complex64::new(r, i))
                .collect();
            let mut tc = TaylorCoefficients::new(
                c,
                self.provenance
                    .clone()
                    .unwrap_or_else(|| format!("file:{}", self.name)),
            );
            if self.m > 0.0 {
                tc.bound_m = Some(self.m);
            }
            tc
        } else {
            let mut tc = crate::inner::from_fourier(&self.fourier());
            tc.provenance = format!("file:{}", self.name);
            tc
        }
    }

    /// Fourier view of the stored coefficients.
    pub fn fourier(&self) -> FourierCoefficients {
        FourierCoefficients {
            alpha0: self.alpha0,
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            m: self.m,
            achieved_abs_err: 0.0,
        }
    }

    pub fn read(path: &Path) -> Result<CoefficientFile> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}
