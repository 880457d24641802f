//! User-supplied functions as piecewise polynomials in theta.
//!
//! The one ingestion format beyond the built-in catalog: intervals must
//! tile [-pi, pi] without overlap, with a finite declared singular
//! point list.

use std::f64::consts::PI;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::catalog::{Parity, RealFunctionSpec, SingularKind, SingularPoint};
use crate::error::{Error, Result};

const TILE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PiecewiseInterval {
    pub lo: f64,
    pub hi: f64,
    /// Polynomial coefficients in theta, constant term first.
    pub coeffs: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PiecewiseSingularPoint {
    pub theta: f64,
    /// "jump" | "log-divergence" | "essential"
    pub kind: String,
    pub left: Option<f64>,
    pub right: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PiecewiseFunctionFile {
    pub intervals: Vec<PiecewiseInterval>,
    #[serde(default)]
    pub singular_points: Vec<PiecewiseSingularPoint>,
}

impl PiecewiseFunctionFile {
    pub fn read(path: &Path) -> Result<PiecewiseFunctionFile> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.intervals.is_empty() {
            return Err(Error::InvalidPiecewise("no intervals".into()));
        }
        let mut iv = self.intervals.clone();
        iv.sort_by(|a, b| a.lo.partial_cmp(&b.lo).unwrap());
        if (iv[0].lo + PI).abs() > TILE_TOL {
            return Err(Error::InvalidPiecewise(format!(
                "first interval starts at {}, expected -pi",
                iv[0].lo
            )));
        }
        if (iv.last().unwrap().hi - PI).abs() > TILE_TOL {
            return Err(Error::InvalidPiecewise(format!(
                "last interval ends at {}, expected pi",
                iv.last().unwrap().hi
            )));
        }
        for w in iv.windows(2) {
            if (w[0].hi - w[1].lo).abs() > TILE_TOL {
                return Err(Error::InvalidPiecewise(format!(
                    "gap or overlap between {} and {}",
                    w[0].hi, w[1].lo
                )));
            }
        }
        for i in &iv {
            if i.hi <= i.lo {
                return Err(Error::InvalidPiecewise(format!(
                    "empty interval [{}, {}]",
                    i.lo, i.hi
                )));
            }
            if i.coeffs.is_empty() {
                return Err(Error::InvalidPiecewise(
                    "interval with no polynomial coefficients".into(),
                ));
            }
        }
        for sp in &self.singular_points {
            match sp.kind.as_str() {
                "jump" => {
                    if sp.left.is_none() || sp.right.is_none() {
                        return Err(Error::InvalidPiecewise(
                            "jump singular point needs left and right limits".into(),
                        ));
                    }
                }
                "log-divergence" | "essential" => {}
                other => {
                    return Err(Error::InvalidPiecewise(format!(
                        "unknown singular kind '{other}'"
                    )))
                }
            }
        }
        Ok(())
    }

    pub fn into_spec(self, name: &str) -> Result<RealFunctionSpec> {
        self.validate()?;
        let mut intervals = self.intervals.clone();
        intervals.sort_by(|a, b| a.lo.partial_cmp(&b.lo).unwrap());

        let singular_points = self
            .singular_points
            .iter()
            .map(|sp| SingularPoint {
                theta: sp.theta,
                kind: match sp.kind.as_str() {
                    "jump" => SingularKind::Jump {
                        left: sp.left.unwrap(),
                        right: sp.right.unwrap(),
                    },
                    "log-divergence" => SingularKind::LogDivergence,
                    _ => SingularKind::Essential,
                },
            })
            .collect();

        let eval = move |theta: f64| -> f64 {
            let idx = intervals
                .iter()
                .position(|iv| theta < iv.hi)
                .unwrap_or(intervals.len() - 1);
            let iv = &intervals[idx];
            iv.coeffs.iter().rev().fold(0.0, |acc, &c| acc * theta + c)
        };

        Ok(RealFunctionSpec::new(
            name,
            Arc::new(eval),
            singular_points,
            None,
            Parity::None,
        ))
    }
}
