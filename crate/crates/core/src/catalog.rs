//! Built-in real functions on [-pi, pi] with known analytic structure.
//!
//! Each entry carries its singular-point set, parity, and (where one
//! exists) the closed form of the disk-side function it generates, so
//! that downstream modules can use the entries both as inputs and as
//! oracle anchors.

use std::f64::consts::PI;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::inner::ClosedFormInner;

/// Tolerance for matching a sampled theta against a declared singular
/// point.
const THETA_MATCH: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    None,
}

/// Character of a declared singular point in the real sense. Jump
/// points store both lateral limits explicitly; recovery tests compare
/// Abel limits against their midpoint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SingularKind {
    Jump { left: f64, right: f64 },
    LogDivergence,
    Essential,
}

impl SingularKind {
    pub fn label(&self) -> &'static str {
        match self {
            SingularKind::Jump { .. } => "jump",
            SingularKind::LogDivergence => "log-divergence",
            SingularKind::Essential => "essential",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SingularPoint {
    pub theta: f64,
    #[serde(flatten)]
    pub kind: SingularKind,
}

type EvalRule = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A catalog entry: evaluation rule plus declared analytic structure.
#[derive(Clone)]
pub struct RealFunctionSpec {
    pub name: String,
    eval: EvalRule,
    pub singular_points: Vec<SingularPoint>,
    pub known_closed_form: Option<ClosedFormInner>,
    pub parity: Parity,
}

impl std::fmt::Debug for RealFunctionSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RealFunctionSpec")
            .field("name", &self.name)
            .field("singular_points", &self.singular_points)
            .field("known_closed_form", &self.known_closed_form)
            .field("parity", &self.parity)
            .finish()
    }
}

impl RealFunctionSpec {
    pub fn new(
        name: &str,
        eval: EvalRule,
        singular_points: Vec<SingularPoint>,
        known_closed_form: Option<ClosedFormInner>,
        parity: Parity,
    ) -> Self {
        RealFunctionSpec {
            name: name.to_string(),
            eval,
            singular_points,
            known_closed_form,
            parity,
        }
    }

    /// Raw evaluation with no domain or singularity checks. Used by the
    /// quadrature engine, whose nodes never coincide with declared
    /// singular points.
    pub fn eval_raw(&self, theta: f64) -> f64 {
        (self.eval)(theta)
    }

    fn singular_point_at(&self, theta: f64) -> Option<&SingularPoint> {
        self.singular_points
            .iter()
            .find(|sp| (sp.theta - theta).abs() < THETA_MATCH)
    }

    /// Evaluate f(theta). At a jump point this returns the arithmetic
    /// mean of the two lateral limits; at a log-divergence or essential
    /// point it is an error.
    pub fn eval_real(&self, theta: f64) -> Result<f64> {
        if !(-PI..=PI).contains(&theta) {
            return Err(Error::ThetaOutOfRange { theta });
        }
        if let Some(sp) = self.singular_point_at(theta) {
            return match sp.kind {
                SingularKind::Jump { left, right } => Ok(0.5 * (left + right)),
                kind => Err(Error::UndefinedAtSingularity {
                    name: self.name.clone(),
                    theta,
                    kind: kind.label().to_string(),
                }),
            };
        }
        Ok((self.eval)(theta))
    }

    /// Thetas at which the integration panels must be split.
    pub fn breakpoints(&self) -> Vec<f64> {
        self.singular_points.iter().map(|sp| sp.theta).collect()
    }

    /// True when the entry carries an essential oscillation; quadrature
    /// on such entries is best-effort under a reduced panel cap.
    pub fn has_essential(&self) -> bool {
        self.singular_points
            .iter()
            .any(|sp| matches!(sp.kind, SingularKind::Essential))
    }
}

/// Summary row for `catalog list`.
#[derive(Debug, Serialize)]
pub struct CatalogEntryInfo {
    pub name: String,
    pub singular_points: Vec<SingularPoint>,
    pub parity: Parity,
}

pub struct Catalog {
    entries: Vec<RealFunctionSpec>,
}

impl Catalog {
    pub fn get(&self, name: &str) -> Result<&RealFunctionSpec> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| Error::UnknownFunction {
                name: name.to_string(),
                available: self
                    .entries
                    .iter()
                    .map(|e| e.name.as_str())
                    .collect::<Vec<_>>()
                    .join(", "),
            })
    }

    pub fn entries(&self) -> &[RealFunctionSpec] {
        &self.entries
    }

    pub fn list(&self) -> Vec<CatalogEntryInfo> {
        self.entries
            .iter()
            .map(|e| CatalogEntryInfo {
                name: e.name.clone(),
                singular_points: e.singular_points.clone(),
                parity: e.parity,
            })
            .collect()
    }

    /// The built-in registry. Immutable after first access.
    pub fn builtin() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(build_registry)
    }
}

fn build_registry() -> Catalog {
    let jump = |theta: f64, left: f64, right: f64| SingularPoint {
        theta,
        kind: SingularKind::Jump { left, right },
    };

    let entries = vec![
        RealFunctionSpec::new(
            "constant_zero",
            Arc::new(|_| 0.0),
            vec![],
            None,
            Parity::Even,
        ),
        RealFunctionSpec::new(
            "constant_one",
            Arc::new(|_| 1.0),
            vec![],
            None,
            Parity::Even,
        ),
        // f(theta) = theta; the periodic extension jumps at +-pi.
        RealFunctionSpec::new(
            "sawtooth",
            Arc::new(|t| t),
            vec![jump(-PI, PI, -PI), jump(PI, PI, -PI)],
            Some(ClosedFormInner::SawtoothW),
            Parity::Odd,
        ),
        RealFunctionSpec::new(
            "square_wave",
            Arc::new(|t: f64| if t >= 0.0 { 1.0 } else { -1.0 }),
            vec![
                jump(-PI, 1.0, -1.0),
                jump(0.0, -1.0, 1.0),
                jump(PI, 1.0, -1.0),
            ],
            Some(ClosedFormInner::SquareWaveW),
            Parity::Odd,
        ),
        RealFunctionSpec::new(
            "abs_theta",
            Arc::new(|t: f64| t.abs()),
            vec![],
            None,
            Parity::Even,
        ),
        // -ln(2|sin(theta/2)|): unbounded but absolutely integrable,
        // cosine coefficients 1/k, disk side -ln(1-z).
        RealFunctionSpec::new(
            "log_sine",
            Arc::new(|t: f64| -(2.0 * (t / 2.0).sin().abs()).ln()),
            vec![SingularPoint {
                theta: 0.0,
                kind: SingularKind::LogDivergence,
            }],
            Some(ClosedFormInner::NegLogOneMinusZ),
            Parity::Even,
        ),
        // Boundary real part of exp(z): analytic, c_k = 1/k!.
        RealFunctionSpec::new(
            "exp_cos",
            Arc::new(|t: f64| t.cos().exp() * t.sin().cos()),
            vec![],
            Some(ClosedFormInner::ExpZ),
            Parity::Even,
        ),
        // d/dtheta of exp_cos, analytically differentiated.
        RealFunctionSpec::new(
            "exp_cos_dtheta",
            Arc::new(|t: f64| -t.cos().exp() * (t + t.sin()).sin()),
            vec![],
            None,
            Parity::Odd,
        ),
        // Essential oscillation at theta = 0; classifier-exempt.
        RealFunctionSpec::new(
            "pathological_1",
            Arc::new(|t: f64| {
                if t == 0.0 {
                    0.0
                } else {
                    t * (PI * PI / t).sin()
                }
            }),
            vec![SingularPoint {
                theta: 0.0,
                kind: SingularKind::Essential,
            }],
            None,
            Parity::Even,
        ),
        RealFunctionSpec::new(
            "pathological_2",
            Arc::new(|t: f64| if t == 0.0 { 0.0 } else { (PI * PI / t).sin() }),
            vec![SingularPoint {
                theta: 0.0,
                kind: SingularKind::Essential,
            }],
            None,
            Parity::Odd,
        ),
    ];

    Catalog { entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{integrate, QuadConfig};

    #[test]
    fn get_unknown_lists_available() {
        let err = Catalog::builtin().get("no_such_fn").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("no_such_fn"));
        assert!(msg.contains("square_wave"));
    }

    #[test]
    fn square_wave_values() {
        let spec = Catalog::builtin().get("square_wave").unwrap();
        assert_eq!(spec.eval_real(PI / 2.0).unwrap(), 1.0);
        // Jump point: arithmetic mean of the lateral limits.
        assert_eq!(spec.eval_real(0.0).unwrap(), 0.0);
        assert_eq!(spec.eval_real(PI).unwrap(), 0.0);
    }

    #[test]
    fn log_sine_at_pi() {
        let spec = Catalog::builtin().get("log_sine").unwrap();
        let v = spec.eval_real(PI).unwrap();
        assert!((v + std::f64::consts::LN_2).abs() < 1e-15, "got {v}");
    }

    #[test]
    fn log_sine_undefined_at_origin() {
        let spec = Catalog::builtin().get("log_sine").unwrap();
        assert!(matches!(
            spec.eval_real(0.0),
            Err(Error::UndefinedAtSingularity { .. })
        ));
    }

    #[test]
    fn domain_error_outside_interval() {
        let spec = Catalog::builtin().get("constant_one").unwrap();
        assert!(matches!(
            spec.eval_real(3.5),
            Err(Error::ThetaOutOfRange { .. })
        ));
    }

    #[test]
    fn parity_holds_at_samples() {
        // 64 pseudo-random thetas per entry; both parity identities to 1e-12.
        let mut x = 0.123456789_f64;
        let mut next = move || {
            x = (x * 9301.0 + 49297.0) % 233280.0;
            (x / 233280.0) * 2.0 * PI - PI
        };
        for spec in Catalog::builtin().entries() {
            for _ in 0..64 {
                let t = next();
                if spec.singular_points.iter().any(|sp| {
                    (sp.theta - t).abs() < 1e-9 || (sp.theta + t).abs() < 1e-9
                }) {
                    continue;
                }
                let (a, b) = (spec.eval_raw(t), spec.eval_raw(-t));
                match spec.parity {
                    Parity::Even => assert!(
                        (a - b).abs() < 1e-12,
                        "{} not even at {t}",
                        spec.name
                    ),
                    Parity::Odd => assert!(
                        (a + b).abs() < 1e-12,
                        "{} not odd at {t}",
                        spec.name
                    ),
                    Parity::None => {}
                }
            }
        }
    }

    #[test]
    fn absolute_integrals_stable_under_refinement() {
        // Integrate |f| away from declared singular neighborhoods and
        // check stability when the initial panel count doubles.
        let cfg_a = QuadConfig::default();
        let cfg_b = QuadConfig {
            initial_panels: 16,
            ..QuadConfig::default()
        };
        for spec in Catalog::builtin().entries() {
            let cut = 1e-3;
            let mut edges = vec![-PI];
            for sp in &spec.singular_points {
                if sp.theta > -PI + cut && sp.theta < PI - cut {
                    edges.push(sp.theta - cut);
                    edges.push(sp.theta + cut);
                }
            }
            edges.push(PI);
            let mut va = 0.0;
            let mut vb = 0.0;
            for w in edges.chunks(2) {
                let f = |t: f64| spec.eval_raw(t).abs();
                va += integrate(&f, w[0], w[1], &[], &cfg_a, cfg_a.max_panels).value;
                vb += integrate(&f, w[0], w[1], &[], &cfg_b, cfg_b.max_panels).value;
            }
            assert!(va.is_finite());
            let denom = va.abs().max(1e-30);
            assert!(
                ((va - vb) / denom).abs() < 1e-6 || va.abs() < 1e-12,
                "{}: {va} vs {vb}",
                spec.name
            );
        }
    }

    #[test]
    fn log_sine_absolutely_integrable_near_origin() {
        // One-sided improper integral of |f| on (0, 0.1] is finite and
        // stable: the declared log-divergence is integrable.
        let cfg = QuadConfig::default();
        let spec = Catalog::builtin().get("log_sine").unwrap();
        let f = |t: f64| spec.eval_raw(t).abs();
        let out = integrate(&f, 0.0, 0.1, &[], &cfg, cfg.max_panels);
        assert!(out.value.is_finite());
        assert!(out.value > 0.0 && out.value < 1.0);
        assert!(out.converged);
    }
}
