//! Angular differentiation and angular integration as exact
//! coefficient-space operators, and navigation of the resulting
//! integral-differential chains.
//!
//! Both operators act termwise on the truncated vector with no
//! re-quadrature, preserve the order N, and always produce proper
//! output (c_0 = 0).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::inner::TaylorCoefficients;

pub const DEFAULT_MAX_OFFSET: i64 = 8;

/// c_0 -> 0, c_k -> i k c_k. The coefficient law of w -> i z dw/dz.
pub fn angular_derivative(tc: &TaylorCoefficients) -> TaylorCoefficients {
    let mut c: Vec<Complex64> = Vec::with_capacity(tc.order() + 1);
    c.push(Complex64::ZERO);
    for k in 1..=tc.order() {
        c.push(Complex64::new(0.0, k as f64) * tc.coeff(k));
    }
    TaylorCoefficients::new(c, format!("{} | D", tc.provenance))
}

/// c_0 -> 0, c_k -> -i c_k / k. The coefficient law of the angular
/// primitive, with the integration constant chosen so the mean term
/// maps to zero.
pub fn angular_primitive(tc: &TaylorCoefficients) -> TaylorCoefficients {
    let mut c: Vec<Complex64> = Vec::with_capacity(tc.order() + 1);
    c.push(Complex64::ZERO);
    for k in 1..=tc.order() {
        c.push(Complex64::new(0.0, -1.0 / k as f64) * tc.coeff(k));
    }
    TaylorCoefficients::new(c, format!("{} | I", tc.provenance))
}

/// Zero out c_0, returning the proper representative of the same link.
pub fn proper_projection(tc: &TaylorCoefficients) -> TaylorCoefficients {
    if tc.is_proper() {
        return tc.clone();
    }
    let mut c = tc.coeffs().to_vec();
    c[0] = Complex64::ZERO;
    TaylorCoefficients::new(c, format!("{} | proper", tc.provenance))
}

/// A reference link in an integral-differential chain, plus the signed
/// walk offset (positive = differentiation direction).
#[derive(Debug, Clone)]
pub struct ChainPosition {
    pub base: TaylorCoefficients,
    pub offset: i64,
    pub max_offset: i64,
}

impl ChainPosition {
    /// Anchor a chain at the proper representative of `tc`.
    pub fn new(tc: &TaylorCoefficients, max_offset: i64) -> Self {
        ChainPosition {
            base: proper_projection(tc),
            offset: 0,
            max_offset,
        }
    }
}

/// Apply |steps| successive angular derivatives (steps > 0) or
/// primitives (steps < 0) to the link at `pos`.
pub fn navigate(pos: &ChainPosition, steps: i64) -> Result<TaylorCoefficients> {
    let target = pos.offset + steps;
    if target.abs() > pos.max_offset {
        return Err(Error::OffsetBound {
            offset: target,
            max: pos.max_offset,
        });
    }
    let mut cur = pos.base.clone();
    for _ in 0..steps.abs() {
        cur = if steps > 0 {
            angular_derivative(&cur)
        } else {
            angular_primitive(&cur)
        };
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tc(vals: &[(f64, f64)]) -> TaylorCoefficients {
        TaylorCoefficients::new(
            vals.iter().map(|&(re, im)| Complex64::new(re, im)).collect(),
            "test",
        )
    }

    #[test]
    fn derivative_of_identity() {
        let d = angular_derivative(&tc(&[(0.0, 0.0), (1.0, 0.0)]));
        assert_eq!(d.coeff(0), Complex64::ZERO);
        assert_eq!(d.coeff(1), Complex64::new(0.0, 1.0));
    }

    #[test]
    fn constants_are_annihilated() {
        let d = angular_derivative(&tc(&[(5.0, 0.0), (0.0, 0.0), (0.0, 0.0)]));
        for k in 0..=2 {
            assert_eq!(d.coeff(k), Complex64::ZERO);
        }
        let p = angular_primitive(&tc(&[(7.0, 0.0)]));
        assert_eq!(p.coeff(0), Complex64::ZERO);
    }

    #[test]
    fn log_sine_derivative_has_unit_coefficients() {
        // c_k = 1/k  ->  i k / k = i for all k >= 1: the series of i z/(1-z).
        let n = 32;
        let mut c = vec![Complex64::ZERO];
        for k in 1..=n {
            c.push(Complex64::new(1.0 / k as f64, 0.0));
        }
        let d = angular_derivative(&TaylorCoefficients::new(c, "log_sine series"));
        for k in 1..=n {
            assert!((d.coeff(k) - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        }
        // And back: -i * i / k = 1/k.
        let p = angular_primitive(&d);
        for k in 1..=n {
            assert!((p.coeff(k) - Complex64::new(1.0 / k as f64, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn primitive_inverts_derivative_example() {
        let p = angular_primitive(&tc(&[(0.0, 0.0), (0.0, 1.0)]));
        assert_eq!(p.coeff(1), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn proper_projection_removes_constant() {
        let w = tc(&[(3.0, 2.0), (1.0, 0.0)]);
        let p = proper_projection(&w);
        assert_eq!(p.coeff(0), Complex64::ZERO);
        assert_eq!(p.coeff(1), w.coeff(1));
        // Idempotent.
        let pp = proper_projection(&p);
        assert_eq!(pp.coeffs(), p.coeffs());
    }

    #[test]
    fn null_chain_fixed_point() {
        let z = tc(&[(0.0, 0.0), (0.0, 0.0), (0.0, 0.0)]);
        assert_eq!(angular_derivative(&z).coeffs(), z.coeffs());
        assert_eq!(angular_primitive(&z).coeffs(), z.coeffs());
    }

    #[test]
    fn navigate_round_trip() {
        let base = tc(&[(0.0, 0.0), (1.0, -0.5), (0.3, 0.2), (0.0, 0.7)]);
        let pos = ChainPosition::new(&base, DEFAULT_MAX_OFFSET);
        let down = navigate(&pos, -2).unwrap();
        let pos2 = ChainPosition::new(&down, DEFAULT_MAX_OFFSET);
        let back = navigate(&pos2, 2).unwrap();
        for k in 0..=base.order() {
            assert!((back.coeff(k) - base.coeff(k)).norm() < 1e-12, "k={k}");
        }
        // Empty walk is the identity.
        let same = navigate(&pos, 0).unwrap();
        assert_eq!(same.coeffs(), pos.base.coeffs());
    }

    #[test]
    fn navigate_rejects_excessive_offset() {
        let pos = ChainPosition::new(&tc(&[(0.0, 0.0), (1.0, 0.0)]), 3);
        assert!(matches!(
            navigate(&pos, 4),
            Err(Error::OffsetBound { .. })
        ));
        assert!(navigate(&pos, -3).is_ok());
    }

    #[test]
    fn injectivity_on_distinct_proper_vectors() {
        // Distinct proper vectors map to distinct derivatives, with the
        // gap amplified by k at the differing index.
        let a = tc(&[(0.0, 0.0), (0.5, 0.0), (0.25, 0.0)]);
        let b = tc(&[(0.0, 0.0), (0.5, 0.0), (0.25 + 1e-6, 0.0)]);
        let da = angular_derivative(&a);
        let db = angular_derivative(&b);
        let input_gap = (a.coeff(2) - b.coeff(2)).norm();
        let gap = (da.coeff(2) - db.coeff(2)).norm();
        assert!(gap >= 2.0 * input_gap * (1.0 - 1e-12), "gap {gap}");
    }
}
