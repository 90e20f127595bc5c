//! Projected gradient ascent on the box relaxation `φ ∈ [−1, 1]^N`.
//!
//! The relaxed objective `γ̂(φ) = φᵀ(aaᵀ + bbᵀ)φ` is a convex quadratic whose
//! only stationary point is `φ = 0`, so its maxima sit on the vertices of the
//! box. Clipped ascent steps never decrease `γ̂`: the clipped displacement has
//! the sign of the gradient coordinate-wise, and convexity bounds `γ̂` below by
//! its tangent plane.

use serde::{Deserialize, Serialize};

use crate::closed_form::sign_alignment;
use crate::objective::{check_len, gamma, projections, CsiVector, RelaxedConfig};
use crate::{Error, OptimizerOutcome, Result};

/// `∇γ̂(φ)_n = 2a_n(aᵀφ) + 2b_n(bᵀφ)`.
pub fn gradient(c: &CsiVector, phi: &RelaxedConfig) -> Result<Vec<f64>> {
    let (sa, sb) = projections(c, phi)?;
    Ok(c.re()
        .iter()
        .zip(c.im())
        .map(|(a, b)| 2.0 * a * sa + 2.0 * b * sb)
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GradientParams {
    /// Step size; `None` uses `1 / (2‖c‖²)`, the inverse of the largest
    /// possible curvature.
    pub step: Option<f64>,
    /// Iteration cap; `None` uses `10·N`.
    pub max_iters: Option<usize>,
    /// An entry counts as settled once `|φ_n| ≥ 1 − settle_eps`.
    pub settle_eps: f64,
    /// Magnitude of the default start point `start_scale · φ^SA`.
    pub start_scale: f64,
}

impl Default for GradientParams {
    fn default() -> Self {
        Self {
            step: None,
            max_iters: None,
            settle_eps: 1e-3,
            start_scale: 0.1,
        }
    }
}

/// Gradient ascent from `start_scale · φ^SA`.
pub fn gradient_ascent(c: &CsiVector, params: &GradientParams) -> Result<OptimizerOutcome> {
    if !(params.start_scale > 0.0 && params.start_scale <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "start_scale {} must lie in (0, 1]",
            params.start_scale
        )));
    }
    let start = RelaxedConfig::scaled(&sign_alignment(c).phi, params.start_scale)?;
    gradient_ascent_from(c, start, params)
}

/// Gradient ascent from an explicit interior start. Terminates once every
/// entry is settled or after `max_iters` steps, then returns `sign(φ)`.
/// `objective_evals` counts gradient evaluations plus the final scoring.
pub fn gradient_ascent_from(
    c: &CsiVector,
    start: RelaxedConfig,
    params: &GradientParams,
) -> Result<OptimizerOutcome> {
    check_len(c.len(), start.as_slice().len())?;
    if start.as_slice().iter().all(|&v| v == 0.0) {
        return Err(Error::ZeroStart);
    }
    let step = match params.step {
        Some(s) if s > 0.0 && s.is_finite() => s,
        Some(s) => {
            return Err(Error::InvalidParameter(format!(
                "step {s} must be positive"
            )))
        }
        None => {
            let energy = c.energy();
            if energy > 0.0 {
                0.5 / energy
            } else {
                1.0
            }
        }
    };
    if !(0.0..1.0).contains(&params.settle_eps) {
        return Err(Error::InvalidParameter(
            "settle_eps must lie in [0, 1)".into(),
        ));
    }
    let max_iters = params.max_iters.unwrap_or(10 * c.len());
    let threshold = 1.0 - params.settle_eps;

    let mut phi = start;
    let mut iters = 0u64;
    let settled = |p: &RelaxedConfig| p.as_slice().iter().all(|v| v.abs() >= threshold);
    while !settled(&phi) && (iters as usize) < max_iters {
        let grad = gradient(c, &phi)?;
        iters += 1;
        if grad.iter().all(|&g| g == 0.0) {
            break;
        }
        let delta: Vec<f64> = grad.iter().map(|g| step * g).collect();
        phi.ascend_clipped(&delta);
    }

    let converged = settled(&phi);
    let binary = phi.to_binary();
    let gamma = gamma(c, &binary)?;
    Ok(OptimizerOutcome {
        phi: binary,
        gamma,
        objective_evals: iters + 1,
        outer_iterations: iters,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn csi(v: &[(f64, f64)]) -> CsiVector {
        CsiVector::new(v.iter().map(|&(r, i)| Complex64::new(r, i)).collect())
    }

    #[test]
    fn real_two_element_gradient() {
        let c = csi(&[(1.0, 0.0), (1.0, 0.0)]);
        let g = gradient(&c, &RelaxedConfig::new(vec![1.0, 1.0]).unwrap()).unwrap();
        assert_eq!(g, vec![4.0, 4.0]);
    }

    #[test]
    fn zero_point_is_stationary() {
        let c = csi(&[(1.0, 2.0), (-0.5, 0.3), (2.0, -1.0)]);
        assert_eq!(
            gradient(&c, &RelaxedConfig::zeros(3)).unwrap(),
            vec![0.0; 3]
        );
        assert_eq!(
            gradient_ascent_from(&c, RelaxedConfig::zeros(3), &GradientParams::default()),
            Err(Error::ZeroStart)
        );
    }

    #[test]
    fn single_coordinate() {
        let c = csi(&[(0.3, -0.4)]);
        let start = RelaxedConfig::new(vec![0.1]).unwrap();
        let out = gradient_ascent_from(&c, start, &GradientParams::default()).unwrap();
        assert_eq!(out.phi.to_vec(), vec![1.0]);
        assert!((out.gamma - 0.25).abs() < 1e-15);
        assert!(out.converged);
    }

    #[test]
    fn reaches_boundary_maximum() {
        let c = csi(&[(3.0, 1.0), (-2.0, 2.0)]);
        let out = gradient_ascent(&c, &GradientParams::default()).unwrap();
        assert!(out.phi.to_vec() == vec![1.0, -1.0] || out.phi.to_vec() == vec![-1.0, 1.0]);
        assert_eq!(out.gamma, 26.0);
        assert!(out.converged);
    }

    #[test]
    fn rejects_bad_step() {
        let c = csi(&[(1.0, 0.0)]);
        let p = GradientParams {
            step: Some(-1.0),
            ..Default::default()
        };
        assert!(gradient_ascent(&c, &p).is_err());
    }
}
