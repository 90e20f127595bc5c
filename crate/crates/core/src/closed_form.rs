//! Closed-form configurations: continuous phase alignment (PA), its per-element
//! binary quantization (QPA), and sign alignment (SA).

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::objective::{check_len, gamma, CsiVector, PhaseConfig};
use crate::{OptimizerOutcome, Result};

/// Continuous phase shifts in `[0, 2π)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuousPhases {
    theta: Vec<f64>,
}

impl ContinuousPhases {
    pub fn new(theta: impl IntoIterator<Item = f64>) -> Self {
        Self {
            theta: theta.into_iter().map(wrap_phase).collect(),
        }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.theta
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }
}

fn wrap_phase(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Phase-alignment solution plus the elements whose cascaded gain was zero
/// (their phase is set to 0 and does not affect the SNR).
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseAlignment {
    pub phases: ContinuousPhases,
    pub zero_gain: Vec<usize>,
}

/// `θ_n = −(∠h_n − ∠g_n)`, the continuous optimum.
pub fn phase_alignment(h: &[Complex64], g: &[Complex64]) -> Result<PhaseAlignment> {
    check_len(h.len(), g.len())?;
    Ok(phase_alignment_for(&CsiVector::cascade(h, g)?))
}

/// Phase alignment from the cascaded channel: `θ_n = −∠c_n`.
pub fn phase_alignment_for(c: &CsiVector) -> PhaseAlignment {
    let mut zero_gain = Vec::new();
    let theta = c.as_slice().iter().enumerate().map(|(n, z)| {
        if *z == Complex64::new(0.0, 0.0) {
            zero_gain.push(n);
            0.0
        } else {
            -z.arg()
        }
    });
    let phases = ContinuousPhases::new(theta.collect::<Vec<_>>());
    PhaseAlignment { phases, zero_gain }
}

/// `|Σ c_n e^{jθ_n}|²` for continuous phases.
pub fn continuous_gamma(c: &CsiVector, phases: &ContinuousPhases) -> Result<f64> {
    check_len(c.len(), phases.len())?;
    let s: Complex64 = c
        .as_slice()
        .iter()
        .zip(phases.as_slice())
        .map(|(z, &t)| z * Complex64::from_polar(1.0, t))
        .sum();
    Ok(s.norm_sqr())
}

/// Per-element nearest binary point to the PA phase.
///
/// The nearer of `±1` to `e^{−j∠c_n}` is `sign(cos ∠c_n) = sign(Re c_n)`;
/// equidistant elements (`Re c_n = 0`) go to `+1`.
pub fn quantized_phase_alignment(c: &CsiVector) -> PhaseConfig {
    PhaseConfig::sign_of(c.re())
}

/// `(sign(Re c), sign(Im c))` with `sign(0) = +1`.
pub fn sign_configs(c: &CsiVector) -> (PhaseConfig, PhaseConfig) {
    (PhaseConfig::sign_of(c.re()), PhaseConfig::sign_of(c.im()))
}

/// Sign alignment: the better of the two sign configurations, ties going to
/// the real-part candidate. Costs exactly two objective evaluations.
pub fn sign_alignment(c: &CsiVector) -> OptimizerOutcome {
    let (phi_re, phi_im) = sign_configs(c);
    let gamma_re = gamma(c, &phi_re).expect("lengths match by construction");
    let gamma_im = gamma(c, &phi_im).expect("lengths match by construction");
    let (phi, gamma) = if gamma_im > gamma_re {
        (phi_im, gamma_im)
    } else {
        (phi_re, gamma_re)
    };
    OptimizerOutcome {
        phi,
        gamma,
        objective_evals: 2,
        outer_iterations: 0,
        converged: true,
    }
}

/// QPA as an optimizer outcome (one objective evaluation).
pub fn quantized_phase_alignment_outcome(c: &CsiVector) -> OptimizerOutcome {
    let phi = quantized_phase_alignment(c);
    let gamma = gamma(c, &phi).expect("lengths match by construction");
    OptimizerOutcome {
        phi,
        gamma,
        objective_evals: 1,
        outer_iterations: 0,
        converged: true,
    }
}
