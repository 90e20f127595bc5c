//! Kernel-based evolution strategies.
//!
//! Instead of searching over the `N` bits directly, the search runs over the
//! `K²` real weights of a convolution kernel. A kernel is scored by rolling it
//! out over the surface laid out as a `√N × √N` grid: starting from the sign
//! alignment configuration, each cell is replaced `T` times by the weighted
//! sum of its `K × K` neighbourhood (cells outside the grid read as zero), and
//! the sign of the final grid is the candidate configuration.

use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::closed_form::sign_alignment;
use crate::objective::{gamma, CsiVector, PhaseConfig};
use crate::{Error, OptimizerOutcome, Result};

/// Real `K × K` kernel, `K` odd, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Kernel {
    size: usize,
    weights: Vec<f64>,
}

impl Kernel {
    pub fn new(size: usize, weights: Vec<f64>) -> Result<Self> {
        if size.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "kernel size {size} must be odd"
            )));
        }
        if weights.len() != size * size {
            return Err(Error::LengthMismatch {
                expected: size * size,
                found: weights.len(),
            });
        }
        Ok(Self { size, weights })
    }

    pub fn zeros(size: usize) -> Result<Self> {
        Self::new(size, vec![0.0; size * size])
    }

    /// Centered delta: 1 in the middle, 0 elsewhere.
    pub fn identity(size: usize) -> Result<Self> {
        let mut k = Self::zeros(size)?;
        let h = size / 2;
        k.weights[h * size + h] = 1.0;
        Ok(k)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Weight at row offset `dr`, column offset `dc` from the center.
    #[inline]
    pub fn at(&self, dr: isize, dc: isize) -> f64 {
        let h = (self.size / 2) as isize;
        self.weights[((dr + h) * self.size as isize + dc + h) as usize]
    }

    fn perturbed(&self, noise: &[f64]) -> Self {
        Self {
            size: self.size,
            weights: self.weights.iter().zip(noise).map(|(w, e)| w + e).collect(),
        }
    }
}

pub(crate) fn grid_side(n: usize) -> Result<usize> {
    let s = (n as f64).sqrt().round() as usize;
    if s * s == n {
        Ok(s)
    } else {
        Err(Error::NotPerfectSquare(n))
    }
}

/// Rolls `kernel` out `steps` times over `init` arranged as a square grid.
///
/// Cell `(r, k)` (index `r·√N + k`) becomes `Σ W[dr][dc] · x[r+dr][k+dc]`
/// over offsets in `[−K/2, K/2]²`. Each sweep reads only the previous sweep's
/// grid. Returns `sign()` of the final grid with `sign(0) = +1`.
pub fn kernel_rollout(init: &PhaseConfig, kernel: &Kernel, steps: usize) -> Result<PhaseConfig> {
    let side = grid_side(init.len())? as isize;
    let h = (kernel.size / 2) as isize;
    let mut cur = init.to_vec();
    let mut next = vec![0.0; cur.len()];
    for _ in 0..steps {
        for r in 0..side {
            for k in 0..side {
                let mut acc = 0.0;
                for dr in -h..=h {
                    let rr = r + dr;
                    if rr < 0 || rr >= side {
                        continue;
                    }
                    for dc in -h..=h {
                        let kk = k + dc;
                        if kk < 0 || kk >= side {
                            continue;
                        }
                        acc += kernel.at(dr, dc) * cur[(rr * side + kk) as usize];
                    }
                }
                next[(r * side + k) as usize] = acc;
            }
        }
        std::mem::swap(&mut cur, &mut next);
    }
    Ok(PhaseConfig::sign_of(&cur))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EsParams {
    /// Perturbations per generation.
    pub population: usize,
    /// Standard deviation of each kernel-weight perturbation.
    pub noise_sigma: f64,
    pub step: f64,
    /// Rollout sweeps `T` per candidate.
    pub rollout_depth: usize,
    pub kernel_size: usize,
    pub max_generations: usize,
}

impl Default for EsParams {
    fn default() -> Self {
        Self {
            population: 50,
            noise_sigma: 0.1,
            step: 0.05,
            rollout_depth: 3,
            kernel_size: 3,
            max_generations: 50,
        }
    }
}

impl EsParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParameter(m.to_string()));
        if self.population < 2 {
            return bad("population must be at least 2");
        }
        if !(self.noise_sigma > 0.0 && self.noise_sigma.is_finite()) {
            return bad("noise_sigma must be positive");
        }
        if !(self.step > 0.0 && self.step.is_finite()) {
            return bad("step must be positive");
        }
        if self.rollout_depth == 0 {
            return bad("rollout_depth must be at least 1");
        }
        if self.kernel_size.is_multiple_of(2) {
            return bad("kernel_size must be odd");
        }
        Ok(())
    }
}

/// Evolution strategies over kernel weights, starting from the identity
/// kernel so that generation 0 reproduces the sign alignment configuration.
///
/// Each generation samples `P` Gaussian perturbations `ε^p`, scores the
/// rollout of `W + ε^p` from `φ^SA`, and moves
/// `W ← W + α/(P·σ) · Σ ε^p z^p` where `z` is the population's standardized
/// SNR. The best configuration seen (including `φ^SA` itself and the final
/// kernel's rollout) is returned, so the result never falls below `φ^SA`.
/// `converged` reports whether the search improved on `φ^SA`.
pub fn es_optimize<R: Rng + ?Sized>(
    c: &CsiVector,
    params: &EsParams,
    rng: &mut R,
) -> Result<OptimizerOutcome> {
    params.validate()?;
    grid_side(c.len())?;
    let sa = sign_alignment(c);
    if params.max_generations == 0 {
        return Ok(sa);
    }

    let k2 = params.kernel_size * params.kernel_size;
    let noise =
        Normal::new(0.0, params.noise_sigma).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let mut kernel = Kernel::identity(params.kernel_size)?;
    let mut best = sa.phi.clone();
    let mut best_gamma = sa.gamma;
    let mut evals = sa.objective_evals;
    let scale = params.step / (params.population as f64 * params.noise_sigma);

    let mut eps = vec![0.0; params.population * k2];
    let mut fitness = vec![0.0; params.population];
    for _ in 0..params.max_generations {
        for e in eps.iter_mut() {
            *e = noise.sample(rng);
        }
        for (p, f) in fitness.iter_mut().enumerate() {
            let candidate = kernel.perturbed(&eps[p * k2..(p + 1) * k2]);
            let phi = kernel_rollout(&sa.phi, &candidate, params.rollout_depth)?;
            *f = gamma(c, &phi)?;
            evals += 1;
            if *f > best_gamma {
                best_gamma = *f;
                best = phi;
            }
        }

        let mean = fitness.iter().sum::<f64>() / fitness.len() as f64;
        let var = fitness.iter().map(|f| (f - mean).powi(2)).sum::<f64>() / fitness.len() as f64;
        let std = var.sqrt();
        if std > 1e-12 * mean.abs().max(f64::MIN_POSITIVE) {
            let mut update = vec![0.0; k2];
            for (p, f) in fitness.iter().enumerate() {
                let z = (f - mean) / std;
                for (u, e) in update.iter_mut().zip(&eps[p * k2..(p + 1) * k2]) {
                    *u += e * z;
                }
            }
            for (w, u) in kernel.weights.iter_mut().zip(update) {
                *w += scale * u;
            }
        }
    }

    let last = kernel_rollout(&sa.phi, &kernel, params.rollout_depth)?;
    let last_gamma = gamma(c, &last)?;
    evals += 1;
    if last_gamma > best_gamma {
        best_gamma = last_gamma;
        best = last;
    }

    Ok(OptimizerOutcome {
        phi: best,
        gamma: best_gamma,
        objective_evals: evals,
        outer_iterations: params.max_generations as u64,
        converged: best_gamma > sa.gamma,
    })
}
