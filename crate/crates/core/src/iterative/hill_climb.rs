use crate::objective::{check_len, gamma, projections, CsiVector, PhaseConfig};
use crate::{Error, OptimizerOutcome, Result};

/// Coordinate hill climbing.
///
/// Sweeps the elements in index order, flipping each one and keeping the flip
/// only if it strictly increases the incumbent SNR. Stops after a sweep in
/// which no flip was kept (`converged`) or after `max_passes` sweeps. Every
/// flip attempt counts as one objective evaluation; candidate values are
/// scored from running projections in O(1).
pub fn hill_climb(
    c: &CsiVector,
    init: &PhaseConfig,
    max_passes: usize,
) -> Result<OptimizerOutcome> {
    check_len(c.len(), init.len())?;
    if max_passes == 0 {
        return Err(Error::InvalidParameter(
            "max_passes must be at least 1".into(),
        ));
    }
    let (re, im) = (c.re(), c.im());
    let mut phi = init.clone();
    let (mut sa, mut sb) = projections(c, &phi)?;
    let mut best = sa * sa + sb * sb;
    let mut evals = 0u64;
    let mut passes = 0u64;
    let mut converged = false;

    while (passes as usize) < max_passes {
        let mut accepted = 0usize;
        for n in 0..c.len() {
            evals += 1;
            let s = 2.0 * phi.get(n);
            let na = sa - s * re[n];
            let nb = sb - s * im[n];
            let candidate = na * na + nb * nb;
            if candidate > best {
                phi.flip(n);
                sa = na;
                sb = nb;
                best = candidate;
                accepted += 1;
            }
        }
        passes += 1;
        if accepted == 0 {
            converged = true;
            break;
        }
    }

    let gamma = gamma(c, &phi)?;
    Ok(OptimizerOutcome {
        phi,
        gamma,
        objective_evals: evals,
        outer_iterations: passes,
        converged,
    })
}
