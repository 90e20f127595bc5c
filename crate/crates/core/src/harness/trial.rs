use crate::closed_form::{quantized_phase_alignment_outcome, sign_alignment};
use crate::iterative::{es_optimize, exhaustive, gradient_ascent, hill_climb};
use crate::objective::{continuous_upper_bound, normalized_snr, PhaseConfig};
use crate::rng::{trial_rng, Stream};
use crate::{OptimizerOutcome, Result, Scenario};

use super::{Method, Normalization, SolverSettings};

/// Relative slack allowed in the per-trial method ordering. Methods reach
/// the same value through different summation orders, so exact ties can
/// differ in the last few bits.
pub const ORDERING_RTOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct MethodResult {
    pub method: Method,
    pub gamma: f64,
    /// `gamma / reference`.
    pub normalized: f64,
    /// `rho_pl · gamma`.
    pub snr: f64,
    pub objective_evals: u64,
    pub outer_iterations: u64,
    /// `None` for continuous phase alignment.
    pub phi: Option<PhaseConfig>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub trial: u64,
    /// Digest of the cascaded channel every method in this trial consumed.
    pub csi_digest: u64,
    pub reference: f64,
    pub results: Vec<MethodResult>,
}

impl TrialRecord {
    pub fn get(&self, method: Method) -> Option<&MethodResult> {
        self.results.iter().find(|r| r.method == method)
    }
}

/// Runs `methods` on the channel of trial `trial` of `scenario`.
pub fn run_trial(
    scenario: &Scenario,
    methods: &[Method],
    trial: u64,
    solvers: &SolverSettings,
    normalization: Normalization,
) -> Result<TrialRecord> {
    let realization = scenario.realize(trial)?;
    let c = &realization.c;
    let n = c.len();
    let max_passes = solvers.hc_max_passes.unwrap_or(usize::MAX);

    let needs_sa = methods
        .iter()
        .any(|m| matches!(m, Method::Sa | Method::HcSa));
    let sa = needs_sa.then(|| sign_alignment(c));
    let exh = if methods.contains(&Method::Exh) || normalization == Normalization::Exhaustive {
        Some(exhaustive(c, solvers.exhaustive_limit)?)
    } else {
        None
    };
    let pa_gamma = continuous_upper_bound(c);
    let reference = match normalization {
        Normalization::ContinuousPa => pa_gamma,
        Normalization::Exhaustive => exh.as_ref().map(|o| o.gamma).unwrap_or_default(),
    };

    let mut results = Vec::with_capacity(methods.len());
    for &method in methods {
        let outcome: Option<OptimizerOutcome> = match method {
            Method::Pa => None,
            Method::Qpa => Some(quantized_phase_alignment_outcome(c)),
            Method::Sa => sa.clone(),
            Method::Hc => {
                let mut rng = trial_rng(scenario.seed, Stream::HillClimbInit, trial);
                let init = PhaseConfig::random(n, &mut rng);
                Some(hill_climb(c, &init, max_passes)?)
            }
            Method::HcSa => {
                let init = &sa.as_ref().expect("computed above").phi;
                Some(hill_climb(c, init, max_passes)?)
            }
            Method::Ga => Some(gradient_ascent(c, &solvers.gradient)?),
            Method::Es => {
                let mut rng = trial_rng(scenario.seed, Stream::Evolution, trial);
                Some(es_optimize(c, &solvers.es, &mut rng)?)
            }
            Method::Exh => exh.clone(),
        };
        let (gamma, evals, iters, phi) = match outcome {
            Some(o) => (o.gamma, o.objective_evals, o.outer_iterations, Some(o.phi)),
            None => (pa_gamma, 1, 0, None),
        };
        // An all-zero channel has no meaningful reference; report zero.
        let normalized = if reference > 0.0 {
            normalized_snr(gamma, reference)?
        } else {
            0.0
        };
        results.push(MethodResult {
            method,
            gamma,
            normalized,
            snr: scenario.rho_pl * gamma,
            objective_evals: evals,
            outer_iterations: iters,
            phi,
        });
    }

    Ok(TrialRecord {
        trial,
        csi_digest: c.digest(),
        reference,
        results,
    })
}

/// Checks `PA ≥ EXH ≥ HC&SA ≥ SA ≥ QPA` over whichever of these the trial
/// ran. Returns a description of each broken link.
pub fn ordering_violations(record: &TrialRecord) -> Vec<String> {
    const CHAIN: [Method; 5] = [
        Method::Pa,
        Method::Exh,
        Method::HcSa,
        Method::Sa,
        Method::Qpa,
    ];
    let present: Vec<&MethodResult> = CHAIN.iter().filter_map(|m| record.get(*m)).collect();
    present
        .windows(2)
        .filter(|w| w[0].gamma < w[1].gamma * (1.0 - ORDERING_RTOL))
        .map(|w| {
            format!(
                "trial {}: {} = {} < {} = {}",
                record.trial, w[0].method, w[0].gamma, w[1].method, w[1].gamma
            )
        })
        .collect()
}
