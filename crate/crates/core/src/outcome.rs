use crate::objective::PhaseConfig;

/// Result of a binary-configuration optimizer.
///
/// `gamma` is always `objective::gamma(c, &phi)` recomputed on the returned
/// configuration, never a value carried through incremental updates.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerOutcome {
    pub phi: PhaseConfig,
    pub gamma: f64,
    /// Number of objective evaluations spent, one per candidate scored.
    pub objective_evals: u64,
    /// Sweeps, iterations or generations, depending on the optimizer.
    pub outer_iterations: u64,
    pub converged: bool,
}
