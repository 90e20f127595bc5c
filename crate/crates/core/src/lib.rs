//! Configuration and evaluation of 1-bit reconfigurable intelligent surfaces.
//!
//! A SISO link through an `N`-element surface reduces to the cascaded channel
//! `c = h ⊙ g*` and the objective `γ(φ) = |cᵀφ|²` over binary configurations
//! `φ ∈ {−1, +1}^N`. This crate provides:
//!
//! - [`channel`]: Rayleigh / Ricean / line-of-sight channel generation over a
//!   uniform rectangular array, seeded per trial.
//! - [`objective`]: the objective, its real/imaginary decomposition and bounds.
//! - [`closed_form`]: phase alignment, quantized phase alignment and sign
//!   alignment.
//! - [`iterative`]: hill climbing, exhaustive search, projected gradient ascent
//!   and kernel-based evolution strategies.
//! - [`harness`]: Monte Carlo sweeps with per-method statistics and CSV output.

pub mod channel;
pub mod closed_form;
mod error;
pub mod harness;
pub mod iterative;
pub mod objective;
mod outcome;
pub mod rng;

pub use channel::{ArrayGeometry, ChannelRealization, Kappa, Scenario};
pub use closed_form::{
    phase_alignment, quantized_phase_alignment, sign_alignment, sign_configs, ContinuousPhases,
};
pub use error::{Error, Result};
pub use harness::{Method, Normalization, SweepResult, SweepSpec};
pub use iterative::{
    es_optimize, exhaustive, gradient, gradient_ascent, hill_climb, kernel_rollout, EsParams,
    GradientParams, Kernel,
};
pub use objective::{
    continuous_upper_bound, gamma, instantaneous_lower_bound, normalized_snr, split_objective,
    CsiVector, PhaseConfig, RelaxedConfig,
};
pub use outcome::OptimizerOutcome;
