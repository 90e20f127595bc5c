//! Shared fixtures for the optimizer benchmarks.

use ris_core::{ArrayGeometry, CsiVector, Kappa, Scenario};

/// Rayleigh cascaded channel of size `n` for trial 0 of `seed`.
pub fn rayleigh_csi(n: usize, seed: u64) -> CsiVector {
    Scenario::new(ArrayGeometry::reference(n), Kappa::Rayleigh, seed, 1)
        .realize(0)
        .expect("reference geometry is valid")
        .c
}
