//! Quick executable versions of the sign-alignment guarantees.

use crate::channel::{angle_grid, angles_to_cosines, steering_from_cosines, steering_vector};
use crate::closed_form::sign_alignment;
use crate::iterative::{exhaustive, gradient, hill_climb, kernel_rollout, Kernel};
use crate::objective::{
    continuous_upper_bound, gamma, instantaneous_lower_bound, CsiVector, PhaseConfig, RelaxedConfig,
};
use crate::rng::{trial_rng, Stream};
use crate::{ArrayGeometry, Kappa, Result, Scenario};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn rayleigh(n: usize, seed: u64) -> Scenario {
    Scenario::new(ArrayGeometry::reference(n), Kappa::Rayleigh, seed, 1)
}

fn check(name: &'static str, passed: bool, detail: String) -> CheckResult {
    CheckResult {
        name,
        passed,
        detail,
    }
}

fn lower_bound(seed: u64) -> Result<CheckResult> {
    let mut violations = 0;
    let mut total = 0;
    for n in [4, 16, 64] {
        let s = rayleigh(n, seed);
        for t in 0..3000 {
            let c = s.realize(t)?.c;
            total += 1;
            if sign_alignment(&c).gamma < instantaneous_lower_bound(&c) {
                violations += 1;
            }
        }
    }
    Ok(check(
        "instantaneous lower bound",
        violations == 0,
        format!("{violations} violations in {total} instances"),
    ))
}

fn half_of_optimum(seed: u64) -> Result<CheckResult> {
    let s = rayleigh(10, seed);
    let mut worst = f64::INFINITY;
    let mut chain_ok = true;
    for t in 0..200 {
        let c = s.realize(t)?.c;
        let sa = sign_alignment(&c).gamma;
        let opt = exhaustive(&c, 26)?.gamma;
        worst = worst.min(sa / opt);
        chain_ok &= instantaneous_lower_bound(&c) <= sa
            && sa <= opt * (1.0 + 1e-12)
            && opt <= continuous_upper_bound(&c) * (1.0 + 1e-12);
    }
    Ok(check(
        "half of the binary optimum",
        worst >= 0.5 && chain_ok,
        format!(
            "worst ratio {worst:.4}, bound chain {}",
            if chain_ok { "held" } else { "broken" }
        ),
    ))
}

fn rayleigh_mean(seed: u64) -> Result<CheckResult> {
    let n = 64;
    let s = rayleigh(n, seed);
    let trials = 500;
    let mut sum = 0.0;
    for t in 0..trials {
        sum += sign_alignment(&s.realize(t)?.c).gamma;
    }
    let mean = sum / trials as f64 / (n * n) as f64;
    Ok(check(
        "Rayleigh mean of N²/4",
        mean >= 0.25,
        format!("mean γ/N² = {mean:.4} at N = {n}"),
    ))
}

fn line_of_sight(_seed: u64) -> Result<CheckResult> {
    let n = 64;
    let geometry = ArrayGeometry::reference(n);
    let g = steering_vector(&geometry, geometry.rx_position)?;
    let mut violations = 0;
    let grid = angle_grid(30);
    for &(az, el) in &grid {
        let (u, v) = angles_to_cosines(az, el);
        let h = steering_from_cosines(&geometry, u, v);
        let c = CsiVector::cascade(&h, &g)?;
        if sign_alignment(&c).gamma < 0.25 * (n * n) as f64 {
            violations += 1;
        }
    }
    Ok(check(
        "line-of-sight N²/4 floor",
        violations == 0,
        format!("{violations} violations over {} angles", grid.len()),
    ))
}

fn hill_climb_dominates(seed: u64) -> Result<CheckResult> {
    let s = rayleigh(49, seed);
    let mut violations = 0;
    for t in 0..200 {
        let c = s.realize(t)?.c;
        let sa = sign_alignment(&c);
        if hill_climb(&c, &sa.phi, usize::MAX)?.gamma < sa.gamma * (1.0 - 1e-12) {
            violations += 1;
        }
    }
    Ok(check(
        "hill climbing keeps the SA guarantee",
        violations == 0,
        format!("{violations} violations in 200 instances"),
    ))
}

fn gradient_matches_differences(seed: u64) -> Result<CheckResult> {
    let mut worst = 0.0f64;
    for n in [4, 16, 64] {
        let s = rayleigh(n, seed);
        let mut rng = trial_rng(seed, Stream::Evolution, n as u64);
        for t in 0..20 {
            let c = s.realize(t)?.c;
            let phi: Vec<f64> = (0..n)
                .map(|_| rand::Rng::random_range(&mut rng, -0.9..0.9))
                .collect();
            let analytic = gradient(&c, &RelaxedConfig::new(phi.clone())?)?;
            let h = 1e-5;
            let mut numeric = Vec::with_capacity(n);
            for i in 0..n {
                let mut plus = phi.clone();
                let mut minus = phi.clone();
                plus[i] += h;
                minus[i] -= h;
                let fp = gamma(&c, &RelaxedConfig::new(plus)?)?;
                let fm = gamma(&c, &RelaxedConfig::new(minus)?)?;
                numeric.push((fp - fm) / (2.0 * h));
            }
            let diff: f64 = analytic
                .iter()
                .zip(&numeric)
                .map(|(a, b)| (a - b).powi(2))
                .sum::<f64>()
                .sqrt();
            let norm: f64 = analytic.iter().map(|a| a * a).sum::<f64>().sqrt();
            worst = worst.max(diff / norm.max(f64::MIN_POSITIVE));
        }
    }
    Ok(check(
        "gradient vs finite differences",
        worst < 1e-6,
        format!("worst relative error {worst:.2e}"),
    ))
}

fn identity_kernel(seed: u64) -> Result<CheckResult> {
    let mut rng = trial_rng(seed, Stream::HillClimbInit, 0);
    let id = Kernel::identity(3)?;
    let mut ok = true;
    for _ in 0..500 {
        let phi = PhaseConfig::random(64, &mut rng);
        ok &= kernel_rollout(&phi, &id, 3)? == phi;
    }
    Ok(check(
        "identity kernel rollout",
        ok,
        "500 random 8×8 configurations".to_string(),
    ))
}

/// Runs every check with channels drawn from `seed`.
pub fn selfcheck(seed: u64) -> Result<Vec<CheckResult>> {
    let checks: [fn(u64) -> Result<CheckResult>; 7] = [
        lower_bound,
        half_of_optimum,
        rayleigh_mean,
        line_of_sight,
        hill_climb_dominates,
        gradient_matches_differences,
        identity_kernel,
    ];
    checks.iter().map(|f| f(seed)).collect()
}
