//! Monte Carlo experiment runner.
//!
//! A trial regenerates one channel from `(seed, trial index)` and runs every
//! requested method on it. Sweeps evaluate the full (value × trial) grid in
//! parallel and reduce in trial order, so results do not depend on the
//! thread count.

mod selfcheck;
mod sweep;
mod trial;

use serde::{Deserialize, Serialize};

use crate::iterative::{EsParams, GradientParams, DEFAULT_EXHAUSTIVE_LIMIT};
use crate::{Error, Result};

pub use selfcheck::{selfcheck, CheckResult};
pub use sweep::{
    convergence_table, exhaustive_compare, sweep, sweep_records, Condition, ConvergenceRow,
    ConvergenceSpec, ConvergenceTable, OrderingViolation, SweepResult, SweepRow, CSV_HEADER,
};
pub use trial::{ordering_violations, run_trial, MethodResult, TrialRecord, ORDERING_RTOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "PA")]
    Pa,
    #[serde(rename = "QPA")]
    Qpa,
    #[serde(rename = "SA")]
    Sa,
    #[serde(rename = "HC")]
    Hc,
    #[serde(rename = "HC&SA")]
    HcSa,
    #[serde(rename = "GA")]
    Ga,
    #[serde(rename = "ES")]
    Es,
    #[serde(rename = "EXH")]
    Exh,
}

impl Method {
    pub const ALL: [Method; 8] = [
        Method::Pa,
        Method::Qpa,
        Method::Sa,
        Method::Hc,
        Method::HcSa,
        Method::Ga,
        Method::Es,
        Method::Exh,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Pa => "PA",
            Method::Qpa => "QPA",
            Method::Sa => "SA",
            Method::Hc => "HC",
            Method::HcSa => "HC&SA",
            Method::Ga => "GA",
            Method::Es => "ES",
            Method::Exh => "EXH",
        }
    }

    /// Parses a comma-separated list such as `"SA,QPA,HC&SA"`.
    pub fn parse_list(s: &str) -> Result<Vec<Method>> {
        s.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect()
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let up = s.trim().to_ascii_uppercase();
        Method::ALL
            .into_iter()
            .find(|m| m.name() == up || (up == "HCSA" && *m == Method::HcSa))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown method `{s}`")))
    }
}

/// Reference SNR that every method is divided by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// `(Σ|c_i|)²`, continuous phase alignment.
    ContinuousPa,
    /// The exhaustive binary optimum of the same realization.
    Exhaustive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    KappaDb,
    N,
}

impl SweepVariable {
    pub fn name(self) -> &'static str {
        match self {
            SweepVariable::KappaDb => "kappa_db",
            SweepVariable::N => "n",
        }
    }
}

/// Knobs of the iterative methods.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverSettings {
    /// `None` runs hill climbing until a sweep accepts no flip.
    pub hc_max_passes: Option<usize>,
    pub gradient: GradientParams,
    pub es: EsParams,
    pub exhaustive_limit: usize,
}

impl Default for SolverSettings {
    fn default() -> Self {
        Self {
            hc_max_passes: None,
            gradient: GradientParams::default(),
            es: EsParams::default(),
            exhaustive_limit: DEFAULT_EXHAUSTIVE_LIMIT,
        }
    }
}

/// One-dimensional experiment: `variable` takes each of `values` in turn on
/// top of the `template` scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub values: Vec<f64>,
    pub template: crate::Scenario,
    pub methods: Vec<Method>,
    pub normalization: Normalization,
    #[serde(default)]
    pub solvers: SolverSettings,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidSweep(m));
        if self.values.is_empty() {
            return bad("no sweep values".into());
        }
        if self.values.iter().any(|v| v.is_nan()) {
            return bad("sweep values must not be NaN".into());
        }
        if self.values.windows(2).any(|w| w[0] >= w[1]) {
            return bad("sweep values must be strictly increasing".into());
        }
        if self.methods.is_empty() {
            return bad("no methods selected".into());
        }
        let mut seen = self.methods.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != self.methods.len() {
            return bad("duplicate methods".into());
        }
        self.template.validate()?;
        self.solvers.es.validate()?;
        if self.variable == SweepVariable::N
            && self
                .values
                .iter()
                .any(|v| *v < 1.0 || v.fract() != 0.0 || !v.is_finite())
        {
            return bad("N values must be positive integers".into());
        }
        let needs_exhaustive =
            self.methods.contains(&Method::Exh) || self.normalization == Normalization::Exhaustive;
        if needs_exhaustive {
            let limit = self.solvers.exhaustive_limit;
            let largest = self.sizes().into_iter().max().unwrap_or(0);
            if largest > limit {
                return Err(Error::ExhaustiveLimit { n: largest, limit });
            }
        }
        if self.methods.contains(&Method::Es) {
            for n in self.sizes() {
                crate::iterative::evolution_grid_side(n)?;
            }
        }
        Ok(())
    }

    fn sizes(&self) -> Vec<usize> {
        match self.variable {
            SweepVariable::N => self.values.iter().map(|v| *v as usize).collect(),
            SweepVariable::KappaDb => vec![self.template.len()],
        }
    }

    /// Scenario for one sweep value.
    pub fn scenario_at(&self, value: f64) -> crate::Scenario {
        let mut s = self.template.clone();
        match self.variable {
            SweepVariable::KappaDb => s.kappa = crate::Kappa::from_db(value),
            SweepVariable::N => s.geometry = s.geometry.with_count(value as usize),
        }
        s
    }
}

/// Endpoints and step of the κ sweep: −30 dB to 25 dB in 5 dB steps.
pub fn kappa_sweep_values() -> Vec<f64> {
    (-6..=5).map(|i| f64::from(i) * 5.0).collect()
}

/// Surface sizes of the N sweeps.
pub fn n_sweep_values() -> Vec<f64> {
    vec![16.0, 36.0, 64.0, 100.0, 144.0, 196.0, 256.0]
}
