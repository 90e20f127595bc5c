//! JSON run configuration. Every field is optional in the file; missing
//! fields take the reference-deployment defaults below.

use std::path::Path;

use serde::{Deserialize, Serialize};

use ris_core::harness::{kappa_sweep_values, SolverSettings};
use ris_core::{ArrayGeometry, Kappa, Method};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub seed: u64,
    /// Placement of TX, RX and surface. The element count is set per
    /// command; `n_vert`/`n_hor` here only matter where no count is given.
    pub geometry: ArrayGeometry,
    pub rho_pl: f64,
    pub solvers: SolverSettings,
    pub sweep_kappa: KappaSweepConfig,
    pub sweep_n: NSweepConfig,
    pub exhaustive: ExhaustiveConfig,
    pub convergence: ConvergenceConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            geometry: ArrayGeometry::reference(100),
            rho_pl: 1.0,
            solvers: SolverSettings::default(),
            sweep_kappa: KappaSweepConfig::default(),
            sweep_n: NSweepConfig::default(),
            exhaustive: ExhaustiveConfig::default(),
            convergence: ConvergenceConfig::default(),
        }
    }
}

fn default_methods() -> Vec<Method> {
    vec![
        Method::Pa,
        Method::Qpa,
        Method::Sa,
        Method::Hc,
        Method::HcSa,
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct KappaSweepConfig {
    pub n: usize,
    pub kappa_db: Vec<f64>,
    pub trials: u64,
    pub methods: Vec<Method>,
}

impl Default for KappaSweepConfig {
    fn default() -> Self {
        Self {
            n: 100,
            kappa_db: kappa_sweep_values(),
            trials: 1000,
            methods: default_methods(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NSweepConfig {
    /// `"rayleigh"`, `"los"` or a value in dB.
    pub kappa: Kappa,
    pub n_values: Vec<usize>,
    pub trials: u64,
    /// Points per axis of the TX angle grid used when `kappa` is `"los"`.
    pub los_angle_grid: usize,
    pub methods: Vec<Method>,
}

impl Default for NSweepConfig {
    fn default() -> Self {
        Self {
            kappa: Kappa::Rayleigh,
            n_values: vec![16, 36, 64, 100, 144, 196],
            trials: 1000,
            los_angle_grid: 30,
            methods: default_methods(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExhaustiveConfig {
    pub kappa: Kappa,
    pub n_values: Vec<usize>,
    pub trials: u64,
}

impl Default for ExhaustiveConfig {
    fn default() -> Self {
        Self {
            kappa: Kappa::Rayleigh,
            n_values: vec![4, 8, 12, 16, 20, 24],
            trials: 200,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ConvergenceConfig {
    pub n_values: Vec<usize>,
    pub trials: u64,
    pub los_angle_grid: usize,
}

impl Default for ConvergenceConfig {
    fn default() -> Self {
        Self {
            n_values: vec![16, 36, 64, 100, 144, 196],
            trials: 1000,
            los_angle_grid: 30,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }
}
