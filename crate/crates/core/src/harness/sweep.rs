use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::channel::ArrayGeometry;
use crate::{Error, Kappa, Result, Scenario};

use super::trial::{ordering_violations, run_trial, TrialRecord};
use super::{Method, Normalization, SolverSettings, SweepSpec, SweepVariable};

pub const CSV_HEADER: [&str; 8] = [
    "method",
    "variable",
    "value",
    "trials",
    "mean_norm_snr",
    "std_err",
    "mean_evals",
    "mean_iters",
];

/// Aggregate of one (method, value) cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub method: Method,
    pub value: f64,
    pub trials: u64,
    pub mean_norm_snr: f64,
    /// Sample standard deviation over `√trials`.
    pub std_err: f64,
    pub mean_evals: f64,
    pub mean_iters: f64,
    pub min_norm_snr: f64,
    /// Mean of the un-normalized objective.
    pub mean_gamma: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrderingViolation {
    pub value: f64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub variable: SweepVariable,
    /// Value-major, then in the order methods were requested.
    pub rows: Vec<SweepRow>,
    pub ordering_violations: Vec<OrderingViolation>,
    /// Per value, the channel digest of every trial.
    pub digests: Vec<Vec<u64>>,
}

impl SweepResult {
    pub fn row(&self, method: Method, value: f64) -> Option<&SweepRow> {
        self.rows
            .iter()
            .find(|r| r.method == method && r.value == value)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(CSV_HEADER).map_err(io)?;
        for r in &self.rows {
            w.write_record([
                r.method.name().to_string(),
                self.variable.name().to_string(),
                r.value.to_string(),
                r.trials.to_string(),
                r.mean_norm_snr.to_string(),
                r.std_err.to_string(),
                r.mean_evals.to_string(),
                r.mean_iters.to_string(),
            ])
            .map_err(io)?;
        }
        w.flush().map_err(|e| Error::Io(e.to_string()))?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is UTF-8")
    }
}

fn with_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(Error::InvalidParameter(
            "thread count must be positive".into(),
        )),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::InvalidParameter(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

/// Every trial record of the sweep, grouped by value.
pub fn sweep_records(
    spec: &SweepSpec,
    threads: Option<usize>,
) -> Result<Vec<(f64, Vec<TrialRecord>)>> {
    spec.validate()?;
    let grid: Vec<(usize, u64)> = (0..spec.values.len())
        .flat_map(|v| (0..spec.template.trials).map(move |t| (v, t)))
        .collect();
    let scenarios: Vec<Scenario> = spec.values.iter().map(|&v| spec.scenario_at(v)).collect();
    let records: Vec<TrialRecord> = with_pool(threads, || {
        grid.par_iter()
            .map(|&(v, t)| {
                run_trial(
                    &scenarios[v],
                    &spec.methods,
                    t,
                    &spec.solvers,
                    spec.normalization,
                )
            })
            .collect::<Result<Vec<_>>>()
    })??;
    let per_value = spec.template.trials as usize;
    Ok(spec
        .values
        .iter()
        .zip(records.chunks(per_value))
        .map(|(&v, chunk)| (v, chunk.to_vec()))
        .collect())
}

pub(crate) fn summarize(spec: &SweepSpec, groups: &[(f64, Vec<TrialRecord>)]) -> SweepResult {
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    let mut digests = Vec::new();
    for (value, records) in groups {
        let trials = records.len() as u64;
        let count = records.len() as f64;
        for &method in &spec.methods {
            let cells: Vec<_> = records.iter().filter_map(|r| r.get(method)).collect();
            let mean = cells.iter().map(|c| c.normalized).sum::<f64>() / count;
            let var = if cells.len() > 1 {
                cells
                    .iter()
                    .map(|c| (c.normalized - mean).powi(2))
                    .sum::<f64>()
                    / (count - 1.0)
            } else {
                0.0
            };
            rows.push(SweepRow {
                method,
                value: *value,
                trials,
                mean_norm_snr: mean,
                std_err: var.sqrt() / count.sqrt(),
                mean_evals: cells.iter().map(|c| c.objective_evals as f64).sum::<f64>() / count,
                mean_iters: cells.iter().map(|c| c.outer_iterations as f64).sum::<f64>() / count,
                min_norm_snr: cells
                    .iter()
                    .map(|c| c.normalized)
                    .fold(f64::INFINITY, f64::min),
                mean_gamma: cells.iter().map(|c| c.gamma).sum::<f64>() / count,
            });
        }
        for r in records {
            violations.extend(
                ordering_violations(r)
                    .into_iter()
                    .map(|detail| OrderingViolation {
                        value: *value,
                        detail,
                    }),
            );
        }
        digests.push(records.iter().map(|r| r.csi_digest).collect());
    }
    SweepResult {
        variable: spec.variable,
        rows,
        ordering_violations: violations,
        digests,
    }
}

/// Runs the full (value × method × trial) grid. `threads` caps the worker
/// count; the result is identical for every thread count.
pub fn sweep(spec: &SweepSpec, threads: Option<usize>) -> Result<SweepResult> {
    let groups = sweep_records(spec, threads)?;
    Ok(summarize(spec, &groups))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    Rayleigh,
    LineOfSight,
}

impl Condition {
    pub fn name(self) -> &'static str {
        match self {
            Condition::Rayleigh => "rayleigh",
            Condition::LineOfSight => "los",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub condition: Condition,
    pub n: usize,
    pub hc_mean_evals: f64,
    pub hc_sa_mean_evals: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
    pub sweeps: Vec<(Condition, SweepResult)>,
}

impl ConvergenceTable {
    pub fn get(&self, condition: Condition, n: usize) -> Option<&ConvergenceRow> {
        self.rows
            .iter()
            .find(|r| r.condition == condition && r.n == n)
    }
}

/// Setup of the hill-climbing convergence study.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceSpec {
    pub geometry: ArrayGeometry,
    pub n_values: Vec<usize>,
    pub conditions: Vec<Condition>,
    /// Random channels per Rayleigh cell.
    pub trials: u64,
    /// Line-of-sight cells average the `los_grid²` TX angle grid.
    pub los_grid: usize,
    pub seed: u64,
    pub solvers: SolverSettings,
}

/// Mean objective evaluations of randomly initialised and SA-initialised hill
/// climbing per (condition, N).
pub fn convergence_table(
    spec: &ConvergenceSpec,
    threads: Option<usize>,
) -> Result<ConvergenceTable> {
    let mut rows = Vec::new();
    let mut sweeps = Vec::new();
    for &condition in &spec.conditions {
        let geometry = spec.geometry.clone();
        let template = match condition {
            Condition::Rayleigh => Scenario::new(geometry, Kappa::Rayleigh, spec.seed, spec.trials),
            Condition::LineOfSight => Scenario::los_angle_grid(geometry, spec.los_grid, spec.seed),
        };
        let sweep_spec = SweepSpec {
            variable: SweepVariable::N,
            values: spec.n_values.iter().map(|&n| n as f64).collect(),
            template,
            methods: vec![Method::Hc, Method::HcSa],
            normalization: Normalization::ContinuousPa,
            solvers: spec.solvers.clone(),
        };
        let result = sweep(&sweep_spec, threads)?;
        for &n in &spec.n_values {
            let evals = |m| {
                result
                    .row(m, n as f64)
                    .map(|r| r.mean_evals)
                    .unwrap_or(f64::NAN)
            };
            rows.push(ConvergenceRow {
                condition,
                n,
                hc_mean_evals: evals(Method::Hc),
                hc_sa_mean_evals: evals(Method::HcSa),
            });
        }
        sweeps.push((condition, result));
    }
    Ok(ConvergenceTable { rows, sweeps })
}

/// Methods normalized by the exhaustive optimum of each realization.
pub fn exhaustive_compare(
    template: &Scenario,
    n_values: &[usize],
    solvers: &SolverSettings,
    threads: Option<usize>,
) -> Result<SweepResult> {
    if let Some(&n) = n_values.iter().find(|&&n| n > solvers.exhaustive_limit) {
        return Err(Error::ExhaustiveLimit {
            n,
            limit: solvers.exhaustive_limit,
        });
    }
    let spec = SweepSpec {
        variable: SweepVariable::N,
        values: n_values.iter().map(|&n| n as f64).collect(),
        template: template.clone(),
        methods: vec![
            Method::Exh,
            Method::Sa,
            Method::Qpa,
            Method::Hc,
            Method::HcSa,
        ],
        normalization: Normalization::Exhaustive,
        solvers: solvers.clone(),
    };
    sweep(&spec, threads)
}
