//! `ris`: batch experiments on 1-bit reconfigurable intelligent surfaces.
//!
//! Each subcommand writes `<name>.csv`, a gnuplot script `<name>.gp` and a
//! run manifest `<name>.json` into `--out`. Exit codes: 2 for configuration
//! errors, 3 when a request exceeds a solver's size limit, 4 for I/O errors.

mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ris_core::harness::{
    convergence_table, selfcheck, sweep, Condition, ConvergenceSpec, SweepVariable,
};
use ris_core::{Kappa, Method, Normalization, Scenario, SweepSpec};

use config::RunConfig;
use output::Artifacts;

const EXHAUSTIVE_METHODS: [Method; 5] = [
    Method::Exh,
    Method::Sa,
    Method::Qpa,
    Method::Hc,
    Method::HcSa,
];

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("refused: {0}")]
    Refusal(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("{0} self-check(s) failed")]
    ChecksFailed(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::ChecksFailed(_) => 1,
            CliError::Config(_) => 2,
            CliError::Refusal(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl From<ris_core::Error> for CliError {
    fn from(e: ris_core::Error) -> Self {
        match e {
            e if e.is_refusal() => CliError::Refusal(e.to_string()),
            ris_core::Error::Io(msg) => CliError::Io(msg),
            e => CliError::Config(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "ris",
    version,
    about = "Binary RIS phase configuration experiments"
)]
struct Cli {
    /// JSON run configuration; flags below override its values.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Realizations per sweep value.
    #[arg(long, global = true)]
    trials: Option<u64>,
    #[arg(long, global = true, value_name = "DIR", default_value = "results")]
    out: PathBuf,
    /// Comma-separated subset of PA,QPA,SA,HC,HC&SA,GA,ES,EXH.
    #[arg(long, global = true, value_name = "LIST")]
    methods: Option<String>,
    /// Worker threads; defaults to one per core. Results do not depend on it.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Normalized SNR over the Ricean κ-factor.
    SweepKappa {
        /// Surface size.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Normalized SNR over the surface size.
    SweepN {
        /// `rayleigh`, `los` or κ in dB.
        #[arg(long, allow_hyphen_values = true)]
        kappa_db: Option<Kappa>,
        #[arg(long, value_delimiter = ',')]
        n_values: Option<Vec<usize>>,
    },
    /// Methods relative to the exhaustive binary optimum.
    Exhaustive {
        #[arg(long, value_delimiter = ',')]
        n_values: Option<Vec<usize>>,
    },
    /// Mean hill-climbing evaluations from random and SA starts.
    ConvergenceTable {
        #[arg(long, value_delimiter = ',')]
        n_values: Option<Vec<usize>>,
    },
    /// Quick numerical checks of the sign-alignment guarantees.
    Selfcheck,
}

fn methods(cli: &Cli, default: &[Method]) -> Result<Vec<Method>, CliError> {
    match &cli.methods {
        Some(list) => Ok(Method::parse_list(list)?),
        None => Ok(default.to_vec()),
    }
}

fn reject_methods(cli: &Cli, command: &str) -> Result<(), CliError> {
    match cli.methods {
        Some(_) => Err(CliError::Config(format!(
            "--methods does not apply to {command}"
        ))),
        None => Ok(()),
    }
}

fn write_sweep<S: serde::Serialize>(
    cli: &Cli,
    stem: &str,
    command: &str,
    seed: u64,
    spec: &S,
    result: &ris_core::SweepResult,
    ylabel: &str,
) -> Result<(), CliError> {
    let out = Artifacts {
        dir: &cli.out,
        stem,
    };
    let csv = out.csv(&result.to_csv_string())?;
    out.gnuplot(&output::sweep_plot(result, &format!("{stem}.csv"), ylabel))?;
    out.manifest(command, seed, spec)?;
    println!("{}", csv.display());
    for v in &result.ordering_violations {
        eprintln!("ordering violation at {}: {}", v.value, v.detail);
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let seed = cli.seed.unwrap_or(cfg.seed);
    let template = |n: usize, kappa: Kappa, trials: u64| Scenario {
        rho_pl: cfg.rho_pl,
        ..Scenario::new(
            cfg.geometry.with_count(n),
            kappa,
            seed,
            cli.trials.unwrap_or(trials),
        )
    };

    match &cli.command {
        Command::SweepKappa { n } => {
            let k = &cfg.sweep_kappa;
            let spec = SweepSpec {
                variable: SweepVariable::KappaDb,
                values: k.kappa_db.clone(),
                template: template(n.unwrap_or(k.n), Kappa::Rayleigh, k.trials),
                methods: methods(cli, &k.methods)?,
                normalization: Normalization::ContinuousPa,
                solvers: cfg.solvers.clone(),
            };
            let result = sweep(&spec, cli.threads)?;
            write_sweep(
                cli,
                "sweep_kappa",
                "sweep-kappa",
                seed,
                &spec,
                &result,
                "SNR / SNR(PA)",
            )
        }
        Command::SweepN { kappa_db, n_values } => {
            let s = &cfg.sweep_n;
            let kappa = kappa_db.unwrap_or(s.kappa);
            let n_values = n_values.clone().unwrap_or_else(|| s.n_values.clone());
            let first = n_values.first().copied().unwrap_or(1);
            let mut scenario = template(first, kappa, s.trials);
            if kappa == Kappa::LineOfSight {
                scenario.tx_angle_grid = Some(s.los_angle_grid);
                scenario.trials = cli
                    .trials
                    .unwrap_or((s.los_angle_grid * s.los_angle_grid) as u64);
            }
            let spec = SweepSpec {
                variable: SweepVariable::N,
                values: n_values.iter().map(|&n| n as f64).collect(),
                template: scenario,
                methods: methods(cli, &s.methods)?,
                normalization: Normalization::ContinuousPa,
                solvers: cfg.solvers.clone(),
            };
            let result = sweep(&spec, cli.threads)?;
            write_sweep(
                cli,
                "sweep_n",
                "sweep-n",
                seed,
                &spec,
                &result,
                "SNR / SNR(PA)",
            )
        }
        Command::Exhaustive { n_values } => {
            let e = &cfg.exhaustive;
            let n_values = n_values.clone().unwrap_or_else(|| e.n_values.clone());
            let first = n_values.first().copied().unwrap_or(1);
            let spec = SweepSpec {
                variable: SweepVariable::N,
                values: n_values.iter().map(|&n| n as f64).collect(),
                template: template(first, e.kappa, e.trials),
                methods: methods(cli, &EXHAUSTIVE_METHODS)?,
                normalization: Normalization::Exhaustive,
                solvers: cfg.solvers.clone(),
            };
            let result = sweep(&spec, cli.threads)?;
            write_sweep(
                cli,
                "exhaustive",
                "exhaustive",
                seed,
                &spec,
                &result,
                "SNR / SNR(EXH)",
            )
        }
        Command::ConvergenceTable { n_values } => {
            reject_methods(cli, "convergence-table")?;
            let c = &cfg.convergence;
            let spec = ConvergenceSpec {
                geometry: cfg.geometry.clone(),
                n_values: n_values.clone().unwrap_or_else(|| c.n_values.clone()),
                conditions: vec![Condition::Rayleigh, Condition::LineOfSight],
                trials: cli.trials.unwrap_or(c.trials),
                los_grid: c.los_angle_grid,
                seed,
                solvers: cfg.solvers.clone(),
            };
            let table = convergence_table(&spec, cli.threads)?;
            let out = Artifacts {
                dir: &cli.out,
                stem: "convergence_table",
            };
            let csv = out.csv(&output::convergence_csv(&table))?;
            out.gnuplot(&output::convergence_plot("convergence_table.csv"))?;
            out.manifest("convergence-table", seed, &spec)?;
            println!("{}", csv.display());
            Ok(())
        }
        Command::Selfcheck => {
            reject_methods(cli, "selfcheck")?;
            let results = selfcheck(seed)?;
            let failed = results.iter().filter(|r| !r.passed).count();
            for r in &results {
                println!(
                    "[{}] {}: {}",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.name,
                    r.detail
                );
            }
            if failed > 0 {
                return Err(CliError::ChecksFailed(failed));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ris: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
