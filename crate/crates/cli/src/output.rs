use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use ris_core::harness::{ConvergenceTable, SweepResult};
use ris_core::Method;

use crate::CliError;

/// Bumped whenever a column is added, removed or reordered.
pub const CSV_SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
struct Manifest<'a, S: Serialize> {
    command: &'a str,
    code_version: &'a str,
    csv_schema_version: u32,
    csv: String,
    seed: u64,
    spec: &'a S,
}

pub struct Artifacts<'a> {
    pub dir: &'a Path,
    pub stem: &'a str,
}

impl Artifacts<'_> {
    fn path(&self, ext: &str) -> PathBuf {
        self.dir.join(format!("{}.{ext}", self.stem))
    }

    fn write(&self, ext: &str, contents: &[u8]) -> Result<PathBuf, CliError> {
        fs::create_dir_all(self.dir)
            .map_err(|e| CliError::Io(format!("{}: {e}", self.dir.display())))?;
        let path = self.path(ext);
        fs::write(&path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Ok(path)
    }

    pub fn csv(&self, text: &str) -> Result<PathBuf, CliError> {
        self.write("csv", text.as_bytes())
    }

    pub fn gnuplot(&self, text: &str) -> Result<PathBuf, CliError> {
        self.write("gp", text.as_bytes())
    }

    pub fn manifest<S: Serialize>(
        &self,
        command: &str,
        seed: u64,
        spec: &S,
    ) -> Result<PathBuf, CliError> {
        let m = Manifest {
            command,
            code_version: env!("CARGO_PKG_VERSION"),
            csv_schema_version: CSV_SCHEMA_VERSION,
            csv: format!("{}.csv", self.stem),
            seed,
            spec,
        };
        let mut text = serde_json::to_string_pretty(&m).map_err(|e| CliError::Io(e.to_string()))?;
        text.push('\n');
        self.write("json", text.as_bytes())
    }
}

/// Gnuplot script drawing one error-bar curve per method from the sweep CSV.
pub fn sweep_plot(result: &SweepResult, csv_name: &str, ylabel: &str) -> String {
    let mut methods: Vec<Method> = Vec::new();
    for r in &result.rows {
        if !methods.contains(&r.method) {
            methods.push(r.method);
        }
    }
    let mut s = String::new();
    s.push_str("set datafile separator ','\n");
    s.push_str(&format!("set xlabel '{}'\n", result.variable.name()));
    s.push_str(&format!("set ylabel '{ylabel}'\n"));
    s.push_str("set key bottom right\nset grid\n");
    let curves: Vec<String> = methods
        .iter()
        .map(|m| {
            format!(
                "'{csv_name}' every ::1 using 3:(strcol(1) eq '{m}' ? $5 : NaN):6 with yerrorlines title '{m}'"
            )
        })
        .collect();
    s.push_str("plot ");
    s.push_str(&curves.join(", \\\n     "));
    s.push('\n');
    s
}

pub fn convergence_csv(table: &ConvergenceTable) -> String {
    let mut s = String::from("condition,n,hc_mean_evals,hc_sa_mean_evals\n");
    for r in &table.rows {
        s.push_str(&format!(
            "{},{},{},{}\n",
            r.condition.name(),
            r.n,
            r.hc_mean_evals,
            r.hc_sa_mean_evals
        ));
    }
    s
}

pub fn convergence_plot(csv_name: &str) -> String {
    format!(
        "set datafile separator ','\n\
         set xlabel 'n'\nset ylabel 'objective evaluations'\nset key top left\nset grid\n\
         plot '{csv_name}' every ::1 using 2:(strcol(1) eq 'rayleigh' ? $3 : NaN) with linespoints title 'HC rayleigh', \\\n     \
         '{csv_name}' every ::1 using 2:(strcol(1) eq 'rayleigh' ? $4 : NaN) with linespoints title 'HC&SA rayleigh', \\\n     \
         '{csv_name}' every ::1 using 2:(strcol(1) eq 'los' ? $3 : NaN) with linespoints title 'HC los', \\\n     \
         '{csv_name}' every ::1 using 2:(strcol(1) eq 'los' ? $4 : NaN) with linespoints title 'HC&SA los'\n"
    )
}
