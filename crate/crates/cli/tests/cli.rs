use std::path::Path;
use std::process::{Command, Output};

fn ris(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ris"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn sweep_writes_csv_plot_and_manifest() {
    let tmp = tempfile::tempdir().unwrap();
    let o = ris(
        tmp.path(),
        &["--trials", "4", "--out", "out", "sweep-kappa", "--n", "16"],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));

    let csv = std::fs::read_to_string(tmp.path().join("out/sweep_kappa.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "method,variable,value,trials,mean_norm_snr,std_err,mean_evals,mean_iters"
    );
    // 12 κ values × 5 default methods
    assert_eq!(lines.clone().count(), 60);
    assert!(lines.all(|l| l.split(',').nth(3) == Some("4")));
    assert!(!csv.contains('\r'));

    let plot = std::fs::read_to_string(tmp.path().join("out/sweep_kappa.gp")).unwrap();
    assert!(plot.contains("set datafile separator ','"));
    assert!(plot.contains("title 'HC&SA'"));

    let manifest: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(tmp.path().join("out/sweep_kappa.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(manifest["command"], "sweep-kappa");
    assert_eq!(manifest["seed"], 1);
    assert_eq!(manifest["code_version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(
        manifest["spec"]["template"]["geometry"]["tx_position"],
        serde_json::json!([0.0, 0.0, 6.0])
    );
}

#[test]
fn flags_override_config() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(
        tmp.path().join("c.json"),
        r#"{"seed": 5, "sweep_n": {"n_values": [4, 9], "trials": 50}}"#,
    )
    .unwrap();
    let o = ris(
        tmp.path(),
        &[
            "--config",
            "c.json",
            "--seed",
            "6",
            "--trials",
            "3",
            "--methods",
            "SA,QPA",
            "--out",
            ".",
            "sweep-n",
        ],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(tmp.path().join("sweep_n.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 2 * 2);
    assert!(csv.contains("SA,n,9,3,"));
    let manifest = std::fs::read_to_string(tmp.path().join("sweep_n.json")).unwrap();
    assert!(manifest.contains("\"seed\": 6"));
}

#[test]
fn bad_config_exits_2() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(
        tmp.path().join("bad.json"),
        r#"{"sweep_kappa": {"n": 16, "colour": 1}}"#,
    )
    .unwrap();
    let o = ris(tmp.path(), &["--config", "bad.json", "sweep-kappa"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("colour"));

    std::fs::write(
        tmp.path().join("order.json"),
        r#"{"sweep_kappa": {"kappa_db": [5, 0]}}"#,
    )
    .unwrap();
    assert_eq!(
        code(&ris(
            tmp.path(),
            &["--config", "order.json", "--trials", "1", "sweep-kappa"]
        )),
        2
    );
    assert_eq!(
        code(&ris(tmp.path(), &["--methods", "SA,XYZ", "sweep-kappa"])),
        2
    );
    assert_eq!(
        code(&ris(
            tmp.path(),
            &["--threads", "0", "--trials", "1", "sweep-kappa"]
        )),
        2
    );
    assert_eq!(code(&ris(tmp.path(), &["--methods", "SA", "selfcheck"])), 2);
}

#[test]
fn oversized_exhaustive_is_refused_with_3() {
    let tmp = tempfile::tempdir().unwrap();
    let o = ris(
        tmp.path(),
        &["--out", "o", "exhaustive", "--n-values", "4,27"],
    );
    assert_eq!(code(&o), 3);
    assert!(!tmp.path().join("o/exhaustive.csv").exists());
    let o = ris(
        tmp.path(),
        &["--methods", "SA,EXH", "sweep-n", "--n-values", "30"],
    );
    assert_eq!(code(&o), 3);
}

#[test]
fn unwritable_output_exits_4() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(tmp.path().join("file"), "").unwrap();
    let o = ris(
        tmp.path(),
        &[
            "--trials",
            "1",
            "--out",
            "file/sub",
            "sweep-kappa",
            "--n",
            "4",
        ],
    );
    assert_eq!(code(&o), 4);
    assert_eq!(
        code(&ris(tmp.path(), &["--config", "missing.json", "selfcheck"])),
        4
    );
}

#[test]
fn selfcheck_reports_every_check() {
    let tmp = tempfile::tempdir().unwrap();
    let o = ris(tmp.path(), &["selfcheck"]);
    assert_eq!(code(&o), 0);
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert_eq!(
        stdout.lines().filter(|l| l.starts_with("[PASS]")).count(),
        7
    );
}

#[test]
fn convergence_table_csv() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(
        tmp.path().join("c.json"),
        r#"{"convergence": {"los_angle_grid": 4}}"#,
    )
    .unwrap();
    let o = ris(
        tmp.path(),
        &[
            "--config",
            "c.json",
            "--trials",
            "5",
            "--out",
            ".",
            "convergence-table",
            "--n-values",
            "16,36",
        ],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(tmp.path().join("convergence_table.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "condition,n,hc_mean_evals,hc_sa_mean_evals");
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("rayleigh,16,"));
    assert!(lines[4].starts_with("los,36,"));
}
