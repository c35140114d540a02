//! End-to-end tests of the command-line surface: file shapes, round-trips,
//! determinism and exit codes.

use std::path::{Path, PathBuf};
use std::process::Command;

fn qna() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qna"))
}

fn temp_base(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qna-cli-test-{}-{tag}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join("run")
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("reading {path:?}: {e}"))
}

#[test]
fn simulate_writes_expected_row_count_and_summary() {
    let base = temp_base("simulate");
    let status = qna()
        .args([
            "--mode",
            "simulate",
            "--steps",
            "2100",
            "--transient",
            "100",
            "--seed",
            "3",
            "--out",
        ])
        .arg(&base)
        .status()
        .unwrap();
    assert!(status.success());

    let csv = read(&base.with_file_name("run.csv"));
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "round,return,log_price");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 2000);
    assert!(rows[0].starts_with("101,"));
    assert!(rows.last().unwrap().starts_with("2100,"));

    // Recomputing the summary from the emitted CSV must reproduce the JSON.
    let returns: Vec<f64> = rows
        .iter()
        .map(|r| r.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    let recomputed = qna_core::stats::summarize(&returns).unwrap();
    let json: serde_json::Value =
        serde_json::from_str(&read(&base.with_file_name("run.json"))).unwrap();
    assert_eq!(json["n"].as_u64().unwrap(), 2000);
    for (key, value) in [
        ("mean", recomputed.mean),
        ("variance", recomputed.variance),
        ("skewness", recomputed.skewness),
        ("fisher_kurtosis", recomputed.fisher_kurtosis),
        ("jb_statistic", recomputed.jb_statistic),
        ("jb_p_value", recomputed.jb_p_value),
    ] {
        let emitted = json[key].as_f64().unwrap();
        assert!(
            (emitted - value).abs() <= 1e-9 * value.abs().max(1.0),
            "{key}: emitted {emitted}, recomputed {value}"
        );
    }
    assert_eq!(json["config"]["seed"].as_u64().unwrap(), 3);
}

#[test]
fn log_price_column_accumulates_returns() {
    let base = temp_base("logprice");
    assert!(qna()
        .args(["--steps", "300", "--transient", "50", "--seed", "11", "--out"])
        .arg(&base)
        .status()
        .unwrap()
        .success());
    let csv = read(&base.with_file_name("run.csv"));
    let mut level = 0.0;
    for line in csv.lines().skip(1) {
        let mut fields = line.split(',');
        fields.next();
        let ret: f64 = fields.next().unwrap().parse().unwrap();
        let log_price: f64 = fields.next().unwrap().parse().unwrap();
        level += ret;
        assert!((level - log_price).abs() < 1e-12);
    }
}

#[test]
fn identical_specs_produce_byte_identical_outputs() {
    let base_a = temp_base("det-a");
    let base_b = temp_base("det-b");
    for base in [&base_a, &base_b] {
        assert!(qna()
            .args([
                "--mode", "sweep", "--steps", "400", "--transient", "100", "--seed", "9",
                "--beta", "1.5", "--sweep", "v0=0.6,0.8", "--sweep", "sin2phi=0.4,0.6", "--out",
            ])
            .arg(base)
            .status()
            .unwrap()
            .success());
    }
    assert_eq!(
        read(&base_a.with_file_name("run.csv")),
        read(&base_b.with_file_name("run.csv"))
    );
}

#[test]
fn parallel_and_serial_sweeps_agree() {
    let base = qna_core::MarketConfig {
        n_components: 8,
        sin2phi: 0.5,
        v0: 0.7,
        lambda: 1000.0,
        steps: 300,
        transient: 50,
        seed: 21,
        noise_beta: Some(0.8),
    };
    let axes = vec![qna_cli::SweepAxis {
        param: qna_cli::SweepParam::V0,
        values: vec![0.5, 0.7, 0.9],
    }];
    let parallel = qna_cli::run_sweep_cells(&base, &axes, true).unwrap();
    let serial = qna_cli::run_sweep_cells(&base, &axes, false).unwrap();
    assert_eq!(parallel.len(), serial.len());
    for (p, s) in parallel.iter().zip(&serial) {
        assert_eq!(p.config, s.config);
        assert_eq!(p.summary, s.summary);
    }
}

#[test]
fn sweep_grid_has_row_major_cells() {
    let base = temp_base("grid");
    assert!(qna()
        .args([
            "--mode", "sweep", "--steps", "120", "--transient", "20", "--seed", "1",
            "--sweep", "v0=0.4,0.5,0.6,0.7,0.8,0.9", "--sweep", "sin2phi=0.4,0.5,0.6", "--out",
        ])
        .arg(&base)
        .status()
        .unwrap()
        .success());
    let csv = read(&base.with_file_name("run.csv"));
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 18);
    // First axis varies slowest.
    let first: Vec<f64> = rows
        .iter()
        .map(|r| r.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert!((first[0] - 0.4).abs() < 1e-12);
    assert!((first[2] - 0.4).abs() < 1e-12);
    assert!((first[3] - 0.5).abs() < 1e-12);
    assert!((first[17] - 0.9).abs() < 1e-12);
}

#[test]
fn sweep_json_format_emits_cells() {
    let base = temp_base("sweepjson");
    assert!(qna()
        .args([
            "--mode", "sweep", "--steps", "120", "--transient", "20", "--seed", "1",
            "--sweep", "v0=0.5,0.9", "--format", "json", "--out",
        ])
        .arg(&base)
        .status()
        .unwrap()
        .success());
    let cells: serde_json::Value =
        serde_json::from_str(&read(&base.with_file_name("run.json"))).unwrap();
    let cells = cells.as_array().unwrap();
    assert_eq!(cells.len(), 2);
    assert!((cells[0]["config"]["v0"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert!(cells[1]["summary"]["n"].as_u64().unwrap() == 100);
}

#[test]
fn probmap_outputs_trajectory_and_deviation() {
    let base = temp_base("probmap");
    assert!(qna()
        .args([
            "--mode", "probmap", "--steps", "600", "--transient", "100", "--seed", "5", "--out",
        ])
        .arg(&base)
        .status()
        .unwrap()
        .success());
    let csv = read(&base.with_file_name("run.csv"));
    let mut lines = csv.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("round,a000,a001"));
    assert_eq!(header.split(',').count(), 17);
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 500);
    // Every row's sixteen variables sum to one.
    for row in &rows {
        let total: f64 = row.split(',').skip(1).map(|v| v.parse::<f64>().unwrap()).sum();
        assert!((total - 1.0).abs() < 1e-8);
    }

    let json: serde_json::Value =
        serde_json::from_str(&read(&base.with_file_name("run.json"))).unwrap();
    let signed_dev = json["max_abs_dev_signed"].as_f64().unwrap();
    assert!(signed_dev < 1e-10, "signed map deviation {signed_dev}");
    // The literal map is expected to lose sign information eventually.
    let literal_dev = json["max_abs_dev_literal"].as_f64().unwrap();
    assert!(literal_dev.is_finite());
}

#[test]
fn usage_errors_exit_with_code_one() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["--mode", "simulate"],                             // missing --out
        vec!["--v0", "1.5", "--out", "/tmp/x"],                 // invalid parameter
        vec!["--mode", "sweep", "--out", "/tmp/x"],             // sweep without axis
        vec!["--mode", "sweep", "--sweep", "nope=1", "--out", "/tmp/x"],
        vec!["--mode", "simulate", "--sweep", "v0=0.5", "--out", "/tmp/x"],
        vec!["--steps", "50", "--transient", "50", "--out", "/tmp/x"],
    ];
    for args in cases {
        let out = qna().args(&args).output().unwrap();
        assert_eq!(
            out.status.code(),
            Some(1),
            "args {args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn unwritable_output_exits_with_code_two() {
    let out = qna()
        .args([
            "--steps",
            "60",
            "--transient",
            "10",
            "--out",
            "/nonexistent-dir/deeper/run",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn help_exits_cleanly() {
    let out = qna().arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("--sin2phi"));
}
