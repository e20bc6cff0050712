//! End-to-end checks of the sweep library and the `lplde` binary: schema,
//! determinism, per-row flags, recomputability of every cell, and exit
//! codes.

use std::process::Command;

use lplde_cli::{
    format_value, method_omega2, render_csv, run_sweep, Method, SweepConfig, SweepMode,
};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lplde"))
}

#[test]
fn csv_schema_and_determinism() {
    let mut config = SweepConfig::defaults(SweepMode::Amplitude);
    config.steps = 8;
    config.max = 4.0;
    config.methods = vec![Method::Lp3, Method::LpldePms];

    let rows_a = run_sweep(&config).unwrap();
    let rows_b = run_sweep(&config).unwrap();
    let csv_a = render_csv(&config, &rows_a);
    let csv_b = render_csv(&config, &rows_b);
    assert_eq!(csv_a, csv_b, "identical configs must render identically");

    let mut lines = csv_a.lines();
    assert_eq!(
        lines.next().unwrap(),
        "param,exact,lp3,lplde_pms,err_lp3,err_lplde_pms,flags"
    );
    assert_eq!(lines.count(), 8, "one line per step");
}

#[test]
fn every_cell_is_recomputable_from_the_library() {
    let mut config = SweepConfig::defaults(SweepMode::Mu);
    config.min = 0.5;
    config.max = 2.5;
    config.steps = 5;
    config.methods = vec![Method::Lp3, Method::LpldePms, Method::LpldePrinted];

    let rows = run_sweep(&config).unwrap();
    let csv = render_csv(&config, &rows);

    for (line, row) in csv.lines().skip(1).zip(&rows) {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells.len(), 2 + 2 * config.methods.len() + 1);

        // Recompute each method column directly from the core library.
        let spec =
            lplde::ModelSpec::new(config.omega, row.param, config.amplitude, 0.0, 3).unwrap();
        let exact_period = 2.0 * std::f64::consts::PI / lplde::oracle::omega_exact(&spec).unwrap();
        assert_eq!(cells[1], format_value(exact_period), "exact column");

        for (i, &method) in config.methods.iter().enumerate() {
            let mut flags = Vec::new();
            let w2 = method_omega2(&config, method, &spec, &mut flags).unwrap();
            let period = 2.0 * std::f64::consts::PI / w2.sqrt();
            assert_eq!(
                cells[2 + i],
                format_value(period),
                "{} column",
                method.column()
            );
            let err = ((period - exact_period) / exact_period).abs();
            assert_eq!(
                cells[2 + config.methods.len() + i],
                format_value(err),
                "err_{} column",
                method.column()
            );
        }
    }
}

#[test]
fn unbounded_and_fallback_rows_are_flagged() {
    let mut config = SweepConfig::defaults(SweepMode::Mu);
    config.min = -1.5;
    config.max = 1.5;
    config.steps = 7;
    config.methods = vec![Method::LpldePms];

    let rows = run_sweep(&config).unwrap();
    // params: -1.5, -1, -0.5, 0, 0.5, 1, 1.5
    assert!(rows[0].flags.contains(&lplde_cli::FLAG_UNBOUNDED));
    assert!(rows[0].failed());
    // omega^2 + mu A^2 = 0 exactly is still unbounded.
    assert!(rows[1].flags.contains(&lplde_cli::FLAG_UNBOUNDED));
    assert!(rows[2].flags.contains(&lplde_cli::FLAG_PMS_FALLBACK));
    assert!(rows[2].values[0].is_some());
    for row in &rows[3..] {
        assert!(row.flags.is_empty(), "clean row flagged: {row:?}");
        assert!(row.values[0].is_some());
    }
}

#[test]
fn amplitude_sweep_collapses_at_mu_zero() {
    let mut config = SweepConfig::defaults(SweepMode::Amplitude);
    config.mu = 0.0;
    config.steps = 4;
    config.max = 3.0;
    config.methods = vec![Method::Lp3, Method::LpldePms, Method::EngineN];

    for row in run_sweep(&config).unwrap() {
        assert_eq!(row.exact, Some(1.0), "exact harmonic frequency");
        for v in &row.values {
            assert_eq!(*v, Some(1.0), "all methods equal omega^2 at mu = 0");
        }
    }
}

#[test]
fn binary_writes_deterministic_csv_and_exit_codes() {
    let dir = std::env::temp_dir();
    let path_a = dir.join("lplde_cli_test_a.csv");
    let path_b = dir.join("lplde_cli_test_b.csv");
    for path in [&path_a, &path_b] {
        let status = bin()
            .args([
                "sweep-error",
                "--min",
                "0.5",
                "--max",
                "2",
                "--steps",
                "4",
                "--methods",
                "lplde_pms,lplde_printed",
                "--out",
            ])
            .arg(path)
            .status()
            .unwrap();
        assert!(status.success());
    }
    let a = std::fs::read(&path_a).unwrap();
    let b = std::fs::read(&path_b).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b, "binary output must be byte-identical across runs");
    let _ = std::fs::remove_file(path_a);
    let _ = std::fs::remove_file(path_b);

    // Invalid config: error mode requires a positive range.
    let out = bin()
        .args(["sweep-error", "--min", "-1", "--max", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    // Unknown method is also a config error.
    let out = bin()
        .args(["sweep-mu", "--methods", "bogus"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    // Entirely unbounded range: rows all fail, exit 2, output still written.
    let out = bin()
        .args(["sweep-mu", "--min", "-4", "--max", "-2", "--steps", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().skip(1).all(|l| l.ends_with("unbounded")));
}

#[test]
fn binary_show_reports_all_methods() {
    let out = bin().args(["show"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["exact", "lp3", "lplde_pms", "lplde_printed", "engine_n"] {
        assert!(text.contains(name), "missing row {name} in:\n{text}");
    }
    // The unit-point values are pinned by the oracles.
    assert!(text.contains("1.73653375740e0"), "exact omega^2");
    assert!(text.contains("1.73660714286e0"), "derived PMS omega^2");
    assert!(text.contains("1.71428571429e0"), "printed PMS omega^2");
}

#[test]
fn binary_rejects_bad_flag_with_exit_one() {
    let out = bin()
        .args(["sweep-mu", "--bogus-flag", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    // Help exits zero.
    let out = bin().args(["--help"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}
