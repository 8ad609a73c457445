//! End-to-end checks of the command-line front end.

use std::path::Path;
use std::process::{Command, Output};

use lcd_mhd::dump::read_dump;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lcd-mhd"))
        .args(args)
        .env("LCDMHD_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn run_writes_dumps_diagnostics_and_snapshots() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bw");
    let o = cli(&[
        "run",
        "--problem",
        "brio_wu",
        "--scheme",
        "pccu",
        "--nx",
        "40",
        "--ny",
        "2",
        "--t-final",
        "0.05",
        "--snapshot-times",
        "0.02",
        "--out",
        path_str(&out),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let fin = read_dump(&out.join("final.dump")).unwrap();
    assert_eq!((fin.header.nx, fin.header.ny), (40, 2));
    assert_eq!(fin.header.time, 0.05);
    assert_eq!(fin.header.variant, "pccu");
    assert_eq!(fin.header.problem, "brio_wu");
    assert_eq!(fin.records.len(), 80);
    let snap = read_dump(&out.join("snapshot_t0.020000.dump")).unwrap();
    assert_eq!(snap.header.time, 0.02);
    let diag = std::fs::read_to_string(out.join("diagnostics.csv")).unwrap();
    assert!(diag.starts_with("t,dt,div_l1,div_linf,mass,min_rho,min_p\n"));

    let csv = dir.path().join("slice.csv");
    let o = cli(&[
        "slice",
        "--in",
        path_str(&out.join("final.dump")),
        "--axis",
        "x",
        "--at",
        "0.0",
        "--vars",
        "rho,b2",
        "--out",
        path_str(&csv),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next().unwrap(), "x,rho,b2");
    assert_eq!(text.lines().count(), 41);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ot");
    let cfg = dir.path().join("run.toml");
    std::fs::write(
        &cfg,
        format!(
            "problem = \"orszag_tang\"\nscheme = \"lcd-pccu\"\nnx = 8\nny = 8\nt-final = 0.5\nout = \"{}\"\n",
            path_str(&out)
        ),
    )
    .unwrap();
    let o = cli(&["run", "--config", path_str(&cfg), "--t-final", "0.01", "--scheme", "pccu"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let d = read_dump(&out.join("final.dump")).unwrap();
    assert_eq!(d.header.time, 0.01);
    assert_eq!(d.header.variant, "pccu");
}

#[test]
fn convergence_table_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("t.csv");
    let o = cli(&[
        "convergence",
        "--problem",
        "alfven",
        "--meshes",
        "8,16",
        "--t-final",
        "0.05",
        "--out",
        path_str(&table),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&table).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(String::from_utf8_lossy(&o.stdout).contains("lcd-pccu"));
}

#[test]
fn configuration_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x");
    let cases: Vec<Vec<&str>> = vec![
        vec!["run", "--problem", "sod", "--out", path_str(&out)],
        vec!["run", "--problem", "rotor", "--theta", "3", "--out", path_str(&out)],
        vec!["run", "--problem", "rotor", "--scheme", "weno", "--out", path_str(&out)],
        vec!["convergence", "--problem", "rotor", "--out", path_str(&out)],
        vec!["slice", "--in", "/nonexistent.dump", "--axis", "x", "--at", "0", "--out", path_str(&out)],
    ];
    for args in cases {
        let o = cli(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn runtime_failures_exit_with_three() {
    // a CFL number this close to one drives the blast problem to a negative
    // pressure within a few steps
    let dir = tempfile::tempdir().unwrap();
    let o = cli(&[
        "run",
        "--problem",
        "blast",
        "--nx",
        "24",
        "--ny",
        "24",
        "--cfl",
        "0.99",
        "--theta",
        "2",
        "--out",
        path_str(&dir.path().join("b")),
    ]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stderr).contains("inadmissible"));
}
