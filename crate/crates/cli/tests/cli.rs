use std::path::PathBuf;
use std::process::{Command, Output};

use scarf2_cli::{Cell, Table};

fn scarf2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scarf2"))
        .args(args)
        .env_remove("SCARF2_QUAD_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

const RUNS: &[&[&str]] = &[
    &["spectrum", "--alpha=-3", "--beta=-3"],
    &["spectrum", "--alpha=0.5i", "--beta=-3"],
    &["pseudonorm", "--alpha=-4.5", "--beta=-4.5", "--check"],
    &["pseudonorm", "--alpha=0.5i", "--beta=-3", "--delta-sign=-1"],
    &["matrix", "--alpha=-1.2", "--beta=-4.5", "--both-parities"],
    &["matrix", "--alpha=0.5i", "--beta=-3", "--product=standard"],
    &["sweep", "--beta=-3", "--path=real:-1..0:3,imag:0..0.5:3", "--n=0"],
    &["identities", "--max-n=4", "--max-l=6"],
];

fn with_format<'a>(args: &[&'a str], format: &'a str) -> Vec<&'a str> {
    let mut v = args.to_vec();
    v.push(format);
    v
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in RUNS {
        for format in ["--format=csv", "--format=json"] {
            let args = with_format(args, format);
            let a = scarf2(&args);
            let b = scarf2(&args);
            assert_eq!(
                a.status.code(),
                Some(0),
                "{args:?}: {}",
                String::from_utf8_lossy(&a.stderr)
            );
            assert_eq!(a.stdout, b.stdout, "{args:?}");
        }
    }
}

#[test]
fn csv_and_json_round_trip() {
    for args in RUNS {
        let csv = stdout(&scarf2(&with_format(args, "--format=csv")));
        let table = Table::read_csv(csv.as_bytes()).unwrap();
        let mut again = Vec::new();
        table.write_csv(&mut again).unwrap();
        assert_eq!(String::from_utf8(again).unwrap(), csv, "{args:?}");

        let json = stdout(&scarf2(&with_format(args, "--format=json")));
        let from_json = Table::read_json(json.as_bytes()).unwrap();
        assert_eq!(from_json, table, "{args:?}");
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["meta"]["command"], args[0]);
        assert_eq!(value["meta"]["seed"], 0);
    }
}

#[test]
fn output_file_matches_stdout() {
    let path: PathBuf = std::env::temp_dir().join(format!("scarf2-cli-test-{}.csv", std::process::id()));
    let args = ["spectrum", "--alpha=-4.5", "--beta=-4.5"];
    let out = scarf2(&[&args[..], &["--output", path.to_str().unwrap()]].concat());
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(written, scarf2(&args).stdout);
}

#[test]
fn quadrature_tolerance_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_scarf2"))
        .args(["pseudonorm", "--alpha=-4.5", "--beta=-4.5", "--check", "--format=json"])
        .env("SCARF2_QUAD_TOL", "1e-12")
        .output()
        .unwrap();
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["meta"]["params"]["quad_tol"], 1e-12);
}

#[test]
fn spectrum_rows() {
    let out = scarf2(&["spectrum", "--alpha=-3", "--beta=-3"]);
    let table = Table::read_csv(stdout(&out).as_bytes()).unwrap();
    let n: Vec<f64> = table.values("n").into_iter().map(|c| c.as_f64().unwrap()).collect();
    assert_eq!(n, vec![0.0, 1.0, 2.0]);
    assert!(table.values("energy_im").iter().all(|c| c.as_f64() == Some(0.0)));

    let out = scarf2(&["spectrum", "--alpha=1", "--beta=1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(Table::read_csv(stdout(&out).as_bytes()).unwrap().rows.len(), 0);
    assert!(!out.stderr.is_empty());
}

#[test]
fn exit_codes() {
    assert_eq!(scarf2(&["verify", "--tol=1e-15"]).status.code(), Some(1));
    assert_eq!(
        scarf2(&["identities", "--max-n=3", "--negative-control"]).status.code(),
        Some(1)
    );
    assert_eq!(
        scarf2(&["spectrum", "--alpha=nope", "--beta=-3"]).status.code(),
        Some(2)
    );
    assert_eq!(scarf2(&["spectrum"]).status.code(), Some(2));
    assert_eq!(
        scarf2(&["sweep", "--beta=-3", "--path=real:0..1", "--n=0"])
            .status
            .code(),
        Some(2)
    );

    let grid = std::env::temp_dir().join(format!("scarf2-grid-{}.txt", std::process::id()));
    std::fs::write(&grid, "# alpha,beta\n-2,-3\n-1+0.5i,-3\n").unwrap();
    let out = scarf2(&["verify", "--grid-file", grid.to_str().unwrap()]);
    std::fs::remove_file(&grid).unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("grid line 3"));
}

#[test]
fn verify_on_a_small_grid() {
    let grid = std::env::temp_dir().join(format!("scarf2-small-grid-{}.txt", std::process::id()));
    std::fs::write(&grid, "-2,-3\n0.5i,-3\n-1.5+0.5i,-1.5-0.5i\n").unwrap();
    let out = scarf2(&["verify", "--grid-file", grid.to_str().unwrap(), "--format=json"]);
    std::fs::remove_file(&grid).unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let table = Table::read_json(&out.stdout[..]).unwrap();
    assert!(table.rows.len() > 10);
    assert!(table.values("pass").iter().all(|c| **c == Cell::Bool(true)));
}
