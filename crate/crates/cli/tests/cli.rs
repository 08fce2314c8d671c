//! The binary against golden files and direct library calls.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use swarmnav_cli::commands::{curves, gain_table};
use swarmnav_cli::ExperimentConfig;
use swarmnav_core::prob::{majority_error, optimal_gain};
use swarmnav_core::sim::{format_sig, run_experiment};
use swarmnav_core::terrain::{generate_grid, load_scenario, parse_osm_subset, Scenario};
use swarmnav_core::SwarmSize;

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn campus_osm() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures/campus.osm")
}

fn swarmnav(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swarmnav"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = swarmnav(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn gain_table_csv_is_golden_and_matches_library() {
    let text = stdout_of(&["gain-table", "--m-max", "7", "--csv"]);
    assert_eq!(text, read(&golden("gain_table_m7.csv")));
    for line in text.lines().skip(1) {
        let cells: Vec<&str> = line.split(',').collect();
        let m = SwarmSize::new(cells[0].parse().unwrap()).unwrap();
        let point = optimal_gain(m).unwrap();
        assert_eq!(cells[1], format_sig(point.p_star.value(), 9));
        assert_eq!(cells[2], format_sig(point.gain, 9));
        assert_eq!(
            cells[3],
            format_sig(majority_error(point.p_star, m).value(), 9)
        );
    }
}

#[test]
fn gain_table_text_rows() {
    let text = stdout_of(&["gain-table", "--m-max", "3"]);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(
        rows[0].split_whitespace().collect::<Vec<_>>(),
        ["2", "0.5000", "1.5000", "0.250000"]
    );
    assert_eq!(
        rows[1].split_whitespace().collect::<Vec<_>>(),
        ["3", "0.2500", "1.1250", "0.156250"]
    );
    assert_eq!(text, gain_table(3, false).unwrap().0);
}

#[test]
fn curves_csv_is_golden() {
    let text = stdout_of(&["curves", "--p-step", "0.05", "--p-max", "0.5", "--m", "2,3"]);
    assert_eq!(text, read(&golden("curves_m2_m3.csv")));
    assert_eq!(text, curves(0.05, 0.5, &[2, 3]).unwrap().0);
    assert!(text.contains("\n0.25,3,1.125,0.15625\n"));
}

#[test]
fn curve_for_three_peaks_at_a_quarter() {
    let text = stdout_of(&["curves", "--p-step", "0.01", "--p-max", "0.5", "--m", "3"]);
    let best = text
        .lines()
        .skip(1)
        .map(|l| {
            let c: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            (c[0], c[2])
        })
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap();
    assert_eq!(best.0, 0.25);
}

#[test]
fn gen_grid_writes_golden_scenarios() {
    let dir = tempfile::tempdir().unwrap();
    for (rows, name, vertices, segments) in
        [("2", "grid2x2.json", 4, 2), ("10", "grid10.json", 100, 18)]
    {
        let spacing = if rows == "2" { "10" } else { "50" };
        let out = dir.path().join(name);
        let printed = stdout_of(&[
            "gen",
            "grid",
            "--rows",
            rows,
            "--cols",
            rows,
            "--spacing",
            spacing,
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(printed.is_empty());
        assert_eq!(read(&out), read(&golden(name)));
        let s = load_scenario(&out).unwrap();
        assert_eq!(s.graph.vertex_count(), vertices);
        assert_eq!(s.plan.segments(), segments);
        assert_eq!(
            s.graph,
            generate_grid(
                rows.parse().unwrap(),
                rows.parse().unwrap(),
                spacing.parse().unwrap()
            )
            .unwrap()
        );
    }
}

#[test]
fn gen_osm_matches_fixture() {
    let text = stdout_of(&[
        "gen",
        "osm",
        campus_osm().to_str().unwrap(),
        "--name",
        "campus",
    ]);
    assert_eq!(text, read(&golden("campus.json")));
    let s = Scenario::from_json(text.as_bytes()).unwrap();
    assert_eq!(
        s.graph,
        parse_osm_subset(&std::fs::read(campus_osm()).unwrap()).unwrap()
    );
    assert_eq!(s.plan.path(), &[101, 102, 103, 104, 105]);
}

#[test]
fn run_is_golden_and_matches_library() {
    let config = golden("run_grid10.config.json");
    let text = stdout_of(&["run", "--config", config.to_str().unwrap()]);
    assert_eq!(text, read(&golden("run_grid10.csv")));

    let resolved = ExperimentConfig::load(&config).unwrap().resolve().unwrap();
    let scenario = load_scenario(&resolved.scenario).unwrap();
    let table = run_experiment(&scenario, &resolved.experiment).unwrap();
    assert_eq!(text, table.to_csv());
}

#[test]
fn run_output_ignores_worker_count() {
    let config = golden("run_grid10.config.json");
    let c = config.to_str().unwrap();
    let one = stdout_of(&["run", "--config", c, "--workers", "1"]);
    let three = stdout_of(&["run", "--config", c, "--workers", "3"]);
    assert_eq!(one, three);
}

#[test]
fn error_free_run_never_fails() {
    let scenario = golden("grid2x2.json");
    let text = stdout_of(&[
        "run",
        "--scenario",
        scenario.to_str().unwrap(),
        "--p",
        "0",
        "--q",
        "0",
        "--m",
        "1,2,3",
        "--trials",
        "1",
    ]);
    for line in text.lines().skip(1) {
        assert_eq!(line.split(',').nth(4), Some("0"), "{line}");
    }
}

#[test]
fn run_writes_to_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    let config = golden("run_grid10.config.json");
    let printed = stdout_of(&[
        "run",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(printed.is_empty());
    assert_eq!(read(&out), read(&golden("run_grid10.csv")));
}

#[test]
fn validate_reports_summary() {
    let text = stdout_of(&["validate", golden("grid10.json").to_str().unwrap()]);
    assert!(text.contains("landmarks: 100\n"));
    assert!(text.contains("edges: 180\n"));
    assert!(text.contains("0 -> 99, 18 segments, 900 m"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, body: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    };
    let code = |args: &[&str]| swarmnav(args).status.code();

    let grid = golden("grid2x2.json");
    let grid = grid.to_str().unwrap();
    // Config problems.
    let typo = write("typo.json", r#"{"scenario": "x.json", "trails": 3}"#);
    assert_eq!(code(&["run", "--config", typo.to_str().unwrap()]), Some(2));
    assert_eq!(
        code(&["run", "--scenario", grid, "--ratio", "0.8", "--m", "1"]),
        Some(2)
    );
    assert_eq!(
        code(&[
            "run",
            "--scenario",
            grid,
            "--ratio",
            "0.8",
            "--p",
            "0.1",
            "--m",
            "1",
            "--trials",
            "1"
        ]),
        Some(2)
    );
    assert_eq!(code(&["run", "--definitely-not-a-flag"]), Some(2));
    assert_eq!(code(&["gain-table", "--m-max", "1"]), Some(2));

    // Scenario validation problems.
    let broken = write(
        "broken.json",
        r#"{"name": "x", "vertices": [{"id": 0, "x": 0, "y": 0}], "edges": [], "plan": [0, 1]}"#,
    );
    assert_eq!(code(&["validate", broken.to_str().unwrap()]), Some(3));
    let schema = write(
        "schema.json",
        r#"{"name": "x", "vertices": "nope", "edges": [], "plan": []}"#,
    );
    let out = swarmnav(&["validate", schema.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("vertices"));
    let bad_xml = write("bad.osm", "<osm><node id=\"1\"");
    assert_eq!(code(&["gen", "osm", bad_xml.to_str().unwrap()]), Some(3));

    // I/O problems.
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&["validate", missing.to_str().unwrap()]), Some(4));
    assert_eq!(
        code(&["run", "--config", missing.to_str().unwrap()]),
        Some(4)
    );
    let unwritable = dir.path().join("no/such/dir/out.json");
    assert_eq!(
        code(&[
            "gen",
            "grid",
            "--rows",
            "2",
            "--cols",
            "2",
            "--out",
            unwritable.to_str().unwrap()
        ]),
        Some(4)
    );
}

#[test]
fn help_lists_every_run_flag() {
    let help = stdout_of(&["run", "--help"]);
    for flag in [
        "--config",
        "--scenario",
        "--p",
        "--q",
        "--ratio",
        "--m",
        "--trials",
        "--seed",
        "--retry-cap",
        "--speed",
        "--workers",
        "--tie-policy",
        "--out",
    ] {
        assert!(help.contains(flag), "{flag} missing from help");
    }
}
