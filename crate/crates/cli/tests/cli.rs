use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn decoh(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_decoh"))
        .args(args)
        .current_dir(dir)
        .env_remove("DECOH_OUTPUT_DIR")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn summary(out: &Output) -> Value {
    json_of(out)["runs"][0]["summary"].clone()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn ratio_reports_the_macroscopic_value() {
    let dir = tempfile::tempdir().unwrap();
    let out = decoh(dir.path(), &["ratio", "--mass-g", "1", "--temp-K", "300", "--dx-cm", "1", "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let ratio = summary(&out)["ratio"].as_f64().unwrap();
    assert!((1e40..=1e41).contains(&ratio), "{ratio}");
    assert!(summary(&out)["thermalWavelengthCm"].as_f64().unwrap() > 0.0);
}

#[test]
fn table_has_fifteen_rows_within_three_decades() {
    let dir = tempfile::tempdir().unwrap();
    let out = decoh(dir.path(), &["table1"]);
    assert_eq!(out.status.code(), Some(0));
    let mut reader = csv::Reader::from_path(dir.path().join("table1_presets.csv")).unwrap();
    let headers = reader.headers().unwrap().clone();
    assert_eq!(
        headers.iter().collect::<Vec<_>>(),
        ["name", "size", "k", "flux", "sigma_eff", "lambda_computed", "lambda_paper", "log10_error"]
    );
    let rows: Vec<_> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 15);
    for r in rows {
        assert!(r[7].parse::<f64>().unwrap().abs() <= 3.0, "{r:?}");
    }
}

#[test]
fn zeno_matches_the_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let t = std::f64::consts::FRAC_PI_2;
    let out = decoh(dir.path(), &["zeno", "--levels", "2", "--V", "1", "--t", &t.to_string(), "--N", "10", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let s = summary(&out);
    let survival = s["survival"].as_f64().unwrap();
    let exact = (t / 10.0).cos().powi(20);
    assert!((survival - exact).abs() < 1e-10);
    assert!((survival - 0.7806).abs() < 1e-4);
}

#[test]
fn unknown_key_is_a_config_error_naming_the_nearest_key() {
    let dir = tempfile::tempdir().unwrap();
    let out = decoh(dir.path(), &["evolve", "--lamda", "0.1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.contains("\"lamda\"") && err.contains("\"lambda\""), "{err}");
    assert!(fs::read_dir(dir.path()).unwrap().next().is_none(), "nothing is written");
}

#[test]
fn check_lists_diagnostics_without_running() {
    let dir = tempfile::tempdir().unwrap();
    let out = decoh(dir.path(), &["evolve", "--dt", "0.5", "--check", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    let ds = json_of(&out)["diagnostics"].as_array().unwrap().clone();
    assert!(ds.iter().any(|d| d.as_str().unwrap().contains("0.25·m·dx²")), "{ds:?}");

    let ok = decoh(dir.path(), &["evolve", "--check", "--json"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json_of(&ok)["diagnostics"], serde_json::json!([]));
    assert!(fs::read_dir(dir.path()).unwrap().next().is_none());
}

#[test]
fn domain_escape_exits_with_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = decoh(
        dir.path(),
        &[
            "evolve", "--state", "gaussian", "--p0", "4", "--x-min", "-6", "--x-max", "6", "--points", "64", "--steps",
            "3000", "--lambda", "0",
        ],
    );
    assert_eq!(out.status.code(), Some(3));
    let err = stderr(&out);
    assert_eq!(err.lines().count(), 1);
    assert!(err.contains("domain escape"), "{err}");
}

#[test]
fn config_file_flags_and_output_directory() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("run.cfg"), "# ratio scenario\ncommand = ratio\nmass-g = 2\ntemp-K = 300\n").unwrap();
    let out_dir = dir.path().join("results");
    let out = Command::new(env!("CARGO_BIN_EXE_decoh"))
        .args(["--config", "run.cfg", "--mass-g", "1", "--json"])
        .current_dir(dir.path())
        .env("DECOH_OUTPUT_DIR", &out_dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let meta: Value = serde_json::from_str(&fs::read_to_string(out_dir.join("ratio_meta.json")).unwrap()).unwrap();
    assert_eq!(meta["runs"][0]["parameters"]["mass-g"], 1.0);
    assert_eq!(meta["runs"][0]["parameters"]["dx-cm"], 1.0);
    assert_eq!(meta["configFile"], "run.cfg");
    assert!(meta["tolerances"]["GRID_BOUNDARY"].as_f64().is_some());
    assert!(meta["versions"]["decoherence"].is_string());
    assert!(meta["workers"].as_u64().unwrap() >= 1);
    assert!(out_dir.join("ratio_ratio.csv").exists());
}

#[test]
fn sweeps_are_deterministic_across_worker_counts() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args =
        |w: &'static str| vec!["zenotoy", "--E", "3", "--sweep", "gamma=0:6:4", "--workers", w, "--output", "out/toy"];
    assert_eq!(decoh(a.path(), &args("1")).status.code(), Some(0));
    assert_eq!(decoh(b.path(), &args("4")).status.code(), Some(0));
    let mut names: Vec<_> = fs::read_dir(a.path().join("out")).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    let csvs: Vec<_> = names.iter().filter(|n| n.to_string_lossy().ends_with(".csv")).collect();
    assert_eq!(csvs.len(), 4 * 2 + 2);
    for name in csvs {
        let x = fs::read(a.path().join("out").join(name)).unwrap();
        let y = fs::read(b.path().join("out").join(name)).unwrap();
        assert_eq!(x, y, "{name:?}");
    }
    let scan = fs::read_to_string(a.path().join("out/toy_scan.csv")).unwrap();
    assert_eq!(scan.lines().next().unwrap(), "gamma,tResolve,earlySlope,middleSlope,maxP2,regimeLabel");
    assert_eq!(scan.lines().count(), 5);
    assert!(a.path().join("out/toy_gamma-2_trace.csv").exists());
}

#[test]
fn seed_controls_random_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let run = |seed: &str, out: &str| {
        let o = decoh(
            dir.path(),
            &["schmidt", "--dim-a", "3", "--dim-b", "3", "--trials", "4", "--seed", seed, "--output", out],
        );
        assert_eq!(o.status.code(), Some(0));
        fs::read(dir.path().join(format!("{out}_weights.csv"))).unwrap()
    };
    assert_eq!(run("5", "a"), run("5", "b"));
    assert_ne!(run("5", "c"), run("6", "d"));
}

#[test]
fn every_command_runs_with_small_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["schmidt", "--env-overlap", "0"],
        &["localize", "--preset", "photons-300k"],
        &["localize", "--k-per-cm", "1e5", "--flux-per-cm2-s", "1e10", "--sigma-cm2", "1e-8", "--dx-cm", "1e-4"],
        &["table1"],
        &["evolve", "--points", "48", "--steps", "50", "--record-every", "25"],
        &["cl", "--points", "48", "--steps", "50", "--record-every", "25"],
        &["ratio"],
        &["zeno", "--levels", "3", "--E", "0.5", "--N", "100", "--decay-rate", "0.3"],
        &["zenotoy", "--gamma", "2"],
        &["chiral", "--rate", "5"],
        &["cat", "--alpha-re", "1", "--alpha-im", "1"],
        &["gravity", "--L-cm", "2", "--dg-cm-s2", "1e-3"],
    ];
    for args in cases {
        let out = decoh(dir.path(), args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stderr(&out));
        let name = args[0];
        assert!(dir.path().join(format!("{name}_meta.json")).exists(), "{args:?}");
    }
}

#[test]
fn gravity_width_is_a_millionth_of_g() {
    let dir = tempfile::tempdir().unwrap();
    let out = decoh(dir.path(), &["gravity", "--json"]);
    let rel = summary(&out)["dgRel"].as_f64().unwrap();
    assert!((1e-7..=1e-5).contains(&rel), "{rel}");
    let csv = fs::read_to_string(dir.path().join("gravity_gravity.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "n,L,m,T,t,Gamma,dgAbs,dgRel");
}

#[test]
fn empty_invocation_prints_usage_and_fails() {
    let dir = tempfile::tempdir().unwrap();
    let out = decoh(dir.path(), &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("usage: decoh"));
    let help = decoh(dir.path(), &["help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&help.stdout).contains("zenotoy"));
}

#[test]
fn sweep_table_has_one_row_per_point() {
    let dir = tempfile::tempdir().unwrap();
    let out = decoh(
        dir.path(),
        &["evolve", "--points", "48", "--steps", "50", "--record-every", "50", "--sweep", "lambda=0:0.1:3"],
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let mut reader = csv::Reader::from_path(dir.path().join("evolve_sweep.csv")).unwrap();
    let headers = reader.headers().unwrap().clone();
    assert_eq!(headers.iter().take(3).collect::<Vec<_>>(), ["run", "lambda", "status"]);
    assert_eq!(headers.iter().filter(|h| *h == "lambda").count(), 1);
    let steps = headers.iter().position(|h| h == "steps").unwrap();
    let rows: Vec<_> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 3);
    for (i, r) in rows.iter().enumerate() {
        assert_eq!(r[0], i.to_string());
        assert_eq!(&r[2], "ok");
        assert_eq!(&r[steps], "50");
    }
    assert_eq!(&rows[1][1], "0.05");
}
