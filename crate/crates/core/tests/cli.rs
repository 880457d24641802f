//! End-to-end tests of the `innerdisk` binary.

use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_innerdisk"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn innerdisk")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "exit {:?}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn list_names_the_catalog() {
    let v = stdout_json(&run(&["list"]));
    let names: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap())
        .collect();
    for expected in ["sawtooth", "square_wave", "log_sine", "exp_cos", "pathological_1"] {
        assert!(names.contains(&expected), "missing {expected}");
    }
}

#[test]
fn coeffs_matches_sawtooth_oracle() {
    let v = stdout_json(&run(&["coeffs", "--function", "sawtooth", "--n", "8", "--verify"]));
    let beta1 = v["beta"][0].as_f64().unwrap();
    assert!((beta1 - 2.0).abs() <= 1e-8, "beta_1 = {beta1}");
    let beta2 = v["beta"][1].as_f64().unwrap();
    assert!((beta2 + 1.0).abs() <= 1e-8, "beta_2 = {beta2}");
    assert_eq!(v["bound_report"]["violation"], serde_json::Value::Bool(false));
}

#[test]
fn eval_constant_one_is_one() {
    let v = stdout_json(&run(&[
        "eval",
        "--function",
        "constant_one",
        "--rho",
        "0.5",
        "--theta",
        "0.3",
    ]));
    assert!((v["u"].as_f64().unwrap() - 1.0).abs() <= 1e-10);
    assert!(v["v"].as_f64().unwrap().abs() <= 1e-10);
}

#[test]
fn chain_round_trip_through_files() {
    let base = tmp("chain_base.json");
    let down = tmp("chain_down.json");
    stdout_json(&run(&[
        "coeffs",
        "--function",
        "exp_cos",
        "--n",
        "16",
        "--output",
        base.to_str().unwrap(),
    ]));
    let out = run(&[
        "chain",
        "--coeffs-file",
        base.to_str().unwrap(),
        "--steps",
        "-1",
    ]);
    std::fs::write(&down, &out.stdout).unwrap();
    assert!(out.status.success());
    let back = stdout_json(&run(&[
        "chain",
        "--coeffs-file",
        down.to_str().unwrap(),
        "--steps",
        "1",
    ]));
    // exp_cos has c_k = 1/k!; the walk I then D must restore the
    // proper part exactly (c_0 is projected out by the chain anchor).
    for k in 1..=16usize {
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        let re = back["c_re"][k].as_f64().unwrap();
        let im = back["c_im"][k].as_f64().unwrap();
        assert!((re - 1.0 / fact).abs() <= 1e-8, "k={k} re={re}");
        assert!(im.abs() <= 1e-8, "k={k} im={im}");
    }
    assert_eq!(back["c_re"][0].as_f64().unwrap(), 0.0);
}

#[test]
fn conjugate_negates_sine_coefficients() {
    // Sawtooth is odd: c_k = -i beta_k, so -i c_k = -beta_k and the
    // conjugate's cosine coefficients are the negated originals.
    let orig = stdout_json(&run(&["coeffs", "--function", "sawtooth", "--n", "8"]));
    let conj = stdout_json(&run(&["conjugate", "--function", "sawtooth", "--n", "8"]));
    for k in 0..8 {
        let beta = orig["beta"][k].as_f64().unwrap();
        let alpha_c = conj["alpha"][k].as_f64().unwrap();
        let beta_c = conj["beta"][k].as_f64().unwrap();
        assert!((alpha_c + beta).abs() <= 1e-12, "k={k}");
        assert!(beta_c.abs() <= 1e-12, "k={k}");
    }
}

#[test]
fn recover_emits_csv_and_summary() {
    let csv_path = tmp("recover.csv");
    let v = stdout_json(&run(&[
        "recover",
        "--function",
        "exp_cos",
        "--theta",
        "0.0",
        "--ladder-lo",
        "4",
        "--ladder-hi",
        "12",
        "--threshold",
        "1e-2",
        "--output",
        csv_path.to_str().unwrap(),
    ]));
    let expected = std::f64::consts::E; // e^{cos 0} cos(sin 0)
    let got = v["extrapolated"].as_f64().unwrap();
    assert!((got - expected).abs() <= 1e-6, "extrapolated = {got}");
    assert_eq!(v["converged"], serde_json::Value::Bool(true));

    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("theta,rho,u"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 9); // j = 4..=12
    let first: Vec<&str> = rows[0].split(',').collect();
    assert_eq!(first[0].parse::<f64>().unwrap(), 0.0);
    assert_eq!(first[1].parse::<f64>().unwrap(), 1.0 - 0.5f64.powi(4));
}

#[test]
fn classify_reports_square_wave_jump() {
    let v = stdout_json(&run(&[
        "classify",
        "--function",
        "square_wave",
        "--theta",
        "0.0",
    ]));
    // A jump is integrable but not continuous; the probe must not call
    // it regular, and the report carries the full diagnostics block.
    assert_ne!(v["verdict"].as_str().unwrap(), "regular");
    assert!(v["probe"]["magnitudes"].as_array().unwrap().len() >= 4);
    let smooth = stdout_json(&run(&["classify", "--function", "exp_cos", "--theta", "1.0"]));
    assert_eq!(smooth["verdict"].as_str().unwrap(), "regular");
}

#[test]
fn piecewise_function_file_is_accepted() {
    let path = tmp("step.json");
    std::fs::write(
        &path,
        serde_json::json!({
            "intervals": [
                { "lo": -PI, "hi": 0.0, "coeffs": [-1.0] },
                { "lo": 0.0, "hi": PI, "coeffs": [1.0] }
            ],
            "singular_points": [
                { "theta": 0.0, "kind": "jump", "left": -1.0, "right": 1.0 },
                { "theta": PI, "kind": "jump", "left": 1.0, "right": -1.0 }
            ]
        })
        .to_string(),
    )
    .unwrap();
    let v = stdout_json(&run(&[
        "coeffs",
        "--function-file",
        path.to_str().unwrap(),
        "--n",
        "8",
    ]));
    let beta1 = v["beta"][0].as_f64().unwrap();
    assert!((beta1 - 4.0 / PI).abs() <= 1e-8, "beta_1 = {beta1}");
    assert!(v["alpha"][0].as_f64().unwrap().abs() <= 1e-8);
}

#[test]
fn coefficient_files_round_trip_byte_identical() {
    let first = tmp("rt1.json");
    let second = tmp("rt2.json");
    stdout_json(&run(&[
        "coeffs",
        "--function",
        "log_sine",
        "--n",
        "24",
        "--output",
        first.to_str().unwrap(),
    ]));
    stdout_json(&run(&[
        "coeffs",
        "--coeffs-file",
        first.to_str().unwrap(),
        "--output",
        second.to_str().unwrap(),
    ]));
    assert_eq!(
        std::fs::read(&first).unwrap(),
        std::fs::read(&second).unwrap(),
        "reserialized coefficient file differs"
    );
}

#[test]
fn repeated_runs_are_deterministic() {
    let a = run(&["coeffs", "--function", "abs_theta", "--n", "32"]);
    let b = run(&["coeffs", "--function", "abs_theta", "--n", "32"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn config_file_overrides_defaults() {
    let cfg = tmp("settings.cfg");
    std::fs::write(&cfg, "n = 4\n# comment\nladder_hi = 6\n").unwrap();
    let v = stdout_json(&run(&[
        "--config",
        cfg.to_str().unwrap(),
        "coeffs",
        "--function",
        "sawtooth",
    ]));
    assert_eq!(v["alpha"].as_array().unwrap().len(), 4);
    // Flags still win over the config file.
    let v2 = stdout_json(&run(&[
        "--config",
        cfg.to_str().unwrap(),
        "coeffs",
        "--function",
        "sawtooth",
        "--n",
        "6",
    ]));
    assert_eq!(v2["alpha"].as_array().unwrap().len(), 6);
}

#[test]
fn error_paths_use_distinct_exit_codes() {
    // Domain errors: exit 1 with a JSON error object on stdout.
    let unknown = run(&["coeffs", "--function", "no_such_entry"]);
    assert_eq!(unknown.status.code(), Some(1));
    let obj: serde_json::Value = serde_json::from_slice(&unknown.stdout).unwrap();
    assert!(obj["error"].as_str().unwrap().contains("no_such_entry"));

    let bad_rho = run(&["eval", "--function", "exp_cos", "--rho", "1.5", "--theta", "0"]);
    assert_eq!(bad_rho.status.code(), Some(1));

    let two_sources = run(&[
        "coeffs",
        "--function",
        "exp_cos",
        "--coeffs-file",
        "whatever.json",
    ]);
    assert_eq!(two_sources.status.code(), Some(1));

    let offset = run(&["chain", "--function", "exp_cos", "--steps", "9"]);
    assert_eq!(offset.status.code(), Some(1));

    // Usage errors: clap exits 2.
    let usage = run(&["eval", "--function", "exp_cos"]);
    assert_eq!(usage.status.code(), Some(2));
    let no_cmd = run(&[]);
    assert_eq!(no_cmd.status.code(), Some(2));
}
