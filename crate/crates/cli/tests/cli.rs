use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn repo() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn wcurv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wcurv")).args(args).env_remove("WCURV_THREADS").output().unwrap()
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)))
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn certify_gaussian() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "g.json", r#"{"gallery": "gaussian", "lambda": 1}"#);
    let out = wcurv(&["certify", "--input", &cfg]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["status"], "certified");
    assert!((r["result"]["global_min"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(r["seed"], 0);
    // the resolved config carries the descriptors
    assert_eq!(r["config"]["metric"]["kind"], "flat");
}

#[test]
fn gauss_bonnet_round_sphere() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "s.json",
        r#"{"metric": {"kind": "surface_of_revolution",
                       "phi": {"family": "sin", "domain": [0, 3.141592653589793]},
                       "closure": "sphere_like"}}"#,
    );
    let out = wcurv(&["gauss-bonnet", "--input", &cfg]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = report(&out);
    assert!(r["result"]["residual"].as_f64().unwrap() <= 1e-8);
    assert!((r["result"]["expected"].as_f64().unwrap() - 4.0 * std::f64::consts::PI).abs() < 1e-12);
}

#[test]
fn strong_synthesis_on_the_sphere_is_infeasible() {
    let cfg = repo().join("configs/synthesize-strong-sphere.json");
    let out = wcurv(&["synthesize", "--input", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    assert_eq!(r["status"], "infeasible");
    let violations = r["result"]["status"]["diagnostics"]["violations"].as_array().unwrap();
    let near_equator = violations
        .iter()
        .any(|v| (v["r"].as_f64().unwrap() - std::f64::consts::FRAC_PI_2).abs() < std::f64::consts::PI / 128.0);
    assert!(near_equator, "{violations:?}");
}

#[test]
fn input_errors_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "bad.json", r#"{"gallery": "gaussian", "lamda": 1}"#);
    let out = wcurv(&["certify", "--input", &cfg]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("`lamda`"), "{}", stderr(&out));

    let cfg = write_config(
        dir.path(),
        "nested.json",
        r#"{"metric": {"kind": "single_warped", "phi": {"family": "sin", "domain": [0, 1], "ampl": 2},
            "fiber": {"dim": 2, "kappa": 1}, "closure": "open_line"}}"#,
    );
    let out = wcurv(&["certify", "--input", &cfg]);
    assert_eq!(out.status.code(), Some(1));
    let msg = stderr(&out);
    assert!(msg.contains("metric") && msg.contains("ampl"), "{msg}");

    let out = wcurv(&["certify"]);
    assert_eq!(out.status.code(), Some(1));
    let out = wcurv(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
    let out = wcurv(&["gallery", "--name", "cusp(B=2)"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("`B`"));
}

fn without_meta(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("meta");
    v
}

#[test]
fn reports_are_deterministic() {
    let cfg = repo().join("configs/cheeger-doubly-warped.json");
    let run = || report(&wcurv(&["cheeger", "--input", cfg.to_str().unwrap(), "--seed", "5"]));
    let (a, b) = (run(), run());
    assert_eq!(a["seed"], 5);
    assert_eq!(serde_json::to_string(&without_meta(a)).unwrap(), serde_json::to_string(&without_meta(b)).unwrap());
}

#[test]
fn csv_curves() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("cusp");
    let out = wcurv(&["gallery", "--name", "cusp(A=3)", "--format", "csv", "--grid", "32", "--output", prefix.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let csv = fs::read_to_string(dir.path().join("cusp.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), r#"r,"(dr,Y)","(Y,dr)","(Y,Z)",min"#);
    assert_eq!(lines.count(), 32);
    let json: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("cusp.json")).unwrap()).unwrap();
    assert_eq!(json["config"]["grid"], 32);

    let cfg = repo().join("configs/gauss-bonnet-round-sphere.json");
    let out = wcurv(&["gauss-bonnet", "--input", cfg.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn flags_must_apply() {
    let cfg = repo().join("configs/obstruct-round-sphere.json");
    let out = wcurv(&["obstruct", "--input", cfg.to_str().unwrap(), "--grid", "10"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("--grid"));
}

#[test]
fn gallery_configs_are_current() {
    let dir = repo().join("configs/gallery");
    for name in wcurv::gallery::NAMES {
        let out = wcurv(&["gallery", "--name", name, "--emit-config"]);
        assert_eq!(out.status.code(), Some(0));
        let path = dir.join(format!("{name}.json"));
        let stored = fs::read(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        assert_eq!(stored, out.stdout, "{} is stale; regenerate with --emit-config", path.display());
        let out = wcurv(&["certify", "--input", path.to_str().unwrap(), "--grid", "128"]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", stderr(&out));
    }
}

#[test]
fn example_configs_run() {
    let cases = [
        ("area-bound", "area-bound-rescaled-sphere", 0),
        ("average", "average-two-dim", 0),
        ("cheeger", "cheeger-doubly-warped", 0),
        ("gauss-bonnet", "gauss-bonnet-round-sphere", 0),
        ("index-form", "index-form-hemisphere", 0),
        ("obstruct", "obstruct-round-sphere", 0),
        ("oneill", "oneill-round-s3", 0),
        ("polytope", "polytope-half-sum", 0),
        ("polytope", "polytope-rotsym-scale", 0),
        ("synthesize", "synthesize-hemisphere", 0),
        ("synthesize", "synthesize-strong-sphere", 2),
    ];
    for (command, file, code) in cases {
        let path = repo().join(format!("configs/{file}.json"));
        let out = wcurv(&[command, "--input", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(code), "{file}: {}", stderr(&out));
        let r = report(&out);
        assert_eq!(r["command"], command);
        assert!(r["config"].is_object());
    }
}

#[test]
fn thread_cap() {
    let cfg = repo().join("configs/gallery/gaussian.json");
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_wcurv"))
            .args(["certify", "--input", cfg.to_str().unwrap()])
            .env("WCURV_THREADS", threads)
            .output()
            .unwrap()
    };
    assert_eq!(run("1").status.code(), Some(0));
    let bad = run("many");
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("WCURV_THREADS"));
}
