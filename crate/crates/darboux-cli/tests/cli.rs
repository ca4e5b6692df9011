use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn darboux(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_darboux"))
        .args(args)
        .env("DARBOUX_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stderr)))
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("darboux-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write(name: &str, body: &str) -> String {
    let p = tmp(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn airy_one_point_operator() {
    let o = darboux(&["pair", "--example", "9.9", "--a", "1", "--lambda", "0", "--format", "text"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("P = dx^2 + (-1/(x - 1))*dx + (-x^2 + x + 1)/(x - 1)"));
}

#[test]
fn empty_spec_gives_identity_pair() {
    let spec = write(
        "empty.json",
        r#"{"schema":"darboux/conditions/v1","family":{"kind":"bessel","beta":["1/3","2/3"]},"conditions":[]}"#,
    );
    let o = darboux(&["pair", "--spec", &spec]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["p"], serde_json::json!([{"num": ["1"], "den": ["1"]}]));
    assert_eq!(v["l"], v["q"]);
    assert_eq!(v["g"], serde_json::json!(["1"]));
}

#[test]
fn spectral_orders_of_two_block_example() {
    let v = json(&darboux(&["pair", "--example", "9.3"]));
    let orders: Vec<u64> = v["spectral"].as_array().unwrap().iter().map(|e| e["order"].as_u64().unwrap()).collect();
    assert_eq!(orders, vec![4, 6, 8, 10]);

    let o = darboux(&["verify", "--example", "9.3", "--rank-only"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["rank"], 2);
    assert_eq!(v["b_rank"], 2);
    assert_eq!(v["checks"].as_array().unwrap().len(), 1);
}

#[test]
fn pair_json_round_trips_and_is_deterministic() {
    let first = tmp("pair98.json");
    let o = darboux(&["pair", "--example", "9.8", "--out", first.to_str().unwrap()]);
    assert!(o.status.success());
    let again = darboux(&["pair", "--example", "9.8"]);
    let saved = std::fs::read_to_string(&first).unwrap();
    assert_eq!(stdout(&again), saved);

    // reload the emitted pair: re-emits byte-identically and re-verifies
    let reemit = darboux(&["pair", "--spec", first.to_str().unwrap()]);
    assert_eq!(stdout(&reemit), saved);
    let o = darboux(&["verify", "--spec", first.to_str().unwrap(), "--format", "text"]);
    assert!(o.status.success(), "{}", stdout(&o));
    for name in ["factorization", "symbolic", "series", "rank"] {
        assert!(stdout(&o).contains(&format!("PASS {name}")));
    }
}

#[test]
fn corrupted_pair_is_rejected() {
    let v = json(&darboux(&["pair", "--example", "9.5"]));
    let mut bad = v.clone();
    bad["lambda"][0]["num"][0] = Value::String("7".into());
    let path = write("bad.json", &serde_json::to_string(&bad).unwrap());
    let o = darboux(&["verify", "--spec", &path]);
    assert_eq!(o.status.code(), Some(3));
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["ok"], false);
    let failed: Vec<&Value> = report["checks"].as_array().unwrap().iter().filter(|c| c["status"] == "fail").collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().any(|c| c["detail"].as_str().unwrap().contains("identity")));
    assert!(String::from_utf8_lossy(&o.stderr).contains("VerificationFailed"));
}

#[test]
fn b_involution_reports_mu_laws() {
    let o = darboux(&["involute", "b", "--example", "9.8", "--nu", "1/3", "--a", "2", "--lambda", "1"]);
    assert!(o.status.success());
    let v = json(&o);
    // μ² = (a + 1 + a²ν(1−ν))/(a²λ²) = (3 + 8/9)/4
    assert_eq!(v["law"]["mu_n"], "35/36");
    assert_eq!(v["law"]["holds"], true);
    assert_eq!(v["law"]["dual_b"], "-2/3");

    let v = json(&darboux(&["involute", "b", "--example", "9.10"]));
    // μ³ + λ³ = −(1 + a²α₂)/a³ with a = 3, α₂ = 1/2
    assert_eq!(v["law"]["lhs"], "-11/54");
    assert_eq!(v["law"]["rhs"], "-11/54");
}

#[test]
fn a_involution_twice_is_byte_identical() {
    let p1 = tmp("a1.json");
    let p2 = tmp("a2.json");
    let p3 = tmp("a3.json");
    let s = |p: &PathBuf| p.to_str().unwrap().to_string();
    assert!(darboux(&["involute", "a", "--example", "9.5", "--out", &s(&p1)]).status.success());
    assert!(darboux(&["involute", "a", "--spec", &s(&p1), "--out", &s(&p2)]).status.success());
    assert!(darboux(&["involute", "a", "--spec", &s(&p2), "--out", &s(&p3)]).status.success());
    assert_eq!(std::fs::read(&p1).unwrap(), std::fs::read(&p3).unwrap());
    assert_ne!(std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
}

#[test]
fn input_errors_exit_2() {
    let o = darboux(&["pair", "--example", "9.99"]);
    assert_eq!(o.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "Input");

    let spec = write(
        "extra.json",
        r#"{"schema":"darboux/conditions/v1","family":{"kind":"bessel","beta":["0"]},"conditions":[],"verbose":true}"#,
    );
    assert_eq!(darboux(&["pair", "--spec", &spec]).status.code(), Some(2));

    // dependent kernel: the same condition twice
    let spec = write(
        "dep.json",
        r#"{"schema":"darboux/conditions/v1","family":{"kind":"bessel","beta":["1/3","2/3"]},
            "conditions":[{"type":"zero","terms":[{"i":0,"k":0,"b":"1"}]},{"type":"zero","terms":[{"i":0,"k":0,"b":"2"}]}]}"#,
    );
    let o = darboux(&["pair", "--spec", &spec]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());

    assert_eq!(darboux(&["verify", "--example", "9.5", "--K", "4"]).status.code(), Some(2));
}

#[test]
fn job_documents_set_defaults() {
    let job = write("job.json", r#"{"schema":"darboux/job/v1","example":"9.5","format":"text","checks":{"series":false}}"#);
    let o = darboux(&["verify", "--spec", &job]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("PASS symbolic"));
    assert!(!out.contains("series"));

    let spec = write(
        "job-input.json",
        r#"{"schema":"darboux/conditions/v1","family":{"kind":"airy","n":2,"alpha0":"1","alpha":[]},
            "conditions":[{"type":"point","lambda":"0","coeffs":["1","1"]}]}"#,
    );
    let job = write(
        "job2.json",
        &format!(r#"{{"schema":"darboux/job/v1","input":"{}","max_order":6}}"#, spec.rsplit('/').next().unwrap()),
    );
    let v = json(&darboux(&["pair", "--spec", &job]));
    assert_eq!(v["spectral"].as_array().unwrap().len(), 2);

    let bad = write("job3.json", r#"{"schema":"darboux/job/v1","example":"9.5","threads":4}"#);
    assert_eq!(darboux(&["verify", "--spec", &bad]).status.code(), Some(2));
}

#[test]
fn latex_and_spectral_outputs() {
    let o = darboux(&["pair", "--example", "9.9", "--format", "latex"]);
    let tex = stdout(&o);
    assert!(tex.starts_with("\\begin{aligned}"));
    assert!(tex.contains("L &= \\partial_x^{4}"));
    assert!(tex.contains("\\Theta(z) &= z^{4} - 2z^{2} + 1"));

    let v = json(&darboux(&["spectral", "--example", "9.4"]));
    assert_eq!(v["schema"], "darboux/spectral/v1");
    // u = t³ + λt² with λ = 1
    assert_eq!(v["minimal"]["u"], serde_json::json!(["0", "0", "1", "1"]));
    assert_eq!(v["rank"], 2);
}
