use std::path::Path;
use std::process::{Command, Output};

fn wf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wf")).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const CONFIG: &str = r#"{
  "catalog": [{ "name": "C5", "degree": 5, "generators": ["(1 2 3 4 5)"] }],
  "towers": [{ "name": "a5", "groups": ["A5", "A5"] }, { "name": "c5", "groups": ["C5", "A5"] }],
  "runs": [{ "name": "special", "tower": "a5", "scheme": "special" }]
}"#;

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "wf.json", CONFIG);
    let pass = wf(&["--config", &config, "verify"]);
    assert_eq!(pass.status.code(), Some(0), "{}", String::from_utf8_lossy(&pass.stderr));
    assert!(String::from_utf8_lossy(&pass.stdout).contains("46656000000"));
    assert_eq!(wf(&["--config", &config, "hypotheses", "--tower", "c5"]).status.code(), Some(1));
    let missing = wf(&["--config", &config, "build", "--tower", "nope"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("unknown tower 'nope'"));
    let bad = write(dir.path(), "bad.json", r#"{"towers":[{"name":"t","groups":["Q8"]}]}"#);
    let out = wf(&["--config", &bad, "build"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/towers/0/groups/0"));
    assert_eq!(wf(&["gens", "--tower", "x", "--scheme", "nope"]).status.code(), Some(2));
}

#[test]
fn json_reports_and_generator_files() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(dir.path(), "wf.json", CONFIG);
    let json = dir.path().join("report.json");
    let out = dir.path().join("gens");
    let status = wf(&[
        "--config",
        &config,
        "--json",
        json.to_str().unwrap(),
        "gens",
        "--tower",
        "a5",
        "--scheme",
        "threegen",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(status.status.code(), Some(0));
    let report: wreathgen::Report = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report.command, "gens");
    let perms = std::fs::read_to_string(out.join("a5.threegen.perms")).unwrap();
    assert_eq!(perms.lines().count(), 3);
    assert!(out.join("a5.threegen.json").exists());
}

#[test]
fn bound_cache_persists() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("phi.txt");
    let args = ["bound", "--a", "A5", "--copies", "20", "--b", "A5", "--cache", cache.to_str().unwrap()];
    let first = wf(&args);
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stderr));
    assert!(std::fs::read_to_string(&cache).unwrap().lines().any(|l| l == "A5 2 2280"));
    let second = wf(&args);
    assert_eq!(first.stdout.len(), second.stdout.len());
}
