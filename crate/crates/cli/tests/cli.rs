use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hodgeworks")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json report")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn p1_model_passes_mhc() {
    let o = run(&["check", path(&fixture("p1.json")), "--mode", "mhc"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("MH2  pass"));
}

#[test]
fn shifted_hodge_filtration_fails_mh2() {
    let o = run(&["--format", "json", "check", path(&fixture("mh2-control.json"))]);
    assert_eq!(o.status.code(), Some(1));
    let r = json(&o);
    let failing: Vec<&str> =
        r["verdicts"].as_array().unwrap().iter().filter(|v| v["pass"] == false).map(|v| v["axiom"].as_str().unwrap()).collect();
    assert_eq!(failing, vec!["MH2"]);
    let w = &r["verdicts"][2]["witnesses"][0];
    assert_eq!(w["degree"], 2);
}

#[test]
fn decalage_of_passing_mhc_passes_ahc() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("dec.json");
    let o = run(&["decalage", path(&fixture("p1.json")), "--filtration", "W", "-o", path(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["check", path(&out), "--mode", "ahc"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), std::fs::read_to_string(fixture("p1-ahc.json")).unwrap());
}

#[test]
fn shift_then_decalage_is_canonical_identity() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("k.json");
    std::fs::write(
        &input,
        r#"{"format": "hodgeworks-complex v1", "field": "rational",
            "degrees": {"0": 2, "1": 2, "2": 1},
            "differential": {"0": [[1, 0], [0, 0]], "1": [[0, 1]]},
            "filtrations": {"F": {"direction": "decreasing",
                "levels": {"0": {"0": [[1, 0], [0, 1]], "1": [[1, 0], [0, 1]], "2": [[1]]}, "1": {"0": [[1, 1]], "1": [[1, 0]]}}}}}"#,
    )
    .unwrap();
    let canon = dir.path().join("canon.json");
    // décalage of the shift is the input itself, written canonically
    let shifted = dir.path().join("s.json");
    assert!(run(&["decalage", path(&input), "--direction", "shift", "-o", path(&shifted)]).status.success());
    let o = run(&["decalage", path(&shifted), "--direction", "dec"]);
    assert!(o.status.success());
    let back = stdout(&o);
    let s2 = dir.path().join("s2.json");
    std::fs::write(&canon, &back).unwrap();
    assert!(run(&["decalage", path(&canon), "--direction", "shift", "-o", path(&s2)]).status.success());
    let again = stdout(&run(&["decalage", path(&s2), "--direction", "dec*"]));
    assert_eq!(back, again);
    let v = run(&["verify", path(&canon), path(&shifted)]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
}

#[test]
fn pages_of_acyclic_pair() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("a.json");
    std::fs::write(&input, r#"{"degrees": {"0": 1, "1": 1}, "differential": {"0": [[1]]}, "filtrations": {"G": {"direction": "decreasing"}}}"#)
        .unwrap();
    let o = run(&["--format", "json", "pages", path(&input), "--stage", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    let rows = r["tables"][0]["rows"].as_array().unwrap();
    assert!(rows.iter().all(|row| row[0] == 0), "only E_0 is nonzero: {rows:?}");
}

#[test]
fn ext_dimensions() {
    let o = run(&["--format", "json", "ext", path(&fixture("q0.json")), path(&fixture("q0.json")), "1"]);
    assert_eq!(json(&o)["data"]["dim"], 0);
    let o = run(&["--format", "json", "ext", path(&fixture("q0.json")), path(&fixture("q1.json")), "1"]);
    assert_eq!(json(&o)["data"]["dim"], 1);
    let o = run(&["--format", "json", "ext", path(&fixture("q0.json")), path(&fixture("q1.json")), "2"]);
    assert_eq!(json(&o)["data"]["dim"], 0);
}

#[test]
fn homset_totals() {
    let q = fixture("q0-deg0.json");
    let o = run(&["--format", "json", "homset", path(&q), path(&q)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["data"]["total"], 1);
    let o = run(&["--format", "json", "homset", path(&fixture("q0-deg1.json")), path(&fixture("q1-deg0.json"))]);
    assert_eq!(json(&o)["data"], serde_json::json!({"total": 1, "direct": 1}));
}

#[test]
fn minimal_model_replays() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.json");
    let o = run(&["minimal", path(&fixture("two-term.json")), "-o", path(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = run(&["verify", path(&out)]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
    // tampering with the retraction breaks the replay
    let text = std::fs::read_to_string(&out).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    doc["rho"]["components"][0] = serde_json::json!({});
    std::fs::write(&out, serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(run(&["verify", path(&out)]).status.code(), Some(1));
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"degrees\": {\"0\": 1, \"1\": 1}, \"differential\": {\"0\": [[1, 2]]}}").unwrap();
    let o = run(&["pages", path(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("$.differential.0"));
    assert_eq!(run(&["check", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(run(&["homset", path(&fixture("p1.json")), path(&fixture("p1.json"))]).status.code(), Some(2));
}

#[test]
fn seeded_corpus_verifies_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["--format", "json", "verify", "--seed", "7", "--count", "5", "--emit", path(dir.path())]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let files: Vec<PathBuf> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 15);
    let args: Vec<&str> = ["verify"].into_iter().chain(files.iter().map(|p| path(p))).collect();
    assert_eq!(run(&args).status.code(), Some(0));
    let again = run(&["--format", "json", "verify", "--seed", "7", "--count", "5"]);
    assert_eq!(json(&o)["tables"], json(&again)["tables"]);
}
