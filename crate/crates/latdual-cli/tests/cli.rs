//! End-to-end tests of the binary: exit codes, stdout content, and
//! byte-stable JSON against the golden files.

use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latdual"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn gen_fixture(dir: &Path, name: &str) -> String {
    let path = dir.join(format!("{name}.json"));
    let out = run(&["gen", "--fixture", name, "-o", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "gen {name} failed: {:?}", out);
    path.to_str().unwrap().to_string()
}

#[test]
fn dualize_matches_golden_bytes() {
    let dir = TempDir::new().unwrap();
    let m3 = gen_fixture(dir.path(), "M3");
    let out = run(&["dualize", &m3]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        include_str!("../../latdual-core/tests/golden/dual_m3.json")
    );
}

#[test]
fn validate_reports_structure() {
    let dir = TempDir::new().unwrap();
    let m3 = gen_fixture(dir.path(), "M3");
    let out = run(&["validate", &m3]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("name: M3"));
    assert!(text.contains("elements: 5"));
    assert!(text.contains("distributive: no"));
}

#[test]
fn validate_rejects_garbage_with_exit_2() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("garbage.json");
    std::fs::write(&path, "garbage{").unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(err.contains("invalid input"), "stderr: {err}");
}

#[test]
fn validate_flags_non_lattice_with_exit_1() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("notlat.json");
    std::fs::write(
        &path,
        r#"{"covers":[[0,1],[0,2],[1,3],[2,3],[1,4],[2,4]],"labels":["0","a","b","x","y"],"n":5,"name":"bad"}"#,
    )
    .unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(!stdout(&out).is_empty(), "witness goes to stdout");
}

#[test]
fn check_tirs_accepts_a_dual_and_rejects_a_clique() {
    let dir = TempDir::new().unwrap();
    let m3 = gen_fixture(dir.path(), "M3");
    let dual = dir.path().join("dual.json");
    let out = run(&["dualize", &m3, "-o", dual.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let out = run(&["check-tirs", dual.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("TiRS: yes"));

    let clique = dir.path().join("k2.json");
    std::fs::write(
        &clique,
        r#"{"edges":[[0,0],[0,1],[1,0],[1,1]],"name":"K2","vertices":[{"f_min":0,"i_max":0,"id":0,"label":"u"},{"f_min":1,"i_max":1,"id":1,"label":"v"}]}"#,
    )
    .unwrap();
    let out = run(&["check-tirs", clique.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("S: no"), "stdout: {text}");
    assert!(text.contains("witness"), "stdout: {text}");
}

#[test]
fn check_sd_on_m3_fails_everywhere_and_methods_agree() {
    let dir = TempDir::new().unwrap();
    let m3 = gen_fixture(dir.path(), "M3");
    let out = run(&["check-sd", &m3, "--method", "all"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert_eq!(text.matches("fails").count(), 9, "stdout: {text}");
    assert!(text.contains("methods agree: yes"));

    let out = run(&["check-sd", &m3, "--method", "all", "--json"]);
    assert_eq!(code(&out), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["agree"], serde_json::json!(true));
    assert_eq!(v["reports"].as_array().unwrap().len(), 9);
    assert!(v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["verdict"] == serde_json::json!(false)));
}

#[test]
fn check_sd_passes_on_a_boolean_lattice() {
    let dir = TempDir::new().unwrap();
    let b3 = gen_fixture(dir.path(), "B3");
    let out = run(&["check-sd", &b3]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).matches("holds").count(), 9);
}

#[test]
fn roundtrip_passes_on_m3() {
    let dir = TempDir::new().unwrap();
    let m3 = gen_fixture(dir.path(), "M3");
    let out = run(&["roundtrip", &m3]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("first round trip"), "stdout: {text}");
    assert!(text.contains("second round trip"), "stdout: {text}");
}

#[test]
fn forbidden_finds_m3_and_clears_b3() {
    let dir = TempDir::new().unwrap();
    let m3 = gen_fixture(dir.path(), "M3");
    let out = run(&["forbidden", &m3]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("M3 at ["));

    let b3 = gen_fixture(dir.path(), "B3");
    let out = run(&["forbidden", &b3]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).matches("none").count(), 2);

    let out = run(&["forbidden", &m3, "--pattern", "N5"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("N5: none"));
}

#[test]
fn classify_reports_case_1_on_m3() {
    let dir = TempDir::new().unwrap();
    let m3 = gen_fixture(dir.path(), "M3");
    let out = run(&["classify", &m3, "--pair", "ba", "ca"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["case"], serde_json::json!(1));
    assert_eq!(v["pattern"], serde_json::json!("M3"));
}

#[test]
fn classify_reports_the_rocket_mismatch_with_exit_1() {
    let dir = TempDir::new().unwrap();
    let r2 = dir.path().join("r2.json");
    let out = run(&[
        "gen",
        "--family",
        "rocket",
        "--k",
        "2",
        "-o",
        r2.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let out = run(&["classify", r2.to_str().unwrap(), "--pair", "a1bw", "c0bw"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("classifier mismatch"), "stdout: {text}");
    assert!(text.contains("case 3"), "stdout: {text}");
}

#[test]
fn classify_rejects_an_unknown_vertex_with_exit_2() {
    let dir = TempDir::new().unwrap();
    let m3 = gen_fixture(dir.path(), "M3");
    let out = run(&["classify", &m3, "--pair", "ba", "nope"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn gen_covers_families_chains_and_cubes() {
    let for_name = |args: &[&str]| -> serde_json::Value {
        let out = run(args);
        assert_eq!(code(&out), 0, "{args:?}");
        serde_json::from_str(&stdout(&out)).expect("valid json")
    };
    assert_eq!(
        for_name(&["gen", "--family", "o", "--k", "3"])["name"],
        "O3"
    );
    assert_eq!(
        for_name(&["gen", "--family", "ohat", "--k", "2"])["name"],
        "Ohat2"
    );
    assert_eq!(
        for_name(&["gen", "--chain", "4"])["n"],
        serde_json::json!(4)
    );
    assert_eq!(
        for_name(&["gen", "--boolean", "3"])["n"],
        serde_json::json!(8)
    );
    let r = for_name(&["gen", "--random", "--seed", "7", "--m", "6", "--k", "20"]);
    assert_eq!(r["name"], "random-s7-m6-k20");
}

#[test]
fn gen_requires_exactly_one_source() {
    let out = run(&["gen"]);
    assert_eq!(code(&out), 2);
    let out = run(&["gen", "--fixture", "M3", "--chain", "3"]);
    assert_eq!(code(&out), 2);
    let out = run(&["gen", "--family", "o"]);
    assert_eq!(code(&out), 2, "missing --k is a usage error");
}

#[test]
fn concept_rebuilds_m3_from_its_dual() {
    let dir = TempDir::new().unwrap();
    let m3 = gen_fixture(dir.path(), "M3");
    let dual = dir.path().join("dual.json");
    let out = run(&["dualize", &m3, "-o", dual.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let out = run(&["concept", dual.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["n"], serde_json::json!(5));
    assert_eq!(v["name"], serde_json::json!("concept(dual(M3))"));
}

#[test]
fn dot_output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let m3 = gen_fixture(dir.path(), "M3");
    let a = dir.path().join("a.dot");
    let b = dir.path().join("b.dot");
    for path in [&a, &b] {
        let out = run(&[
            "dualize",
            &m3,
            "-o",
            dir.path().join("d.json").to_str().unwrap(),
            "--dot",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let text = std::fs::read_to_string(&a).unwrap();
    assert!(text.starts_with("digraph"), "dot: {text}");
}

#[test]
fn jobs_flag_is_accepted_globally() {
    let dir = TempDir::new().unwrap();
    let m3 = gen_fixture(dir.path(), "M3");
    let out = run(&["check-sd", &m3, "--jobs", "2"]);
    assert_eq!(code(&out), 1);
}
