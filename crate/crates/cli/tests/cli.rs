use std::path::PathBuf;

use assert_cmd::Command;
use serde_json::Value;

fn k3five() -> Command {
    Command::new(env!("CARGO_BIN_EXE_k3five"))
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).expect("golden file readable")
}

fn stdout_of(args: &[&str]) -> String {
    let out = k3five().args(args).assert().success().get_output().stdout.clone();
    String::from_utf8(out).unwrap()
}

#[test]
fn table1_matches_golden() {
    assert_eq!(stdout_of(&["lattice", "table1"]), golden("table1.json"));
    assert_eq!(stdout_of(&["lattice", "table1", "--format", "md"]), golden("table1.md"));
}

#[test]
fn classify_matches_golden() {
    assert_eq!(stdout_of(&["lattice", "classify"]), golden("classify.json"));
    assert_eq!(stdout_of(&["lattice", "classify", "--format", "md"]), golden("classify.md"));
}

#[test]
fn reruns_are_byte_identical() {
    let args = ["curve", "random", "--field", "5^2", "--seed", "9", "--count", "6"];
    assert_eq!(stdout_of(&args), stdout_of(&args));
    let one: Value = serde_json::from_str(&stdout_of(&args)).unwrap();
    let mut par = args.to_vec();
    par.extend(["--jobs", "4"]);
    let four: Value = serde_json::from_str(&stdout_of(&par)).unwrap();
    assert_eq!(one["results"], four["results"]);
    assert_eq!(one["seed"], 9);
}

#[test]
fn classify_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("classify.json");
    k3five()
        .args(["lattice", "classify", "--out"])
        .arg(&path)
        .assert()
        .success()
        .stdout("");
    let out = k3five()
        .args(["lattice", "verify", "--input"])
        .arg(&path)
        .assert()
        .success()
        .get_output()
        .stdout
        .clone();
    let v: Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(v["results"].as_array().unwrap().len(), 9);
    assert!(v["checks"].as_object().unwrap().values().all(|b| b == true));
}

#[test]
fn verify_rejects_tampered_classification() {
    let dir = tempfile::tempdir().unwrap();
    let mut v: Value = serde_json::from_str(&golden("classify.json")).unwrap();
    v["results"][3]["root_type"] = "E8+3A4".into();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, v.to_string()).unwrap();
    k3five().args(["lattice", "verify", "--input"]).arg(&path).assert().code(1);

    let mut v: Value = serde_json::from_str(&golden("classify.json")).unwrap();
    let first = v["results"][1].clone();
    v["results"].as_array_mut().unwrap().push(first);
    std::fs::write(&path, v.to_string()).unwrap();
    k3five().args(["lattice", "verify", "--input"]).arg(&path).assert().code(1);

    std::fs::write(&path, "[]").unwrap();
    k3five().args(["lattice", "verify", "--input"]).arg(&path).assert().success();
    std::fs::write(&path, "{").unwrap();
    k3five().args(["lattice", "verify", "--input"]).arg(&path).assert().code(2);
}

#[test]
fn lattice_verify_passes() {
    let v: Value = serde_json::from_str(&stdout_of(&["lattice", "verify"])).unwrap();
    assert_eq!(v["results"]["S0"]["root_type"], "5A4");
    assert_eq!(v["results"]["max_isotropic_dim"], 2);
}

#[test]
fn fixture_curve_check() {
    let v: Value =
        serde_json::from_str(&stdout_of(&["curve", "check", "--poly", "[0,0,1,0,0,0,1]@5"])).unwrap();
    assert_eq!(v["results"]["in_U"], true);
    assert_eq!(v["results"]["points"].as_array().unwrap().len(), 5);
    assert_eq!(v["results"]["wall"]["product"], 5);
}

#[test]
fn curve_ns_emits_lattice_json() {
    let v: Value =
        serde_json::from_str(&stdout_of(&["curve", "ns", "--poly", "[0,0,1,0,0,0,1]@5"])).unwrap();
    let lattice: k3five::lattice::GramLattice = serde_json::from_value(v["results"].clone()).unwrap();
    assert_eq!(lattice.rank(), 22);
    assert_eq!(lattice.labels()[21], "l");
}

#[test]
fn exit_codes() {
    k3five().args(["lattice", "bogus"]).assert().code(2);
    k3five().args(["lattice", "table1", "--nope"]).assert().code(2);
    k3five().args(["curve", "check"]).assert().code(2);
    k3five().args(["curve", "check", "--poly", "[1,2]@5"]).assert().code(2);
    k3five().args(["curve", "check", "--poly", "[0,0,1,0,0,0,1]@7"]).assert().code(2);
    k3five().args(["curve", "check", "--poly", "[0,0,0,0,0,0,1]@5"]).assert().code(1);
    k3five()
        .args(["curve", "check", "--poly", "[0,0,1,0,0,0,1]@5", "--max-ext", "2"])
        .assert()
        .code(1);
    k3five().arg("--help").assert().success();
}

#[test]
fn field_flag_completes_a_bare_poly() {
    let a = stdout_of(&["curve", "wall", "--poly", "[15,3,9,3,13,21,6]", "--field", "5^2"]);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["results"]["product"], 5);
}
