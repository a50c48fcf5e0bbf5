use assert_cmd::Command;
use predicates::str::contains;
use serde_json::Value;
use std::io::Write;
use tempfile::NamedTempFile;

fn orbitkit() -> Command {
    let mut c = Command::cargo_bin("orbitkit").unwrap();
    c.env_remove("ORBITKIT_WEYL_CAP");
    c
}

fn file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn json_of(args: &[&str]) -> (String, Value) {
    let out = orbitkit().args(args).args(["--output", "json"]).assert().success().get_output().stdout.clone();
    let s = String::from_utf8(out).unwrap();
    let v = serde_json::from_str(&s).unwrap();
    (s, v)
}

const TETRA: &str = "# boundary of a tetrahedron\n0 1 2\n0 1 3\n0 2 3\n1 2 3\n";

#[test]
fn a1_fundamental_weight_is_regular_and_quantizes() {
    let (_, v) = json_of(&["orbit", "--series", "A1", "--lambda", "1/2,-1/2", "--lattice", "sc"]);
    assert_eq!(v["regular"], true);
    assert_eq!(v["dim_orbit"], 2);
    assert_eq!(v["verdict"]["integral"], true);
    assert_eq!(v["verdict"]["borel_weil"]["kind"], "irreducible");
    assert_eq!(v["verdict"]["borel_weil"]["highest_weight"], serde_json::json!(["1/2", "-1/2"]));
}

#[test]
fn zero_weight_is_a_point_orbit_with_trivial_verdict() {
    let (_, v) = json_of(&["orbit", "--series", "A2", "--lambda", "0,0,0"]);
    assert_eq!(v["dim_orbit"], 0);
    assert_eq!(v["regular"], false);
    assert_eq!(v["weyl"]["orbit_size"], 1);
    assert_eq!(v["verdict"]["integral"], true);
    assert_eq!(v["verdict"]["borel_weil"]["highest_weight"], serde_json::json!(["0", "0", "0"]));
}

#[test]
fn adjoint_lattice_rejects_fundamental_weight() {
    let (_, v) = json_of(&["orbit", "--series", "A2", "--lambda", "2/3,-1/3,-1/3", "--lattice", "adjoint"]);
    assert_eq!(v["verdict"]["integral"], false);
    assert_eq!(v["verdict"]["borel_weil"]["kind"], "zero");
}

#[test]
fn fundamental_basis_input_matches_ambient() {
    let (a, _) = json_of(&["orbit", "--series", "B2", "--lambda", "1,1"]);
    let (b, _) = json_of(&["orbit", "--series", "B2", "--lambda", "0,2", "--basis", "fundamental"]);
    assert_eq!(a, b);
}

#[test]
fn custom_lattice_file() {
    // roots of A3 together with twice the first fundamental weight
    let lat = file("# index-two sublattice\n3/2 -1/2 -1/2 -1/2\n1 -1 0 0\n0 1 -1 0\n0 0 1 -1\n");
    let arg = format!("custom:{}", lat.path().display());
    let (_, v) = json_of(&["orbit", "--series", "A3", "--lambda", "1/2,1/2,-1/2,-1/2", "--lattice", &arg]);
    assert_eq!(v["verdict"]["integral"], true);
    let (_, v) = json_of(&["orbit", "--series", "A3", "--lambda", "3/4,-1/4,-1/4,-1/4", "--lattice", &arg]);
    assert_eq!(v["verdict"]["integral"], false);
}

#[test]
fn json_round_trips_byte_identically() {
    for args in [
        vec!["orbit", "--series", "A2", "--lambda", "1/3,1/3,-2/3"],
        vec!["orbit", "--series", "A1xB2xT1", "--lambda", "1,-1,3/2,1/2,2"],
        vec!["orbit", "--series", "C3", "--lambda", "3,1,1"],
    ] {
        let (s, v) = json_of(&args);
        let mut again = serde_json::to_string_pretty(&v).unwrap();
        again.push('\n');
        assert_eq!(s, again);
        assert!(!s.contains('.'), "no floats in exact output: {s}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["orbit", "--series", "D4", "--lambda", "2,1,1,0", "--output", "json"];
    let a = orbitkit().args(args).output().unwrap();
    let b = orbitkit().args(args).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn tetrahedron_h2_is_z() {
    let n = file(TETRA);
    orbitkit()
        .args(["cech", "h", "--nerve", n.path().to_str().unwrap(), "--k", "2", "--ring", "z"])
        .assert()
        .success()
        .stdout("Z\n");
}

#[test]
fn triangle_h1_over_q_has_rank_one() {
    let n = file("0 1\n1 2\n0 2\n");
    let (_, v) = json_of(&["cech", "h", "--nerve", n.path().to_str().unwrap(), "--k", "1", "--ring", "q"]);
    assert_eq!(v["free_rank"], 1);
    assert_eq!(v["group"], "Q");
}

#[test]
fn chern_of_zero_cocycle_is_zero() {
    let n = file(TETRA);
    let c = file("0 1 2 0\n");
    orbitkit()
        .args(["cech", "chern", "--nerve", n.path().to_str().unwrap(), "--cocycle", c.path().to_str().unwrap()])
        .assert()
        .success()
        .stdout("class 0\n");
}

#[test]
fn chern_of_face_generates() {
    let n = file(TETRA);
    let c = file("0 1 2 1\n");
    let (_, v) = json_of(&["cech", "chern", "--nerve", n.path().to_str().unwrap(), "--cocycle", c.path().to_str().unwrap()]);
    assert_eq!(v["trivial"], false);
    let x = v["coordinates"][0]["value"].as_str().unwrap();
    assert!(x == "1" || x == "-1");
}

#[test]
fn usage_errors_exit_2() {
    orbitkit().args(["orbit", "--lambda", "1"]).assert().code(2);
    orbitkit().args(["orbit", "--series", "A1", "--lambda", "1,-1", "--lattice", "weird"]).assert().code(2);
    orbitkit().args(["nonsense"]).assert().code(2);
}

#[test]
fn parse_errors_exit_3() {
    orbitkit().args(["orbit", "--series", "E8", "--lambda", "1"]).assert().code(3);
    orbitkit().args(["orbit", "--series", "A2", "--lambda", "1,2"]).assert().code(3).stderr(contains("dimension_mismatch"));
    orbitkit().args(["orbit", "--series", "A2", "--lambda", "1,x,2"]).assert().code(3);
    let bad = file("0 1\n1 banana\n");
    orbitkit()
        .args(["cech", "h", "--nerve", bad.path().to_str().unwrap(), "--k", "0"])
        .assert()
        .code(3)
        .stderr(contains("\"line\": 2"));
}

#[test]
fn non_cocycle_is_rejected_with_witness() {
    let n = file("0 1 2 3\n");
    let c = file("0 1 2 1\n");
    orbitkit()
        .args(["cech", "chern", "--nerve", n.path().to_str().unwrap(), "--cocycle", c.path().to_str().unwrap()])
        .assert()
        .code(3)
        .stderr(contains("[0, 1, 2, 3]"));
}

#[test]
fn weyl_cap_from_environment_exits_4() {
    orbitkit()
        .env("ORBITKIT_WEYL_CAP", "10")
        .args(["orbit", "--series", "B3", "--lambda", "3,2,1"])
        .assert()
        .code(4)
        .stderr(contains("cap_exceeded"));
}

#[test]
fn audits_pass() {
    orbitkit().args(["audit", "roots", "--series", "D4"]).assert().success().stdout(contains("Weyl order 192"));
    orbitkit().args(["audit", "matrix", "--n", "3"]).assert().success().stdout(contains("perfect"));
    orbitkit().args(["audit", "kks", "--n", "2", "--lambda", "1/2,-1/2"]).assert().success();
}
