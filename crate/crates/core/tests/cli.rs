use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_matchpack");

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn point_count(path: &Path) -> u64 {
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    v["n"].as_u64().unwrap()
}

#[test]
fn generate_families() {
    let dir = TempDir::new().unwrap();
    let convex = dir.path().join("c.json");
    assert_eq!(code(&run(&["generate", "--family", "convex", "--n", "8", "--out", path_str(&convex)])), 0);
    assert_eq!(point_count(&convex), 8);

    let nested = dir.path().join("t.json");
    assert_eq!(code(&run(&["generate", "--family", "nested-triangles", "--n", "4", "--out", path_str(&nested)])), 0);
    assert_eq!(point_count(&nested), 12);

    let odd = run(&["generate", "--family", "wheel", "--n", "5"]);
    assert_eq!(code(&odd), 2);
    assert!(String::from_utf8_lossy(&odd.stderr).contains("even"));
}

#[test]
fn unknown_family_is_a_usage_error() {
    assert_eq!(code(&run(&["generate", "--family", "spiral", "--n", "8"])), 2);
}

#[test]
fn pack_reports_sizes() {
    let dir = TempDir::new().unwrap();
    let pts = dir.path().join("c10.json");
    let out = dir.path().join("p.json");
    run(&["generate", "--family", "convex", "--n", "10", "--out", path_str(&pts)]);
    let o = run(&["pack", "--points", path_str(&pts), "--method", "convex", "--out", path_str(&out)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("5 matchings"));

    let big = dir.path().join("r256.json");
    run(&["generate", "--family", "random", "--n", "256", "--seed", "4", "--out", path_str(&big)]);
    let o = run(&["pack", "--points", path_str(&big), "--method", "logn", "--out", path_str(&out)]);
    assert_eq!(code(&o), 0);
    let size: usize = stdout(&o).split_whitespace().next().unwrap().parse().unwrap();
    assert!(size >= 6, "{size}");
    assert_eq!(code(&run(&["verify", "--points", path_str(&big), "--packing", path_str(&out), "--plane"])), 0);

    let small = dir.path().join("r6.json");
    run(&["generate", "--family", "random", "--n", "6", "--out", path_str(&small)]);
    assert_eq!(code(&run(&["pack", "--points", path_str(&small), "--method", "three"])), 2);
}

#[test]
fn verify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let pts = fixture("convex8.json");
    let good = fixture("convex8.packing.json");
    assert_eq!(code(&run(&["verify", "--points", path_str(&pts), "--packing", path_str(&good), "--plane"])), 0);

    // 0-4 and 1-5 cross on a convex octagon listed in order.
    let crossing = dir.path().join("x.json");
    fs::write(&crossing, r#"{"n": 8, "matchings": [[[0, 4], [1, 5], [2, 3], [6, 7]]]}"#).unwrap();
    let o = run(&["verify", "--points", path_str(&pts), "--packing", path_str(&crossing), "--plane"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("0-4") && stdout(&o).contains("1-5"), "{}", stdout(&o));

    let hexagon = dir.path().join("c6.json");
    let three = dir.path().join("p3.json");
    run(&["generate", "--family", "convex", "--n", "6", "--out", path_str(&hexagon)]);
    run(&["pack", "--points", path_str(&hexagon), "--method", "convex", "--out", path_str(&three)]);
    let args = ["verify", "--points", path_str(&hexagon), "--packing", path_str(&three), "--plane"];
    assert_eq!(code(&run(&args)), 0);
    let mut strict = args.to_vec();
    strict.push("--noncrossing");
    assert_eq!(code(&run(&strict)), 1);

    let broken = dir.path().join("broken.json");
    fs::write(&broken, "{\"n\": 8,\n \"matchings\": [[[0, 1]]").unwrap();
    let o = run(&["verify", "--points", path_str(&pts), "--packing", path_str(&broken)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
}

#[test]
fn collinear_input_is_rejected() {
    let dir = TempDir::new().unwrap();
    let pts = dir.path().join("bad.json");
    fs::write(&pts, r#"{"n": 4, "points": [[0,1,0,1],[5,1,3,1],[1,1,1,1],[2,1,2,1]]}"#).unwrap();
    let o = run(&["pack", "--points", path_str(&pts)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("0, 2 and 3"));
    assert_eq!(code(&run(&["render", "--points", path_str(&pts), "--position-check", "skip"])), 0);
}

#[test]
fn count_command() {
    let o = run(&["count", "--n", "10"]);
    assert_eq!(stdout(&o).trim(), "945");
    assert_eq!(code(&run(&["count", "--n", "7"])), 2);
}

fn oracle_value(points: &Path, kind: &str, extra: &[&str]) -> (i32, Option<u64>) {
    let mut args = vec!["oracle", "--points", path_str(points), "--kind", kind];
    args.extend_from_slice(extra);
    let o = run(&args);
    let value = serde_json::from_str::<serde_json::Value>(&stdout(&o)).ok().and_then(|v| v["value"].as_u64());
    (code(&o), value)
}

#[test]
fn oracle_command() {
    let dir = TempDir::new().unwrap();
    let convex8 = dir.path().join("c8.json");
    fs::copy(fixture("convex8.json"), &convex8).unwrap();
    assert_eq!(oracle_value(&convex8, "max-packing", &[]), (0, Some(4)));
    let witness = dir.path().join("c8.json.witness.json");
    let o = run(&["verify", "--points", path_str(&convex8), "--packing", path_str(&witness), "--plane"]);
    assert_eq!(code(&o), 0);

    let convex10 = dir.path().join("c10.json");
    run(&["generate", "--family", "convex", "--n", "10", "--out", path_str(&convex10)]);
    assert_eq!(oracle_value(&convex10, "count", &[]), (0, Some(42)));

    let nested = dir.path().join("t.json");
    run(&["generate", "--family", "nested-triangles", "--n", "2", "--out", path_str(&nested)]);
    let (c, v) = oracle_value(&nested, "pmp", &[]);
    assert_eq!(c, 0);
    assert!(v.unwrap() >= 3);

    let random16 = dir.path().join("r16.json");
    fs::copy(fixture("random16.json"), &random16).unwrap();
    assert_eq!(oracle_value(&random16, "max-packing", &[]).0, 2);
}

#[test]
fn render_matches_goldens() {
    let dir = TempDir::new().unwrap();
    let cases: [(&str, Option<&str>, &str); 3] = [
        ("convex8.json", Some("convex8.packing.json"), "convex8.svg"),
        ("convex8.json", None, "convex8_points.svg"),
        ("wheel8.json", Some("wheel8.packing.json"), "wheel8.svg"),
    ];
    for (points, packing, golden) in cases {
        let out = dir.path().join(golden);
        let pts = fixture(points);
        let mut args = vec!["render", "--points", path_str(&pts), "--out", path_str(&out)];
        let pk = packing.map(fixture);
        if let Some(p) = &pk {
            args.extend(["--packing", path_str(p)]);
        }
        assert_eq!(code(&run(&args)), 0);
        assert_eq!(fs::read(&out).unwrap(), fs::read(fixture(golden)).unwrap(), "{golden}");
    }
    let svg = fs::read_to_string(fixture("convex8.svg")).unwrap();
    assert_eq!(svg.matches("<g id=\"matching-").count(), 4);
    let svg = fs::read_to_string(fixture("convex8_points.svg")).unwrap();
    assert!(svg.contains("id=\"hull\"") && !svg.contains("matching-"));
}

#[test]
fn generated_files_match_fixtures() {
    let dir = TempDir::new().unwrap();
    let pts = dir.path().join("w.json");
    let pk = dir.path().join("w.packing.json");
    run(&["generate", "--family", "wheel", "--n", "8", "--out", path_str(&pts)]);
    run(&["pack", "--points", path_str(&pts), "--method", "wheel", "--out", path_str(&pk)]);
    assert_eq!(fs::read(&pts).unwrap(), fs::read(fixture("wheel8.json")).unwrap());
    assert_eq!(fs::read(&pk).unwrap(), fs::read(fixture("wheel8.packing.json")).unwrap());
}
