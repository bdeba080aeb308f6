//! End-to-end tests against the compiled binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_immaculatum"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

const P1XP1: &str = "product(projective_space(1),projective_space(1))";

#[test]
fn cohomology_example_on_p1() {
    let out = run(&["--builtin", "projective_space(1)", "cohomology", "--divisor", "2,0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("h = (3,0)"), "unexpected output: {text}");
}

#[test]
fn infinite_reports_axis_witness_on_p1xp1() {
    let out = run(&["--builtin", P1XP1, "infinite"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(
        text.contains("INFINITE, witness direction (1,0)")
            || text.contains("INFINITE, witness direction (0,1)"),
        "unexpected output: {text}"
    );
}

#[test]
fn scan_is_deterministic() {
    let args = ["--builtin", P1XP1, "scan", "--box", "-6:6,-6:6"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout, "non-deterministic output");
    assert!(stdout(&first).starts_with("25 immaculate classes"));
}

#[test]
fn json_divisor_representatives_round_trip() {
    let out = run(&[
        "--builtin",
        "hirzebruch(1)",
        "--format",
        "json",
        "cohomology",
        "--divisor",
        "1,2,0,-1",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(value["command"], "cohomology");
    let class = &value["result"]["class"];
    let rep: Vec<String> = class["divisor_rep"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.to_string())
        .collect();
    let again = run(&[
        "--builtin",
        "hirzebruch(1)",
        "--format",
        "json",
        "cohomology",
        "--divisor",
        &rep.join(","),
    ]);
    assert!(again.status.success());
    let value2: serde_json::Value =
        serde_json::from_str(&stdout(&again)).expect("valid JSON");
    assert_eq!(value["result"], value2["result"], "round trip changed the report");
}

#[test]
fn fan_files_are_parsed_and_validated() {
    let dir = std::env::temp_dir();
    let good: PathBuf = dir.join("immaculatum_test_torsion.json");
    std::fs::write(
        &good,
        r#"{"dim": 1, "rays": [[2],[-2]], "max_cones": [[0],[1]], "name": "torsion"}"#,
    )
    .unwrap();
    let out = run(&["--file", good.to_str().unwrap(), "picard"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("torsion invariants: [2]"), "{text}");

    let bad: PathBuf = dir.join("immaculatum_test_bad.json");
    std::fs::write(
        &bad,
        r#"{"dim": 1, "rays": [[1],[-1]], "max_cones": [[0]]}"#,
    )
    .unwrap();
    let out = run(&["--file", bad.to_str().unwrap(), "picard"]);
    assert_eq!(out.status.code(), Some(2), "incomplete fan must exit 2");

    let not_ints: PathBuf = dir.join("immaculatum_test_float.json");
    std::fs::write(
        &not_ints,
        r#"{"dim": 1, "rays": [[1.5],[-1]], "max_cones": [[0],[1]]}"#,
    )
    .unwrap();
    let out = run(&["--file", not_ints.to_str().unwrap(), "validate"]);
    assert_eq!(out.status.code(), Some(2), "float rays must exit 2");
}

#[test]
fn validate_reports_violations_with_exit_two() {
    let dir = std::env::temp_dir();
    let path = dir.join("immaculatum_test_dangling.json");
    std::fs::write(
        &path,
        r#"{"dim": 1, "rays": [[1],[-1]], "max_cones": [[0]]}"#,
    )
    .unwrap();
    let out = run(&["--file", path.to_str().unwrap(), "validate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("INVALID"));
}

#[test]
fn usage_errors_exit_one() {
    let out = run(&["picard"]);
    assert_eq!(out.status.code(), Some(1), "missing fan source");

    let out = run(&["--builtin", "nonsense(1)", "picard"]);
    assert_eq!(out.status.code(), Some(1), "unknown builtin");

    let out = run(&["--builtin", "projective_space(2)", "plot", "--out", "/tmp/x.svg"]);
    assert_eq!(out.status.code(), Some(1), "plot needs rank 2");

    let out = run(&["--builtin", P1XP1, "cohomology"]);
    assert_eq!(out.status.code(), Some(1), "missing class input");
}

#[test]
fn subset_cap_exits_three() {
    let out = run(&["--builtin", P1XP1, "--max-subsets", "4", "tempting"]);
    assert_eq!(out.status.code(), Some(3));

    let out = bin()
        .env("IMMACULATUM_MAX_SUBSETS", "4")
        .args(["--builtin", P1XP1, "tempting"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "env cap must apply");

    // an explicit flag overrides the environment
    let out = bin()
        .env("IMMACULATUM_MAX_SUBSETS", "4")
        .args(["--builtin", P1XP1, "--max-subsets", "1024", "tempting"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn plot_emits_expected_element_counts() {
    let dir = std::env::temp_dir();
    let path = dir.join("immaculatum_test_plot.svg");
    let out = run(&[
        "--builtin",
        P1XP1,
        "plot",
        "--out",
        path.to_str().unwrap(),
        "--box",
        "-6:6,-6:6",
    ]);
    assert!(out.status.success());
    let svg = std::fs::read_to_string(&path).unwrap();
    assert_eq!(svg.matches("class=\"cone\"").count(), 4);
    assert_eq!(svg.matches("class=\"zonotope\"").count(), 1);
    assert_eq!(svg.matches("class=\"immaculate\"").count(), 25);
    assert_eq!(svg.matches("class=\"arrow\"").count(), 2);

    let path2 = dir.join("immaculatum_test_plot_h1.svg");
    let out = run(&[
        "--builtin",
        "hirzebruch(1)",
        "plot",
        "--out",
        path2.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let svg = std::fs::read_to_string(&path2).unwrap();
    assert_eq!(svg.matches("class=\"cone\"").count(), 4);
    assert_eq!(svg.matches("class=\"arrow\"").count(), 1);
}

#[test]
fn witness_family_on_weighted_product() {
    let out = run(&[
        "--builtin",
        "product(stacky_p1(2,3),projective_space(1))",
        "witness",
        "--direction",
        "0,1",
        "--count",
        "5",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("5 immaculate classes"));
}

#[test]
fn class_input_with_torsion() {
    let dir = std::env::temp_dir();
    let path = dir.join("immaculatum_test_torsion2.json");
    std::fs::write(
        &path,
        r#"{"dim": 1, "rays": [[2],[-2]], "max_cones": [[0],[1]]}"#,
    )
    .unwrap();
    // the nontrivial torsion twist of the trivial free part is immaculate,
    // the structure sheaf itself is not
    let out = run(&[
        "--file",
        path.to_str().unwrap(),
        "immaculate",
        "--class",
        "0;1",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("immaculate: true"));
    let out = run(&[
        "--file",
        path.to_str().unwrap(),
        "immaculate",
        "--class",
        "0;0",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("immaculate: false"));
}
