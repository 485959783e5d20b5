use std::io::Write;
use std::process::{Command, Output};

fn pqgrass(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pqgrass")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn exit_code_matrix() {
    let cases: &[(&[&str], i32)] = &[
        (&["check", "--preset", "gr2", "alpha*delta + delta*alpha"], 0),
        (&["check", "--preset", "gr2", "alpha*beta + p^-1*beta*alpha"], 0),
        (&["check", "--preset", "gr11", "b*c - p*q^-1*c*b - (p - q^-1)*delta*alpha"], 0),
        (&["check", "--preset", "gr2", "alpha*delta"], 1),
        (&["check", "--preset", "gr2", "alpha*beta - p^-1*beta*alpha"], 1),
        (&["check", "--preset", "gr2", "alpha^-1"], 2),
        (&["check", "--preset", "gr2", "alpha**beta"], 2),
        (&["check", "--preset", "gr2", "omega"], 2),
        (&["check", "--preset", "nope", "alpha"], 2),
        (&["reduce", "--preset", "gr2", "alpha^3"], 0),
        (&["reduce", "--preset", "gr2", "(alpha"], 2),
        (&["reduce", "alpha"], 2),
        (&["rmatrix", "--x", "1"], 0),
        (&["rmatrix", "--x", "-1", "--json"], 0),
        (&["rmatrix", "--x", "p +"], 2),
        (&["rmatrix"], 2),
        (&["power", "--n", "4"], 0),
        (&["power", "--n", "5", "--closed-form"], 0),
        (&["power", "--n", "0"], 2),
        (&["power", "--n", "x"], 2),
        (&["verify", "--suite", "gr2"], 0),
        (&["verify", "--suite", "gr11", "--json"], 0),
        (&["verify", "--suite", "gr2", "--seed", "17"], 0),
        (&["verify", "--suite", "bogus"], 2),
        (&["confluence", "--preset", "gr11_localized"], 0),
        (&["confluence", "--preset", "plane_p20", "--json"], 0),
        (&["frobnicate"], 2),
        (&[], 2),
        (&["--help"], 0),
    ];
    for (args, want) in cases {
        let out = pqgrass(args);
        assert_eq!(out.status.code(), Some(*want), "{args:?}: stderr {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn reduce_prints_canonical_form() {
    assert_eq!(stdout(&pqgrass(&["reduce", "--preset", "gr2", "alpha^3"])).trim(), "0");
    assert_eq!(stdout(&pqgrass(&["reduce", "--preset", "gr2", "delta*alpha"])).trim(), "-1 * alpha*delta");
}

#[test]
fn verify_json_schema() {
    let out = pqgrass(&["verify", "--suite", "gr2", "--json", "--seed", "5"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["suite"], "gr2");
    assert_eq!(v["passed"], true);
    assert_eq!(v["seed"], 5);
    assert!(v["elapsed_ms"].is_u64());
    let check = &v["checks"][0];
    for key in ["name", "status", "residual", "paper_ref"] {
        assert!(check.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn powers_suite_reports_failures() {
    // the even-power relation list contains entries that do not hold
    let out = pqgrass(&["verify", "--suite", "powers", "--max-n", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("[FAIL] power 2: A*B = p^2*B*A"));
}

#[test]
fn preset_file_round_trip() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        r#"
name = "plane"
generators = [{{ name = "x", parity = "even" }}, {{ name = "y", parity = "even" }}]
relations = ["y*x = p^-1*x*y"]
"#
    )
    .unwrap();
    let path = f.path().to_str().unwrap();
    let out = pqgrass(&["reduce", "--preset-file", path, "y*y*x"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "p^-2 * x*y*y");
    assert_eq!(pqgrass(&["check", "--preset-file", path, "y*x - p^-1*x*y"]).status.code(), Some(0));
    assert_eq!(pqgrass(&["confluence", "--preset-file", path]).status.code(), Some(0));
    assert_eq!(pqgrass(&["reduce", "--preset-file", path, "--preset", "gr2", "x"]).status.code(), Some(2));
}

#[test]
fn malformed_preset_file_is_a_usage_error() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "name = \"bad\"\ngenerators = []\nrelations = [\"x*\"]").unwrap();
    let out = pqgrass(&["reduce", "--preset-file", f.path().to_str().unwrap(), "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(pqgrass(&["reduce", "--preset-file", "/nonexistent/file.toml", "1"]).status.code(), Some(2));
}
