use std::process::Command;

use lutz_cli::{run, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("lutz").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, _) = call(args);
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn verify_prints_a_report() {
    let (code, v) = json(&["verify", "lutz-confoliation", "--dim", "2", "--seed", "9"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["schema_version"], "lutz-report/1");
    assert_eq!(v["tool"]["name"], "lutz");
    assert_eq!(v["seed"], 9);
    assert_eq!(v["construction"], "lutz-confoliation");
    assert_eq!(v["params"]["n"], 2);
    assert_eq!(v["outcome"], "pass");
    let names: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"volume-bracket") && names.contains(&"non-contact-locus"));
}

#[test]
fn every_construction_verifies() {
    for name in lutz_cli::CONSTRUCTIONS {
        let args: Vec<&str> = match name {
            "round-handle" => vec!["verify", name, "--half-dim", "2"],
            _ => vec!["verify", name, "--dim", "1"],
        };
        let (code, v) = json(&args);
        assert_eq!(code, EXIT_PASS, "{name}");
        assert_eq!(v["outcome"], "pass");
    }
}

#[test]
fn failing_checks_exit_with_one() {
    let (code, v) = json(&["verify", "full-twist", "--dim", "2"]);
    assert_eq!(code, EXIT_FAIL);
    assert_eq!(v["outcome"], "fail");
    let failed: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["a-search-positivity"]);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["verify", "lutz-confoliation"][..],
        &["verify", "lutz-confoliation", "--dim", "0"],
        &["verify", "no-such-thing", "--dim", "2"],
        &["verify", "lutz-confoliation", "--dim", "2", "--grid", "1"],
        &["frobnicate"],
        &["trace", "--recipe", "twist-along-torus", "--dim", "2"],
        &["trace", "--recipe", "twist-along-circle", "--dim", "0"],
        &["plot", "full-twist", "--dim", "2", "--axes", "r1,r2", "--out", "/tmp/never.svg"],
        &["plot", "lutz-confoliation", "--dim", "2", "--axes", "r1", "--out", "/tmp/never.svg"],
        &["verify", "round-handle", "--half-dim", "2", "--index", "3"],
    ] {
        let (code, _, err) = call(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(!err.is_empty());
    }
}

#[test]
fn help_and_version_exit_cleanly() {
    assert_eq!(call(&["--help"]).0, EXIT_PASS);
    assert_eq!(call(&["--version"]).0, EXIT_PASS);
}

#[test]
fn out_file_and_summary_lines() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let (code, out, _) = call(&["verify", "giroux-domain", "--dim", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.lines().any(|l| l.starts_with("pi-torsion-form") && l.ends_with("pass")));
    let v: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(v["construction"], "giroux-domain");
}

#[test]
fn seed_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_lutz"))
        .args(["verify", "standard-tube", "--dim", "1"])
        .env("LUTZ_SEED", "1234")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"], 1234);
    let out = Command::new(env!("CARGO_BIN_EXE_lutz"))
        .args(["verify", "standard-tube", "--dim", "1"])
        .env_remove("LUTZ_SEED")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"], lutz_cli::DEFAULT_SEED);
}

#[test]
fn binary_exit_codes() {
    let status = |args: &[&str]| Command::new(env!("CARGO_BIN_EXE_lutz")).args(args).output().unwrap().status.code();
    assert_eq!(status(&["verify", "standard-tube", "--dim", "1"]), Some(0));
    assert_eq!(status(&["verify", "full-twist", "--dim", "2"]), Some(1));
    assert_eq!(status(&["verify", "standard-tube"]), Some(2));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let a = call(&["verify", "otw-disc", "--dim", "2", "--seed", "5"]).1;
    let b = call(&["verify", "otw-disc", "--dim", "2", "--seed", "5"]).1;
    assert_eq!(a, b);
    let c = call(&["verify", "otw-disc", "--dim", "2", "--seed", "6"]).1;
    assert_ne!(a, c);
}

#[test]
fn plot_writes_svg_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("lutz.svg");
    let (code, out, err) = call(&[
        "plot",
        "lutz-confoliation",
        "--dim",
        "2",
        "--axes",
        "r1,r2",
        "--grid",
        "101",
        "--out",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_PASS, "{err}");
    assert!(out.contains("1 locus points"));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg") || text.starts_with("<?xml"));
    assert!(text.trim_end().ends_with("</svg>"));
    let csv = std::fs::read_to_string(svg.with_extension("csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("x,y,value"));
    assert_eq!(lines.count(), 101 * 101);
}

#[test]
fn plot_of_an_empty_slice() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("h.svg");
    let (code, _, _) = call(&[
        "plot",
        "round-handle",
        "--fix",
        "z=5",
        "--axes",
        "p1,q1",
        "--grid",
        "11",
        "--out",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(std::fs::read_to_string(svg.with_extension("csv")).unwrap(), "x,y,value\n");
}

#[test]
fn trace_documents() {
    for (recipe, tag) in [("twist-along-circle", "model π-Lutz tube"), ("twist-along-hypersurface", "wide Giroux domain")] {
        let (code, v) = json(&["trace", "--recipe", recipe, "--dim", "2"]);
        assert_eq!(code, EXIT_PASS);
        assert_eq!(v["outcome"], "pass");
        assert_eq!(v["trace"]["illegal_steps"], 0);
        assert_eq!(v["trace"]["final_state"][0]["tags"][0], tag);
        let kinds: Vec<&str> =
            v["trace"]["entries"].as_array().unwrap().iter().map(|e| e["step"]["kind"].as_str().unwrap()).collect();
        assert!(kinds.contains(&"round-index-1"));
    }
}
