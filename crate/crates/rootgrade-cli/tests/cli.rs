//! End-to-end tests of the command-line interface: exit codes, report
//! determinism, the export round-trip, and the documented error paths.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rootgrade"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn validate_catalog_entry_passes() {
    let out = run(&["validate", "--quadruple", "bc-symplectic-rank1"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    assert!(stdout(&out).contains("result"));
}

#[test]
fn validate_names_broken_axiom_and_exits_one() {
    // a kind-C quadruple whose star is not an involution
    let dir = std::env::temp_dir().join("rootgrade-cli-test-star");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.json");
    let text = r#"{
  "kind": "C",
  "a": { "dim": 1, "unit": ["1"], "mul": [[["1"]]], "star": [["2"]] },
  "C": { "dim": 0, "act": [], "f": [] }
}"#;
    std::fs::write(&path, text).unwrap();
    let out = run(&["validate", "--quadruple", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "{out:?}");
    assert!(stdout(&out).contains("star_involution"), "{}", stdout(&out));
}

#[test]
fn unknown_name_is_a_parse_error() {
    let out = run(&["validate", "--quadruple", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_json_reports_location_and_exits_two() {
    let dir = std::env::temp_dir().join("rootgrade-cli-test-bad");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, "{ not json").unwrap();
    let out = run(&["validate", "--quadruple", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(err.contains("line"), "{err}");
}

#[test]
fn hf_dual_numbers_reports_hf_equals_bb() {
    let out = run(&["hf", "--quadruple", "d-dual-numbers", "--ell", "4", "--format", "machine"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let get = |key: &str| {
        text.lines()
            .find(|l| l.starts_with(&format!("{key}=")))
            .unwrap_or_else(|| panic!("missing {key} in {text}"))
            .split('=')
            .nth(1)
            .unwrap()
            .to_string()
    };
    assert_eq!(get("dim.HF"), get("dim.bb"));
    assert_eq!(get("check.uniform"), "pass");
}

#[test]
fn verify_passes_on_the_flagship_instance() {
    let out = run(&[
        "verify",
        "--quadruple",
        "bc-symplectic-rank1",
        "--n",
        "4",
        "--ell",
        "4",
        "--K",
        "zero",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("check.jacobi"));
}

#[test]
fn rank_invariants_are_enforced() {
    let out = run(&["verify", "--quadruple", "bc-symplectic-rank1", "--n", "3", "--ell", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let args =
        ["build", "--quadruple", "bc-exchange", "--n", "4", "--ell", "4", "--format", "machine"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn export_round_trips_through_verify() {
    let dir = std::env::temp_dir().join("rootgrade-cli-test-export");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("rank1.json");
    let out = run(&[
        "export",
        "--quadruple",
        "bc-symplectic-rank1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");

    // exporting the re-ingested file reproduces it byte-exactly
    let round = run(&["export", "--quadruple", path.to_str().unwrap()]);
    assert_eq!(round.status.code(), Some(0));
    assert_eq!(stdout(&round), std::fs::read_to_string(&path).unwrap());

    // the verify report from the file is identical to the catalog one
    let verify_args = |q: &str| {
        vec![
            "verify".to_string(),
            "--quadruple".to_string(),
            q.to_string(),
            "--n".to_string(),
            "4".to_string(),
            "--ell".to_string(),
            "4".to_string(),
            "--format".to_string(),
            "machine".to_string(),
        ]
    };
    let from_name = Command::new(env!("CARGO_BIN_EXE_rootgrade"))
        .args(verify_args("bc-symplectic-rank1"))
        .output()
        .unwrap();
    let from_file = Command::new(env!("CARGO_BIN_EXE_rootgrade"))
        .args(verify_args(path.to_str().unwrap()))
        .output()
        .unwrap();
    assert_eq!(from_name.status.code(), Some(0));
    assert_eq!(from_name.stdout, from_file.stdout);
}

#[test]
fn export_constants_lists_brackets() {
    let out = run(&[
        "export",
        "--quadruple",
        "bc-symplectic-rank1",
        "--constants",
        "--n",
        "4",
        "--ell",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("dim.L=55"), "{text}");
    assert!(text.lines().any(|l| l.starts_with("bracket[")), "{text}");
}

#[test]
fn export_bb_constants() {
    let out = run(&["export", "--quadruple", "bc-symplectic-rank1", "--bb-constants", "--ell", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("dim.bb=3"), "{text}");
    assert!(text.lines().any(|l| l.starts_with("bracket[")), "{text}");
}

#[test]
fn build_roots_table() {
    let out = run(&[
        "build",
        "--quadruple",
        "bc-symplectic-rank1",
        "--n",
        "4",
        "--ell",
        "4",
        "--roots",
        "--format",
        "machine",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("weights.count=41"), "{text}");
    // an extra-long root carries dim A = 1, a short root carries dim C = 2
    assert!(text.contains("weight.2,0,0,0=1"), "{text}");
    assert!(text.contains("weight.1,0,0,0=2"), "{text}");
}

#[test]
fn ucex_reports_kernel_and_center() {
    let out = run(&[
        "ucex",
        "--quadruple",
        "bc-nil3",
        "--n",
        "4",
        "--ell",
        "4",
        "--K",
        "hf",
        "--format",
        "machine",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("dim.kernel=3"), "{text}");
    assert!(text.contains("check.kernel_central=pass"), "{text}");
}
