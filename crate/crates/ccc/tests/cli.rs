//! End-to-end checks of the command-line surface: output contents, file
//! round-trips, and the exit-code taxonomy (0 ok, 1 failed expectation,
//! 2 bad input, 3 over budget).

use std::path::Path;
use std::process::{Command, Output};

use ccc::codefile::CodeFile;

fn ccc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ccc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn construct_then_verify_passes_at_the_guarantee() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gf9.code");
    let out = ccc(&[
        "construct", "--p", "3", "--k", "2", "--q", "3", "--d0", "3",
        "--composition", "3,3,3", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("r=9"));
    assert!(text.contains("pigeonhole_bound=21"));
    assert!(text.contains("guaranteed_d=5"));
    assert!(text.contains("coset="));

    let verify = ccc(&["verify", "--code", path.to_str().unwrap(), "--expect-d", "5"]);
    assert_eq!(code(&verify), 0);
    let vtext = stdout(&verify);
    assert!(vtext.contains("status=pass"));
    assert!(vtext.contains("min_distance="));
}

#[test]
fn construct_rejects_bad_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("x.code");
    let out_arg = out_path.to_str().unwrap();

    // q exceeds the field size
    let out = ccc(&[
        "construct", "--p", "3", "--k", "1", "--q", "5", "--d0", "1",
        "--composition", "1,1,1,0,0", "--out", out_arg,
    ]);
    assert_eq!(code(&out), 2);

    // d0 out of range
    let out = ccc(&[
        "construct", "--p", "3", "--k", "1", "--q", "3", "--d0", "2",
        "--composition", "1,1,1", "--out", out_arg,
    ]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("d0 must satisfy"));

    // composition does not sum to r
    let out = ccc(&[
        "construct", "--p", "7", "--k", "1", "--q", "3", "--d0", "2",
        "--composition", "3,2,1", "--out", out_arg,
    ]);
    assert_eq!(code(&out), 2);

    // p not prime
    let out = ccc(&[
        "construct", "--p", "6", "--k", "1", "--q", "3", "--d0", "2",
        "--composition", "2,2,2", "--out", out_arg,
    ]);
    assert_eq!(code(&out), 2);

    // reducible user modulus
    let out = ccc(&[
        "construct", "--p", "3", "--k", "2", "--q", "3", "--d0", "3",
        "--composition", "3,3,3", "--modulus", "2,0,1", "--out", out_arg,
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn construct_accepts_a_supplied_irreducible_modulus() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gf9-alt.code");
    let out = ccc(&[
        "construct", "--p", "3", "--k", "2", "--q", "3", "--d0", "3",
        "--composition", "3,3,3", "--modulus", "1,0,1", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let file = CodeFile::read_from(&path).unwrap();
    assert!(file.words.len() >= 21);
}

#[test]
fn written_files_round_trip_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gf8.code");
    let out = ccc(&[
        "construct", "--p", "2", "--k", "3", "--q", "3", "--d0", "2",
        "--composition", "3,3,2", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);

    let bytes = std::fs::read(&path).unwrap();
    let parsed = CodeFile::read_from(&path).unwrap();
    assert_eq!(parsed.render().into_bytes(), bytes);
    assert_eq!(parsed.guaranteed_d, Some(Some(3)));
    assert!(parsed.words.len() >= 70);
}

#[test]
fn verify_fails_expectation_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("two.code");
    std::fs::write(&path, "# q=3\n# n=3\n# composition=1,1,1\n012\n021\n").unwrap();
    let out = ccc(&["verify", "--code", path.to_str().unwrap(), "--expect-d", "3"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("status=fail"));
    assert!(stdout(&out).contains("min_distance=2"));
}

#[test]
fn verify_rejects_malformed_files_with_exit_2() {
    let dir = tempfile::tempdir().unwrap();

    let dup = dir.path().join("dup.code");
    std::fs::write(&dup, "# q=3\n# n=3\n# composition=1,1,1\n012\n012\n").unwrap();
    let out = ccc(&["verify", "--code", dup.to_str().unwrap()]);
    assert_eq!(code(&out), 2);

    let bad = dir.path().join("bad.code");
    std::fs::write(&bad, "# n=3\n# q=3\n# composition=1,1,1\n012\n").unwrap();
    let out = ccc(&["verify", "--code", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);

    let missing = dir.path().join("missing.code");
    let out = ccc(&["verify", "--code", missing.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_single_word_code_is_vacuously_fine() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("one.code");
    std::fs::write(&path, "# q=2\n# n=2\n# composition=1,1\n01\n").unwrap();
    let out = ccc(&["verify", "--code", path.to_str().unwrap(), "--expect-d", "9"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("min_distance=undefined"));
}

#[test]
fn bounds_report_matches_the_worked_examples() {
    let out = ccc(&[
        "bounds", "--q", "3", "--n", "9", "--d", "5", "--composition", "3,3,3",
        "--field", "3^2", "--d0", "3",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("name=construction kind=lower applicable=yes exact=1680/81 value=21"));
    assert!(text.contains("name=packing kind=upper applicable=yes exact=1680/20 value=84"));
    assert!(text.contains("best_lower=21"));
    assert!(text.contains("best_upper=84"));

    let out = ccc(&["bounds", "--q", "3", "--n", "8", "--d", "3", "--composition", "3,3,2"]);
    assert!(stdout(&out).contains("name=d3-general kind=lower applicable=yes exact=560/9 value=62"));
    assert!(stdout(&out).contains("name=d3-ternary kind=lower applicable=yes exact=560/9 value=62"));

    let out = ccc(&["bounds", "--q", "3", "--n", "7", "--d", "3", "--composition", "3,2,2"]);
    assert!(stdout(&out).contains("name=d3-coprime kind=lower applicable=yes exact=210/7 value=30"));
}

#[test]
fn bounds_rejects_inconsistent_flags() {
    let out = ccc(&["bounds", "--q", "3", "--n", "9", "--d", "3", "--composition", "3,3,2"]);
    assert_eq!(code(&out), 2);

    let out = ccc(&[
        "bounds", "--q", "3", "--n", "9", "--d", "3", "--composition", "3,3,3",
        "--field", "3^2",
    ]);
    assert_eq!(code(&out), 2); // --field without --d0
}

#[test]
fn bounds_structured_output_is_json() {
    let out = ccc(&[
        "bounds", "--q", "3", "--n", "9", "--d", "5", "--composition", "3,3,3",
        "--field", "3^2", "--d0", "3", "--format", "structured",
    ]);
    assert_eq!(code(&out), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["best_lower"], "21");
    assert_eq!(value["best_upper"], "84");
    assert_eq!(value["params"]["field"], "3^2");
    assert!(value["bounds"].as_array().unwrap().len() >= 4);
}

#[test]
fn oracle_reports_exact_sizes_and_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let witness = dir.path().join("witness.code");
    let out = ccc(&[
        "oracle", "--q", "3", "--d", "3", "--composition", "1,1,1",
        "--out", witness.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("max_size=3"));

    let file = CodeFile::read_from(&witness).unwrap();
    assert_eq!(file.words.len(), 3);
    let verify = ccc(&["verify", "--code", witness.to_str().unwrap(), "--expect-d", "3"]);
    assert_eq!(code(&verify), 0);

    let out = ccc(&["oracle", "--q", "2", "--d", "1", "--composition", "2,2"]);
    assert!(stdout(&out).contains("max_size=6"));
}

#[test]
fn oracle_over_cap_exits_3() {
    let out = ccc(&[
        "oracle", "--q", "3", "--d", "3", "--composition", "4,4,4", "--cap", "100",
    ]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("34650"));
}

#[test]
fn help_runs() {
    let out = ccc(&["--help"]);
    assert_eq!(code(&out), 0);
    for sub in ["construct", "bounds", "verify", "oracle"] {
        assert!(stdout(&out).contains(sub));
    }
}

#[test]
fn unknown_flags_exit_2() {
    let out = ccc(&["construct", "--nope"]);
    assert_eq!(code(&out), 2);
    assert!(Path::new(env!("CARGO_BIN_EXE_ccc")).exists());
}
