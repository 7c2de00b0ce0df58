use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn program(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../programs")
        .join(format!("{name}.json"))
        .display()
        .to_string()
}

fn eolab(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_eolab"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(run: &Run) -> Value {
    serde_json::from_str(&run.stdout).expect("stdout is json")
}

#[test]
fn pattern_text_and_json() {
    let r = eolab(&["pattern", "5,2,9"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("pattern: 1,0,2\n"));
    assert!(r.stdout.contains("inversions: {(0,1)}"));

    let r = eolab(&["pattern", "7", "--format", "json"]);
    assert_eq!(r.code, 0);
    assert_eq!(json(&r)["pattern"], serde_json::json!([0]));
}

#[test]
fn pattern_rejects_duplicates_and_garbage() {
    let r = eolab(&["pattern", "5,5"]);
    assert_eq!(r.code, 2);
    assert!(r.stdout.is_empty());
    assert!(r.stderr.contains("duplicate"));

    assert_eq!(eolab(&["pattern", "1,x"]).code, 2);
    assert_eq!(eolab(&["pattern", "1,,2"]).code, 2);
    assert_eq!(eolab(&["pattern", "-1,2"]).code, 2);
}

#[test]
fn unknown_flags_and_missing_subcommand_are_usage_errors() {
    assert_eq!(eolab(&["pattern", "1,2", "--bogus"]).code, 2);
    assert_eq!(eolab(&[]).code, 2);
    assert_eq!(eolab(&["pattern", "1,2", "--format", "dot"]).code, 2);
}

#[test]
fn cmp_verdicts() {
    let cases = [
        ("3,1,4", "30,10,40", "verdict: equivalent (uniform)"),
        ("1,2", "2,1", "verdict: right ≤eo left only"),
        ("2,1", "1,2", "verdict: left ≤eo right only"),
        ("0,2,1", "1,0,2", "verdict: incomparable"),
    ];
    for (left, right, verdict) in cases {
        let r = eolab(&["cmp", "--left", left, "--right", right]);
        assert_eq!(r.code, 0);
        assert!(
            r.stdout.starts_with(verdict),
            "{left} vs {right}: {}",
            r.stdout
        );
    }

    let r = eolab(&[
        "cmp", "--left", "0,2,1", "--right", "1,0,2", "--format", "json",
    ]);
    let v = json(&r);
    assert_eq!(v["verdict"], "incomparable");
    assert_eq!(v["leftLeqRightViolation"], serde_json::json!([0, 1]));
    assert_eq!(v["rightLeqLeftViolation"], serde_json::json!([1, 2]));
}

#[test]
fn cmp_length_mismatch() {
    let r = eolab(&["cmp", "--left", "1,2", "--right", "1,2,3"]);
    assert_eq!(r.code, 2);
}

#[test]
fn poset_exports() {
    let r = eolab(&["poset", "--n", "3", "--format", "json"]);
    assert_eq!(r.code, 0);
    let v = json(&r);
    assert_eq!(v["nodes"].as_array().unwrap().len(), 6);
    assert_eq!(v["hasse"].as_array().unwrap().len(), 6);

    let r = eolab(&["poset", "--n", "3", "--format", "dot"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("digraph"));
    assert_eq!(r.stdout.matches(" -> ").count(), 6);

    let r = eolab(&["poset", "--n", "3"]);
    assert!(r.stdout.contains("cover edges: 6"));
}

#[test]
fn poset_chain_and_antichain() {
    let r = eolab(&["poset", "--n", "3", "--chain", "--format", "json"]);
    assert_eq!(r.code, 0);
    assert_eq!(
        json(&r)["chain"],
        serde_json::json!([[2, 1, 0], [2, 0, 1], [1, 0, 2], [0, 1, 2]])
    );

    let r = eolab(&["poset", "--n", "3", "--antichain", "2", "--format", "json"]);
    assert_eq!(r.code, 0);
    assert_eq!(
        json(&r)["antichain"],
        serde_json::json!([[0, 2, 1], [1, 0, 2]])
    );

    let r = eolab(&["poset", "--n", "2", "--antichain", "2"]);
    assert_eq!(r.code, 3);
    assert!(r.stdout.is_empty());
}

#[test]
fn poset_caps() {
    assert_eq!(eolab(&["poset", "--n", "7"]).code, 2);
    assert_eq!(eolab(&["poset", "--n", "0"]).code, 2);
    assert_eq!(eolab(&["poset", "--n", "9", "--cap", "9"]).code, 2);
    assert_eq!(
        eolab(&["poset", "--n", "7", "--chain", "--cap", "7"]).code,
        0
    );
}

#[test]
fn run_programs() {
    let evens = program("evens");
    let r = eolab(&["run", "--program", &evens, "--k", "5"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("emitted: 0,2,4,6,8\n"));
    assert!(r.stdout.contains("pattern: 0,1,2,3,4\n"));

    let r = eolab(&[
        "run",
        "--program",
        &program("odds_fast"),
        "--k",
        "6",
        "--format",
        "json",
    ]);
    assert_eq!(r.code, 0);
    let v = json(&r);
    assert!(v["emitted"]
        .as_array()
        .unwrap()
        .iter()
        .all(|x| x.as_u64().unwrap() % 2 == 1));
    assert_eq!(v["truncated"], false);
}

#[test]
fn run_with_schedule() {
    let r = eolab(&[
        "run",
        "--program",
        &program("descending"),
        "--k",
        "4",
        "--schedule",
        "min_first",
        "--window",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(r.code, 0);
    let v = json(&r);
    assert_eq!(v["scheduledPattern"], serde_json::json!([0, 1, 2, 3]));

    let r = eolab(&[
        "run",
        "--program",
        &program("evens"),
        "--k",
        "3",
        "--schedule",
        "explicit",
        "--window",
        "2",
        "--choices",
        "1,1,0",
    ]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("scheduled: 2,4,0\n"), "{}", r.stdout);

    let r = eolab(&[
        "run",
        "--program",
        &program("evens"),
        "--k",
        "3",
        "--schedule",
        "explicit",
        "--window",
        "2",
        "--choices",
        "2,0,0",
    ]);
    assert_eq!(r.code, 2);
}

#[test]
fn run_errors() {
    let malformed = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/malformed.json");
    assert_eq!(eolab(&["run", "--program", malformed, "--k", "3"]).code, 2);
    assert_eq!(
        eolab(&["run", "--program", &program("bad_identifier"), "--k", "3"]).code,
        2
    );
    assert_eq!(
        eolab(&["run", "--program", "/nonexistent.json", "--k", "3"]).code,
        2
    );

    let r = eolab(&[
        "run",
        "--program",
        &program("evens"),
        "--k",
        "40",
        "--round-cap",
        "10",
    ]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("truncated: true"));
}

#[test]
fn search_exit_codes() {
    let evens = program("evens");
    let r = eolab(&[
        "search", "--a", &evens, "--b", &evens, "--k", "5", "--window", "2",
    ]);
    assert_eq!(r.code, 0);

    let r = eolab(&[
        "search", "--a", &evens, "--b", &evens, "--k", "5", "--window", "2", "--format", "json",
    ]);
    let v = json(&r);
    assert_eq!(v["status"], "witness_found");
    assert_eq!(v["choicesA"], serde_json::json!([0, 0, 0, 0, 0]));
    assert_eq!(v["choicesB"], serde_json::json!([0, 0, 0, 0, 0]));

    let countdown = program("countdown");
    let r = eolab(&[
        "search", "--a", &evens, "--b", &countdown, "--k", "5", "--window", "1",
    ]);
    assert_eq!(r.code, 3);

    let r = eolab(&[
        "search",
        "--a",
        &countdown,
        "--b",
        &evens,
        "--k",
        "5",
        "--window",
        "5",
        "--relation",
        "uniform",
    ]);
    assert_eq!(r.code, 0);

    let r = eolab(&[
        "search",
        "--a",
        &evens,
        "--b",
        &countdown,
        "--k",
        "6",
        "--window",
        "3",
        "--relation",
        "uniform",
        "--max-nodes",
        "1",
    ]);
    assert_eq!(r.code, 5);
}

#[test]
fn search_insufficient_enumeration() {
    let r = eolab(&[
        "search",
        "--a",
        &program("odds_fast"),
        "--b",
        &program("evens"),
        "--k",
        "60",
        "--window",
        "1",
        "--round-cap",
        "20",
    ]);
    assert_eq!(r.code, 4, "{}", r.stderr);
}

#[test]
fn check_suites() {
    assert_eq!(
        eolab(&["check", "--suite", "theorem10", "--n", "5"]).code,
        0
    );
    assert_eq!(eolab(&["check", "--suite", "preorder", "--n", "6"]).code, 2);
    let r = eolab(&[
        "check",
        "--suite",
        "theorem3",
        "--n",
        "3",
        "--support",
        "4,8,15",
    ]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("result: pass"));

    let r = eolab(&["check", "--suite", "hasse", "--n", "4", "--format", "json"]);
    let v = json(&r);
    assert_eq!(v["suite"], "hasse");
    assert_eq!(v["failures"], serde_json::json!([]));

    assert_eq!(
        eolab(&[
            "check",
            "--suite",
            "hasse",
            "--n",
            "3",
            "--support",
            "1,2,3"
        ])
        .code,
        2
    );
    assert_eq!(
        eolab(&[
            "check",
            "--suite",
            "theorem3",
            "--n",
            "3",
            "--support",
            "1,1,2"
        ])
        .code,
        2
    );
}

#[test]
fn output_is_deterministic() {
    let args = [
        "search",
        "--a",
        &program("staggered"),
        "--b",
        &program("zigzag"),
        "--k",
        "6",
        "--window",
        "3",
        "--format",
        "json",
    ];
    let args: Vec<&str> = args.iter().map(|s| s.as_ref()).collect();
    let first = eolab(&args);
    let second = eolab(&args);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.code, second.code);

    let a = eolab(&["poset", "--n", "5", "--format", "dot"]);
    let b = eolab(&["poset", "--n", "5", "--format", "dot"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn in_process_matches_binary() {
    let via_lib = eolab_cli::run(["eolab", "cmp", "--left", "1,2", "--right", "2,1"]);
    let via_bin = eolab(&["cmp", "--left", "1,2", "--right", "2,1"]);
    assert_eq!(via_lib.code, via_bin.code);
    assert_eq!(via_lib.stdout, via_bin.stdout);
}
