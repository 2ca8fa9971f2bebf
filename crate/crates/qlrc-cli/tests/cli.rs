//! End-to-end CLI behavior: exit codes, output formats, JSON determinism,
//! and round-tripping construct output through verify.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn qlrc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qlrc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn qlrc_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_qlrc"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .expect("piped stdin")
        .write_all(input.as_bytes())
        .expect("stdin accepts input");
    child.wait_with_output().expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(exit_code(&qlrc(&["--help"])), 0);
    assert_eq!(exit_code(&qlrc(&["--version"])), 0);
    assert_eq!(exit_code(&qlrc(&["construct", "--help"])), 0);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(exit_code(&qlrc(&["--bogus"])), 1);
    assert_eq!(exit_code(&qlrc(&["construct", "--family", "nope"])), 1);
    assert_eq!(exit_code(&qlrc(&["construct", "--family", "eel41"])), 1);
    assert_eq!(exit_code(&qlrc(&["verify", "--spec", "/no/such/file"])), 1);
    let bad_json = qlrc_stdin(&["verify", "--spec", "-"], "not json");
    assert_eq!(exit_code(&bad_json), 1);
}

#[test]
fn math_failures_exit_two() {
    // 1 - 3 is not a square in GF(5)
    let out = qlrc(&[
        "construct",
        "--family",
        "eel41",
        "--q",
        "5",
        "--m",
        "5",
        "--h",
        "3",
        "--t",
        "1",
        "--d",
        "2",
    ]);
    assert_eq!(exit_code(&out), 2);
    assert_eq!(exit_code(&qlrc(&["table", "--q", "10"])), 2);
}

#[test]
fn construct_round_trips_through_verify() {
    let instances: Vec<Vec<&str>> = vec![
        vec!["--family", "el36_3", "--q", "5", "--i", "1", "--j", "1"],
        vec![
            "--family", "eel41", "--q", "9", "--m", "8", "--h", "3", "--t", "1", "--d", "2",
        ],
        vec![
            "--family",
            "euclidean_optimal",
            "--q",
            "3",
            "--t",
            "1",
            "--d",
            "2",
        ],
        vec!["--family", "enlarged", "--q", "9", "--m", "4"],
        vec![
            "--family",
            "main_euclidean",
            "--q",
            "9",
            "--h",
            "3",
            "--m",
            "5",
            "--klist",
            "4,4,3",
        ],
        vec![
            "--family",
            "main_euclidean2",
            "--q",
            "9",
            "--h",
            "4",
            "--m",
            "5",
            "--klist",
            "4,4,3,3",
        ],
        vec![
            "--family", "el36_4", "--q", "9", "--h", "5", "--i", "1", "--j", "1",
        ],
        vec![
            "--family",
            "main_hermitian",
            "--q0",
            "3",
            "--klist",
            "9,9,8,8,8,8,8,8,8",
        ],
        vec!["--family", "el46", "--q0", "3", "--a", "1", "--b", "1"],
    ];
    for inst in instances {
        let mut args = vec!["construct"];
        args.extend(&inst);
        args.extend(["--out", "json"]);
        let built = qlrc(&args);
        assert_eq!(exit_code(&built), 0, "construct {inst:?}");
        let verified = qlrc_stdin(&["verify", "--spec", "-"], &stdout_str(&built));
        assert_eq!(
            exit_code(&verified),
            0,
            "verify {inst:?}: {}",
            String::from_utf8_lossy(&verified.stderr)
        );
    }
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "construct",
        "--family",
        "eel41",
        "--q",
        "9",
        "--m",
        "8",
        "--h",
        "3",
        "--t",
        "1",
        "--d",
        "2",
        "--out",
        "json",
    ];
    let first = qlrc(&args);
    let second = qlrc(&args);
    assert_eq!(exit_code(&first), 0);
    assert_eq!(first.stdout, second.stdout);

    let t1 = qlrc(&["table", "--q", "3", "--out", "json"]);
    let t2 = qlrc(&["table", "--q", "3", "--out", "json"]);
    assert_eq!(exit_code(&t1), 0);
    assert_eq!(t1.stdout, t2.stdout);
}

#[test]
fn verify_accepts_raw_specs_and_flags_noncontaining_ones() {
    let built = qlrc(&[
        "construct",
        "--family",
        "euclidean_optimal",
        "--q",
        "3",
        "--t",
        "1",
        "--d",
        "2",
        "--out",
        "json",
    ]);
    assert_eq!(exit_code(&built), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout_str(&built)).unwrap();
    let spec = value
        .get("spec")
        .expect("construct output embeds its product spec");
    let verified = qlrc_stdin(&["verify", "--spec", "-"], &spec.to_string());
    assert_eq!(exit_code(&verified), 0);

    // a pure row space with no dual containment: three copies of RS(3, 1)
    let f3 = qlrc_core::make_field(3, 1).unwrap();
    let consts = vec![qlrc_core::rs(&f3, 3, 1).unwrap(); 3];
    let (a, _) =
        qlrc_core::euclidean_selforth_matrix(&f3, 3, qlrc_core::SelforthVariant::FullQ).unwrap();
    let spec = qlrc_core::MpcSpec::new(consts, a, None).unwrap();
    let text = serde_json::to_string(&spec.descriptor()).unwrap();
    let rejected = qlrc_stdin(&["verify", "--spec", "-"], &text);
    assert_eq!(exit_code(&rejected), 2);
    let shown = stdout_str(&rejected);
    assert!(shown.contains("\"verdict\":false"), "{shown}");
}

#[test]
fn distance_respects_budget_flag_and_env() {
    let built = qlrc(&[
        "construct",
        "--family",
        "euclidean_optimal",
        "--q",
        "3",
        "--t",
        "1",
        "--d",
        "2",
        "--out",
        "json",
    ]);
    let json = stdout_str(&built);

    let exact = qlrc_stdin(&["distance", "--spec", "-"], &json);
    assert_eq!(exit_code(&exact), 0);
    let cert: serde_json::Value = serde_json::from_str(&stdout_str(&exact)).unwrap();
    assert_eq!(cert["value"], 2);
    assert_eq!(cert["kind"], "exact");

    // constituent distances fall back to certified lower bounds when the
    // budget cannot cover enumeration
    let mut child = Command::new(env!("CARGO_BIN_EXE_qlrc"))
        .args(["distance", "--spec", "-"])
        .env("QLRC_BUDGET", "1")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(json.as_bytes())
        .unwrap();
    let starved = child.wait_with_output().unwrap();
    let cert: serde_json::Value =
        serde_json::from_str(std::str::from_utf8(&starved.stdout).unwrap()).unwrap();
    assert_eq!(cert["kind"], "lower_bound");

    // an explicit flag beats the environment
    let mut child = Command::new(env!("CARGO_BIN_EXE_qlrc"))
        .args(["distance", "--spec", "-", "--budget", "4194304"])
        .env("QLRC_BUDGET", "1")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(json.as_bytes())
        .unwrap();
    let flagged = child.wait_with_output().unwrap();
    let cert: serde_json::Value =
        serde_json::from_str(std::str::from_utf8(&flagged.stdout).unwrap()).unwrap();
    assert_eq!(cert["kind"], "exact");
}

#[test]
fn tsv_and_pretty_formats() {
    let table = qlrc(&["table", "--q", "3", "--out", "tsv"]);
    let text = stdout_str(&table);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n\tk\td\tr\tdelta\tsources\tverification"
    );
    assert!(lines.clone().count() >= 2);
    assert!(lines.all(|l| l.split('\t').count() == 7));

    let pretty = qlrc(&[
        "construct",
        "--family",
        "el36_3",
        "--q",
        "5",
        "--i",
        "1",
        "--j",
        "1",
        "--out",
        "pretty",
    ]);
    let text = stdout_str(&pretty);
    assert!(text.contains("[[25, 15, 2]]_5"), "{text}");
    assert!(text.contains("OPTIMAL"), "{text}");

    let matrix_tsv = qlrc(&["matrix", "--kind", "adot", "--p", "3", "--out", "tsv"]);
    let text = stdout_str(&matrix_tsv);
    assert!(text.lines().any(|l| l.starts_with("vandermonde\t")));
    assert!(text.lines().any(|l| l.starts_with("gram_euclidean\t")));
}
