//! End-to-end tests that run the compiled binary against the JSON
//! fixtures in `tests/data` and compare stdout lines and exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_entrolab"))
        .args(args)
        .env_remove("ENTROLAB_SEED")
        .output()
        .expect("binary should spawn")
}

fn stdout_lines(output: &Output) -> Vec<String> {
    String::from_utf8_lossy(&output.stdout)
        .lines()
        .map(str::to_string)
        .collect()
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("no exit code")
}

/// One golden invocation: arguments, one exact stdout line that must
/// appear (or None for error-only cases), and the required exit code.
struct Golden {
    label: &'static str,
    args: Vec<String>,
    line: Option<&'static str>,
    exit: i32,
}

impl Golden {
    fn check(&self) -> Result<(), String> {
        let args: Vec<&str> = self.args.iter().map(String::as_str).collect();
        let out = run(&args);
        if code(&out) != self.exit {
            return Err(format!(
                "{}: exit {} (wanted {}); stderr: {}",
                self.label,
                code(&out),
                self.exit,
                String::from_utf8_lossy(&out.stderr).trim()
            ));
        }
        if let Some(want) = self.line {
            let lines = stdout_lines(&out);
            if !lines.iter().any(|l| l == want) {
                return Err(format!(
                    "{}: missing line {:?}; stdout was:\n{}",
                    self.label,
                    want,
                    lines.join("\n")
                ));
            }
        }
        if self.exit == 2 && out.stderr.is_empty() {
            return Err(format!("{}: expected a diagnostic on stderr", self.label));
        }
        Ok(())
    }
}

fn path_arg(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn criterion8_cli_golden_invocations() {
    let goldens = vec![
        Golden {
            label: "classical joint",
            args: vec!["classical".into(), path_arg("joint_half.json")],
            line: Some("H(A:B) = 1.000000 bits"),
            exit: 0,
        },
        Golden {
            label: "classical relative p=q",
            args: vec![
                "classical".into(),
                "--relative".into(),
                path_arg("uniform2.json"),
                path_arg("uniform2.json"),
            ],
            line: Some("H(p||q) = 0.000000 bits"),
            exit: 0,
        },
        Golden {
            label: "classical missing file",
            args: vec!["classical".into(), path_arg("no_such_file.json")],
            line: None,
            exit: 2,
        },
        Golden {
            label: "quantum maximally mixed",
            args: vec!["quantum".into(), path_arg("max_mixed2.json")],
            line: Some("S = 0.693147 nats"),
            exit: 0,
        },
        Golden {
            label: "quantum bell conditional",
            args: vec![
                "quantum".into(),
                path_arg("bell.json"),
                "--dims".into(),
                "2,2".into(),
            ],
            line: Some("S(A|B) = -0.693147 nats"),
            exit: 0,
        },
        Golden {
            label: "quantum subentropy",
            args: vec![
                "quantum".into(),
                path_arg("max_mixed2.json"),
                "--subentropy".into(),
            ],
            line: Some("Q = 0.193147 nats"),
            exit: 0,
        },
        Golden {
            label: "holevo orthogonal",
            args: vec!["holevo".into(), path_arg("ensemble_orthogonal.json")],
            line: Some("chi = 0.693147 nats"),
            exit: 0,
        },
        Golden {
            label: "holevo measured",
            args: vec![
                "holevo".into(),
                path_arg("ensemble_orthogonal.json"),
                path_arg("povm_z.json"),
            ],
            line: Some("measured = 0.693147 ≤ chi"),
            exit: 0,
        },
        Golden {
            label: "holevo nonorthogonal",
            args: vec!["holevo".into(), path_arg("ensemble_mixed.json")],
            line: Some("chi = 0.416496 nats"),
            exit: 0,
        },
        Golden {
            label: "sanov identical states",
            args: vec![
                "sanov".into(),
                path_arg("max_mixed2.json"),
                path_arg("max_mixed2.json"),
                "--n".into(),
                "100".into(),
            ],
            line: Some("P_N = 1.000000"),
            exit: 0,
        },
        Golden {
            label: "sanov twenty copies",
            args: vec![
                "sanov".into(),
                path_arg("ket0.json"),
                path_arg("max_mixed2.json"),
                "--n".into(),
                "20".into(),
            ],
            line: Some("P_N = 9.5367e-7"),
            exit: 0,
        },
        Golden {
            label: "sanov disjoint supports",
            args: vec![
                "sanov".into(),
                path_arg("ket0.json"),
                path_arg("ket1.json"),
                "--n".into(),
                "5".into(),
            ],
            line: Some("P_N = 0"),
            exit: 0,
        },
        Golden {
            label: "check classical suite",
            args: vec![
                "check".into(),
                "--suite".into(),
                "classical".into(),
                "--trials".into(),
                "1000".into(),
                "--seed".into(),
                "42".into(),
            ],
            line: Some("pass"),
            exit: 0,
        },
        Golden {
            label: "check single name",
            args: vec![
                "check".into(),
                "--suite".into(),
                "eq29_strong_subadditivity".into(),
                "--trials".into(),
                "300".into(),
            ],
            line: Some("pass"),
            exit: 0,
        },
        Golden {
            label: "check unknown name",
            args: vec!["check".into(), "--suite".into(), "nonsense".into()],
            line: None,
            exit: 2,
        },
    ];

    let failures: Vec<String> = goldens.iter().filter_map(|g| g.check().err()).collect();
    let pass = failures.is_empty();
    println!(
        "acceptance criterion 8 (CLI golden invocations): {}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "golden invocation failures:\n{}", failures.join("\n"));
}

#[test]
fn report_is_stable_across_runs_modulo_elapsed() {
    let dir = tempfile::tempdir().expect("tempdir");
    let mut reports = Vec::new();
    for run_idx in 0..2 {
        let out_path = dir.path().join(format!("report{run_idx}.json"));
        let out = run(&[
            "check",
            "--suite",
            "classical",
            "--trials",
            "25",
            "--seed",
            "7",
            "--report",
            out_path.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0);
        let text = std::fs::read_to_string(&out_path).expect("report written");
        let mut value: serde_json::Value = serde_json::from_str(&text).expect("valid JSON");
        for check in value["checks"].as_array_mut().expect("checks array") {
            check["elapsed_ms"] = 0.into();
        }
        reports.push(value);
    }
    assert_eq!(reports[0], reports[1]);
}

#[test]
fn seed_env_var_sets_the_default() {
    let dir = tempfile::tempdir().expect("tempdir");
    let out_path = dir.path().join("seeded.json");
    let out = Command::new(env!("CARGO_BIN_EXE_entrolab"))
        .args([
            "check",
            "--suite",
            "eq2_grouping_axiom",
            "--trials",
            "3",
            "--report",
            out_path.to_str().unwrap(),
        ])
        .env("ENTROLAB_SEED", "123")
        .output()
        .expect("binary should spawn");
    assert_eq!(code(&out), 0);
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(value["seed"], 123);
}

#[test]
fn failing_check_exits_one_and_still_writes_the_report() {
    let dir = tempfile::tempdir().expect("tempdir");
    let out_path = dir.path().join("failing.json");
    let out = run(&[
        "check",
        "--suite",
        "mutant_subadditivity_reversed",
        "--trials",
        "5",
        "--report",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 1);
    let lines = stdout_lines(&out);
    assert_eq!(lines.last().map(String::as_str), Some("fail"));
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(value["pass"], false);
    assert!(!value["counterexamples"].as_array().unwrap().is_empty());
}

#[test]
fn dimension_mismatch_exits_four() {
    let out = run(&["quantum", &path_arg("max_mixed2.json"), "--dims", "2,2"]);
    assert_eq!(code(&out), 4);
    let out = run(&[
        "sanov",
        &path_arg("bell.json"),
        &path_arg("ket0.json"),
        "--n",
        "1",
    ]);
    assert_eq!(code(&out), 4);
}
