//! End-to-end tests against the built binary: exit codes, report formats,
//! and byte-for-byte reproducibility of `corpus --json --stable`.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bfi() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bfi"))
}

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .unwrap()
}

fn model(name: &str) -> String {
    root().join("models").join(name).display().to_string()
}

fn write_temp(name: &str, content: &str) -> String {
    let path = std::env::temp_dir().join(name);
    std::fs::write(&path, content).unwrap();
    path.display().to_string()
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn translate_prints_the_assembled_formula() {
    let file = write_temp("bfi_cli_translate.fml", "(all z 0 (atom P z))\n");
    let out = bfi().args(["translate", "--u", &file]).output().unwrap();
    assert!(out.status.success());
    assert_eq!(
        stdout_of(&out).trim(),
        "(all w 0 (imp (maj w w) (allb z 0 w (atom P z))))"
    );
}

#[test]
fn translate_show_tuples_and_styles() {
    let file = write_temp("bfi_cli_tuples.fml", "(not (all z 0 (atom P z)))\n");
    let out = bfi()
        .args([
            "translate",
            "--u",
            "--show-tuples",
            "--style",
            "unicode",
            &file,
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("outer: ()"), "{text}");
    assert!(text.contains("inner: (0)"), "{text}");
    assert!(text.contains('⊴'), "{text}");
}

#[test]
fn check_pass_fail_skip_exit_codes() {
    let pass = write_temp("bfi_cli_pass.fml", "(all z 0 (atom P z))\n");
    let out = bfi()
        .args(["check", "--eq4", "--model", &model("n1.json"), &pass])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", stdout_of(&out));

    // unknown predicate: the check cannot be established, exit 1
    let fail = write_temp("bfi_cli_fail.fml", "(atom Unknown)\n");
    let out = bfi()
        .args(["check", "--eq4", "--model", &model("n1.json"), &fail])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    // level-2 quantifier at N=2: domain too large, exit 3
    let large = write_temp(
        "bfi_cli_large.fml",
        "(all F (-> (-> 0 0) 0) (leq (ap F (c succ)) (c 1)))\n",
    );
    let out = bfi()
        .args(["check", "--mono", "--model", &model("n2.json"), &large])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "{}", stdout_of(&out));
}

#[test]
fn parse_and_usage_errors_exit_2() {
    let bad = write_temp("bfi_cli_bad.fml", "(maj x x\n");
    let out = bfi()
        .args(["check", "--eq4", "--model", &model("n1.json"), &bad])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("parse error"), "{err}");

    // missing the required translation flag
    let out = bfi().args(["translate", &bad]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_json_report_shape() {
    let file = write_temp("bfi_cli_json.fml", "(atom Q)\n");
    let out = bfi()
        .args([
            "check",
            "--char",
            "--model",
            &model("n1.json"),
            "--json",
            &file,
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    let report = &value["reports"][0];
    assert_eq!(report["check"], "char");
    assert_eq!(report["outcome"], "pass");
    assert_eq!(report["model"]["base_size"], 1);
    assert!(report["millis"].is_u64());
}

#[test]
fn corpus_stable_json_is_byte_identical_and_exits_zero() {
    let corpus = root().join("corpus").display().to_string();
    let run = || {
        bfi()
            .args([
                "corpus",
                "--model",
                &model("n1.json"),
                "--json",
                "--stable",
                &corpus,
            ])
            .output()
            .unwrap()
    };
    let first = run();
    let second = run();
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(
        first.stdout, second.stdout,
        "corpus reports must be reproducible"
    );
    let value: serde_json::Value = serde_json::from_str(stdout_of(&first).trim()).unwrap();
    assert_eq!(value["summary"]["fail"], 0);
    assert_eq!(value["summary"]["skip"], 0);
    assert!(value["summary"]["total"].as_u64().unwrap() >= 25 * 7);
}

#[test]
fn corpus_respects_check_selection() {
    let corpus = root().join("corpus").display().to_string();
    let out = bfi()
        .args([
            "corpus",
            "--model",
            &model("n2.json"),
            "--checks",
            "bounded,types",
            "--json",
            "--stable",
            &corpus,
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(stdout_of(&out).trim()).unwrap();
    let reports = value["reports"].as_array().unwrap();
    assert!(reports
        .iter()
        .all(|r| r["check"] == "bounded" || r["check"] == "types"));

    let out = bfi()
        .args([
            "corpus",
            "--model",
            &model("n1.json"),
            "--checks",
            "bogus",
            &corpus,
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn model_info_reports_axioms() {
    let out = bfi()
        .args([
            "model-info",
            "--model",
            &model("n2.json"),
            "--max-level",
            "1",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("type 0: 3 elements"), "{text}");
    assert!(text.contains("pass"), "{text}");
}

#[test]
fn explain_cites_clauses() {
    let file = write_temp("bfi_cli_explain.fml", "(not (all z 0 (atom P z)))\n");
    let out = bfi().args(["explain", "--u", &file]).output().unwrap();
    assert!(out.status.success());
    let text = stdout_of(&out);
    let pos2 = text.find("U clause 2").expect("clause 2 cited");
    let pos5 = text.find("U clause 5").expect("clause 5 cited");
    let pos1 = text.find("U clause 1").expect("clause 1 cited");
    assert!(pos2 < pos5 && pos5 < pos1, "clauses out of order:\n{text}");
    let out = bfi().args(["explain", "--k", &file]).output().unwrap();
    assert!(stdout_of(&out).contains("K clause 2"));
}

#[test]
fn cli_matches_library_translation() {
    // the command is a thin adapter: identical output to the library call
    let source = "(all z 0 (not (all u 0 (not (atom R z u)))))";
    let file = write_temp("bfi_cli_thin.fml", source);
    let out = bfi().args(["translate", "--kb", &file]).output().unwrap();
    let sig = bfi_core::sexpr::ConstSignature::builtin();
    let f = bfi_core::sexpr::parse_formula(source, &sig).unwrap();
    let expect = bfi_core::bounded::bfi(&bfi_core::krivine::krivine(&f).unwrap()).unwrap();
    assert_eq!(
        stdout_of(&out).trim(),
        bfi_core::printer::format_formula(&expect, bfi_core::printer::Style::Sexpr)
    );
}
