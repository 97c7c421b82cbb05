use std::io::Write;
use std::process::Command;

use six_core::algebra::{BuiltinAlgebra, FiniteAlgebra};

fn six(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_six")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn temp_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn check_prints_countermodel_and_fails() {
    let (code, out, _) = six(&["check", "p, ~p |= q"]);
    assert_eq!(code, 1);
    assert_eq!(out, "INVALID  p=N, q=0 @ bound=N\n");
}

#[test]
fn check_valid_query() {
    let (code, out, _) = six(&["check", "p & q |= q | r"]);
    assert_eq!((code, out.as_str()), (0, "VALID\n"));
    let (code, out, _) = six(&["check", "|= #p | ~#p"]);
    assert_eq!((code, out.as_str()), (0, "VALID\n"));
}

#[test]
fn check_on_other_algebras() {
    // excluded middle fails on L3 at the midpoint
    let (code, out, _) = six(&["--algebra", "L3", "check", "|= p | ~p"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("INVALID"), "{out}");
    let (code, _, _) = six(&["--algebra", "L2", "check", "|= p | ~p"]);
    assert_eq!(code, 0);
}

#[test]
fn table_of_consistency_operator() {
    let (code, out, _) = six(&["table", "o p"]);
    assert_eq!(code, 0);
    let rows: Vec<Vec<&str>> = out.lines().skip(1).map(|l| l.split_whitespace().collect()).collect();
    let expected = [("0", "1"), ("1/3", "0"), ("N", "0"), ("B", "0"), ("2/3", "0"), ("1", "1")];
    assert_eq!(rows.len(), 6);
    for (row, (x, v)) in rows.iter().zip(expected) {
        assert_eq!(row, &vec![x, "|", v]);
    }
}

#[test]
fn table_structured() {
    let (code, out, _) = six(&["--format", "structured", "table", "p & q"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["table"]["vars"], serde_json::json!(["p", "q"]));
    assert_eq!(v["table"]["rows"].as_array().unwrap().len(), 36);
    assert_eq!(v["table"]["rows"][7]["value"], "1/3");
}

#[test]
fn nf_worked_example() {
    let (code, out, _) = six(&["nf", "#((p & ~#q) | #q)"]);
    assert_eq!((code, out.as_str()), (0, "(#p | #q) & (~#q | #q)  blocks=4\n"));
}

#[test]
fn nf_respects_block_cap() {
    let (code, _, err) = six(&["--max-blocks", "3", "nf", "#((p & ~#q) | #q)"]);
    assert_eq!(code, 2);
    assert!(err.contains("cap"), "{err}");
}

#[test]
fn variable_budget_is_enforced() {
    let (code, _, err) = six(&["--max-vars", "2", "check", "p, q |= r"]);
    assert_eq!(code, 2);
    assert!(err.contains("variables"), "{err}");
}

#[test]
fn prove_and_verify_round_trip() {
    for expand in [false, true] {
        let mut args = vec!["--format", "structured", "prove", "~(p & q) => ~p | ~q"];
        if expand {
            args.insert(0, "--expand-macros");
        }
        let (code, out, _) = six(&args);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["outcome"], "proved");
        let proof = temp_file(&v["proof"].to_string());
        let (code, out, _) = six(&["verify", proof.path().to_str().unwrap()]);
        assert_eq!(code, 0, "{out}");
        assert!(out.starts_with("VERIFIED  ~(p & q) => ~p | ~q"), "{out}");
    }
}

#[test]
fn prove_plain_and_refuted() {
    let (code, out, _) = six(&["prove", "p => #p"]);
    assert_eq!(code, 0);
    assert_eq!(out, "PROVED  p => #p\np => #p    (first-modal)\n");
    let (code, out, _) = six(&["prove", "p => q"]);
    assert_eq!((code, out.as_str()), (1, "REFUTED  p=1, q=0 @ bound=1\n"));
}

#[test]
fn verify_rejects_bad_proofs() {
    let bad = r#"{"rule":"axiom","sequent":"p => q","principal":null,"macro":null,"args":[],"premises":[]}"#;
    let f = temp_file(bad);
    let (code, out, _) = six(&["verify", f.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.starts_with("REJECTED"), "{out}");

    let f = temp_file("{ not json");
    let (code, _, _) = six(&["verify", f.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    let (code, _, _) = six(&["verify", "/nonexistent/proof.json"]);
    assert_eq!(code, 2);
}

#[test]
fn lfi_audit_is_clean() {
    let (code, out, _) = six(&["lfi", "audit"]);
    assert_eq!(code, 0);
    assert!(out.trim_end().ends_with("CLEAN"));
    let (code, alias, _) = six(&["lfi-audit"]);
    assert_eq!((code, alias), (0, out));
}

#[test]
fn dat_agrees() {
    let (code, out, _) = six(&["dat", "p, ~p |= q"]);
    assert_eq!(code, 0);
    assert_eq!(out, "classical: VALID\nwith consistency hypotheses: VALID\nAGREE\n");
    let (code, out, _) = six(&["dat", "p |= q"]);
    assert_eq!(code, 0);
    assert!(out.contains("classical: INVALID"));
    let (code, _, err) = six(&["dat", "#p |= p"]);
    assert_eq!(code, 2);
    assert!(err.contains("classical"), "{err}");
}

#[test]
fn algebra_from_table_file() {
    let b4 = FiniteAlgebra::builtin(BuiltinAlgebra::B4DeMorgan);
    let f = temp_file(&b4.to_table_text());
    let path = f.path().to_str().unwrap();
    let (code, out, _) = six(&["--algebra", path, "table", "~p"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 5);
    // the four-element De Morgan algebra is not a Stone algebra
    let (code, out, _) = six(&["--algebra", path, "algebra-audit"]);
    assert_eq!(code, 1);
    assert!(out.contains("fails"), "{out}");
    let (code, _, _) = six(&["algebra-audit"]);
    assert_eq!(code, 0);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(six(&[]).0, 2);
    assert_eq!(six(&["frobnicate"]).0, 2);
    assert_eq!(six(&["check", "p |="]).0, 2);
    assert_eq!(six(&["--algebra", "L7", "check", "p |= p"]).0, 2);
    assert_eq!(six(&["--algebra", "L3", "prove", "p => p"]).0, 2);
    assert_eq!(six(&["--format", "xml", "table", "p"]).0, 2);
    assert_eq!(six(&["--help"]).0, 0);
}

#[test]
fn run_is_deterministic() {
    let args = ["six", "prove", "#(p & ~q), ~#(p | q) =>"];
    assert_eq!(six_cli::run(args), six_cli::run(args));
}
