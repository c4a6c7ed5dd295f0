use std::path::Path;
use std::process::{Command, Output};

fn knowtruth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knowtruth"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn montague_proof_file_derives_falsum() {
    let o = knowtruth(&["check", "proofs/montague.proof"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("⊥ derived in PA+UT^K+NEC^K"));
}

#[test]
fn tampered_proofs_are_rejected() {
    let text = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("proofs/montague.proof")).unwrap();
    let bad = text.replacen("nec_k1", "nec_t", 1);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.proof");
    std::fs::write(&path, bad).unwrap();
    let o = knowtruth(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("rejected"));
    std::fs::write(&path, "system: Base\n1 | 0 = | comp\n").unwrap();
    assert_eq!(knowtruth(&["check", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn scripts_table_and_emitted_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = knowtruth(&["scripts", "run", "--all", "--emit", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.contains(" pass ")).count(), 16);
    let u4 = dir.path().join("u4.proof");
    assert_eq!(knowtruth(&["check", u4.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(knowtruth(&["scripts", "run", "nope"]).status.code(), Some(2));
}

#[test]
fn parse_code_and_diag() {
    let o = knowtruth(&["code", "0 = 0"]);
    let code = stdout(&o).trim().to_string();
    let back = knowtruth(&["code", "--decode", &code]);
    assert_eq!(stdout(&back).trim(), "0 = 0");
    assert_eq!(knowtruth(&["code", "--decode", "4"]).status.code(), Some(1));
    assert_eq!(knowtruth(&["parse", "forall ("]).status.code(), Some(2));
    let d = knowtruth(&["diag", "~T(v0)"]);
    assert_eq!(d.status.code(), Some(0));
    assert!(stdout(&d).contains("accepted"));
    assert_eq!(knowtruth(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn revise_reports_stabilization() {
    let o = knowtruth(&[
        "revise",
        "frames/reflexive.json",
        "--fragment",
        "frames/fragment.json",
        "--target",
        "kt-ubf-ia",
        "--max-iter",
        "12",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["m"].as_u64().unwrap() <= 8);
    assert_eq!(v["falsified"].as_array().unwrap().len(), 0);
    assert!(v["header"][0].as_str().unwrap().contains("term pool"));
}

#[test]
fn systems_listing() {
    let o = knowtruth(&["systems"]);
    assert!(stdout(&o).contains("KT+UBF+IA"));
    assert_eq!(knowtruth(&["systems", "Nope"]).status.code(), Some(2));
}
