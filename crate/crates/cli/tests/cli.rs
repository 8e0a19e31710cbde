//! End-to-end tests of the command line: exit codes, schema rejection,
//! verdict reporting, and byte-stable output.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hopfalgd"))
}

fn emit_example(name: &str, path: &str) {
    let out = bin()
        .args(["example", name, "--emit", path])
        .output()
        .unwrap();
    assert!(out.status.success(), "emit failed: {out:?}");
}

#[test]
fn emit_then_check_succeeds() {
    let path = std::env::temp_dir().join("hopfalgd_check_qc2.json");
    let path = path.to_str().unwrap();
    emit_example("qc2", path);
    let out = bin().args(["check", path]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("all axioms verified"));
}

#[test]
fn corrupted_document_exits_2_with_witness() {
    let path = std::env::temp_dir().join("hopfalgd_corrupt.json");
    let path_s = path.to_str().unwrap();
    emit_example("lu-ut2-q", path_s);
    // Corrupt the antipode: replace it with the identity matrix.
    let text = std::fs::read_to_string(&path).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let n = v["total"]["dim"].as_u64().unwrap() as usize;
    let id: Vec<Vec<String>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { "1".into() } else { "0".into() })
                .collect()
        })
        .collect();
    v["antipode"] = serde_json::to_value(id).unwrap();
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();

    let out = bin().args(["check", path_s]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("axiom-iv"), "missing witness in: {err}");
}

#[test]
fn garbage_input_exits_2() {
    let path = std::env::temp_dir().join("hopfalgd_garbage.json");
    std::fs::write(&path, "{not json").unwrap();
    let out = bin()
        .args(["check", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_example_exits_2() {
    let out = bin().args(["example", "nope"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("unknown builtin name"));
}

#[test]
fn qf_on_lu_ut2_reports_all_false_with_exit_0() {
    let path = std::env::temp_dir().join("hopfalgd_qf_lu.json");
    let path = path.to_str().unwrap();
    emit_example("lu-ut2-q", path);
    let out = bin()
        .args(["qf", path, "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success(), "false verdicts still exit 0");
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let verdicts = v["verdicts"].as_array().unwrap();
    assert_eq!(verdicts.len(), 8);
    for q in verdicts {
        assert_eq!(q["result"], serde_json::json!(false));
        assert_eq!(q["qf_system_criterion"], serde_json::json!(false));
        assert_eq!(q["integral_criterion"], serde_json::json!(false));
    }
}

#[test]
fn reports_are_byte_stable_across_runs() {
    let path = std::env::temp_dir().join("hopfalgd_stable.json");
    let path = path.to_str().unwrap();
    emit_example("sweedler-h4", path);
    let run = || {
        bin()
            .args(["frobenius", path, "--seed", "7", "--format", "json"])
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    // Emit -> load -> emit is idempotent.
    let path2 = std::env::temp_dir().join("hopfalgd_stable2.json");
    let path2 = path2.to_str().unwrap();
    emit_example("sweedler-h4", path2);
    assert_eq!(std::fs::read(path).unwrap(), std::fs::read(path2).unwrap());
}

#[test]
fn integrals_lists_six_spaces() {
    let path = std::env::temp_dir().join("hopfalgd_int.json");
    let path = path.to_str().unwrap();
    emit_example("qc2", path);
    let out = bin()
        .args(["integrals", path, "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["spaces"].as_array().unwrap().len(), 6);
    assert_eq!(v["characterizations"]["pass"], serde_json::json!(true));
}

#[test]
fn prime_field_example_round_trips_through_maschke() {
    let path = std::env::temp_dir().join("hopfalgd_f5.json");
    let path = path.to_str().unwrap();
    emit_example("f5c5", path);
    let out = bin()
        .args(["maschke", path, "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["separable"], serde_json::json!(false));
}
