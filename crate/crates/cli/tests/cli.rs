use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use grmds::{ResultDoc, VerificationReport};
use serde_json::Value;

const GR25_RING: [&str; 10] = [
    "--p", "5", "--s", "2", "--m", "3", "--e", "2", "--modulus", "3,3,0,1",
];
const DEG8_RING: [&str; 8] = ["--p", "2", "--s", "2", "--m", "8", "--modulus", "1,1,0,0,0,0,1,1,1"];

fn grmds(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grmds"))
        .args(args)
        .env("SOURCE_DATE_EPOCH", "1700000000")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).unwrap_or_else(|e| panic!("{e}: {}", stdout(out)))
}

fn with<'a>(base: &[&'a str], extra: &[&'a str]) -> Vec<&'a str> {
    base.iter().chain(extra).copied().collect()
}

fn write(dir: &Path, name: &str, value: &Value) -> String {
    let path = dir.join(name);
    fs::write(&path, serde_json::to_string(value).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn construct_involutory_example() {
    let args = with(
        &["construct"],
        &with(
            &GR25_RING,
            &["--family", "from-poly", "--g", "1,2,2,1", "--t", "3", "--check-involutory"],
        ),
    );
    let out = grmds(&args);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["report"]["mds"], true);
    assert_eq!(v["report"]["quasi_involutory"], true);
    assert_eq!(v["matrix"]["entries"][1][1], serde_json::json!([3, 0, 0]));
}

#[test]
fn construct_consecutive_powers_example() {
    let args = with(
        &["--json", "construct", "--family", "consecutive_powers", "--k", "3", "--b", "1"],
        &DEG8_RING,
    );
    let out = grmds(&args);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let doc: ResultDoc = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(doc.report.mds);
    // Round trip through the document types.
    let again: ResultDoc = serde_json::from_str(&serde_json::to_string(&doc).unwrap()).unwrap();
    assert_eq!(again, doc);
    assert_eq!(doc.matrix.to_matrix().unwrap().rows(), 3);
}

#[test]
fn construct_rejects_non_nilpotent_eta() {
    let args = with(
        &["construct", "--family", "root_perturbed", "--k", "3", "--eta", "1,0,0"],
        &DEG8_RING,
    );
    let out = grmds(&args);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("not nilpotent"), "{}", stderr(&out));
}

#[test]
fn construct_from_spec_file_with_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let spec = serde_json::json!({
        "family": "coeff_perturbed",
        "ring": {"p": 2, "s": 2, "m": 4, "modulus": [1, 1, 0, 0, 1], "sigma_exponent": 1},
        "k": 2,
        "eta": [[2], [0, 2]],
        "base_spec": {
            "family": "consecutive_powers",
            "ring": {"p": 2, "s": 2, "m": 4, "modulus": [1, 1, 0, 0, 1], "sigma_exponent": 1},
            "k": 2
        }
    });
    let spec_path = write(dir.path(), "spec.json", &spec);
    let catalog = dir.path().join("catalog.jsonl");
    let catalog = catalog.to_str().unwrap();
    let out = grmds(&["--catalog", catalog, "construct", "--spec", &spec_path, "--oracle"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(json(&out)["report"]["min_distance"], 3);
    let lines: Vec<Value> = fs::read_to_string(catalog)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["mds"], true);
    assert_eq!(lines[0]["min_distance"], 3);
    assert_eq!(lines[0]["timestamp"], 1700000000);
}

#[test]
fn verify_matrix_files() {
    let dir = tempfile::tempdir().unwrap();
    let ring = serde_json::json!({"p": 5, "s": 2, "m": 3, "modulus": [3, 3, 0, 1], "sigma_exponent": 2});
    let ng = serde_json::json!({
        "ring": ring, "rows": 3, "cols": 3,
        "entries": [[[24], [23], [23]], [[2], [3], [2]], [[23], [23], [24]]]
    });
    let out = grmds(&["verify", "--matrix", &write(dir.path(), "ng.json", &ng)]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report: VerificationReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report.mds && report.witness.is_none());

    let identity = serde_json::json!({
        "ring": ring, "rows": 2, "cols": 2,
        "entries": [[[1], [0]], [[0], [1]]]
    });
    let out = grmds(&["verify", "--matrix", &write(dir.path(), "id.json", &identity)]);
    assert_eq!(out.status.code(), Some(2));
    let report: VerificationReport = serde_json::from_str(&stdout(&out)).unwrap();
    let witness = report.witness.unwrap();
    assert_eq!((witness.rows.len(), witness.cols.len()), (1, 1));

    let f4 = serde_json::json!({
        "ring": {"p": 2, "s": 1, "m": 2}, "rows": 2, "cols": 2,
        "entries": [[[1], [1]], [[1], [0, 1]]]
    });
    let out = grmds(&["verify", "--oracle", "--matrix", &write(dir.path(), "f4.json", &f4)]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(json(&out)["min_distance"], 3);
}

#[test]
fn verify_polynomial_with_criteria() {
    let args = with(
        &["verify", "--g", "1,2,2,1", "--t", "3", "--criterion", "--n", "6", "--check-involutory"],
        &GR25_RING,
    );
    let out = grmds(&args);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["symbols"], "residue");
    assert_eq!(v["weight_criterion_support"], true);
    assert_eq!(v["weight_criterion_full"], true);
    assert_eq!(v["quasi_involutory"], true);
}

#[test]
fn oracle_falls_back_to_residue_field() {
    let out = grmds(&with(&["oracle", "--g", "1,2,2,1"], &GR25_RING));
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["min_distance"], 4);
    assert_eq!(v["symbols"], "residue");
    let out = grmds(&with(&["oracle", "--symbols", "ring", "--g", "1,2,2,1"], &GR25_RING));
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("budget"));
}

#[test]
fn search_consecutive_sweep_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let args = with(
            &["--catalog", path.to_str().unwrap(), "--seed", "7", "search", "--k", "3", "--b-from", "0", "--b-to", "30"],
            &["--p", "2", "--s", "2", "--m", "4", "--e", "1"],
        );
        let out = grmds(&args);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        assert!(stderr(&out).contains("31 records: 31 MDS"), "{}", stderr(&out));
        fs::read(path).unwrap()
    };
    let a = run("a.jsonl");
    assert_eq!(a, run("b.jsonl"));
    let text = String::from_utf8(a).unwrap();
    assert_eq!(text.lines().count(), 31);

    // Re-verifying a record reproduces its verdict.
    let record: Value = serde_json::from_str(text.lines().nth(5).unwrap()).unwrap();
    let matrix = serde_json::json!({
        "ring": record["working_ring"], "rows": 3, "cols": 3, "entries": record["matrix"]
    });
    let out = grmds(&["verify", "--matrix", &write(dir.path(), "m.json", &matrix)]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn search_gap_family_splits_by_condition() {
    let args = with(
        &["--json", "search", "--families", "gap_at_k,inverse_gap,gap_k_plus_1", "--k", "2", "--t", "3"],
        &["--p", "2", "--m", "4", "--e", "1", "--xi-powers", "1,7,11,13,29,31,47,53"],
    );
    let out = grmds(&args);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let records: Vec<Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(!records.is_empty());
    for r in &records {
        if r.get("error").is_none() {
            assert_eq!(r["condition_holds"], r["mds"]);
        }
    }
    let summary: Value = serde_json::from_str(stderr(&out).trim()).unwrap();
    assert_eq!(summary["records"], records.len());
}

#[test]
fn search_empty_range() {
    let out = grmds(&["search", "--p", "2", "--m", "4", "--k", "2", "--b-from", "5", "--b-to", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
    assert!(stderr(&out).contains("0 records"));
}

#[test]
fn reproduce_examples() {
    let out = grmds(&["reproduce"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert_eq!(stdout(&out).lines().filter(|l| l.starts_with("PASS")).count(), 3);

    let out = grmds(&["--json", "reproduce"]);
    let v = json(&out);
    assert!(v.as_array().unwrap().iter().all(|o| o["pass"] == true));
}

#[test]
fn reproduce_detects_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("golden");
    for entry in fs::read_dir(&golden).unwrap() {
        let entry = entry.unwrap();
        fs::copy(entry.path(), dir.path().join(entry.file_name())).unwrap();
    }
    let target = dir.path().join("gr25_involutory.json");
    let text = fs::read_to_string(&target).unwrap().replacen("24", "23", 1);
    fs::write(&target, text).unwrap();
    let out = grmds(&["reproduce", "--golden-dir", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAIL gr25_involutory"), "{text}");
    assert!(text.contains("PASS gr4_deg4_chain"));
    assert!(text.lines().any(|l| l.trim_start().starts_with('-')));
}

#[test]
fn emit_recursion_taps() {
    let out = grmds(&with(
        &["--json", "emit", "--format", "companion-recursion", "--g", "1,2,2,1"],
        &GR25_RING,
    ));
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["taps"], serde_json::json!([[24, 0, 0], [23, 0, 0], [23, 0, 0]]));
}

#[test]
fn ring_info_and_errors() {
    let out = grmds(&with(&["--json", "ring-info"], &GR25_RING));
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["size"], "15625");
    assert_eq!(v["sigma_order"], 3);
    let out = grmds(&["ring-info", "--p", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("not prime"));
    let out = grmds(&["construct", "--p", "2", "--m", "4", "--family", "bogus", "--k", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("unknown family"));
}
