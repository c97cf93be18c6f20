use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mwlattice"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn mwlattice")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

#[test]
fn vectors_table_and_json() {
    let out = run(&["vectors", "--format", "table"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#') && !l.contains("index")).collect();
    assert_eq!(rows.len(), 28);
    assert!(text.contains("scaled by 4"));
    assert!(rows[0].contains("( 1  1  1  1  1  1 -3 -3)"));

    let v = json(&run(&["vectors", "--format", "json"]));
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 28);
    assert_eq!(arr[0]["coords"], serde_json::json!([1, 1, 1, 1, 1, 1, -3, -3]));
    assert_eq!(arr[0]["scale"], 4);
    assert!(arr.iter().all(|r| r["height"] == "3/2"));

    assert_eq!(code(&run(&["vectors", "--format", "xml"])), 2);
}

#[test]
fn classify_small_and_guards() {
    let v = json(&run(&["classify", "--max-r", "6", "--field", "q"]));
    assert_eq!(v["field"], "q");
    assert_eq!(v["n_r"], serde_json::json!({"1": 1, "2": 1, "3": 1, "4": 2, "5": 2, "6": 4}));
    assert!(v.get("seconds").is_none());

    let v = json(&run(&["classify", "--max-r", "3", "--field", "fp:5", "--timings"]));
    assert_eq!(v["field"], "fp:5");
    assert_eq!(v["seconds"].as_object().unwrap().len(), 3);

    assert_eq!(code(&run(&["classify", "--max-r", "21"])), 4);
    assert_eq!(code(&run(&["classify", "--max-r", "0"])), 2);
    assert_eq!(code(&run(&["classify", "--max-r", "29", "--force-full"])), 2);
    assert_eq!(code(&run(&["classify", "--max-r", "3", "--field", "fp:2"])), 2);
    assert_eq!(code(&run(&["classify", "--max-r", "3", "--field", "fp:15"])), 2);
    assert_eq!(code(&run(&["classify", "--max-r", "3", "--threads", "0"])), 2);
}

#[test]
fn classify_out_file_and_checkpoint_resume() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("ck");
    let out1 = dir.path().join("a.json");
    let out2 = dir.path().join("b.json");
    let args = |out: &Path| {
        vec![
            "classify".to_string(),
            "--max-r".into(),
            "7".into(),
            "--checkpoint".into(),
            ck.display().to_string(),
            "--out".into(),
            out.display().to_string(),
        ]
    };
    assert!(bin().args(args(&out1)).output().unwrap().status.success());
    // Simulate an interruption after level 5.
    std::fs::remove_file(ck.join("q/level_06.mwl")).unwrap();
    std::fs::remove_file(ck.join("q/level_07.mwl")).unwrap();
    let second = bin().args(args(&out2)).output().unwrap();
    assert!(second.status.success());
    assert!(String::from_utf8_lossy(&second.stderr).contains("resumed"));
    assert_eq!(std::fs::read(&out1).unwrap(), std::fs::read(&out2).unwrap());

    // Corrupt level 3: exit 3.
    let path = ck.join("q/level_03.mwl");
    let mut bytes = std::fs::read(&path).unwrap();
    bytes[0] = b'X';
    std::fs::write(&path, bytes).unwrap();
    let third = bin().args(args(&out2)).output().unwrap();
    assert_eq!(code(&third), 3);
}

#[test]
fn matroid_command() {
    let v = json(&run(&["matroid", "--subset", "1,2,3"]));
    assert_eq!(v["rank"], 3);
    assert_eq!(v["independent"], true);
    assert_eq!(v["circuits"], serde_json::json!([]));

    let v = json(&run(&["matroid", "--subset", "1,6,15,28", "--field", "fp:7"]));
    assert_eq!(v["rank"], 3);
    assert_eq!(v["independent"], false);
    assert_eq!(v["circuits"], serde_json::json!([[1, 6, 15, 28]]));

    assert_eq!(code(&run(&["matroid", "--subset", "1,1"])), 2);
    assert_eq!(code(&run(&["matroid", "--subset", "0,1"])), 2);
    assert_eq!(code(&run(&["matroid", "--subset", "1,2", "--field", "r"])), 2);
    let all: Vec<String> = (1..=28).map(|i| i.to_string()).collect();
    assert_eq!(code(&run(&["matroid", "--subset", &all.join(",")])), 4);
}

#[test]
fn dihedral_command() {
    let v = json(&run(&["dihedral", "--subset", "1,6,15,28", "--p", "5"]));
    assert_eq!(v["exists"], true);
    assert_eq!(v["circuit"], true);
    let w: Vec<u64> = serde_json::from_value(v["witness"].clone()).unwrap();
    assert!(w.iter().all(|&a| (1..5).contains(&a)));

    let v = json(&run(&["dihedral", "--subset", "1,2,3", "--p-max", "100"]));
    let primes: Vec<u64> = serde_json::from_value(v["primes"].clone()).unwrap();
    let drops: Vec<u64> = serde_json::from_value(v["rank_drop_primes"].clone()).unwrap();
    assert!(primes.iter().all(|p| drops.contains(p)));

    let v = json(&run(&["dihedral", "--subset", "1,6,15,28", "--signs", "-1,+,-,1", "--p", "3"]));
    assert_eq!(v["signs"], serde_json::json!([-1, 1, -1, 1]));
    assert_eq!(v["exists"], true);
    let v = json(&run(&["dihedral", "--subset", "1,6,15,28", "--p-max", "20"]));
    assert_eq!(v["rank_drop_primes"], Value::Null);
    assert_eq!(v["primes"], serde_json::json!([3, 5, 7, 11, 13, 17, 19]));

    assert_eq!(code(&run(&["dihedral", "--subset", "1,2,3", "--p", "2"])), 2);
    assert_eq!(code(&run(&["dihedral", "--subset", "1,2,3"])), 2);
    assert_eq!(code(&run(&["dihedral", "--subset", "1,2,3", "--p", "3", "--p-max", "7"])), 2);
    assert_eq!(code(&run(&["dihedral", "--subset", "1,2,3", "--signs", "1,1", "--p", "3"])), 2);
    assert_eq!(code(&run(&["dihedral", "--subset", "1,2,3", "--p-max", "20000"])), 4);
}

#[test]
fn bitangents_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let input = fixtures().join("aronhold_sample.json");
    let status = bin()
        .args(["bitangents", "--aronhold"])
        .arg(&input)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert!(status.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["summary"]["true_bitangents"], 28);
    assert_eq!(v["summary"]["concurrent_triples"], 0);
    assert_eq!(v["summary"]["fourth_equation_zero"], true);
    assert_eq!(v["lines"].as_array().unwrap().len(), 28);
    assert_eq!(v["quartic"]["coefficients"].as_array().unwrap().len(), 15);
    assert_eq!(v["lines"][0]["label"], "A1");
    assert_eq!(v["lines"][27]["label"], "F7[3]");

    let oracle: Value =
        serde_json::from_str(&std::fs::read_to_string(fixtures().join("oracle_sample.json")).unwrap()).unwrap();
    assert_eq!(v["quartic"]["coefficients"], oracle["quartic"]);
    assert_eq!(v["k"], oracle["k"]);
}

#[test]
fn bitangents_errors() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    };
    let zero = write("zero.json", r#"{"a": [["0","2","3"],["2","-1","1"],["-1","1","-2"]]}"#);
    let out = bin().arg("bitangents").arg("--aronhold").arg(&zero).output().unwrap();
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("a_01 is zero"));

    let bad = write("bad.json", r#"{"b": 1}"#);
    assert_eq!(code(&bin().arg("bitangents").arg("--aronhold").arg(&bad).output().unwrap()), 2);
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&bin().arg("bitangents").arg("--aronhold").arg(&missing).output().unwrap()), 1);
    assert_eq!(code(&run(&["bitangents"])), 2);
}

#[test]
fn bitangents_from_seed() {
    let v = json(&run(&["bitangents", "--seed", "2"]));
    assert_eq!(v["summary"]["true_bitangents"], 28);
}
