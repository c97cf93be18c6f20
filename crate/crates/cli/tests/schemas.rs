use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn load(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn output(args: &[&str]) -> Value {
    let out = Command::new(env!("CARGO_BIN_EXE_mwlattice")).args(args).output().unwrap();
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn assert_valid(schema: &str, doc: &Value) {
    let schema = load(&root().join("docs/schemas").join(schema));
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| format!("{e} at {}", e.instance_path)).collect();
    assert!(errors.is_empty(), "{errors:#?}");
}

#[test]
fn vectors_output_matches_schema() {
    assert_valid("vectors.schema.json", &output(&["vectors", "--format", "json"]));
}

#[test]
fn classify_output_matches_schema() {
    assert_valid("classify.schema.json", &output(&["classify", "--max-r", "5"]));
    assert_valid(
        "classify.schema.json",
        &output(&["classify", "--max-r", "4", "--field", "fp:7", "--timings"]),
    );
}

#[test]
fn matroid_output_matches_schema() {
    assert_valid("matroid.schema.json", &output(&["matroid", "--subset", "1,6,15,28,2"]));
}

#[test]
fn dihedral_outputs_match_schema() {
    assert_valid("dihedral.schema.json", &output(&["dihedral", "--subset", "1,6,15,28", "--p", "7"]));
    assert_valid("dihedral.schema.json", &output(&["dihedral", "--subset", "1,2,3", "--p", "7"]));
    assert_valid("dihedral.schema.json", &output(&["dihedral", "--subset", "1,2,3", "--p-max", "50"]));
    assert_valid("dihedral.schema.json", &output(&["dihedral", "--subset", "1,6,15,28", "--p-max", "50"]));
}

#[test]
fn bitangents_output_and_inputs_match_schema() {
    let fixture = root().join("fixtures/aronhold_sample.json");
    let doc = output(&["bitangents", "--aronhold", fixture.to_str().unwrap()]);
    assert_valid("bitangents.schema.json", &doc);
    for name in ["aronhold_sample.json", "aronhold_special.json"] {
        assert_valid("aronhold-input.schema.json", &load(&root().join("fixtures").join(name)));
    }
}

#[test]
fn schema_rejects_wrong_documents() {
    let schema = load(&root().join("docs/schemas/classify.schema.json"));
    let validator = jsonschema::validator_for(&schema).unwrap();
    let bad = serde_json::json!({"field": "q", "max_r": 3, "n_r": {"0": 1}, "checkpoints": []});
    assert!(!validator.is_valid(&bad));
}
