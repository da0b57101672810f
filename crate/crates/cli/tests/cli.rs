//! End-to-end tests that drive the compiled binary against the bundled
//! fixture files and assert on exit codes, human output, and the JSON
//! report envelope.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fusionkit"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    let mut cmd = bin();
    cmd.args(args);
    cmd.output().expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8")
}

fn json_of(output: &Output) -> Value {
    serde_json::from_str(&stdout_of(output)).expect("stdout parses as JSON")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("process exited normally")
}

/// Fresh scratch directory unique to the calling test (tests run in
/// parallel, so they must not share one).
fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fusionkit-cli-test-{tag}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).expect("scratch dir");
    dir
}

fn canonical_key(ring: &fusionkit::FusionRing) -> fusionkit::CanonicalKey {
    fusionkit::canonical_form(ring).expect("canonicalizes").key
}

fn load_ring(path: &Path) -> fusionkit::FusionRing {
    let text = fs::read_to_string(path).expect("ring file reads");
    fusionkit::FusionRing::from_json(&text).expect("ring file parses")
}

// ---------------------------------------------------------------------------
// modular

#[test]
fn modular_passes_on_the_bundled_rank10_data() {
    let path = fixture("printed36.json");
    let human = run(&["modular", path.to_str().unwrap()]);
    assert_eq!(exit_code(&human), 0);
    let text = stdout_of(&human);
    assert!(text.contains("overall PASS"), "missing verdict in:\n{text}");
    assert!(text.contains("twist-equation"), "missing twist line in:\n{text}");

    let json = run(&["modular", path.to_str().unwrap(), "--json"]);
    assert_eq!(exit_code(&json), 0);
    let report = json_of(&json);
    assert_eq!(report["status"], "pass");
    assert_eq!(report["command"], format!("modular {}", path.display()));
    let result = &report["result"];
    assert!((result["global_dimension"].as_f64().unwrap() - 36.0).abs() < 1e-9);
    assert_eq!(result["t_order"], 6);
    assert!((result["gauss_sums"]["p_plus"]["re"].as_f64().unwrap() + 6.0).abs() < 1e-9);
    assert!(result["gauss_sums"]["p_plus"]["im"].as_f64().unwrap().abs() < 1e-9);
    assert_eq!(result["certificate"]["none_found"]["lattice_size"], 4);
    assert_eq!(result["certificate"]["none_found"]["symmetric_count"], 2);

    // The Verlinde ring of this data is the second of the two bundled rings.
    let second = canonical_key(&load_ring(&fixture("rank10_ring_ii.json")));
    assert_eq!(
        result["verlinde"]["canonical_digest"].as_str().unwrap(),
        second.digest()
    );
}

#[test]
fn json_reports_are_stable_across_runs() {
    let path = fixture("printed36.json");
    let a = run(&["modular", path.to_str().unwrap(), "--json"]);
    let b = run(&["modular", path.to_str().unwrap(), "--json"]);
    let mut va = json_of(&a);
    let mut vb = json_of(&b);
    assert!(va["wall_ms"].is_number());
    va["wall_ms"] = Value::from(0);
    vb["wall_ms"] = Value::from(0);
    assert_eq!(
        serde_json::to_string(&va).unwrap(),
        serde_json::to_string(&vb).unwrap(),
        "reports differ beyond wall time"
    );
}

// ---------------------------------------------------------------------------
// check

#[test]
fn check_passes_on_a_bundled_ring() {
    let path = fixture("rank10_ring_i.json");
    let output = run(&["check", path.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout_of(&output);
    for axiom in ["axiom-unit", "axiom-dual", "axiom-frobenius-reciprocity", "axiom-associativity"] {
        assert!(text.contains(axiom), "missing {axiom} in:\n{text}");
    }
    assert!(text.contains("overall PASS"));
}

#[test]
fn check_fails_with_the_violating_tuple_on_a_broken_ring() {
    let dir = scratch("broken-ring");
    let path = dir.join("broken.json");
    // x ⊗ x = x leaves no copy of the unit in x ⊗ x*, violating duality.
    fs::write(
        &path,
        r#"{"labels":["1","x"],"dual":[0,1],"N":[[0,0,0,1],[0,1,1,1],[1,0,1,1],[1,1,1,1]]}"#,
    )
    .unwrap();
    let output = run(&["check", path.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 1);
    let text = stdout_of(&output);
    assert!(text.contains("FAIL"), "no failure marker in:\n{text}");
    assert!(text.contains("axiom-dual"), "duality not reported in:\n{text}");
    assert!(text.contains("[1, 1"), "violating indices not shown in:\n{text}");
    assert!(text.contains("overall FAIL"));
    let _ = fs::remove_dir_all(&dir);
}

// ---------------------------------------------------------------------------
// input errors

#[test]
fn malformed_json_is_an_input_error_with_a_location() {
    let dir = scratch("malformed");
    let path = dir.join("bad.json");
    fs::write(&path, "{ this is not json").unwrap();
    let output = run(&["check", path.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 2);
    let err = stderr_of(&output);
    assert!(err.contains("error:"), "no error prefix in:\n{err}");
    assert!(err.contains("line"), "no parse location in:\n{err}");
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn a_missing_file_is_an_input_error() {
    let output = run(&["check", "/no/such/file.json"]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr_of(&output).contains("cannot read"));
}

#[test]
fn exceeding_the_search_node_cap_is_a_capacity_error() {
    let dir = scratch("node-cap");
    let mut spec: Value =
        serde_json::from_str(&fs::read_to_string(fixture("rank10_spec.json")).unwrap()).unwrap();
    spec["node_cap"] = Value::from(2);
    let path = dir.join("capped.json");
    fs::write(&path, serde_json::to_string_pretty(&spec).unwrap()).unwrap();
    let output = run(&["search", "--spec", path.to_str().unwrap()]);
    assert_eq!(exit_code(&output), 3);
    assert!(stderr_of(&output).contains("node cap"));
    let _ = fs::remove_dir_all(&dir);
}

// ---------------------------------------------------------------------------
// classify

#[test]
fn classify_reports_both_surviving_families_for_36() {
    let output = run(&["classify", "--p", "2", "--q", "3", "--shape", "p2q2", "--json"]);
    assert_eq!(exit_code(&output), 0);
    let report = json_of(&output);
    assert_eq!(report["status"], "pass");
    let text = stdout_of(&output);
    assert!(text.contains("E(ζ,±)"), "first family missing in:\n{text}");
    assert!(text.contains("dimension-36 family"), "second family missing in:\n{text}");
}

#[test]
fn classify_reports_pq4_as_group_theoretical() {
    let output = run(&["classify", "--p", "3", "--q", "2", "--shape", "pq4"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout_of(&output);
    assert!(
        text.contains("every case is group-theoretical"),
        "verdict missing in:\n{text}"
    );
}

// ---------------------------------------------------------------------------
// search

#[test]
fn search_writes_completions_matching_the_bundled_rings() {
    let dir = scratch("search-out");
    let spec = fixture("rank10_spec.json");
    let output = run(&[
        "search",
        "--spec",
        spec.to_str().unwrap(),
        "--out",
        dir.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(exit_code(&output), 0);
    let report = json_of(&output);
    assert_eq!(report["result"]["raw_count"], 3);
    assert_eq!(report["result"]["classes"], 2);

    let mut found: Vec<String> = (0..2)
        .map(|i| canonical_key(&load_ring(&dir.join(format!("completion_{i}.json")))).digest())
        .collect();
    let mut expected: Vec<String> = ["rank10_ring_i.json", "rank10_ring_ii.json"]
        .iter()
        .map(|name| canonical_key(&load_ring(&fixture(name))).digest())
        .collect();
    found.sort();
    expected.sort();
    assert_eq!(found, expected, "written rings differ from the bundled pair");
    let _ = fs::remove_dir_all(&dir);
}

// ---------------------------------------------------------------------------
// twist

#[test]
fn twist_carries_the_first_ring_to_the_second() {
    let dir = scratch("twist-out");
    let output = run(&[
        "twist",
        "--ring",
        fixture("rank10_ring_i.json").to_str().unwrap(),
        "--cochain",
        fixture("cochain_z3.json").to_str().unwrap(),
        "--out",
        dir.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(exit_code(&output), 0);
    let report = json_of(&output);
    assert_eq!(report["status"], "pass");
    let twisted = &report["result"]["twisted"];
    assert_eq!(twisted["same_canonical_class_as_input"], false);
    let changes = twisted["dual_changes"].as_array().unwrap();
    assert!(
        changes
            .iter()
            .any(|c| c["object"] == "X" && c["old_dual"] == "Xs" && c["new_dual"] == "gXs"),
        "dual of X should move from Xs to gXs: {changes:?}"
    );

    let written = load_ring(&dir.join("twisted_ring.json"));
    let second = canonical_key(&load_ring(&fixture("rank10_ring_ii.json")));
    assert_eq!(canonical_key(&written), second, "twist should land on the second ring");
    let _ = fs::remove_dir_all(&dir);
}

#[test]
fn a_non_cocycle_cochain_is_rejected_as_a_failed_check() {
    let dir = scratch("bad-cochain");
    let path = dir.join("chi.json");
    // χ(1,1) alone breaks χ(a,b)·χ(a,c) = χ(a,b+c).
    fs::write(&path, r#"{"group_order": 3, "values": [[1, 1, 2]]}"#).unwrap();
    let output = run(&[
        "twist",
        "--ring",
        fixture("rank10_ring_i.json").to_str().unwrap(),
        "--cochain",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&output), 1);
    let text = stdout_of(&output);
    assert!(text.contains("cochain"), "cochain failure not reported in:\n{text}");
    assert!(text.contains("overall FAIL"));
    let _ = fs::remove_dir_all(&dir);
}

// ---------------------------------------------------------------------------
// double

#[test]
fn double_of_the_symmetric_group_reports_its_dimensions() {
    let dir = scratch("double-out");
    let output = run(&[
        "double",
        "--group",
        fixture("s3.json").to_str().unwrap(),
        "--out",
        dir.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(exit_code(&output), 0);
    let report = json_of(&output);
    assert_eq!(report["status"], "pass");
    let result = &report["result"];
    assert_eq!(result["rank"], 8);
    assert!((result["global_dimension"].as_f64().unwrap() - 36.0).abs() < 1e-6);
    let mut dims: Vec<u64> = result["dimensions"]["dims"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d.as_u64().unwrap())
        .collect();
    dims.sort();
    assert_eq!(dims, vec![1, 1, 2, 2, 2, 2, 3, 3]);

    // The written data file round-trips and still verifies.
    let text = fs::read_to_string(dir.join("double_data.json")).unwrap();
    let data = fusionkit::ModularData::from_json(&text).unwrap();
    assert!(fusionkit::verify_modular(&data).is_valid());
    let _ = fs::remove_dir_all(&dir);
}

// ---------------------------------------------------------------------------
// report schema

/// The shipped schema and the binary must not drift apart: every key of a
/// real report is declared, every required key is present, and the simple
/// shape constraints (status values, digest format) hold.
#[test]
fn live_reports_match_the_shipped_schema() {
    let schema_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/report-schema.json");
    let schema: Value =
        serde_json::from_str(&fs::read_to_string(schema_path).expect("schema file")).unwrap();
    let declared = schema["properties"].as_object().unwrap();
    let required: Vec<&str> = schema["required"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();

    for args in [
        vec!["modular", "fixtures/printed36.json"],
        vec!["check", "fixtures/rank10_ring_i.json"],
        vec!["classify", "--p", "2", "--q", "3", "--shape", "p2q2"],
        vec!["search", "--spec", "fixtures/rank10_spec.json"],
        vec!["double", "--group", "fixtures/s3.json"],
    ] {
        let mut full = args.clone();
        full.push("--json");
        let full: Vec<String> = full
            .iter()
            .map(|a| {
                if a.starts_with("fixtures/") {
                    fixture(a.strip_prefix("fixtures/").unwrap()).display().to_string()
                } else {
                    a.to_string()
                }
            })
            .collect();
        let refs: Vec<&str> = full.iter().map(String::as_str).collect();
        let report = json_of(&run(&refs));
        let keys = report.as_object().unwrap();
        for key in keys.keys() {
            assert!(declared.contains_key(key), "{args:?}: undeclared report key {key}");
        }
        for key in &required {
            assert!(keys.contains_key(*key), "{args:?}: missing required key {key}");
        }
        assert!(matches!(report["status"].as_str(), Some("pass" | "fail")));
        assert!(report["wall_ms"].as_u64().is_some());
        for input in report["inputs"].as_array().unwrap() {
            let digest = input["digest"].as_str().unwrap();
            assert_eq!(digest.len(), 16);
            assert!(digest.chars().all(|c| c.is_ascii_hexdigit() && !c.is_ascii_uppercase()));
        }
        for check in report["checks"].as_array().unwrap() {
            assert!(check["name"].is_string());
            assert!(check["passed"].is_boolean());
        }
    }
}

#[test]
fn the_twisted_double_flag_is_rejected() {
    let output = run(&[
        "double",
        "--group",
        fixture("s3.json").to_str().unwrap(),
        "--twist",
    ]);
    assert_eq!(exit_code(&output), 2);
    assert!(stderr_of(&output).contains("not supported"));
}
