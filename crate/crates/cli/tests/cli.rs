use std::process::{Command, Output};

use serde_json::Value;

fn etgrs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_etgrs"))
        .args(args)
        .env_remove("ETGRS_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const GF13: [&str; 12] = [
    "--field", "13", "--n", "5", "--k", "3", "--alpha", "1,2,5,6,7", "--eta", "9", "--delta", "9",
];

fn with(base: &[&str], extra: &[&'static str]) -> Vec<String> {
    base.iter().chain(extra).map(|s| s.to_string()).collect()
}

fn run(cmd: &str, args: &[String]) -> Output {
    let mut all = vec![cmd];
    all.extend(args.iter().map(String::as_str));
    etgrs(&all)
}

fn schema() -> jsonschema::JSONSchema {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/schema/report.schema.json")).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    jsonschema::JSONSchema::compile(&schema).expect("schema compiles")
}

fn assert_valid(doc: &Value) {
    let schema = schema();
    let msgs: Vec<String> = match schema.validate(doc) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    assert!(msgs.is_empty(), "schema violations: {msgs:#?}");
}

#[test]
fn classify_gf13_instance_table() {
    let o = run("classify", &with(&GF13, &["--mode", "both"]));
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("verdict     NMDS [8,3,5]\n"), "{out}");
    assert!(out.contains("agreement   yes"));
    assert!(out.contains("contract ok"));
}

#[test]
fn classify_gf8_instance() {
    let o = etgrs(&[
        "classify", "--field", "2^3", "--n", "5", "--k", "3", "--alpha", "1,g^1,g^2,g^4,g^5", "--eta", "g^2", "--delta", "0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("verdict     NMDS [8,3,5]\n"));
}

#[test]
fn duplicate_alpha_is_a_usage_error() {
    let o = etgrs(&["classify", "--field", "13", "--k", "3", "--alpha", "1,2,5,6,5", "--eta", "9", "--delta", "9"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("alpha entry 5 repeats entry 3"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
}

#[test]
fn other_usage_errors() {
    let bad_n = etgrs(&["classify", "--field", "13", "--n", "4", "--k", "3", "--alpha", "1,2,5,6,7", "--eta", "1", "--delta", "0"]);
    assert_eq!(bad_n.status.code(), Some(1));
    let zero_eta = etgrs(&["classify", "--field", "13", "--k", "3", "--alpha", "1,2,5,6,7", "--eta", "0", "--delta", "0"]);
    assert_eq!(zero_eta.status.code(), Some(1));
    let bad_field = etgrs(&["classify", "--field", "12", "--k", "3", "--alpha", "1,2,5", "--eta", "1", "--delta", "0"]);
    assert_eq!(bad_field.status.code(), Some(1));
    let empty_eta = etgrs(&["search", "--field", "11", "--k", "3", "--alpha", "0,4,5,8,9", "--eta", ""]);
    assert_eq!(empty_eta.status.code(), Some(1));
    assert!(stderr(&empty_eta).contains("eta set is empty"));
    assert_eq!(etgrs(&["classify", "--bogus"]).status.code(), Some(1));
    assert_eq!(etgrs(&["matrix", "--which", "g"]).status.code(), Some(1));
    assert_eq!(etgrs(&["--help"]).status.code(), Some(0));
}

#[test]
fn budget_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_etgrs"))
        .args(["classify", "--mode", "brute"])
        .args(GF13)
        .env("ETGRS_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("budget"), "{}", stderr(&o));
}

#[test]
fn classify_json_matches_schema() {
    let o = run("classify", &with(&GF13, &["--format", "json"]));
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_valid(&doc);
    assert!(doc["timings"].is_null());
    assert_eq!(doc["verdicts"]["headline"], "NMDS [8,3,5]");
    assert_eq!(doc["code"]["min_distance"], 5);
    assert_eq!(doc["conditions"].as_array().unwrap().len(), 13);
    assert!(!doc["witnesses"].as_array().unwrap().is_empty());

    let timed = run("classify", &with(&GF13, &["--format", "json", "--timings"]));
    let doc: Value = serde_json::from_slice(&timed.stdout).unwrap();
    assert_valid(&doc);
    assert!(doc["timings"]["total_ms"].as_f64().is_some());
}

#[test]
fn every_command_emits_schema_valid_json() {
    let outputs = [
        run("classify", &with(&GF13, &["--mode", "theorems", "--format", "json"])),
        run("classify", &with(&GF13, &["--mode", "brute", "--format", "json"])),
        etgrs(&["search", "--field", "11", "--k", "3", "--alpha", "0,4,5,8,9", "--dual-amds", "--brute", "--format", "json"]),
        etgrs(&["reproduce", "all", "--format", "json"]),
        run("matrix", &with(&GF13, &["--which", "schur-square", "--format", "json"])),
        run("matrix", &with(&GF13, &["--which", "t", "--format", "json"])),
    ];
    for o in outputs {
        let doc: Value = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
        assert_valid(&doc);
    }
}

#[test]
fn search_gf8_sweep() {
    let o = etgrs(&["search", "--field", "2^3", "--k", "4", "--alpha", "1,g^3,g^5,g^6", "--eta", "g^1,g^2,g^3,g^4,g^5,g^6", "--delta", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("pairs       6 (MDS 6), shown 6"), "{out}");
}

#[test]
fn search_gf11_dual_amds() {
    let o = etgrs(&["search", "--field", "11", "--k", "3", "--alpha", "0,4,5,8,9", "--dual-amds", "--only", "NMDS", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["summary"]["pairs"], 110);
    assert_eq!(doc["summary"]["dual_disjunction"], 110);
    assert_eq!(doc["summary"]["dual_amds"], 100);
    let rows = doc["rows"].as_array().unwrap();
    assert!(rows.iter().all(|r| r["verdict"] == "NMDS"));
    assert_eq!(rows.len(), doc["summary"]["shown"].as_u64().unwrap() as usize);
}

#[test]
fn search_output_is_independent_of_workers() {
    let args = |w: &'static str| {
        vec!["search", "--field", "13", "--k", "3", "--alpha", "1,2,5,6,7", "--brute", "--dual-amds", "--workers", w]
    };
    let one = etgrs(&args("1"));
    assert_eq!(one.status.code(), Some(0));
    for w in ["3", "8"] {
        assert_eq!(etgrs(&args(w)).stdout, one.stdout);
    }
}

#[test]
fn reproduce_exit_codes() {
    let codes: Vec<Option<i32>> = ["1", "2", "3", "4"].iter().map(|id| etgrs(&["reproduce", id]).status.code()).collect();
    assert_eq!(codes, vec![Some(3), Some(0), Some(0), Some(3)]);
    let by_name = etgrs(&["reproduce", "gf8-n5-k3-amds-pairs"]);
    assert!(stdout(&by_name).contains("claims passed 22/22"));
    assert_eq!(etgrs(&["reproduce", "9"]).status.code(), Some(1));
}

#[test]
fn reproduce_flags_dual_parameters() {
    let out = stdout(&etgrs(&["reproduce", "4"]));
    assert!(out.contains("claims passed 100/110"));
    assert!(out.contains("[8,4,4]"));
    assert!(out.contains("computed dual dimension is 5"));
}

#[test]
fn matrix_outputs() {
    let g = stdout(&run("matrix", &with(&GF13, &["--which", "G"])));
    assert_eq!(g, "1 1 1 1 1 0 0 1\n1 2 5 6 7 0 1 0\n10 6 5 2 5 1 0 9\n");
    let g1 = stdout(&run("matrix", &with(&GF13, &["--which", "G1"])));
    assert_eq!(g1.lines().next().unwrap().split(' ').count(), 7);
    let t = stdout(&run("matrix", &with(&GF13, &["--which", "t"])));
    assert_eq!(t.lines().next().unwrap().split(' ').count(), 7);
    assert!(t.contains("contract: ok"));
    let dual = stdout(&run("matrix", &with(&GF13, &["--which", "dual"])));
    assert_eq!(dual.lines().filter(|l| l.split(' ').count() == 8).count(), 5);
    assert!(dual.contains("G·Hᵀ = 0: yes"));
}

#[test]
fn config_file_with_flag_override() {
    let dir = std::env::temp_dir().join(format!("etgrs-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.json");
    std::fs::write(&good, r#"{"field": "13", "k": 3, "alpha": [1, 2, 5, 6, 7], "eta": 9, "delta": 9}"#).unwrap();
    let o = etgrs(&["classify", "--config", good.to_str().unwrap(), "--delta", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("eta, delta  9, 5"));

    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\n  \"field\": \"13\",\n  \"k\": three\n}\n").unwrap();
    let o = etgrs(&["classify", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("bad.json:3:"), "{}", stderr(&o));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn schema_rejects_incomplete_documents() {
    let o = run("classify", &with(&GF13, &["--format", "json"]));
    let mut doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(schema().is_valid(&doc));
    doc.as_object_mut().unwrap().remove("timings");
    assert!(!schema().is_valid(&doc));
    let mut doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    doc["verdicts"]["final"] = Value::from("ALMOST");
    assert!(!schema().is_valid(&doc));
}
