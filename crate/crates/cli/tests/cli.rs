use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tdual_cli::report::GroupJson;
use tdual_cli::{emit_json, parse_reports};

fn tdual(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tdual"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = tdual(&full);
    (
        serde_json::from_str(&stdout(&o)).expect("valid json"),
        o.status.code().unwrap(),
    )
}

fn section<'a>(doc: &'a Value, title: &str) -> &'a Value {
    doc["sections"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["title"] == title)
        .unwrap_or_else(|| panic!("no {title}"))
}

fn flags(doc: &Value) -> Vec<String> {
    doc["flags"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f.as_str().unwrap().to_string())
        .collect()
}

fn job_file(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tdual-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::File::create(&path)
        .unwrap()
        .write_all(body.as_bytes())
        .unwrap();
    path
}

#[test]
fn torus_dualizes_to_nilmanifold() {
    let o = tdual(&["dualize", "--base", "T2", "--flux", "3*volxz"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("dual base bundle class: 3*vol"), "{text}");
    assert!(text.contains("H2 = Z^2 + Z/3"), "{text}");

    let (doc, code) = json(&["dualize", "--base", "T2", "--flux", "3"]);
    assert_eq!(code, 0);
    let dual = section(&doc, "dual");
    assert_eq!(
        dual["groups"]["H2"],
        serde_json::json!({"rank": 2, "torsion": [3]})
    );
    assert_eq!(dual["values"]["dual base bundle class"], "3*vol");
}

#[test]
fn lens_space_cohomology() {
    let (doc, code) = json(&["cohomology", "--base", "S2", "--euler", "3"]);
    assert_eq!(code, 0);
    let total = section(&doc, "total space");
    assert_eq!(
        total["groups"]["H2"],
        serde_json::json!({"rank": 0, "torsion": [3]})
    );
    assert_eq!(flags(&doc), Vec::<String>::new());
    let text = stdout(&tdual(&[
        "--format",
        "json",
        "cohomology",
        "--base",
        "S2",
        "--euler",
        "3",
    ]));
    assert!(text.contains("\"flags\": []"), "{text}");
}

#[test]
fn classifying_tables() {
    let (r2, code) = json(&["tables", "R2"]);
    assert_eq!(code, 0);
    let computed = &r2["sections"][0]["groups"];
    for k in 0..4 {
        assert_eq!(
            computed[format!("H{k}")],
            serde_json::json!({"rank": 1, "torsion": []})
        );
    }
    let text = stdout(&tdual(&["tables", "R32"]));
    assert!(text.contains("matches published: false"), "{text}");
    assert!(text.contains("a1^2, a2^2, x"), "{text}");
    let e32 = stdout(&tdual(&["tables", "E32"]));
    assert!(e32.contains("H2 = Z^2"), "{e32}");
}

#[test]
fn json_round_trips_byte_for_byte() {
    for args in [
        vec![
            "--format", "json", "dualize", "--base", "CP2", "--flux", "2",
        ],
        vec![
            "--format", "json", "dualize", "--base", "RP3", "--flux", "5,1",
        ],
        vec!["--format", "json", "tables", "R32"],
        vec![
            "--format",
            "json",
            "cosets",
            "--base",
            "T2",
            "--euler",
            "2",
            "--generator",
            "volx1",
        ],
    ] {
        let out = stdout(&tdual(&args));
        let docs = parse_reports(&out).unwrap();
        assert_eq!(emit_json(&docs), out, "{args:?}");
        assert_eq!(
            stdout(&tdual(&args)),
            out,
            "nondeterministic output for {args:?}"
        );
    }
}

/// Every object with rank and torsion parses to a group and re-serializes
/// unchanged.
fn check_groups(v: &Value, seen: &mut usize) {
    match v {
        Value::Object(map) if map.contains_key("rank") && map.contains_key("torsion") => {
            let g: GroupJson = serde_json::from_value(v.clone()).unwrap();
            let back = GroupJson::from_group(&g.to_group().unwrap()).unwrap();
            assert_eq!(serde_json::to_value(back).unwrap(), *v);
            *seen += 1;
        }
        Value::Object(map) => map.values().for_each(|x| check_groups(x, seen)),
        Value::Array(xs) => xs.iter().for_each(|x| check_groups(x, seen)),
        _ => {}
    }
}

#[test]
fn every_group_is_canonical() {
    let (doc, _) = json(&["dualize", "--base", "Sigma3", "--flux", "2"]);
    let mut seen = 0;
    check_groups(&doc, &mut seen);
    assert!(seen >= 15, "{seen}");
}

#[test]
fn batch_preserves_job_order() {
    let path = job_file(
        "batch.json",
        r#"{"schema_version": 1, "jobs": [
            {"mode": "cohomology", "base": "S2", "euler": "2"},
            {"mode": "dualize", "base": "CP2", "flux": "1"},
            {"mode": "classifying-tables", "space": "R2"},
            {"mode": "cohomology", "base": "S2", "euler": "5"}
        ]}"#,
    );
    let (doc, code) = json(&["run", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let docs = doc.as_array().unwrap();
    let modes: Vec<&str> = docs
        .iter()
        .map(|d| d["input"]["mode"].as_str().unwrap())
        .collect();
    assert_eq!(
        modes,
        ["cohomology", "dualize", "classifying-tables", "cohomology"]
    );
    assert_eq!(
        section(&docs[3], "total space")["groups"]["H2"]["torsion"],
        serde_json::json!([5])
    );
}

#[test]
fn malformed_job_reports_position() {
    let path = job_file(
        "broken.json",
        "{\"jobs\": [\n  {\"mode\": \"dualize\",\n   \"base\": }\n]}",
    );
    let o = tdual(&["run", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn unknown_field_is_rejected() {
    let path = job_file(
        "unknown.json",
        r#"{"mode": "dualize", "base": "T2", "flux": "1", "bogus": 1}"#,
    );
    assert_eq!(
        tdual(&["run", path.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn missing_file_is_io_error() {
    assert_eq!(
        tdual(&["run", "/nonexistent/jobs.json"]).status.code(),
        Some(1)
    );
}

#[test]
fn strict_mode_fails_on_conjecture() {
    let (doc, code) = json(&["dualize", "--base", "RP2", "--flux", "1"]);
    assert_eq!(code, 0);
    assert!(flags(&doc).contains(&"CONJECTURE".to_string()));
    let o = tdual(&["--strict", "dualize", "--base", "RP2", "--flux", "1"]);
    assert_eq!(o.status.code(), Some(3));
    let o = tdual(&["--strict", "dualize", "--base", "CP2", "--flux", "2"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn non_liftable_b_is_flagged() {
    let (doc, code) = json(&["dualize", "--base", "T2", "--flux", "1", "--b", "axz"]);
    assert_eq!(code, 2);
    assert!(flags(&doc).contains(&"B-NOT-LIFTABLE".to_string()));
    assert!(doc["error"].is_string());
}

#[test]
fn bad_class_names_field() {
    let o = tdual(&["dualize", "--base", "T2", "--flux", "3*nope"]);
    assert_eq!(o.status.code(), Some(2));
    let all = format!("{}{}", stdout(&o), String::from_utf8(o.stderr).unwrap());
    assert!(all.contains("flux"), "{all}");
}
