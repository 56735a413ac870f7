use std::path::PathBuf;
use std::process::{Command, Output};

use jsonschema::{Draft, JSONSchema};
use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name]
        .iter()
        .collect();
    p.display().to_string()
}

fn dpl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dpl"))
        .args(args)
        .env_remove("DPL_SEED")
        .output()
        .expect("dpl runs")
}

fn schema(name: &str) -> JSONSchema {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "schemas", name]
        .iter()
        .collect();
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    JSONSchema::options()
        .with_draft(Draft::Draft202012)
        .compile(&v)
        .expect("schema compiles")
}

fn assert_valid(schema_name: &str, v: &Value) {
    let s = schema(schema_name);
    let msgs: Vec<String> = match s.validate(v) {
        Ok(()) => return,
        Err(errors) => errors
            .map(|e| format!("{} at {}", e, e.instance_path))
            .collect(),
    };
    panic!("{schema_name}: {msgs:#?}");
}

/// Runs with `--format json`, checks the exit code and the report schema.
fn report(args: &[&str], code: i32) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = dpl(&full);
    assert_eq!(
        out.status.code(),
        Some(code),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    assert_valid("report.schema.json", &v);
    v
}

fn diagnostic(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = dpl(&full);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
    assert_valid("error.schema.json", &v);
    v
}

#[test]
fn analyze_two_cover() {
    let v = report(&["analyze", &data("cover2.json")], 0);
    let r = &v["result"];
    let comps = r["sigma"]["components"].as_array().unwrap();
    assert_eq!(comps.len(), 1);
    assert_eq!(comps[0]["kind"]["type"], "circle");
    assert_eq!(comps[0]["tau_invariant"], true);
    assert_eq!(comps[0]["p1_degree"], 1);
    assert_eq!(r["hopf"]["h"], 1);
    assert_eq!(r["realizability"]["criterion_pass"], false);
    assert_eq!(r["folds"]["count"], 0);
    assert!(v["input_digest"].as_str().unwrap().starts_with("sha256:"));
}

#[test]
fn analyze_identity_notes_the_circle_caveat() {
    let v = report(&["analyze", &data("identity.json")], 0);
    let r = &v["result"];
    assert!(r["sigma"]["components"].as_array().unwrap().is_empty());
    assert_eq!(r["realizability"]["criterion_pass"], true);
    let notes = r["realizability"]["notes"].as_array().unwrap();
    assert!(notes
        .iter()
        .any(|n| n.as_str().unwrap().contains("not decisive")));
}

#[test]
fn zero_denominator_is_an_input_error() {
    let v = diagnostic(&["analyze", &data("bad_fraction.json")]);
    assert_eq!(v["error"]["kind"], "parse");
    assert!(v["error"]["message"].as_str().unwrap().contains("1/0"));
}

#[test]
fn missing_file_is_an_input_error() {
    let v = diagnostic(&["analyze", &data("no_such_file.json")]);
    assert_eq!(v["error"]["kind"], "io");
}

#[test]
fn fractions_serialize_as_strings() {
    let v = report(&["analyze", &data("tent.json")], 0);
    let bps = &v["result"]["map"]["breakpoints"];
    assert_eq!(bps[1], serde_json::json!(["1/2", "3/4"]));
    for cv in v["result"]["folds"]["critical_values"].as_array().unwrap() {
        assert!(cv.is_string());
    }
}

#[test]
fn unfold_tent_decreases_to_zero() {
    let v = report(&["unfold", &data("tent.json"), "--arc", "1/4", "3/8"], 0);
    let r = &v["result"];
    let ms: Vec<u64> = r["trace"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["m"].as_u64().unwrap())
        .collect();
    assert!(ms.windows(2).all(|w| w[1] < w[0]), "{ms:?}");
    assert_eq!(*ms.last().unwrap(), 0);
    assert_eq!(r["strictly_decreasing"], true);
    assert_eq!(r["verification"]["m"], 0);
    assert_eq!(r["verification"]["pair_degree"]["all_equal"], true);
}

#[test]
fn unfold_cover_is_one_step() {
    let v = report(&["unfold", &data("cover2.json"), "--arc", "1/10", "1/5"], 0);
    assert_eq!(v["result"]["trace"].as_array().unwrap().len(), 1);
    assert_eq!(v["result"]["verification"]["p"], 2);
}

#[test]
fn unfold_regular_value_mode() {
    let v = report(
        &[
            "unfold",
            &data("folded2.json"),
            "--arc",
            "1/2",
            "5/8",
            "--mode",
            "regular-value",
            "--z",
            "9/16",
        ],
        0,
    );
    let r = &v["result"];
    assert_eq!(r["regular_value"]["z"], "9/16");
    assert_eq!(r["regular_value"]["ok"], true);
}

#[test]
fn unfold_open_subset_keeps_an_end() {
    let v = report(
        &[
            "unfold",
            &data("tent.json"),
            "--arc",
            "1/4",
            "3/8",
            "--mode",
            "open-subset",
            "--keep",
            "lo",
        ],
        0,
    );
    let r = &v["result"];
    assert_eq!(r["final_arc"]["lo"], r["initial_arc"]["lo"]);
    assert_eq!(r["verification"]["m"], 0);
}

#[test]
fn unfold_rejects_critical_endpoints() {
    let v = diagnostic(&["unfold", &data("folded2.json"), "--arc", "1/4", "5/8"]);
    assert!(v["error"]["message"].as_str().unwrap().contains("critical"));
}

#[test]
fn hopf_of_figure_eight() {
    let v = report(&["hopf", "--polygon", &data("figure8.json")], 0);
    assert_eq!(v["result"]["h"], 1);
    assert_eq!(v["result"]["double_points"].as_array().unwrap().len(), 1);
}

#[test]
fn hopf_of_covers() {
    assert_eq!(report(&["hopf", &data("cover2.json")], 0)["result"]["h"], 1);
    assert_eq!(
        report(&["hopf", &data("identity.json")], 0)["result"]["h"],
        0
    );
}

#[test]
fn group_quaternion() {
    let v = report(
        &["group", "--family", "binary_dihedral", "--parameter", "2"],
        0,
    );
    let r = &v["result"];
    assert_eq!(r["order"], 8);
    assert_eq!(r["involution_count"], 1);
    assert_eq!(r["realizable"], false);
    assert_eq!(r["hopf"], 1);
    let from_file = report(&["group", "--table", &data("quaternion.json")], 0);
    assert_eq!(from_file["result"], v["result"]);
}

#[test]
fn group_from_table() {
    let v = report(&["group", "--table", &data("cyclic3_table.json")], 0);
    assert_eq!(v["result"]["family"], "custom");
    assert_eq!(v["result"]["realizable"], true);
    assert_eq!(v["result"]["hopf"], 0);
}

#[test]
fn group_refusals() {
    let v = diagnostic(&[
        "group",
        "--family",
        "cyclic",
        "--parameter",
        "4",
        "--dimension",
        "5",
    ]);
    assert_eq!(v["error"]["kind"], "unsupported");
    let v = diagnostic(&["group", "--family", "dodecahedral"]);
    assert_eq!(v["error"]["kind"], "validation");
}

#[test]
fn dcover_check_agrees() {
    let v = report(&["dcover-check"], 0);
    let rows = v["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 11);
    for r in rows {
        let d = r["d"].as_u64().unwrap();
        assert_eq!(r["sigma_components"], d - 1);
        assert_eq!(r["sigma_hopf"], u64::from(d % 2 == 0));
        assert_eq!(r["agree"], true);
    }
}

#[test]
fn sweep_bundled_census() {
    let v = report(&["sweep"], 0);
    let c = &v["result"]["census"];
    assert_eq!(
        (&c["initial_circles"], &c["surgeries"], &c["final_circles"]),
        (
            &serde_json::json!(4),
            &serde_json::json!(15),
            &serde_json::json!(12)
        )
    );
    assert!(c["parity"]["min_nonorientable"].as_u64().unwrap() >= 1);
    assert_eq!(c["parity"]["orientable_only_feasible"], false);
    assert_eq!(v["result"]["certificate"]["passed"], true);
}

#[test]
fn sweep_rejects_dangling_labels() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("movie.json");
    std::fs::write(
        &path,
        r#"{"initial": ["A"], "events": [{"t": "1/2", "kind": "death", "labels": ["B"]}]}"#,
    )
    .unwrap();
    let v = diagnostic(&["sweep", path.to_str().unwrap()]);
    assert_eq!(v["error"]["kind"], "validation");
}

#[test]
fn selftest_is_deterministic() {
    let spawn = || {
        Command::new(env!("CARGO_BIN_EXE_dpl"))
            .args([
                "--format", "json", "selftest", "--cases", "200", "--seed", "7",
            ])
            .env_remove("DPL_SEED")
            .output()
            .expect("dpl runs")
    };
    let (a, b) = std::thread::scope(|s| {
        let a = s.spawn(spawn);
        let b = s.spawn(spawn);
        (a.join().unwrap(), b.join().unwrap())
    });
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_valid("report.schema.json", &v);
    assert_eq!(v["result"]["all_passed"], true);
    for p in v["result"]["properties"].as_array().unwrap() {
        assert_eq!(p["passed"], 200, "{}", p["name"]);
    }
}

#[test]
fn seed_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_dpl"))
        .args(["--format", "json", "selftest", "--cases", "2"])
        .env("DPL_SEED", "11")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["seed"], 11);
    assert_eq!(v["command"]["args"]["seed"], 11);
}

#[test]
fn reports_are_byte_identical() {
    let args = ["--format", "json", "analyze", &data("folded2.json")];
    assert_eq!(dpl(&args).stdout, dpl(&args).stdout);
}

#[test]
fn text_summary_comes_from_json() {
    let args = ["analyze", &data("cover2.json")];
    let text = String::from_utf8(dpl(&args).stdout).unwrap();
    let v = report(&args, 0);
    let lines: Vec<&str> = text.lines().skip(1).map(str::trim).collect();
    let summary: Vec<&str> = v["summary"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap())
        .collect();
    assert_eq!(lines, summary);
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let p = path.to_str().unwrap();
    let text = dpl(&["--out", p, "hopf", &data("cover2.json")]);
    assert_eq!(text.status.code(), Some(0));
    let json = dpl(&["--format", "json", "hopf", &data("cover2.json")]);
    assert_eq!(std::fs::read(&path).unwrap(), json.stdout);
}
