use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use crossmod_cli::report::Status;
use crossmod_cli::{golden, run, Overrides};
use serde_json::Value;

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_crossmod"))
}

fn presets() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("presets")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("crossmod-{name}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run_bundle(text: &str, extra: &[&str]) -> (Output, Value) {
    let dir = scratch("bundle");
    let file = dir.join("b.json");
    fs::write(&file, text).unwrap();
    let out = binary()
        .arg("--bundle")
        .arg(&file)
        .arg("--quiet")
        .args(extra)
        .output()
        .unwrap();
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out, report)
}

#[test]
fn h2_of_c2_with_z2_coefficients() {
    let (out, r) = run_bundle(
        r#"{"task":"h-n","group":"C2","module":"Z2-trivial","n":2}"#,
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(r["status"], "ok");
    assert_eq!(r["task"], "h-n");
    assert_eq!(r["result"]["factors"], serde_json::json!([2]));
}

#[test]
fn nonabelian_to_trivial_names_a_peiffer_pair() {
    let (out, r) = run_bundle(
        r#"{"task":"validate","xmod":{"H":"S3","G":"1","boundary":[0,0,0,0,0,0],"action":[[0,1,2,3,4,5]]}}"#,
        &[],
    );
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(r["status"], "violation");
    let first = &r["result"]["violations"][0];
    assert_eq!(first["law"], "peiffer");
    assert!(first["u"].is_u64() && first["v"].is_u64());
}

#[test]
fn malformed_json_is_an_input_error() {
    let (out, r) = run_bundle(r#"{"task": "h-n", "#, &[]);
    assert_eq!(out.status.code(), Some(Status::InputError.exit_code()));
    assert_ne!(out.status.code(), Some(0));
    assert_eq!(r["status"], "input-error");
}

#[test]
fn schema_errors_carry_a_pointer() {
    let r = run(
        r#"{"task":"h-n","group":"C2","module":"Z2-trivial","n":2,"extra":1}"#,
        Overrides::default(),
    );
    assert_eq!(r.status, Status::InputError);
    assert!(r.error.unwrap().message.contains("extra"));
    let r = run(
        r#"{"task":"h-n","group":"Q8","module":"Z2-trivial","n":2}"#,
        Overrides::default(),
    );
    assert_eq!(r.error.unwrap().pointer.as_deref(), Some("/group"));
    let r = run(
        r#"{"task":"h1","gamma":"C2","xmod":"abelian:C2","strict":"yes"}"#,
        Overrides::default(),
    );
    assert_eq!(r.error.unwrap().pointer.as_deref(), Some("/strict"));
    let r = run(r#"{"task":"frobnicate"}"#, Overrides::default());
    assert_eq!(r.error.unwrap().pointer.as_deref(), Some("/task"));
}

#[test]
fn budget_override_gives_a_resource_error() {
    let (out, r) = run_bundle(
        r#"{"task":"h1","gamma":"V4","xmod":"abelian:C4"}"#,
        &["--budget", "3"],
    );
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(r["status"], "resource-error");
    assert_eq!(r["provenance"]["budget"]["enumeration"], 3);
}

#[test]
fn seed_override_is_recorded_and_replays() {
    let bundle = r#"{"task":"unitary-check","op":"homomorphism","trials":20,"seed":1}"#;
    let a = run(
        bundle,
        Overrides {
            seed: Some(9),
            budget: None,
        },
    );
    let b = run(
        bundle,
        Overrides {
            seed: Some(9),
            budget: None,
        },
    );
    assert_eq!(a.provenance.seed, 9);
    assert_eq!(a.render(), b.render());
}

#[test]
fn out_flag_writes_the_report() {
    let dir = scratch("out");
    let (bundle, report) = (dir.join("b.json"), dir.join("r.json"));
    fs::write(
        &bundle,
        r#"{"task":"h-n","group":"C3","module":"Q/Z","n":3}"#,
    )
    .unwrap();
    let out = binary()
        .arg("--bundle")
        .arg(&bundle)
        .arg("--out")
        .arg(&report)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(fs::read(&report).unwrap(), out.stdout);
    assert!(!out.stderr.is_empty());
}

#[test]
fn shipped_presets_match() {
    let r = golden::check(&presets(), Overrides::default());
    let drift: Vec<_> = r.cases.iter().filter(|c| !c.matches).collect();
    assert!(drift.is_empty(), "{drift:#?}");
    assert_eq!(r.status, Status::Ok);
    assert!(r.cases.len() >= 12);
}

#[test]
fn empty_golden_directory_is_ok() {
    let dir = scratch("empty");
    let out = binary()
        .arg("--golden")
        .arg(&dir)
        .arg("--quiet")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["cases"].as_array().unwrap().len(), 0);
}

#[test]
fn tampered_expected_file_drifts_with_a_diff() {
    let dir = scratch("tamper");
    for name in ["h2-c2-z2", "h3-c2-qz"] {
        for suffix in [golden::BUNDLE_SUFFIX, golden::EXPECTED_SUFFIX] {
            fs::copy(
                presets().join(format!("{name}{suffix}")),
                dir.join(format!("{name}{suffix}")),
            )
            .unwrap();
        }
    }
    let expected = dir.join("h2-c2-z2.expected.json");
    let text = fs::read_to_string(&expected)
        .unwrap()
        .replace("\"order\": 2", "\"order\": 3");
    fs::write(&expected, text).unwrap();
    let out = binary().arg("--golden").arg(&dir).output().unwrap();
    assert_eq!(out.status.code(), Some(Status::GoldenDrift.exit_code()));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["status"], "golden-drift");
    let diff = r["cases"][0]["diff"].as_str().unwrap();
    assert!(
        diff.contains("-    \"order\": 3") && diff.contains("+    \"order\": 2"),
        "{diff}"
    );
    assert_eq!(r["cases"][1]["matches"], true);
}

#[test]
fn missing_expected_file_is_an_input_error() {
    let dir = scratch("missing");
    fs::copy(
        presets().join("h2-c2-z2.bundle.json"),
        dir.join("h2-c2-z2.bundle.json"),
    )
    .unwrap();
    let r = golden::check(&dir, Overrides::default());
    assert_eq!(r.status, Status::InputError);
    assert!(r.error.is_some());
}
