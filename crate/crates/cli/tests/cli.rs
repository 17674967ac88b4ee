use std::path::PathBuf;
use std::process::{Command, Output};

use hurwitz_core::patterns::{ClosedForm, ClosedFormJson};
use hurwitz_core::HurwitzInput;
use jsonschema::JSONSchema;
use serde_json::Value;

fn dhn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dhn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn schema_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas")
}

fn load(name: &str) -> Value {
    let text = std::fs::read_to_string(schema_dir().join(name)).expect("schema file");
    serde_json::from_str(&text).expect("schema is JSON")
}

fn validate(schema: &str, instance: &Value) {
    let compiled = JSONSchema::options()
        .with_document(
            "json-schema:///defs.schema.json".into(),
            load("defs.schema.json"),
        )
        .compile(&load(schema))
        .expect("schema compiles");
    let msgs: Vec<String> = match compiled.validate(instance) {
        Ok(()) => return,
        Err(errors) => errors
            .map(|e| format!("{e} at {}", e.instance_path))
            .collect(),
    };
    panic!("{schema}: {}", msgs.join("; "));
}

fn json_of(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = dhn(&all);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_str(&stdout(&out)).expect("JSON output")
}

#[test]
fn pinned_numbers() {
    for (args, expected) in [
        (
            vec!["hurwitz", "--mu", "2", "--nu", "1,1", "--r", "1"],
            "1\n",
        ),
        (vec!["hurwitz", "--mu", "1", "--nu", "1", "--r", "0"], "1\n"),
        (
            vec!["hurwitz", "--mu", "3", "--nu", "2,1", "--g", "0"],
            "1\n",
        ),
        (
            vec!["oracle", "--mu", "3", "--nu", "2,1", "--g", "0"],
            "1\n",
        ),
        (
            vec!["hurwitz", "--mu", "3", "--nu", "2,1", "--g", "1"],
            "9\n",
        ),
    ] {
        let out = dhn(&args);
        assert!(out.status.success());
        assert_eq!(stdout(&out), expected, "{args:?}");
    }
}

#[test]
fn closed_form_and_oracle_agree() {
    for g in 0..3 {
        let g = g.to_string();
        let a = dhn(&["hurwitz", "--mu", "4,1", "--nu", "3,2", "--g", &g]);
        let b = dhn(&["oracle", "--mu", "4,1", "--nu", "3,2", "--g", &g]);
        assert_eq!(stdout(&a), stdout(&b));
    }
}

#[test]
fn exit_codes() {
    let on_wall = dhn(&["hurwitz", "--mu", "2,2", "--nu", "2,2", "--g", "0"]);
    assert_eq!(on_wall.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&on_wall.stderr).contains("W_{{1},{1}}"));
    let oracle = dhn(&[
        "hurwitz", "--mu", "2,2", "--nu", "2,2", "--g", "0", "--oracle",
    ]);
    assert_eq!(oracle.status.code(), Some(0));

    for args in [
        vec!["hurwitz", "--mu", "3", "--nu", "2,2", "--r", "1"],
        vec!["hurwitz", "--mu", "3", "--nu", "2,1"],
        vec![
            "hurwitz", "--mu", "3", "--nu", "2,1", "--r", "2", "--g", "0",
        ],
        vec!["hurwitz", "--mu", "3", "--nu", "2,0", "--r", "1"],
        vec![
            "closed-form",
            "--mu",
            "5,2",
            "--nu",
            "4,3",
            "--order",
            "1,1/1,2",
        ],
        vec!["verify", "no-such-suite"],
        vec!["chamber", "--mu", "5,2", "--nu", "4,3", "--format", "latex"],
        vec!["wallcross", "--mu", "8,3", "--nu", "6,4,1", "--wall", "1/1"],
    ] {
        assert_eq!(dhn(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn closed_form_latex_is_the_product_formula() {
    let out = stdout(&dhn(&[
        "closed-form",
        "--mu",
        "5,2",
        "--nu",
        "4,3",
        "--format",
        "latex",
    ]));
    assert!(
        out.contains("\\varsigma(20z)\\varsigma(15z)\\varsigma(14z)"),
        "{out}"
    );
    let two = stdout(&dhn(&[
        "closed-form",
        "--mu",
        "5,2",
        "--nu",
        "4,3",
        "--order",
        "1,2/1,2",
    ]));
    assert!(two.contains("2 pattern(s)"), "{two}");
}

#[test]
fn closed_form_json_round_trips() {
    let v = json_of(&["closed-form", "--mu", "7", "--nu", "4,2,1"]);
    validate("closed_form.schema.json", &v);
    let wire: ClosedFormJson = serde_json::from_value(v.clone()).unwrap();
    let cf = ClosedForm::from_json(&wire).unwrap();
    assert_eq!(serde_json::to_value(cf.to_json()).unwrap(), v);
    let args: Vec<i64> = v["patterns"][0]["sigma_args"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| a.as_i64().unwrap())
        .collect();
    let mut sorted = args.clone();
    sorted.sort_unstable();
    assert_eq!(sorted, vec![7, 14, 28]);
}

#[test]
fn json_outputs_match_schemas() {
    validate(
        "hurwitz.schema.json",
        &json_of(&["hurwitz", "--mu", "3", "--nu", "2,1", "--g", "1"]),
    );
    validate(
        "hurwitz.schema.json",
        &json_of(&["oracle", "--mu", "2,2", "--nu", "3,1", "--r", "2"]),
    );
    validate(
        "series.schema.json",
        &json_of(&["series", "--mu", "5,2", "--nu", "4,3", "--N", "6"]),
    );
    validate(
        "chamber.schema.json",
        &json_of(&["chamber", "--mu", "3,3", "--nu", "2,2,2"]),
    );
    validate(
        "chamber.schema.json",
        &json_of(&["chamber", "--mu", "5,2", "--nu", "4,3"]),
    );
    validate(
        "poly.schema.json",
        &json_of(&["poly", "--mu", "5,2", "--nu", "4,3", "--g", "1"]),
    );
    validate(
        "wallcross.schema.json",
        &json_of(&[
            "wallcross",
            "--mu",
            "6,1",
            "--nu",
            "4,3",
            "--wall",
            "1/1",
            "--N",
            "6",
        ]),
    );
    validate(
        "verify.schema.json",
        &json_of(&["verify", "fock-identities"]),
    );
}

#[test]
fn series_numbers_match_the_oracle() {
    let v = json_of(&["series", "--mu", "4,1", "--nu", "3,2", "--N", "7"]);
    for entry in v["hurwitz_numbers"].as_array().unwrap() {
        let r = entry["r"].as_u64().unwrap().to_string();
        let oracle = stdout(&dhn(&["oracle", "--mu", "4,1", "--nu", "3,2", "--r", &r]));
        assert_eq!(entry["value"].as_str().unwrap(), oracle.trim(), "r={r}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = [
        "poly", "--mu", "5,3,1", "--nu", "7,2", "--g", "1", "--seed", "7", "--format", "json",
    ];
    let a = dhn(&args);
    let b = dhn(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = Command::new(env!("CARGO_BIN_EXE_dhn"))
        .args(args)
        .env("HW_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn bad_thread_count_is_a_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_dhn"))
        .args(["hurwitz", "--mu", "2", "--nu", "1,1", "--r", "1"])
        .env("HW_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_file_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("job.toml");
    std::fs::write(&config, "mu = [3]\nnu = [2, 1]\ng = 1\nformat = \"json\"\n").unwrap();
    let target = dir.path().join("out.json");
    let out = dhn(&[
        "hurwitz",
        "--config",
        config.to_str().unwrap(),
        "--output",
        target.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(v["value"], "9");

    // flags win over the file
    let out = dhn(&[
        "hurwitz",
        "--config",
        config.to_str().unwrap(),
        "--g",
        "0",
        "--format",
        "text",
    ]);
    assert_eq!(stdout(&out), "1\n");

    std::fs::write(&config, "mu = [3]\nbogus = 1\n").unwrap();
    let out = dhn(&["hurwitz", "--config", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_fock_identities_passes() {
    let out = dhn(&["verify", "fock-identities"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(
        text.lines()
            .last()
            .unwrap()
            .starts_with("PASS fock-identities"),
        "{text}"
    );
}

#[test]
fn negative_control_fails_with_witness() {
    let out = dhn(&["verify", "all", "--negative-control"]);
    assert_eq!(out.status.code(), Some(4));
    let text = stdout(&out);
    assert!(
        text.lines().last().unwrap().starts_with("FAIL all"),
        "{text}"
    );
    let witness = text
        .lines()
        .find(|l| l.starts_with("FAIL oracle-equivalence"))
        .expect("oracle check fails");
    assert!(witness.contains("oracle"), "{witness}");
    assert!(
        text.lines().any(|l| l.starts_with("FAIL wall crossing")),
        "{text}"
    );
}

#[test]
fn wallcross_reports_equal_sides() {
    let v = json_of(&[
        "wallcross",
        "--mu",
        "5,3,1",
        "--nu",
        "7,2",
        "--wall",
        "1,2/1",
        "--N",
        "8",
    ]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["lhs"], v["rhs"]);
}

#[test]
fn poly_matches_sampled_numbers() {
    let v = json_of(&["poly", "--mu", "5,2", "--nu", "4,3", "--g", "1"]);
    assert_eq!(v["verdict"]["passed"], true);
    let cp: hurwitz_core::chambers::ChamberPolynomial =
        serde_json::from_value(v["chamber_polynomial"].clone()).unwrap();
    let at = HurwitzInput::new(vec![9, 4], vec![7, 6]).unwrap();
    let value = cp.polynomial.eval(&at.reduced_coordinates());
    let oracle = stdout(&dhn(&["oracle", "--mu", "9,4", "--nu", "7,6", "--g", "1"]));
    assert_eq!(
        hurwitz_core::rational::format_rational(&value),
        oracle.trim()
    );
}
