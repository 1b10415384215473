use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_eulersign"));
    c.env_remove("EULERSIGN_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn schema() -> jsonschema::JSONSchema {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/schema.json");
    let raw: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::options()
        .with_draft(jsonschema::Draft::Draft7)
        .compile(&raw)
        .expect("schema compiles")
}

fn assert_valid(payload: &str) -> Value {
    let value: Value = serde_json::from_str(payload).expect("payload is JSON");
    let schema = schema();
    if let Err(errors) = schema.validate(&value) {
        let msgs: Vec<String> = errors
            .map(|e| format!("{e} at {}", e.instance_path))
            .collect();
        panic!("schema violations: {msgs:?}\n{payload}");
    }
    value
}

#[test]
fn table_rows() {
    let o = run(&["table", "A", "4", "negative"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "0,6,6,0\n");
    let o = run(&["table", "B", "1", "all"]);
    assert_eq!(stdout(&o), "1,1\n");
    let o = run(&["table", "A", "5", "positive", "--oracle"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("oracle: match\n"));
}

#[test]
fn table_formats() {
    let o = run(&["table", "B", "4", "negative", "--format", "csv"]);
    let s = stdout(&o);
    assert!(s.starts_with("n,k,count\n"));
    assert!(s.contains("4,2,112\n"));
    let o = run(&["table", "A", "7", "all", "--format", "json", "--oracle"]);
    let v = assert_valid(&stdout(&o));
    assert_eq!(v["table"]["counts"][3], "2416");
    assert_eq!(v["oracle_match"], true);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&["table", "A", "0"])), 2);
    assert_eq!(code(&run(&["table", "C", "3"])), 2);
    assert_eq!(code(&run(&["verify", "no-such-identity"])), 2);
    assert_eq!(
        code(&run(&["shuffle", "typeb", "--n", "3", "--param", "4"])),
        2
    );
    assert_eq!(code(&run(&["table", "A", "12", "--oracle"])), 2);
    assert_eq!(code(&run(&["clt", "A+", "--n", "1"])), 2);
}

#[test]
fn verify_examples_pass() {
    for args in [
        &["verify", "seriesApm", "--n", "12"][..],
        &["verify", "b-minus-one", "--n", "8"],
        &["verify", "necklace", "--n", "2", "--order", "20"],
        &["verify", "eigenfunction", "--n", "6", "--param", "3"],
        &["verify", "moment-match", "--n", "14", "--param", "3"],
        &["verify", "symmetry", "--n", "8"],
        &["verify", "reiner-eta", "--n", "5"],
    ] {
        let o = run(args);
        assert_eq!(code(&o), 0, "{args:?}");
        let v = assert_valid(&stdout(&o));
        assert_eq!(v["verification"]["passed"], true, "{args:?}");
    }
}

#[test]
fn verify_echoes_defaults() {
    let o = run(&["verify", "seriesA", "--n", "3"]);
    let v = assert_valid(&stdout(&o));
    assert_eq!(v["order"], 32);
    assert_eq!(v["param"], 24);
}

#[test]
fn roots_text_and_json() {
    let o = run(&["roots", "A+", "--max-n", "10"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert_eq!(
        s.lines()
            .filter(|l| l.starts_with("A+ n=") && l.contains(" all_real "))
            .count(),
        10
    );
    assert!(s.contains("summary: all_real"));

    let o = run(&["roots", "A-", "--max-n", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("A- n=2 all_real"));

    let o = run(&[
        "roots",
        "A+",
        "--max-n",
        "8",
        "--interlacing",
        "--format",
        "json",
    ]);
    let v = assert_valid(&stdout(&o));
    assert_eq!(v["smallest_not_interlacing"], 4);
    assert_eq!(v["summary"], "all_real");
}

#[test]
fn roots_budget_exceeded_exits_three() {
    let o = run(&["roots", "B-", "--max-n", "12", "--budget-n", "5"]);
    assert_eq!(code(&o), 3);
    let s = stdout(&o);
    assert!(s.contains("B- n=5 all_real"));
    assert!(!s.contains("n=6"));
    assert!(s.contains("summary: incomplete"));
}

#[test]
fn shuffle_exact_values() {
    let cases = [
        (
            &[
                "shuffle",
                "gsr",
                "--n",
                "3",
                "--param",
                "2",
                "--iters",
                "1",
                "--exact-only",
            ][..],
            "3/4",
        ),
        (
            &[
                "shuffle",
                "typeb",
                "--n",
                "2",
                "--param",
                "3",
                "--iters",
                "1",
                "--exact-only",
            ],
            "5/9",
        ),
        (
            &[
                "shuffle",
                "gsr",
                "--n",
                "52",
                "--param",
                "2",
                "--exact-only",
            ],
            "67108865/134217728",
        ),
        (&["shuffle", "shelf", "--n", "5", "--param", "3"], "1/2"),
    ];
    for (args, expected) in cases {
        let o = run(args);
        assert_eq!(code(&o), 0, "{args:?}");
        let v = assert_valid(&stdout(&o));
        assert_eq!(v["exact_probability"]["exact"], expected);
        assert!(v["positive_fraction"].is_null());
    }
}

#[test]
fn shuffle_simulation_is_seeded() {
    let args = [
        "shuffle", "gsr", "--n", "6", "--param", "2", "--trials", "20000", "--seed", "11",
    ];
    let a = stdout(&run(&args));
    let b = stdout(&run(&args));
    assert_eq!(a, b);
    let v = assert_valid(&a);
    assert_eq!(v["histogram"].as_array().unwrap().len(), 7);
    assert!(v["z_score"].as_f64().unwrap().abs() < 4.0);

    let from_env = bin()
        .args(&args[..args.len() - 2])
        .env("EULERSIGN_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(stdout(&from_env), a);
}

#[test]
fn moments_and_clt() {
    let o = run(&["moments", "A", "6", "negative", "--r", "2"]);
    let v = assert_valid(&stdout(&o));
    assert_eq!(v["report"]["conventions"][0]["variance"]["exact"], "7/12");

    let o = run(&["clt", "A+", "--n", "8,16,32"]);
    let s = stdout(&o);
    let d: Vec<f64> = s
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(d.len(), 3);
    assert!(d[0] > d[1] && d[1] > d[2]);
    let o = run(&["clt", "B-", "--n", "6,12", "--format", "json"]);
    assert_valid(&stdout(&o));
}

#[test]
fn out_file_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("row.csv");
    let manifest = dir.path().join("manifest.json");
    let args = [
        "table",
        "A",
        "6",
        "positive",
        "--format",
        "csv",
        "--out",
        out.to_str().unwrap(),
        "--manifest",
        manifest.to_str().unwrap(),
    ];
    let o = run(&args);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let payload = std::fs::read_to_string(&out).unwrap();
    assert!(payload.contains("6,3,147\n"));
    let m1 = assert_valid(&std::fs::read_to_string(&manifest).unwrap());
    assert_eq!(m1["config"]["command"], "table");

    // Same flags, same digest.
    run(&args);
    let m2: Value = serde_json::from_str(&std::fs::read_to_string(&manifest).unwrap()).unwrap();
    assert_eq!(m1["output_sha256"], m2["output_sha256"]);
    assert_eq!(std::fs::read_to_string(&out).unwrap(), payload);
}

#[test]
fn manifest_records_seed() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("m.json");
    let o = run(&[
        "shuffle",
        "typeb",
        "--n",
        "4",
        "--param",
        "3",
        "--trials",
        "5000",
        "--seed",
        "5",
        "--manifest",
        manifest.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let m = assert_valid(&std::fs::read_to_string(&manifest).unwrap());
    assert_eq!(m["seed"], 5);
    assert_eq!(m["exit_code"], 0);
}
