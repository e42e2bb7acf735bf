use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn smt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_smt")).args(args).env_remove("SMT_CACHE_DIR").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(root().join("tests/golden").join(name)).unwrap()
}

fn schema_valid(command: &str, out: &str) {
    let path = root().join("../../schemas").join(format!("{command}.schema.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let v = jsonschema::validator_for(&schema).expect("schema compiles");
    let inst: Value = serde_json::from_str(out).unwrap();
    let errs: Vec<String> = v.iter_errors(&inst).map(|e| e.to_string()).collect();
    assert!(errs.is_empty(), "{command}: {errs:?}");
}

const PLUCKER: &str = r#"[{"t":"u","I":[1,4]},{"t":"u","I":[2,3]}]"#;
const P21: &str = r#"[{"t":"p","A":[2],"B":[1]}]"#;

#[test]
fn golden_outputs() {
    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("straighten_plucker.json", vec!["straighten", "--n", "2", "--m", "4", "--word", PLUCKER]),
        (
            "straighten_dt_example.json",
            vec!["straighten", "--family", "dt", "--m", "2", "--t", "3", "--word", &r#"[{"t":"p","A":[2],"B":[1]},{"t":"p","A":[2],"B":[1]}]"#],
        ),
        ("hilbert_dt.json", vec!["hilbert", "--family", "dt", "--m", "2", "--t", "2", "--d", "2"]),
        ("enumerate_s.json", vec!["enumerate", "--family", "s", "--n", "2", "--m", "3", "--d", "1"]),
        ("sl2_transition_010.txt", vec!["sl2", "transition", "--m", "4", "--s", "1", "--format", "table"]),
        ("doset_mul.json", vec!["doset", "mul", "--n", "2", "--m", "4", "--left", P21, "--right", P21]),
    ];
    for (file, args) in cases {
        let o = smt(&args);
        assert!(o.status.success(), "{file}: {}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(stdout(&o), golden(file), "{file}");
    }
}

#[test]
fn plucker_relation_and_hilbert_value() {
    let v: Value = serde_json::from_str(&stdout(&smt(&["straighten", "--n", "2", "--m", "4", "--word", PLUCKER]))).unwrap();
    let rhs = v["result"]["rhs"].as_array().unwrap();
    assert_eq!(rhs.len(), 2);
    let coeffs: Vec<&str> = rhs.iter().map(|t| t["c"].as_str().unwrap()).collect();
    assert!(coeffs.contains(&"1/1") && coeffs.contains(&"-1/1"));
    let v: Value = serde_json::from_str(&stdout(&smt(&["hilbert", "--family", "dt", "--m", "2", "--t", "2", "--d", "2"]))).unwrap();
    assert_eq!(v["result"]["value"], 5);
}

#[test]
fn rewrite_agrees_with_solver() {
    let a: Value = serde_json::from_str(&stdout(&smt(&["straighten", "--n", "2", "--m", "4", "--word", PLUCKER]))).unwrap();
    let o = smt(&["straighten", "--n", "2", "--m", "4", "--word", PLUCKER, "--rewrite"]);
    let b: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(a["result"]["rhs"], b["result"]["rhs"]);
    assert_eq!(b["result"]["stats"]["substitutions"], 1);
}

#[test]
fn every_subcommand_matches_its_schema() {
    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("straighten", vec!["straighten", "--n", "2", "--m", "4", "--word", PLUCKER, "--rewrite"]),
        ("enumerate", vec!["enumerate", "--family", "dt", "--m", "3", "--t", "3", "--d", "2"]),
        ("enumerate", vec!["enumerate", "--family", "rd", "--n", "2", "--m", "3", "--d", "2"]),
        ("hilbert", vec!["hilbert", "--family", "kp", "--n", "2", "--m", "3", "--d", "2"]),
        ("presentation", vec!["presentation", "--n", "2", "--m", "3"]),
        ("presentation", vec!["presentation", "--family", "dt", "--m", "3", "--t", "2"]),
        ("invariants", vec!["invariants", "lemma", "--n", "2", "--m", "3"]),
        ("invariants", vec!["invariants", "invariance", "--n", "2", "--m", "3", "--samples", "2"]),
        ("invariants", vec!["invariants", "sample", "--n", "3", "--det", "-1"]),
        ("detvar", vec!["detvar", "dim", "--m", "3", "--t", "2"]),
        ("detvar", vec!["detvar", "sing", "--m", "3", "--t", "3"]),
        ("detvar", vec!["detvar", "independence", "--m", "2", "--t", "2", "--d", "3"]),
        ("doset", vec!["doset", "axioms", "--n", "2", "--m", "3"]),
        ("doset", vec!["doset", "dalg", "--n", "2", "--m", "3"]),
        ("doset", vec!["doset", "mul", "--n", "2", "--m", "4", "--left", r#"[{"t":"u","I":[1,4]}]"#, "--right", r#"[{"t":"u","I":[2,3]}]"#]),
        ("sl2", vec!["sl2", "trace2", "--m", "2", "--i", "1", "--j", "2"]),
        ("sl2", vec!["sl2", "trace3", "--m", "3", "--i", "1", "--j", "2", "--k", "3"]),
        ("sl2", vec!["sl2", "transition", "--m", "4", "--r", "1"]),
        ("sl2", vec!["sl2", "basis", "--m", "4", "--t", "1"]),
        ("sl2", vec!["sl2", "theta", "--m", "2"]),
        ("verify-all", vec!["verify-all", "--n", "2", "--m", "3", "--d", "2"]),
    ];
    for (command, args) in cases {
        let o = smt(&args);
        assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        let out = stdout(&o);
        schema_valid(command, &out);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["command"], command);
    }
}

#[test]
fn seed_is_echoed_and_output_is_reproducible() {
    let args = ["invariants", "sample", "--n", "3", "--seed", "42"];
    let a = stdout(&smt(&args));
    assert_eq!(a, stdout(&smt(&args)));
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["seed"], 42);
    assert_ne!(a, stdout(&smt(&["invariants", "sample", "--n", "3", "--seed", "43"])));
    let one = stdout(&smt(&["presentation", "--n", "2", "--m", "4", "--threads", "1"]));
    let four = stdout(&smt(&["presentation", "--n", "2", "--m", "4", "--threads", "4"]));
    assert_eq!(one, four);
}

#[test]
fn exit_codes() {
    assert_eq!(smt(&["verify-all", "--m", "1", "--n", "2"]).status.code(), Some(2));
    let o = smt(&["straighten", "--m", "3", "--word", r#"[{"t":"u""#]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("column"));
    assert_eq!(smt(&["hilbert"]).status.code(), Some(2));
    // ω collides on mixed types, so this transition matrix cannot be built
    let o = smt(&["sl2", "transition", "--m", "4", "--r", "1", "--s", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("THEOREM-VIOLATION"));
}

#[test]
fn verify_all_passes_and_catches_a_corrupt_cache() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_smt"))
            .args(["verify-all", "--n", "2", "--m", "3", "--d", "2"])
            .env("SMT_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    assert_eq!(run().status.code(), Some(0));
    let file = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    let mut cat: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    cat["relations"][0]["rhs"][0]["c"] = Value::String("7/1".into());
    std::fs::write(&file, cat.to_string()).unwrap();
    let o = run();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("THEOREM-VIOLATION"));
}
