use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use jsonschema::JSONSchema;
use serde_json::Value;

use qhopf_cli::{run, EXIT_CHECK_FAILED, EXIT_USAGE};

fn qhopf(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("qhopf").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json_of(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out, err) = qhopf(&full);
    let value = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: stdout={out} stderr={err}"));
    (code, value)
}

fn schema(name: &str) -> JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{name}.json"));
    let doc: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    JSONSchema::compile(&doc).unwrap()
}

fn assert_valid(name: &str, value: &Value) {
    let s = schema(name);
    let msgs: Vec<String> = match s.validate(value) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    panic!("{name}: {msgs:?}\n{value:#}");
}

fn write_doc(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

#[test]
fn normalize_examples() {
    assert_eq!(qhopf(&["normalize", "--alg", "su2", "g*a"]).1.trim(), "-1*a*g");
    assert_eq!(qhopf(&["normalize", "--alg", "o+", "--n", "2", "v[1,1]*v[1,1] + v[2,1]*v[2,1]"]).1.trim(), "1");
    assert_eq!(qhopf(&["normalize", "--alg", "s1", "z*z' - 1"]).1.trim(), "0");
    assert_eq!(qhopf(&["normalize", "--alg", "u+", "(2+1i)*u[1,2]*u*[1,2] - u[1,2]*u[1,2]*"]).0, 0);
}

#[test]
fn normalize_json_validates() {
    let (code, v) = json_of(&["normalize", "--alg", "su2", "a*a' + g*g'"]);
    assert_eq!(code, 0);
    assert_eq!(v["normal_form"], "1");
    assert_eq!(v["certified"], true);
    assert_valid("normalize", &v);
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, err) = qhopf(&["normalize", "--alg", "x+", "1"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("x+"), "{err}");
    assert_eq!(qhopf(&["verify", "no-such-lemma"]).0, EXIT_USAGE);
    assert_eq!(qhopf(&["frobnicate"]).0, EXIT_USAGE);
    let (code, _, err) = qhopf(&["normalize", "--alg", "o+", "v[1,1] + w"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("column 10"), "{err}");
    assert_eq!(qhopf(&["normalize", "--alg", "o+", "--n", "2", "v[3,1]"]).0, EXIT_USAGE);
    assert_eq!(qhopf(&["normalize", "--alg", "o+", "--n", "1", "1"]).0, EXIT_USAGE);
}

#[test]
fn help_and_version_exit_zero() {
    let (code, out, _) = qhopf(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("normalize"));
    assert_eq!(qhopf(&["--version"]).0, 0);
}

#[test]
fn verify_relate_cocycles_passes() {
    let (code, out, _) = qhopf(&["verify", "relate-cocycles", "--n", "2", "--xi", "z"]);
    assert_eq!(code, 0, "{out}");
    let (code, v) = json_of(&["verify", "relate-cocycles", "--n", "2", "--xi", "z*z - z"]);
    assert_eq!(code, 0);
    assert_eq!(v["lemma_id"], "relate-cocycles");
    assert_eq!(v["pass"], true);
    assert_valid("lemma-report", &v);
}

#[test]
fn verify_every_lemma_validates() {
    for lemma in qhopf_core::verify::LEMMA_IDS {
        let (code, v) = json_of(&["verify", lemma, "--n", "2", "--seed", "3", "--degree", "3"]);
        assert_eq!(code, 0, "{lemma}: {v:#}");
        assert_valid("lemma-report", &v);
    }
}

#[test]
fn hopf_check_reports() {
    let (code, v) = json_of(&["hopf-check", "--alg", "u+", "--n", "2", "--degree", "2", "--samples", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
    assert_valid("hopf-report", &v);
    assert_eq!(qhopf(&["hopf-check", "--alg", "su2"]).0, EXIT_USAGE);
}

#[test]
fn domain_test_reports() {
    let (code, v) = json_of(&["domain-test", "--samples", "40", "--seed", "42", "--max-alpha", "2", "--max-gamma", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["samples"], 40);
    assert_eq!(v["seed"], 42);
    assert_valid("domain-report", &v);
}

#[test]
fn complete_and_dump_presentation() {
    let (code, v) = json_of(&["complete", "--alg", "su2", "--bound", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["unresolved"].as_array().unwrap().len(), 0);
    assert_valid("complete", &v);
    let (code, v) = json_of(&["dump-presentation", "--alg", "o+", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["name"], "O_plus");
    assert_valid("presentation", &v);
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["--cache", cache, "normalize", "--alg", "u+", "--n", "2", "u[1,1]*u*[1,1] + u[1,2]*u*[1,2]"];
    let first = qhopf(&args);
    assert_eq!(first.0, 0);
    let file = dir.path().join("U_plus_n2_b8.json");
    assert!(file.exists());
    let doc: Value = serde_json::from_str(&fs::read_to_string(&file).unwrap()).unwrap();
    assert_valid("presentation", &doc);
    let second = qhopf(&args);
    assert_eq!(first, second);
    assert_eq!(second.1.trim(), "1");
}

#[test]
fn cocycle_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    // restriction of c(z) = z, c(v) = 0 along u_ij ↦ z v_ij
    let z = write_doc(
        dir.path(),
        "z.json",
        r#"{"module": "h", "domain": "u+", "n": 2,
            "values": {"u[1,1]": "z", "u[1,2]": "0", "u[2,1]": "0", "u[2,2]": "z"}}"#,
    );
    let doc: Value = serde_json::from_str(&fs::read_to_string(&z).unwrap()).unwrap();
    assert_valid("cocycle-doc", &doc);
    let z = z.to_str().unwrap();

    let (code, v) = json_of(&["cocycle", "check", z]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
    assert_valid("relation-report", &v);

    let (code, v) = json_of(&["cocycle", "eval", z, "u[1,1]*u[2,2]"]);
    assert_eq!(code, 0);
    assert_valid("cocycle-eval", &v);
    // c(ab) = a.c(b) + c(a)ε(b) with u ↦ z v acting on the left
    let expect = qhopf(&["normalize", "--alg", "h", "z*v[1,1]*z + z"]).1;
    assert_eq!(v["value"].as_str().unwrap(), expect.trim());

    let (code, v) = json_of(&["cocycle", "solve-inner", z, "--bound", "1"]);
    assert_eq!(code, 0);
    assert!(v["witness"].is_null());
    assert!(v["caveat"].as_str().unwrap().contains("NOT a proof"));
    assert_valid("solve-inner", &v);
}

#[test]
fn solve_inner_finds_witness() {
    let dir = tempfile::tempdir().unwrap();
    // inner cocycle of ξ = v[1,2] on S1 acting through z ↦ z: c(z) = z v12 − v12
    let p = write_doc(dir.path(), "inner.json", r#"{"module": "h", "domain": "s1", "values": {"z": "z*v[1,2] - v[1,2]"}}"#);
    let (code, v) = json_of(&["cocycle", "solve-inner", p.to_str().unwrap(), "--bound", "1"]);
    assert_eq!(code, 0, "{v:#}");
    assert!(v["witness"].is_string(), "{v:#}");
    assert_valid("solve-inner", &v);
}

#[test]
fn failing_cocycle_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_doc(
        dir.path(),
        "bad.json",
        r#"{"module": "o+", "n": 2, "values": {"v[1,1]": "1", "v[1,2]": "0", "v[2,1]": "0", "v[2,2]": "0"}}"#,
    );
    let (code, v) = json_of(&["cocycle", "check", p.to_str().unwrap()]);
    assert_eq!(code, EXIT_CHECK_FAILED);
    assert_eq!(v["pass"], false);
    assert_valid("relation-report", &v);
}

#[test]
fn term_list_values_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let text = r#"{"module": "s1", "values": {"z": [{"word": ["z"], "re": "1", "im": "0"}]}}"#;
    let p = write_doc(dir.path(), "t.json", text);
    assert_valid("cocycle-doc", &serde_json::from_str(text).unwrap());
    let (code, out, err) = qhopf(&["cocycle", "eval", p.to_str().unwrap(), "z*z"]);
    assert_eq!(code, 0, "{err}");
    // c(z²) = z·c(z) + c(z)·ε(z) = z² + z
    assert_eq!(out.trim(), qhopf(&["normalize", "--alg", "s1", "z*z + z"]).1.trim());
}

#[test]
fn malformed_cocycle_documents_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    for (name, body) in [
        ("syntax.json", "{"),
        ("gen.json", r#"{"module": "s1", "values": {"v[1,1]": "1"}}"#),
        ("expr.json", r#"{"module": "s1", "values": {"z": "z +"}}"#),
    ] {
        let p = write_doc(dir.path(), name, body);
        assert_eq!(qhopf(&["cocycle", "check", p.to_str().unwrap()]).0, EXIT_USAGE, "{name}");
    }
    assert_eq!(qhopf(&["cocycle", "check", "/nonexistent/c.json"]).0, EXIT_USAGE);
}

#[test]
fn output_is_deterministic() {
    let args = ["--json", "hopf-check", "--alg", "h", "--n", "2", "--degree", "2", "--samples", "4", "--seed", "9"];
    assert_eq!(qhopf(&args), qhopf(&args));
}

#[test]
fn binary_honours_seed_env_and_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_qhopf");
    let out = Command::new(bin)
        .args(["--json", "domain-test", "--samples", "5"])
        .env("QHOPF_SEED", "17")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"], 17);

    let out = Command::new(bin)
        .args(["--json", "domain-test", "--samples", "5", "--seed", "4"])
        .env("QHOPF_SEED", "17")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"], 4);

    let out = Command::new(bin).args(["verify", "bogus"]).env_remove("QHOPF_SEED").output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
}
