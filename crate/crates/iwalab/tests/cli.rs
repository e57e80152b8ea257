use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iwalab")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn module_file(dir: &TempDir, name: &str, module: &str) -> String {
    write(dir, name, &format!("p = 3\nN = 4\nM = 16\nmodule = {module}\n")).display().to_string()
}

const DATUM_HEAD: &str = r#"
[precision]
p = 3
N = 2
M = 8

[group]
order = 2

[field]
degree = 1

[[primes]]
id = "v"
kind = "supersingular"
degree = 1
sign = "-"
"#;

#[test]
fn prep_prints_unit_and_polynomial() {
    let out = run(&["prep", "T^3 + 4*T^2 + 4*T + 3", "p=3", "N=4", "M=8"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("u = "), "{text}");
    assert!(text.contains("\nf1 = T + 3\n"), "{text}");
}

#[test]
fn prep_rejects_bad_precision() {
    let out = run(&["prep", "T", "p=4", "N=4", "M=8"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invariants_and_coinvariants() {
    let dir = TempDir::new().unwrap();
    let a = module_file(&dir, "a.toml", r#"{ rank = 2, p_parts = [2], poly_parts = [ { f = "T+3", beta = 1 } ] }"#);
    let text = stdout(&run(&["invariants", &a]));
    for line in ["rank = 2", "mu = 2", "lambda = 1", "char = 3^2 * (T + 3)"] {
        assert!(text.contains(line), "{text}");
    }
    let b = module_file(&dir, "b.toml", "{ p_parts = [1] }");
    let text = stdout(&run(&["coinv", &b, "1", "1"]));
    assert!(text.contains("size = 3^3"), "{text}");
}

#[test]
fn compare_reports_hypothesis_failure() {
    let dir = TempDir::new().unwrap();
    let a = module_file(&dir, "a.toml", r#"{ poly_parts = [ { f = "T+3", beta = 2 } ] }"#);
    let b = module_file(&dir, "b.toml", r#"{ poly_parts = [ { f = "T+3" }, { f = "T+3" } ] }"#);
    let out = run(&["compare", &a, &b]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("hypothesis (1) bounded coinvariant ratio : OK"), "{text}");
    assert!(text.contains("hypothesis (2) equal coranks : FAIL at f=T + 3 n=1"), "{text}");
}

#[test]
fn pairing_annihilate_prints_size_identity() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "h.toml", "p = 3\nm = 2\ngram = [[1, 0], [0, 1]]\ngenerators = [[3, 0]]\n");
    let out = run(&["pairing", "annihilate", f.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("|C| * |Cperp| == |H| : OK"), "{text}");
    assert!(text.contains("Cperp generators:\n  [3, 0]\n  [0, 1]\n"), "{text}");
}

#[test]
fn fe_check_exit_codes() {
    let dir = TempDir::new().unwrap();
    let symmetric = write(
        &dir,
        "sym.toml",
        &format!("{DATUM_HEAD}\n[eigenspaces]\n\"1\" = {{ poly_parts = [ {{ f = \"T+3\" }}, {{ f = \"T+6\" }} ] }}\n"),
    );
    let out = run(&["fe-check", symmetric.to_str().unwrap()]);
    let text = stdout(&out);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.starts_with("hypotheses:\n(S1)"), "{text}");
    assert!(text.contains("eta=1 rank 0=0 OK torsion OK"), "{text}");

    let broken = write(
        &dir,
        "bad.toml",
        &format!("{DATUM_HEAD}\n[eigenspaces]\n\"1\" = {{ poly_parts = [ {{ f = \"T+3\" }} ] }}\n"),
    );
    let out = run(&["fe-check", broken.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("torsion FAIL"));

    let plus4 = write(
        &dir,
        "plus.toml",
        &DATUM_HEAD
            .replace("[field]\ndegree = 1", "[field]\ndegree = 4")
            .replace("degree = 1\nsign = \"-\"", "degree = 4\nsign = \"+\""),
    );
    let out = run(&["fe-check", plus4.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("4 | d at +-signed prime v"));

    let invalid = write(&dir, "inv.toml", &DATUM_HEAD.replace("sign = \"-\"", "sign = \"-\"\na_u = 1"));
    let out = run(&["fe-check", invalid.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("(S2)(b) violated: a_u = 1"));
}

#[test]
fn fe_check_json_mirrors_verdict() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "zero.toml", DATUM_HEAD);
    let out = run(&["fe-check", f.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["records"].as_array().unwrap().len(), 2);
    assert!(v["hypotheses"]["lines"].is_array());
}
