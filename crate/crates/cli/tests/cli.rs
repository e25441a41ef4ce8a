use std::path::PathBuf;
use std::process::{Command, Output};

const TWIST: &str = "cobordism { g_minus=1 g_plus=1 r_minus=0 r_plus=0 G_rank=1
  phi { a1 -> 1 ; b1 -> t1 }
  f { a1 -> a1 ; b1 -> b1 a1 } }
";
const IDENTITY: &str = "cobordism { g_minus=1 g_plus=1 r_minus=0 r_plus=0 G_rank=1 phi { a1 -> t1 ; b1 -> 1 } }\n";
const MALFORMED: &str = "cobordism { g_minus=1 g_plus=1 r_minus=0 r_plus=0 G_rank=1\n  f { a1 -> a1 ; b1 -> b1 c1 } }\n";
const CUP: &str = "cobordism { g_minus=0 g_plus=1 r_minus=1 r_plus=0 G_rank=0 }\n";

fn file(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("magnus-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_magnus")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn identity_is_diagonal() {
    let p = file("identity.cob", IDENTITY);
    let o = run(&["--json", "mag", "eval", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["basis"], serde_json::json!([["1", "0", "1", "0"], ["0", "1", "0", "1"]]));
}

#[test]
fn twist_factorizes() {
    let p = file("twist.cob", TWIST);
    let o = run(&["alex", "factorize", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("unit matched: +"), "{}", stdout(&o));
    let o = run(&["--json", "alex", "factorize", p.to_str().unwrap(), "--transversal", r#"[["0","0","1","0"],["0","0","0","1"]]"#]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(json(&o)["unit"].is_string());
}

#[test]
fn twist_representation() {
    let p = file("twist-rep.cob", TWIST);
    let o = run(&["--json", "mag", "rep", p.to_str().unwrap()]);
    assert_eq!(json(&o)["matrix"], serde_json::json!([["1", "t1"], ["0", "1"]]));
}

#[test]
fn malformed_input_is_a_domain_error() {
    let p = file("bad.cob", MALFORMED);
    let o = run(&["mag", "eval", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2, column 27"), "{}", stderr(&o));
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    assert_eq!(run(&["mag", "eval"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "nope"]).status.code(), Some(1));
    assert_eq!(run(&["--frobnicate", "verify", "rings"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn mismatched_composition() {
    let a = file("twist-c.cob", TWIST);
    let b = file("identity-c.cob", IDENTITY);
    let o = run(&["mag", "compose", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["mag", "compose", a.to_str().unwrap(), a.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn validate_only() {
    let p = file("twist-v.cob", TWIST);
    let o = run(&["--validate-only", "alex", "eval", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("valid"));
}

#[test]
fn pluecker_over_integers() {
    let p = file("cup.cob", CUP);
    let o = run(&["--json", "alex", "pluecker", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let s = json(&o)["sign"].as_str().unwrap().to_string();
    assert!(s == "+1" || s == "-1");
    let t = file("twist-p.cob", TWIST);
    assert_eq!(run(&["alex", "pluecker", t.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn verify_is_deterministic() {
    for suite in ["forms", "functoriality", "factorization"] {
        let a = run(&["verify", suite, "--seed", "7"]);
        assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
        assert!(stdout(&a).lines().all(|l| l.starts_with("PASS")));
        assert_eq!(a.stdout, run(&["verify", suite, "--seed", "7"]).stdout);
    }
}
