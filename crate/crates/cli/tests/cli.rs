use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn qentropy(args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qentropy"));
    for arg in args {
        if arg.contains('.') && !arg.starts_with('-') {
            cmd.arg(fixture(arg));
        } else {
            cmd.arg(arg);
        }
    }
    cmd.env_remove("QE_ENUM_CAP").output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = qentropy(&full);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).unwrap()
}

fn assert_fails(args: &[&str], code: i32) -> String {
    let out = qentropy(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}");
    assert!(out.stdout.is_empty(), "stdout on failure: {}", stdout(&out));
    String::from_utf8(out.stderr).unwrap()
}

#[test]
fn entropy_prints_ten_decimals() {
    let out = qentropy(&["entropy", "k4.adj"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("entropy   1.3862943611 nats\n"));
    assert!(stdout(&qentropy(&["entropy", "loop.adj"])).starts_with("entropy   0.0000000000"));
    assert!(stdout(&qentropy(&["entropy", "golden.adj"])).starts_with("entropy   0.4812118251"));
    assert!(stdout(&qentropy(&["--log2", "entropy", "k4.adj"])).starts_with("entropy   2.0000000000 bits"));
}

#[test]
fn entropy_json_has_the_documented_fields() {
    let v = json(&["entropy", "golden.adj"]);
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    assert!((v["entropy"].as_f64().unwrap() - phi.ln()).abs() < 1e-9);
    assert_eq!(v["method"], "spectral");
    assert!(v["residual"].as_f64().unwrap() <= 1e-10);
    assert_eq!(v["n"], 2);
    assert_eq!(v.as_object().unwrap().len(), 4);
}

#[test]
fn json_roundtrips() {
    for args in [
        &["entropy", "standard.adj"][..],
        &["quotient", "k4.adj", "k4_vertical.vmap"],
        &["horseshoe", "standard_f.pam", "--quotient", "standard_q.pam"],
        &["words", "golden.adj", "-n", "12"],
    ] {
        let v = json(args);
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(serde_json::from_str::<Value>(&text).unwrap(), v);
    }
}

#[test]
fn entropy_errors() {
    let message = assert_fails(&["entropy", "malformed.adj"], 2);
    assert!(message.contains("line 3"), "{message}");
    assert_fails(&["entropy", "path.adj"], 3);
    assert_fails(&["entropy", "missing.adj"], 2);
    assert_fails(&["--tolerance", "0", "entropy", "k4.adj"], 2);
    assert_fails(&["--max-iterations", "1", "entropy", "golden.adj"], 6);
}

#[test]
fn quotient_routes() {
    let v = json(&["quotient", "k4.adj", "k4_vertical.vmap"]);
    assert!((v["entropy"].as_f64().unwrap() - 2f64.ln()).abs() < 1e-9);
    assert_eq!(v["method"], "section");
    assert_eq!(v["section_found"], true);
    assert_eq!(v["section"], serde_json::json!([1, 2]));

    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let v = json(&["quotient", "even.adj", "even_collapse.vmap"]);
    assert!((v["entropy"].as_f64().unwrap() - phi.ln()).abs() < 1e-9);
    assert_eq!(v["method"], "sofic");
    assert_eq!(v["section_found"], false);
    assert!(v["section"].is_null());

    let v = json(&[
        "quotient",
        "--method",
        "bruteforce",
        "--nmax",
        "20",
        "even.adj",
        "even_collapse.vmap",
    ]);
    assert_eq!(v["method"], "bruteforce");
    assert!((v["entropy"].as_f64().unwrap() - phi.ln()).abs() < 0.02);

    assert_fails(
        &["quotient", "--method", "section", "even.adj", "even_collapse.vmap"],
        3,
    );
    assert_fails(&["quotient", "k4.adj", "even_collapse.vmap"], 2);
}

#[test]
fn identity_labels_reproduce_entropy() {
    let plain = json(&["entropy", "standard.adj"]);
    let quotient = json(&["quotient", "standard.adj", "identity4.vmap"]);
    assert!((plain["entropy"].as_f64().unwrap() - quotient["entropy"].as_f64().unwrap()).abs() < 1e-12);
}

#[test]
fn enumeration_cap_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_qentropy"))
        .args(["words", "--list", "-n", "10"])
        .arg(fixture("k4.adj"))
        .env("QE_ENUM_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    assert!(out.stdout.is_empty());
}

#[test]
fn horseshoe_reports() {
    let out = qentropy(&["horseshoe", "standard_f.pam"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("  1 1 0 0\n  1 1 1 1\n  1 1 1 1\n  1 1 0 0\n"));
    assert!(text.contains("entropy   1.0986122887"));

    let v = json(&["horseshoe", "standard_f.pam", "--quotient", "standard_q.pam"]);
    assert_eq!(v["quotient"]["c"], serde_json::json!([1, 1, 2, 2]));
    assert_eq!(v["quotient"]["g"], serde_json::json!([2, 3]));
    assert!((v["quotient"]["entropy"].as_f64().unwrap() - 2f64.ln()).abs() < 1e-9);

    let text = stdout(&qentropy(&[
        "horseshoe",
        "standard_f.pam",
        "--quotient",
        "standard_q.pam",
    ]));
    assert!(text.contains("section   g = (1↦2, 2↦3)"));

    let v = json(&["horseshoe", "tent.pam", "--quotient", "identity2_q.pam"]);
    assert!((v["entropy"].as_f64().unwrap() - 2f64.ln()).abs() < 1e-9);
    assert!((v["quotient"]["entropy"].as_f64().unwrap() - 2f64.ln()).abs() < 1e-9);
}

#[test]
fn horseshoe_errors() {
    assert_fails(&["horseshoe", "stuck_f.pam", "--quotient", "stuck_q.pam"], 5);
    assert_fails(&["horseshoe", "standard_q.pam"], 2);
    assert_fails(&["horseshoe", "standard_f.pam", "--quotient", "identity2_q.pam"], 3);
}

#[test]
fn morphism_and_isomorphism_exit_codes() {
    assert_eq!(
        qentropy(&["check-morphism", "k4.adj", "k2.adj", "k4_vertical.vmap"])
            .status
            .code(),
        Some(0)
    );
    let out = qentropy(&["check-morphism", "standard.adj", "golden.adj", "standard.vmap"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "false\n");
    assert_eq!(qentropy(&["iso", "k4.adj", "k4.adj"]).status.code(), Some(0));
    assert_eq!(qentropy(&["iso", "k4.adj", "k3.adj"]).status.code(), Some(1));
}

#[test]
fn find_section_prints_the_section() {
    assert_eq!(
        stdout(&qentropy(&["find-section", "standard.adj", "standard.vmap"])),
        "(1↦2, 2↦3)\n"
    );
    assert_eq!(
        json(&["find-section", "standard.adj", "standard.vmap"])["section"],
        serde_json::json!([2, 3])
    );
    assert_fails(&["find-section", "even.adj", "even_collapse.vmap"], 3);
}

#[test]
fn words_counts_exactly() {
    let out = qentropy(&["words", "k2.adj", "-n", "10"]);
    assert_eq!(stdout(&out).lines().next(), Some("1024"));
    let v = json(&["words", "k4.adj", "-n", "40"]);
    assert_eq!(v["count"], "1208925819614629174706176");
    let v = json(&["words", "even.adj", "-n", "4", "--labels", "even_collapse.vmap"]);
    assert_eq!(v["counts"], serde_json::json!(["2", "4", "7", "12"]));
}

#[test]
fn words_lists_one_based_words() {
    let out = qentropy(&["words", "--list", "-n", "3", "golden.adj"]);
    assert_eq!(stdout(&out), "1 1 1\n1 1 2\n1 2 1\n2 1 1\n2 1 2\n");
    let v = json(&[
        "words",
        "--list",
        "-n",
        "4",
        "even.adj",
        "--labels",
        "even_collapse.vmap",
    ]);
    assert_eq!(v["words"].as_array().unwrap().len(), 12);
}

#[test]
fn product_feeds_entropy() {
    let out = qentropy(&["product", "golden.adj", "golden.adj"]);
    assert_eq!(out.status.code(), Some(0));
    let mut child = Command::new(env!("CARGO_BIN_EXE_qentropy"))
        .args(["--json", "entropy", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    std::io::Write::write_all(child.stdin.as_mut().unwrap(), &out.stdout).unwrap();
    let done = child.wait_with_output().unwrap();
    let v: Value = serde_json::from_slice(&done.stdout).unwrap();
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    assert!((v["entropy"].as_f64().unwrap() - 2.0 * phi.ln()).abs() < 1e-8);
}
