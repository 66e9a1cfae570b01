use std::process::{Command, Output};

use serde_json::Value;

const PUNCTURED: &str = r#"{"type":"puncture","ambient":{"type":"ball","n":2},"points":[[[0,0],[0,0]]]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polysqueeze")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn eval_ball_and_polydisk() {
    let out = run(&["eval", "--domain", r#"{"type":"ball","n":2}"#, "--point", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["T"]["lower"].as_f64().unwrap(), 1.0 / 2f64.sqrt());
    assert_eq!(v["S"]["lower"].as_f64().unwrap(), 1.0);
    assert_eq!(v["flags"]["relateA_equality"], Value::Bool(true));

    let out = run(&["eval", "--domain", r#"{"type":"polydisk","n":3}"#, "--point", "[0.1, 0.2, -0.3]"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["T"]["lower"].as_f64().unwrap(), 1.0);
    assert_eq!(v["S"]["upper"].as_f64().unwrap(), 1.0 / 3f64.sqrt());
}

#[test]
fn eval_with_certificate() {
    let out = run(&["eval", "--domain", PUNCTURED, "--point", "[[0.3,0],[0,0]]", "--certify", "--samples", "1000"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let est = stdout_json(&out)["certificate"]["radius_estimate"].as_f64().unwrap();
    assert!((0.29..=0.301).contains(&est), "{est}");
}

#[test]
fn validation_errors_exit_2() {
    let out = run(&["eval", "--domain", r#"{"type":"ball","n":2}"#, "--point", "[0.1]"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dimension"));

    let out = run(&["eval", "--domain", r#"{"type":"cartan1","r":2}"#, "--point", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`s`"));

    let out = run(&["eval", "--domain", r#"{"type":"ball","n":2}"#, "--point", "[0.9, 0.9]"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn domain_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.json");
    std::fs::write(&path, r#"{"type":"cartan4","n":3}"#).unwrap();
    let arg = format!("@{}", path.display());
    let out = run(&["eval", "--domain", &arg, "--point", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["S"]["lower"].as_f64().unwrap(), 1.0 / 2f64.sqrt());

    let missing = format!("@{}", dir.path().join("none.json").display());
    assert_eq!(run(&["eval", "--domain", &missing, "--point", "0"]).status.code(), Some(3));
}

#[test]
fn cartan_table() {
    let out = run(&["table", "--kind", "cartan", "--max", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("type,params,n,m,lower,upper"));
    let row = lines.find(|l| l.starts_with("II,p=3,")).unwrap();
    let cols: Vec<&str> = row.split(',').collect();
    assert_eq!(&cols[2..4], &["6", "3"]);
    assert!((cols[4].parse::<f64>().unwrap() - 1.0 / 18f64.sqrt()).abs() < 1e-11);
    assert_eq!(run(&["table", "--max", "99"]).status.code(), Some(2));
}

#[test]
fn profile_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("profile.csv");
    let out = run(&["profile", "--n", "2", "--grid", "0.2:0.2:0.8", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(&path).unwrap();
    let rows: Vec<Vec<f64>> =
        csv.lines().skip(1).map(|l| l.split(',').take(4).map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 4);
    for r in &rows {
        assert!((r[3] - r[0]).abs() < 1e-11);
    }
    assert!((rows[3][1] - 0.8 / 2f64.sqrt()).abs() < 1e-11);

    let bad = dir.path().join("no/such/dir/p.csv");
    assert_eq!(run(&["profile", "--n", "2", "--out", bad.to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(run(&["profile", "--n", "2", "--grid", "0.5:0.1:1.5"]).status.code(), Some(2));
}

#[test]
fn certify_is_byte_identical_across_runs() {
    let args = ["certify", "--domain", PUNCTURED, "--point", "[0.3, 0]", "--samples", "800", "--seed", "9"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = stdout_json(&a);
    assert_eq!(v["seed"], 9);
    assert_eq!(v["status"], "WITNESS_FOUND");
}

#[test]
fn certify_with_search() {
    let out = run(&[
        "certify",
        "--domain",
        PUNCTURED,
        "--point",
        "[0.8, 0]",
        "--search",
        "unitary",
        "--budget",
        "10",
        "--samples",
        "500",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout_json(&out)["radius_estimate"].as_f64().unwrap() > 0.5);

    let out = run(&["certify", "--domain", r#"{"type":"polydisk","n":2}"#, "--point", "0", "--search", "unitary"]);
    assert_eq!(out.status.code(), Some(2));
}
