use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_delpezzo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

const IIB: &str = r#"{"degree":2,"surface":"A1+2A3","terms":["L25","L137","E3-E4","L236","L15","E1-E7","-L567","3L-E1234-2E5-E67","-L345","-2L+E1+2E2+E5+E7"]}"#;

#[test]
fn surfaces_listing() {
    let o = run(&["surfaces", "--degree", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().skip(2).count(), 21);

    let o = run(&["surfaces", "--degree", "6", "--name", "A1+A2"]);
    let text = stdout(&o);
    let row = text.lines().nth(2).unwrap();
    assert_eq!(row.split('\t').nth(3), Some("E3"));
}

#[test]
fn surfaces_rejects_bad_input() {
    assert_eq!(run(&["surfaces", "--degree", "99"]).status.code(), Some(2));
    let o = run(&["surfaces", "--degree", "6", "--name", "A1+A3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("did you mean"));
    assert_eq!(
        run(&["surfaces", "--degree", "3", "--bogus"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn check_counterexample_system() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "a.json", IIB);
    let o = run(&["check", &f]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["valid"], true);
    assert_eq!(v["strong"], true);
    assert_eq!(v["cyclic_strong"], false);
    assert!(v["augmentation_certificate"].is_null());
    assert_eq!(v["type"], "IIb");
}

#[test]
fn check_cyclic_strong_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "b.json",
        r#"{"degree":6,"terms":["L13","E1","L12","E2","L23","E3"]}"#,
    );
    let v: serde_json::Value =
        serde_json::from_slice(&run(&["check", &f, "--surface", "A2"]).stdout).unwrap();
    assert_eq!(v["cyclic_strong"], true);

    let bad = write(dir.path(), "c.json", r#"{"degree": 6, "terms": ["#);
    let o = run(&["check", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error"));

    let broken = write(
        dir.path(),
        "d.json",
        r#"{"degree":6,"terms":["L13","E1","L12","E2","L23","E2"]}"#,
    );
    let o = run(&["check", &broken]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["valid"], false);
}

#[test]
fn effcheck_traces() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "e.json",
        r#"{"degree":2,"surface":"A1+2A3","divisor":"3L-E1-2E2-E3-E4-2E5-E7"}"#,
    );
    let v: serde_json::Value = serde_json::from_slice(&run(&["effcheck", &f]).stdout).unwrap();
    assert_eq!(v["verdict"], false);
    let f = write(
        dir.path(),
        "g.json",
        r#"{"degree":5,"surface":"empty","divisor":[2,-1,-1,-1,-1]}"#,
    );
    let v: serde_json::Value = serde_json::from_slice(&run(&["effcheck", &f]).stdout).unwrap();
    assert_eq!(v["verdict"], true);
}

#[test]
fn reproduce_quick_suites() {
    for suite in ["table1", "table3", "table5-IXA", "section13"] {
        let o = run(&["reproduce", suite]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
        assert!(stdout(&o).starts_with(&format!("PASS {suite}")));
    }
    assert_eq!(run(&["reproduce", "table99"]).status.code(), Some(2));
}

#[test]
fn census_output_is_independent_of_workers() {
    let dir = tempfile::tempdir().unwrap();
    let mut bodies = Vec::new();
    for w in ["1", "2"] {
        let out = dir.path().join(format!("w{w}.csv"));
        let o = run(&[
            "census",
            "--surface",
            "D4+2A1",
            "--mode",
            "exceptional",
            "--workers",
            w,
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        let text = std::fs::read_to_string(&out).unwrap();
        assert!(text.starts_with("# delpezzo "));
        let body: Vec<String> = text
            .lines()
            .filter(|l| !l.starts_with('#'))
            .map(String::from)
            .collect();
        assert_eq!(body[1], "D4+2A1,exceptional,36,4,9");
        let side: serde_json::Value = serde_json::from_str(
            &std::fs::read_to_string(out.with_extension("representatives.json")).unwrap(),
        )
        .unwrap();
        assert_eq!(
            side["result"]["records"][0]["representatives"]
                .as_array()
                .unwrap()
                .len(),
            9
        );
        bodies.push((body, side["result"]["records"].clone()));
    }
    assert_eq!(bodies[0], bodies[1]);
}

#[test]
fn census_rejects_first_kind_and_bare_degree_one() {
    let o = run(&["census", "--sequence", "deg1-1", "--surface", "8A1"]);
    assert_eq!(o.status.code(), Some(2));
    let first = r#"{"degree":6,"terms":["L13","E1","L12","E2","L23","E3"]}"#;
    assert_eq!(
        run(&["census", "--sequence", first, "--surface", "A2"])
            .status
            .code(),
        Some(2)
    );
}
