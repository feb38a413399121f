use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_tailseries"));
    c.env_remove("TAILSERIES_CAP");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn report_on_dirac_passes() {
    let o = run(&["report", "--dirac", "3/2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["mode"], "exact");
    assert_eq!(v["expectation"], "3/2");
    assert_eq!(v["series"]["lower_series"]["value"], "3/2");
    assert_eq!(v["series"]["upper_series"]["kind"], "divergent");
    assert_eq!(v["overall"], "pass");
}

#[test]
fn report_formats() {
    let o = run(&["report", "--dirac", "2", "--n", "4", "--format", "human"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("[11/6, 25/12]"), "{text}");
    assert!(text.contains("overall: pass"));

    let o = run(&["report", "--dirac", "2", "--format", "csv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("source,family,mode"));
    assert!(lines.next().unwrap().starts_with("dirac:2,natural,exact"));
}

#[test]
fn float_families() {
    for family in [&["--family", "logweighted"][..], &["--family", "power", "--delta", "0.5"]] {
        let mut args = vec!["report", "--dirac", "4.25"];
        args.extend_from_slice(family);
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let v = json(&o);
        assert_eq!(v["mode"], "float");
        assert_eq!(v["overall"], "pass");
    }
}

#[test]
fn logweighted_report_carries_reindex_note() {
    let v = json(&run(&["report", "--family", "logweighted", "--dirac", "1"]));
    let notes = v["notes"].as_array().unwrap();
    assert!(!notes.is_empty());
}

#[test]
fn exact_mode_on_float_family_is_usage_error() {
    let o = run(&["report", "--family", "logweighted", "--mode", "exact", "--dirac", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(stderr(&o).contains("error"));
}

#[test]
fn expand_command() {
    let v = json(&run(&["expand", "--x", "2", "--n", "4"]));
    assert_eq!(v["bits"], "1110");
    let o = run(&["expand", "--x", "1", "--n", "5", "--format", "human"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("10000"), "{}", stdout(&o));
    let o = run(&["expand", "--x", "-1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sequence_command() {
    let v = json(&run(&["sequence", "--n", "4"]));
    let text = v.to_string();
    assert!(text.contains("\"25/12\""), "{text}");
    let o = run(&["sequence", "--family", "primes", "--n", "3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("31/30"));
}

#[test]
fn chung_and_proposition() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "m.json", r#"{"atoms":[{"value":"1","mass":"1/2"},{"value":"3","mass":"1/2"}]}"#);
    let v = json(&run(&["chung", "--measure", &m]));
    assert_eq!(v["expectation"], "2");
    assert_eq!(v["values"]["mass_plus_integer_tail"]["value"], "3");
    assert_eq!(v["overall"], "pass");

    let o = run(&["proposition", "--measure", &m]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("9901/5040"), "{text}");

    let o = run(&["proposition", "--dirac", "5/2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["overall"], "not_applicable");
}

#[test]
fn samples_source() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(dir.path(), "s.txt", "1\n2\n2\n");
    let v = json(&run(&["chung", "--samples", &s]));
    assert_eq!(v["expectation"], "5/3");
}

#[test]
fn normalize_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(
        dir.path(),
        "m.json",
        r#"{"atoms":[{"value":"3","mass":"1/4"},{"value":"1","mass":"1/2"},{"value":"3","mass":"1/4"}]}"#,
    );
    let o = run(&["normalize", "--measure", &m, "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "value,mass\n1,1/2\n3,1/2\n");
    let csv = write(dir.path(), "m.csv", &stdout(&o));
    let back = run(&["normalize", "--measure", &csv]);
    let again = write(dir.path(), "again.json", &stdout(&back));
    let twice = run(&["normalize", "--measure", &again]);
    assert_eq!(stdout(&back), stdout(&twice));
}

#[test]
fn batch_is_sorted_and_reports_bad_files() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "b.json", r#"{"atoms":[{"value":"2","mass":"1"}]}"#);
    write(dir.path(), "a.csv", "value,mass\n1/2,1\n");
    let o = run(&["report", "--measure", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].starts_with("a.csv,") && rows[1].starts_with("b.json,"), "{text}");

    write(dir.path(), "c.csv", "value,mass\n1,0\n");
    let o = run(&["report", "--measure", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout(&o).lines().count(), 3);
    assert!(stderr(&o).contains("c.csv"), "{}", stderr(&o));
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for i in 0..6 {
        write(dir.path(), &format!("m{i}.csv"), &format!("value,mass\n{i}/3,1\n7,2\n"));
    }
    let d = dir.path().to_str().unwrap();
    let first = stdout(&run(&["report", "--measure", d]));
    for _ in 0..3 {
        assert_eq!(stdout(&run(&["report", "--measure", d])), first);
    }
    let a = stdout(&run(&["report", "--dirac", "7/3", "--mode", "float"]));
    let b = stdout(&run(&["report", "--dirac", "7/3", "--mode", "float"]));
    assert_eq!(a, b);
}

#[test]
fn cap_from_environment() {
    let o = bin().env("TAILSERIES_CAP", "3").args(["report", "--dirac", "2"]).output().unwrap();
    let v = json(&o);
    assert_eq!(v["cap"], 3);
    assert_eq!(v["series"]["lower_series"]["kind"], "interval");
    assert_eq!(v["series"]["lower_series"]["lo"], "11/6");
    let o = bin()
        .env("TAILSERIES_CAP", "3")
        .args(["report", "--dirac", "2", "--cap", "10"])
        .output()
        .unwrap();
    assert_eq!(json(&o)["cap"], 10);
}

#[test]
fn parse_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "bad.csv", "value,mass\n1,1/2\n2,-1\n");
    let o = run(&["report", "--measure", &m]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains(":3"), "{}", stderr(&o));

    let m = write(dir.path(), "bad.json", "{\"atoms\": [\n  {\"value\": \"1\", \"mass\": \"x\"}\n]}");
    let o = run(&["report", "--measure", &m]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad.json:2:"), "{}", stderr(&o));

    let seq = write(dir.path(), "seq.txt", "1\n2\n0\n");
    let family = format!("file:{seq}");
    let o = run(&["sequence", "--family", &family, "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains(":3"), "{}", stderr(&o));
}

#[test]
fn user_sequence_family() {
    let dir = tempfile::tempdir().unwrap();
    let seq = write(dir.path(), "seq.txt", "2\n1\n4\n4\n");
    let family = format!("file:{seq}");
    let v = json(&run(&["expand", "--family", &family, "--x", "1", "--n", "10"]));
    assert_eq!(v["bits"], "1011");
    let o = run(&["report", "--family", &family, "--dirac", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(json(&o)["prefix_only"], true);
}

#[test]
fn usage_errors() {
    for args in [
        &["report"][..],
        &["report", "--dirac", "1", "--samples", "x"],
        &["report", "--dirac", "abc"],
        &["report", "--measure", "/nonexistent/file.json"],
        &["report", "--family", "power", "--dirac", "1"],
        &["chung", "--dirac", "1", "--tolerance=-1"],
        &["frobnicate"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("report"));
}
