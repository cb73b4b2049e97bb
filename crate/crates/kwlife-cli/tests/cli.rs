//! End-to-end tests of the `kwlife` binary: flag handling, config
//! precedence, exit codes and artifact layout.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/corpus200.jsonl")
}

fn kwlife(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kwlife"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

#[test]
fn pipeline_emits_all_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let output = kwlife(&[
        "pipeline",
        "--input",
        fixture().to_str().unwrap(),
        "--min-papers",
        "5",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0), "{}", stderr_of(&output));
    for name in [
        "run_config.json",
        "stats.json",
        "trend.csv",
        "bursts.csv",
        "timeline.json",
        "km_journal.csv",
        "km_conference.csv",
        "logrank.json",
    ] {
        assert!(out.join(name).is_file(), "missing {name}");
    }
}

#[test]
fn subcommands_emit_their_own_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let output = kwlife(&[
        "stats",
        "--input",
        fixture().to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0), "{}", stderr_of(&output));
    assert!(out.join("stats.json").is_file());
    assert!(out.join("trend.csv").is_file());
    assert!(out.join("run_config.json").is_file());
    assert!(!out.join("bursts.csv").exists());
    assert!(!out.join("logrank.json").exists());
}

#[test]
fn flags_override_config_file_which_overrides_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("run.conf");
    fs::write(&config_path, "min-year=1995\ntop=5\n").unwrap();
    let out = dir.path().join("out");
    let output = kwlife(&[
        "stats",
        "--input",
        fixture().to_str().unwrap(),
        "--config",
        config_path.to_str().unwrap(),
        "--min-year",
        "2000",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0), "{}", stderr_of(&output));

    let echoed: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("run_config.json")).unwrap()).unwrap();
    // flag beats file, file beats default, untouched keys stay default
    assert_eq!(echoed["min_year"], 2000);
    assert_eq!(echoed["top"], 5);
    assert_eq!(echoed["max_year"], 2016);
    assert_eq!(echoed["min_papers"], 20);
    assert_eq!(echoed["s"], 2.0);
}

#[test]
fn missing_input_file_exits_2_naming_the_path() {
    let output = kwlife(&["pipeline", "--input", "/nonexistent/nope.jsonl"]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = stderr_of(&output);
    assert!(stderr.contains("/nonexistent/nope.jsonl"), "{stderr}");
    assert_eq!(stderr.trim().lines().count(), 1, "{stderr}");
}

#[test]
fn missing_input_flag_exits_1() {
    let output = kwlife(&["pipeline"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr_of(&output).contains("--input"));
}

#[test]
fn inverted_year_range_exits_1_with_one_line() {
    let output = kwlife(&[
        "pipeline",
        "--input",
        fixture().to_str().unwrap(),
        "--min-year",
        "2010",
        "--max-year",
        "2000",
    ]);
    assert_eq!(output.status.code(), Some(1));
    let stderr = stderr_of(&output);
    assert!(stderr.contains("2010"), "{stderr}");
    assert_eq!(stderr.trim().lines().count(), 1, "{stderr}");
}

#[test]
fn unknown_config_key_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("run.conf");
    fs::write(&config_path, "min_papers=3\n").unwrap();
    let output = kwlife(&[
        "stats",
        "--input",
        fixture().to_str().unwrap(),
        "--config",
        config_path.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr_of(&output).contains("min_papers"));
}

#[test]
fn over_thresholding_writes_header_only_bursts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let output = kwlife(&[
        "bursts",
        "--input",
        fixture().to_str().unwrap(),
        "--min-papers",
        "999999",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0), "{}", stderr_of(&output));
    assert_eq!(
        fs::read_to_string(out.join("bursts.csv")).unwrap(),
        "rank,keyword,start_year,end_year,weight\n"
    );
    assert_eq!(
        fs::read_to_string(out.join("timeline.json")).unwrap(),
        "[]\n"
    );
}

#[test]
fn malformed_row_exits_1_naming_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("bad.jsonl");
    fs::write(
        &corpus,
        "{\"id\":\"a\",\"year\":2000,\"doc_type\":\"x\",\"keywords\":[]}\n{\"id\":\"b\",\"year\":\"199X\",\"doc_type\":\"y\",\"keywords\":[]}\n",
    )
    .unwrap();
    let output = kwlife(&["stats", "--input", corpus.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
    let stderr = stderr_of(&output);
    assert!(stderr.contains("line 2"), "{stderr}");
    assert!(stderr.contains("bad.jsonl"), "{stderr}");
}

#[test]
fn identical_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let outs = [dir.path().join("a"), dir.path().join("b")];
    for out in &outs {
        let output = kwlife(&[
            "pipeline",
            "--input",
            fixture().to_str().unwrap(),
            "--min-papers",
            "5",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(output.status.code(), Some(0), "{}", stderr_of(&output));
    }
    for name in [
        "stats.json",
        "trend.csv",
        "bursts.csv",
        "timeline.json",
        "km_journal.csv",
        "km_conference.csv",
        "logrank.json",
    ] {
        let first = fs::read(outs[0].join(name)).unwrap();
        let second = fs::read(outs[1].join(name)).unwrap();
        assert_eq!(first, second, "{name} differs between identical runs");
    }
}

#[test]
fn synth_output_feeds_the_pipeline_in_csv() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("tiny.csv");
    let output = kwlife(&[
        "synth",
        "--out",
        corpus.to_str().unwrap(),
        "--seed",
        "3",
        "--records",
        "120",
        "--keywords",
        "60",
    ]);
    assert_eq!(output.status.code(), Some(0), "{}", stderr_of(&output));
    let first_line = fs::read_to_string(&corpus).unwrap();
    assert!(first_line.starts_with("id,year,doc_type,keywords"));

    let out = dir.path().join("out");
    let output = kwlife(&[
        "stats",
        "--input",
        corpus.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0), "{}", stderr_of(&output));
    let echoed: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("run_config.json")).unwrap()).unwrap();
    assert_eq!(echoed["format"], "csv");
}

#[test]
fn synth_rejects_impossible_requests() {
    let output = kwlife(&[
        "synth",
        "--out",
        "/tmp/unused.jsonl",
        "--records",
        "2",
        "--keywords",
        "500",
    ]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn help_exits_0() {
    let output = kwlife(&["--help"]);
    assert_eq!(output.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("pipeline"), "{stdout}");
}
