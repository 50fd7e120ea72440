use std::process::{Command, Output};

use massign::experiment::{
    emit, run_trials, write_csv, ExperimentPlan, OutputFormat, Statistic, CSV_HEADER,
};
use massign::theory::RegimeSpec;
use massign::CountMatrix;

fn massign(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_massign"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn hamming_examples() {
    let o = massign(&[
        "hamming",
        "--u",
        "1,2,1,2",
        "--v",
        "1,1,1,1",
        "--alphabet",
        "2",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "2");
    let o = massign(&["hamming", "--u", "abc", "--v", "bca", "--alphabet", "3"]);
    assert_eq!(stdout(&o).trim(), "0");
    let o = massign(&["hamming", "--u", "1,2", "--v", "1", "--alphabet", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn predict_and_hstar() {
    let o = massign(&["predict", "--family", "critical", "--c", "1", "--n", "100"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("kind: point"), "{text}");
    assert!(text.contains("theorem: T2"));
    let o = massign(&[
        "predict",
        "--family",
        "rather-sparse",
        "--a",
        "0.5",
        "--c",
        "3",
        "--n",
        "1000",
    ]);
    let text = stdout(&o);
    assert!(
        text.contains("kind: interval")
            && text.contains("low: 1000")
            && text.contains("high: 2000")
    );
    let o = massign(&[
        "predict",
        "--family",
        "very-sparse",
        "--n",
        "10000",
        "--stat",
        "min",
    ]);
    assert!(stdout(&o).contains("kind: zero_whp"));

    let o = massign(&["hstar", "--c", "1"]);
    assert!(
        stdout(&o).contains("h: 2.718281828459045"),
        "{}",
        stdout(&o)
    );
    let o = massign(&["hstar", "--c", "0.5", "--branch", "lower"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no lower-branch solution"));
}

#[test]
fn exit_codes() {
    assert_eq!(massign(&[]).status.code(), Some(1));
    assert_eq!(
        massign(&["predict", "--family", "nope", "--n", "3"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(massign(&["--help"]).status.code(), Some(0));
    let o = massign(&[
        "simulate",
        "--n",
        "2049",
        "--m",
        "4198401",
        "--trials",
        "1",
        "--stats",
        "max_exact",
        "--solver",
        "exact",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("use bracket mode"));
}

#[test]
fn simulate_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("out.csv");
    let svg = dir.path().join("out.svg");
    let dump = dir.path().join("x.txt");
    let o = massign(&[
        "sweep",
        "--family",
        "critical",
        "--c",
        "0.5",
        "--n-list",
        "10,20,40",
        "--trials",
        "5",
        "--seed",
        "3",
        "--stats",
        "max_exact,min_is_zero",
        "--out",
        csv.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
        "--dump-matrix",
        dump.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], CSV_HEADER.join(","));
    assert_eq!(lines.len(), 1 + 3 * 2);
    let plot = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(plot.matches("<line").count(), 1);
    assert_eq!(plot.matches("<polyline").count(), 2);
    assert!(plot.contains(r#"width="800" height="600""#));
    let x = CountMatrix::parse_text(&std::fs::read_to_string(&dump).unwrap()).unwrap();
    assert_eq!(x.n(), 10);
    assert_eq!(x.total(), (0.5f64 * 100.0 * 10f64.ln()).round() as u64);

    let o = massign(&[
        "simulate", "--n", "4", "--m", "9", "--trials", "3", "--format", "json", "--stats",
        "bracket",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["stats"].as_array().unwrap().len(), 2);
    assert_eq!(v[0]["m"], 9);
}

#[test]
fn csv_contract() {
    let plan =
        ExperimentPlan::explicit(3, 7, 4, 1, vec![Statistic::MaxExact, Statistic::MinIsZero]);
    let s = run_trials(&plan).unwrap();
    let mut buf = Vec::new();
    write_csv(&s, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.len() == 19));
    assert_eq!(rows[1][0], "explicit");
    assert_eq!(rows[1][1], "");
    assert_eq!(rows[1][11], "");
    assert_eq!(rows[2][7], "min_is_zero");
    assert!(!rows[2][16].is_empty() && !rows[2][17].is_empty());

    let plan = ExperimentPlan::regime(
        RegimeSpec::very_sparse(),
        vec![16],
        2,
        1,
        vec![Statistic::MaxExact],
    );
    let s = run_trials(&plan).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.csv");
    emit(&s, OutputFormat::Csv, &path).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("very-sparse,1,,16,4,2,1,max_exact,"));
    assert!(emit(&[], OutputFormat::Csv, &path).is_err());
    assert!(emit(&s, OutputFormat::Csv, &dir.path().join("missing/dir/x.csv")).is_err());
}

#[test]
fn zeroprob_and_lemma1_commands() {
    let o = massign(&["zeroprob", "--n", "2", "--m", "0", "--trials", "10"]);
    assert!(stdout(&o).contains("zero_fraction: 1"));
    let o = massign(&["zeroprob", "--family", "qg", "--n", "50", "--trials", "20"]);
    assert!(stdout(&o).contains("zero_fraction: 0\n"), "{}", stdout(&o));
    let o = massign(&[
        "lemma1",
        "--n",
        "2",
        "--m",
        "4",
        "--step",
        "2",
        "--samples",
        "100000",
        "--seed",
        "1",
    ]);
    assert!(o.status.success());
    let p: f64 = stdout(&o)
        .lines()
        .find_map(|l| l.strip_prefix("p_value: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(p > 0.001);
}
