use std::process::{Command, Output};

use serde_json::Value;

fn maxdiv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxdiv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = maxdiv(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&all)).unwrap()
}

fn num(v: &Value) -> f64 {
    v.to_string().parse().unwrap()
}

#[test]
fn fairness_csv_has_grid_rows_then_summary() {
    let text = stdout(&["fairness", "--grid", "25", "--precision", "6"]);
    let (scan, summary) = text.split_once("\n\n").expect("two tables");
    let mut lines = scan.lines();
    assert_eq!(lines.next(), Some("x,alpha1,alpha2,alpha3,sd,mad,min_piece"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 25);
    assert!(rows[0].starts_with("0.000000,"));
    assert!(rows[24].starts_with("1.047198,"));
    assert!(summary.starts_with("criterion,kind,x_star,objective,"));
    assert!(summary.contains("min_piece,global_max,0.652001"));
}

#[test]
fn fairness_json_schema() {
    let v = json(&["fairness", "--grid", "10"]);
    assert_eq!(v["params"][0]["name"], "grid");
    assert_eq!(v["results"].as_array().unwrap().len(), 10);
    assert!(v["warnings"].as_array().unwrap().is_empty());
    let sd = &v["summary"][0];
    assert_eq!(sd["criterion"], "sd");
    assert_eq!(sd["at_boundary"], true);
    assert!((num(&sd["objective"]) - std::f64::consts::PI / 294f64.sqrt()).abs() < 1e-9);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.csv");
    let printed = stdout(&["moments", "--n", "2", "--p", "0.5", "--out", path.to_str().unwrap()]);
    assert!(printed.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    assert!(text.starts_with("n,p,dim,method,mean,variance,"));
}

#[test]
fn moments_small_cases() {
    let v = json(&["moments", "--n", "2", "--p", "0.5"]);
    let row = &v["results"][0];
    assert_eq!(num(&row["mean"]), 2.25);
    assert_eq!(num(&row["variance"]), 1.1875);
    assert_eq!(num(&row["second_moment"]), 6.25);

    let v = json(&["moments", "--n", "3", "--p", "1", "--method", "closed"]);
    assert_eq!(num(&v["results"][0]["mean"]), 7.0);
    assert_eq!(num(&v["results"][0]["variance"]), 0.0);
}

#[test]
fn moments_methods_agree_in_three_dimensions() {
    let exact = json(&["moments", "--n", "20", "--p", "0.3", "--dim", "3"]);
    let closed = json(&["moments", "--n", "20", "--p", "0.3", "--dim", "3", "--method", "closed"]);
    for key in ["mean", "variance"] {
        let (a, b) = (num(&exact["results"][0][key]), num(&closed["results"][0][key]));
        assert!((a - b).abs() <= 1e-8 * a.abs(), "{key}: {a} vs {b}");
    }
}

#[test]
fn asymptotic_method_warns() {
    let v = json(&["moments", "--n", "5000", "--p", "0.5", "--method", "asymptotic"]);
    assert_eq!(v["results"][0]["second_moment"], Value::Null);
    assert_eq!(v["warnings"].as_array().unwrap().len(), 1);
}

#[test]
fn oracle_passes() {
    let v = json(&["oracle", "--n", "7"]);
    let rows = v["results"].as_array().unwrap();
    assert_eq!(rows.len(), 20);
    assert!(rows.iter().all(|r| r["pass"] == true && r["geometric"] == 29));

    let text = stdout(&["oracle", "--n", "1", "--seeds", "4"]);
    assert_eq!(text, "seed,n,geometric,formula,pass\n4,1,2,2,true\n");
}

#[test]
fn clt_margin_matches_formula() {
    let v = json(&["clt", "--n", "4096", "--p", "0.3", "--samples", "2000", "--seed", "3"]);
    let row = &v["results"][0];
    let want = 0.3 * 0.7f64.cbrt() * 4096f64.powf(1.0 / 9.0);
    assert!((num(&row["margin"]) - want).abs() < 1e-9);
    assert_eq!(row["clt_regime"], want > 1.0);
    assert_eq!(row["n_summands"], 4096u64 * 4096 + 1);
    assert_eq!(row["max_degree"], 4 * 4096);
}

#[test]
fn clt_is_reproducible_across_thread_counts() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_maxdiv"))
            .args(["clt", "--n", "500", "--p", "0.5", "--samples", "5000", "--seed", "11"])
            .env("MAXDIV_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    let one = run("1");
    assert_eq!(one, run("1"));
    assert_eq!(one, run("4"));
}

#[test]
fn invalid_inputs_fail() {
    for args in [
        &["clt", "--n", "100", "--p", "0"][..],
        &["clt", "--n", "100", "--p", "1"],
        &["moments", "--n", "10", "--p", "0.5", "--dim", "4", "--method", "closed"],
        &["moments", "--n", "10", "--p", "1.5"],
        &["oracle", "--n", "11"],
    ] {
        let out = maxdiv(args);
        assert!(!out.status.success(), "{args:?} succeeded");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "));
    }
}

#[test]
fn unknown_flag_prints_usage() {
    let out = maxdiv(&["fairness", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage:"));
}
