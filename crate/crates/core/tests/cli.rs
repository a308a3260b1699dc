use std::process::Command;

use fermion::cli::run;
use fermion::io::{read_csv, JsonReport};
use fermion::sampler::{PointConfiguration, ThomaPoint};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("fermion").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn column(csv: &str, name: &str) -> Vec<String> {
    let (header, rows) = read_csv(csv);
    let k = header.iter().position(|h| h == name).unwrap();
    rows.into_iter().map(|r| r[k].clone()).collect()
}

#[test]
fn expect_at_conjugate_imaginary_pair() {
    let (code, out, _) = call(&["expect", "--z", "0+1i", "--zp", "0-1i"]);
    assert_eq!(code, 0);
    let a: f64 = column(&out, "alpha_sum")[0].parse().unwrap();
    let b: f64 = column(&out, "beta_sum")[0].parse().unwrap();
    assert!((a - 0.5).abs() < 1e-10 && (b - 0.5).abs() < 1e-10);
}

#[test]
fn sine_gap_on_short_interval() {
    let (code, out, _) = call(&["gap", "--kernel", "sine", "--region", "0,0.1"]);
    assert_eq!(code, 0);
    let g: f64 = column(&out, "gap_probability")[0].parse().unwrap();
    assert!((g - 0.9000).abs() < 5e-5, "{g}");
}

#[test]
fn shlimit_below_pi_is_rejected() {
    let (code, out, _) = call(&["admissible", "--variant", "shlimit", "--A", "3"]);
    assert_eq!(code, 0);
    assert_eq!(column(&out, "admissible"), ["false"]);
    assert_eq!(column(&out, "reason"), ["A ≥ π required"]);
}

#[test]
fn csv_header_echoes_config() {
    let (_, out, _) = call(&["expect", "--z", "0.25", "--zp", "0.75"]);
    let first = out.lines().next().unwrap();
    assert!(first.starts_with("# config: {"));
    assert!(first.contains("\"command\":\"expect\""));
    assert!(first.contains("\"zp\":\"0.75+0i\""));
}

#[test]
fn error_lines_and_exit_codes() {
    let (code, out, err) = call(&["no-such-command"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.starts_with("error kind=usage exit=2 message=\""));
    assert_eq!(err.lines().count(), 1);

    let (code, _, err) = call(&["expect", "--z", "0.5", "--zp", "1.5"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error kind=invalid-parameters exit=2"));

    let (code, _, err) = call(&["expect", "--z", "garbage", "--zp", "1"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error kind=usage"));

    // an operator with 1 - K singular cannot give a resolvent
    let (code, _, err) = call(&["correlations", "--kernel", "laguerre-cd", "--n", "2", "--mu", "0.5", "--points", "1", "--region", "0.001,60", "--panel", "20"]);
    assert_eq!(code, 3, "{err}");
    assert!(err.starts_with("error kind=near-singular exit=3"));
}

#[test]
fn sampling_is_reproducible_across_thread_counts() {
    let args = ["sample", "--kernel", "sine", "--region", "0,3", "--count", "25", "--seed", "17"];
    let (_, one, _) = call(&[&args[..], &["--threads", "1"]].concat());
    let (_, four, _) = call(&[&args[..], &["--threads", "4"]].concat());
    let (_, again, _) = call(&[&args[..], &["--threads", "4"]].concat());
    assert_eq!(one.replace("\"threads\":1", ""), four.replace("\"threads\":4", ""));
    assert_eq!(four, again);
    assert!(column(&one, "value").len() > 25);
}

#[test]
fn json_outputs_round_trip() {
    let (code, out, _) = call(&["sample", "--kernel", "sine", "--region", "0,2", "--count", "5", "--format", "json"]);
    assert_eq!(code, 0);
    let rep: JsonReport = serde_json::from_str(&out).unwrap();
    let configs: Vec<PointConfiguration> = serde_json::from_value(rep.results.clone()).unwrap();
    assert_eq!(configs.len(), 5);
    assert!(configs.iter().all(|c| c.seed.is_some() && c.support == vec![(0.0, 2.0)]));
    let again = serde_json::to_value(&configs).unwrap();
    assert_eq!(again, rep.results);
    assert_eq!(rep.config["command"], "sample");

    let (_, out, _) = call(&["pd-sample", "--t", "2", "--count", "3", "--format", "json"]);
    let rep: JsonReport = serde_json::from_str(&out).unwrap();
    let pts: Vec<ThomaPoint> = serde_json::from_value(rep.results.clone()).unwrap();
    assert_eq!(serde_json::to_value(&pts).unwrap(), rep.results);
    assert!(pts.iter().all(|p| (p.alpha.iter().sum::<f64>() + p.residual - 1.0).abs() < 1e-12));
}

#[test]
fn every_subcommand_runs() {
    let cases: &[&[&str]] = &[
        &["kernel-eval", "--kernel", "whittaker", "--z", "0.25", "--zp", "0.75", "--x", "0.5,1", "--y", "2"],
        &["fredholm", "--kernel", "sine", "--region", "0,1", "--lambda", "0.5,1"],
        &["gap", "--kernel", "stationary", "--variant", "sin-sh", "--A", "3.2", "--B", "2", "--region", "0,1;2,3"],
        &["correlations", "--kernel", "sine", "--points", "0.1,0.4", "--region", "0,1"],
        &["alpha1-cdf", "--z", "0.3+0.4i", "--zp", "0.3-0.4i", "--tau", "1"],
        &["sample", "--kernel", "laguerre-cd", "--n", "3", "--mu", "0.5", "--region", "0.001,30", "--panel", "10", "--count", "2"],
        &["lift", "--points", "0.5,0.1", "--t", "2"],
        &["pd-sample", "--t", "1"],
        &["tail", "--z", "0.1", "--zp", "0.2", "--scales", "0.1,0.01"],
        &["lln", "--variant", "sin-sh", "--A", "3.1416", "--B", "6.2832", "--T", "5", "--count", "20"],
        &["decay", "--count", "50", "--j", "5"],
        &["expect", "--z", "-1.6", "--zp", "-1.1"],
        &["fourier-check", "--variant", "sh-sh", "--A", "1", "--B", "2", "--points", "5"],
        &["admissible", "--z", "0.25", "--zp", "0.75"],
        &["sturm-check", "--kernel", "sine", "--grid", "-0.5,0.5,6"],
    ];
    for args in cases {
        let (code, out, err) = call(args);
        assert_eq!(code, 0, "{args:?}: {err}");
        assert!(out.lines().next().unwrap().starts_with("# config:"));
        assert_eq!(code, call(args).0);
        assert_eq!(out, call(args).1, "{args:?} is not deterministic");
    }
    assert_eq!(cases.len(), 15);
}

#[test]
fn sturm_check_separates_matched_and_perturbed() {
    let (_, out, _) = call(&["sturm-check", "--kernel", "stationary", "--variant", "ratiolimit", "--B", "5"]);
    let r: Vec<f64> = column(&out, "residual").iter().map(|s| s.parse().unwrap()).collect();
    assert!(r[0] < 1e-5 && r[1] > 1e-2, "{r:?}");
}

#[test]
fn output_file_and_binary() {
    let dir = std::env::temp_dir().join(format!("fermion-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("admissible.json");
    let status = Command::new(env!("CARGO_BIN_EXE_fermion"))
        .args(["admissible", "--variant", "ratiolimit", "--B", "4", "--format", "json", "--output"])
        .arg(&path)
        .status()
        .unwrap();
    assert!(status.success());
    let rep: JsonReport = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(rep.results[0]["admissible"], false);
    assert_eq!(rep.results[0]["reason"], "B ≥ π²/2 required");
    std::fs::remove_dir_all(&dir).unwrap();

    let out = Command::new(env!("CARGO_BIN_EXE_fermion")).args(["gap", "--region", "0,x"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error kind=usage"));
}
