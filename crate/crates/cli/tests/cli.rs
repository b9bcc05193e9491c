use std::io::Write;
use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn cfg(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_oneloop")).args(args).output().unwrap();
    let code = out.status.code().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&text).unwrap_or(Value::Null);
    (code, json)
}

fn complex(v: &Value) -> (f64, f64) {
    (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

#[test]
fn landau_on_bubble() {
    let (code, v) = run(&["landau", "--config", &cfg("c2.json"), "--subset", "all"]);
    assert_eq!(code, 0);
    let e = &v["entries"][0];
    assert_eq!(e["subset"], serde_json::json!([1, 2]));
    // -p^2 = 6.25 with unit masses: r^2 = lambda / (4 (-p^2)) = 6.25 * 2.25 / 25
    let (re, im) = complex(&e["r_squared"]);
    assert!((re - 0.5625).abs() < 1e-12 && im == 0.0);
    assert_eq!(e["verdict"], "real_sphere");
    assert_eq!(e["channel"]["threshold"], 4.0);
}

#[test]
fn closed_bubble_disc() {
    let (code, v) = run(&[
        "disc",
        "--config",
        &cfg("c2.json"),
        "--cut",
        "1,2",
        "--method",
        "closed",
        "--D",
        "3",
    ]);
    assert_eq!(code, 0);
    let (cut, _) = complex(&v["cut_integral"]);
    assert!((cut - std::f64::consts::PI / 5.0).abs() < 1e-12);
    assert_eq!(v["D"], 3);
    assert_eq!(v["method"], "closed");
}

#[test]
fn numeric_and_closed_agree() {
    let closed = run(&["disc", "--config", &cfg("c3.json"), "--cut", "1,2"]).1;
    let numeric = run(&[
        "disc",
        "--config",
        &cfg("c3.json"),
        "--cut",
        "1,2",
        "--method",
        "numeric",
    ])
    .1;
    let (a, b) = (complex(&closed["cut_integral"]).0, complex(&numeric["cut_integral"]).0);
    assert!((a - b).abs() < 1e-8 * a.abs());
}

#[test]
fn missing_masses_is_usage_error() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, r#"{{"n": 2, "D": 2, "momenta": [[[1, 0], [0, 0]]]}}"#).unwrap();
    let (code, v) = run(&["gram", "--config", f.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(v["error"]["message"].as_str().unwrap().contains("masses"));
}

#[test]
fn singular_cut_is_domain_error() {
    let (code, v) = run(&["disc", "--config", &cfg("c3_three_cut.json"), "--cut", "1,2"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "singular_cut");
}

#[test]
fn divergent_oracle_is_domain_error() {
    let (code, v) = run(&["oracle", "--config", &cfg("c2.json"), "--D-override", "4"]);
    // c2 has Minkowski momenta: refused before power counting
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "invalid_config");
    let (code, v) = run(&["oracle", "--config", &cfg("c3_euclidean.json"), "--D-override", "6"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "divergent");
}

#[test]
fn bad_arguments_exit_one() {
    assert_eq!(run(&["frobnicate"]).0, 1);
    assert_eq!(run(&["pinch", "--config", &cfg("c3.json"), "--subset", "1,x"]).0, 1);
    assert_eq!(run(&["pinch", "--config", "/nonexistent.json"]).0, 1);
}

#[test]
fn every_subcommand_emits_json() {
    let c3 = cfg("c3.json");
    let e3 = cfg("c3_euclidean.json");
    let c4 = cfg("c4.json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["gram", "--config", &c4],
        vec!["reduce", "--config", &c4],
        vec!["pinch", "--config", &c4],
        vec!["landau", "--config", &c4],
        vec!["strata", "--config", &c3, "--subset", "1,2"],
        vec!["wick", "--config", &e3, "--steps", "3", "--samples", "20"],
        vec!["disc", "--config", &c3, "--cut", "1,2", "--method", "numeric"],
        vec!["oracle", "--config", &e3, "--nodes", "16"],
        vec![
            "scan",
            "--config",
            &c3,
            "--channel",
            "s",
            "--from",
            "1",
            "--to",
            "30",
            "--steps",
            "10",
        ],
    ];
    for args in cases {
        let (code, v) = run(&args);
        assert_eq!(code, 0, "{args:?}");
        assert!(v.is_object() && v.get("error").is_none(), "{args:?}");
    }
}

#[test]
fn box_landau_lists_eleven_subsets() {
    let (_, v) = run(&["landau", "--config", &cfg("c4.json")]);
    assert_eq!(v["entries"].as_array().unwrap().len(), 11);
}

#[test]
fn scan_reports_bubble_threshold() {
    let (code, v) = run(&[
        "scan",
        "--config",
        &cfg("c2.json"),
        "--channel",
        "s",
        "--from",
        "0.1",
        "--to",
        "10",
        "--disc",
    ]);
    assert_eq!(code, 0);
    let roots = v["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 1);
    assert!((roots[0].as_f64().unwrap() - 4.0).abs() < 1e-10);
    assert_eq!(v["x"].as_array().unwrap().len(), v["disc"].as_array().unwrap().len());
    assert!(v["disc"][0]["error"].is_string());
}

#[test]
fn seeded_monte_carlo_is_reproducible() {
    let e3 = cfg("c3_euclidean.json");
    let args = [
        "oracle",
        "--config",
        &e3,
        "--D-override",
        "5",
        "--samples",
        "4096",
        "--seed",
        "7",
    ];
    let (a, b) = (run(&args).1, run(&args).1);
    assert_eq!(a["method"], "monte_carlo");
    assert_eq!(a["value"], b["value"]);
}

#[test]
fn box_channel_scan_matches_quadratic() {
    let (code, v) = run(&[
        "landau",
        "--config",
        &cfg("c4.json"),
        "--channel",
        "v",
        "--scan",
        "0:10:2000",
    ]);
    assert_eq!(code, 0);
    let mut closed: Vec<f64> = v["quadratic"]["roots"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| complex(r).0)
        .collect();
    closed.sort_by(f64::total_cmp);
    let found: Vec<f64> = v["roots"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_f64().unwrap())
        .collect();
    assert_eq!(found.len(), 2);
    for (a, b) in closed.iter().zip(&found) {
        assert!((a - b).abs() < 1e-9);
    }
    assert_eq!(run(&["landau", "--config", &cfg("c4.json"), "--scan", "0:1:10"]).0, 1);
}
