use std::process::{Command, Output};

use serde_json::Value;

fn sacf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sacf")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = sacf(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

#[test]
fn expand_rational_one_third() {
    let v = json(&["expand", "--rational", "1", "3", "--side", "b"]);
    assert_eq!(v["word"], "S2 S4");
    assert_eq!(v["terminal"], "1");
    assert_eq!(v["config"]["side"], "B");
}

#[test]
fn expand_zero_is_empty() {
    let v = json(&["expand", "--rational", "0", "1"]);
    assert_eq!(v["word"], "");
    assert_eq!(v["terminal"], "0");
}

#[test]
fn expand_gaussian_rational_on_a() {
    let v = json(&["expand", "--rational", "3+2i", "-5+7i", "--side", "a"]);
    assert_eq!(v["truncated"], false);
    assert!(v["terminal"].is_string());
}

#[test]
fn expand_point_gives_known_word() {
    let v = json(&["expand", "--point", "0.3828008104", "0.2638108161", "--steps", "20"]);
    assert_eq!(v["word"], "S3P S2 S2P S3P S1 S1P S4 S2 S4 S1 S1P S3 S2 S3 S3P S4 S4P S2 S1 S2");
    assert_eq!(v["length"], 20);
}

#[test]
fn reduce_examples() {
    assert_eq!(json(&["reduce", "lorentz", "5", "-3", "0", "-4"])["word"], "L1P L3");
    assert_eq!(json(&["reduce", "descartes-invert", "2", "3", "6", "23"])["word"], "S4 S3 S4P");
    assert_eq!(json(&["reduce", "height", "9", "7", "4", "4"])["path_length"], 2);
    let v = json(&["reduce", "descartes-swap", "-1", "2", "2", "3"]);
    assert_eq!(v["word"], "S1P");
    assert_eq!(v["terminal"], serde_json::json!([1, 0, 0, 1]));
}

#[test]
fn gcd_trace_json_and_csv() {
    let v = json(&["gcd", "246", "113"]);
    assert_eq!(v["reflective"]["steps"], 15);
    assert_eq!(v["reflective"]["trace"][1], serde_json::json!([-20, 113]));
    assert_eq!(v["romik"]["steps"], 11);
    assert_eq!(v["reflective"]["gcd"], 1);
    let b = &v["reflective"]["bezout"];
    assert_eq!(b[0].as_i64().unwrap() * 246 + b[1].as_i64().unwrap() * 113, 1);

    let out = sacf(&["gcd", "246", "113", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# config:"));
    assert_eq!(lines[1], "step,reflective_p,reflective_q,romik_p,romik_q");
    assert_eq!(lines[2], "0,246,113,246,113");
    assert_eq!(lines.last().unwrap(), &"15,0,1,,");

    let out = sacf(&["gcd", "246", "113", "--format", "jsonl"]);
    let n = String::from_utf8(out.stdout).unwrap().lines().count();
    assert_eq!(n, 1 + 16 + 12);
}

#[test]
fn real_worked_example() {
    let v = json(&["real", "0.4189513796210592", "--steps", "20"]);
    assert_eq!(v["word"], "bacabcacbcacacababac");
    assert_eq!(v["convergents"][20], "(871/2079, 703/1678, 1574/3757)");
    let v = json(&["real", "-7/3"]);
    assert_eq!(v["word"], "acaba");
    assert_eq!(v["terminal"], "1/1");
}

#[test]
fn predictions_are_labelled() {
    let v = json(&["stats", "predict"]);
    assert_eq!(v["status"], "conjectural");
    assert!((v["predicted"]["two_swaps"].as_f64().unwrap() - 0.345299).abs() < 1e-6);
    assert!((v["predicted"]["first_swap"].as_f64().unwrap() - 0.154700).abs() < 1e-6);
}

#[test]
fn quadruple_stats_reproduce_first_digit() {
    let v = json(&["stats", "quadruples", "--max-a", "200"]);
    let obs = &v["report"]["observed"];
    assert!((obs["first_swap"].as_f64().unwrap() - 0.161).abs() < 0.002);
    assert_eq!(v["config"]["max_a"], 200);
}

#[test]
fn random_stats_are_byte_identical() {
    let args = ["stats", "random", "--count", "100", "--steps", "100", "--seed", "7"];
    let a = sacf(&args);
    let b = sacf(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["report"]["seed"], 7);
    assert_eq!(v["config"]["seed"], 7);
}

#[test]
fn random_stats_need_a_seed() {
    let out = sacf(&["stats", "random"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("packing.svg");
    let out = sacf(&["render", "--depth", "3", "--clip", "0", "0", "1", "1", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.contains("<svg") && svg.contains("<circle") && svg.contains("config:"));
    assert!(svg.trim_end().ends_with("</svg>"));
}

#[test]
fn density_writes_grid_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fb.csv");
    let out = sacf(&["density", "--side", "b", "--grid", "20", "10", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[1], "x,y,f_B");
    assert_eq!(lines.len(), 2 + 200);
    for l in &lines[2..] {
        let f: f64 = l.split(',').nth(2).unwrap().parse().unwrap();
        assert!(f > 0.0);
    }
}

#[test]
fn measure_totals_two_pi_squared() {
    let v = json(&["measure", "--side", "a"]);
    let total = v["total"].as_f64().unwrap();
    assert!((total - 2.0 * std::f64::consts::PI.powi(2)).abs() < 1e-5);
    assert_eq!(v["regions"].as_array().unwrap().len(), 8);
}

#[test]
fn exit_codes() {
    assert_eq!(sacf(&["reduce", "lorentz", "5", "3", "0", "1"]).status.code(), Some(2));
    assert_eq!(sacf(&["expand", "--rational", "1", "0x"]).status.code(), Some(2));
    assert_eq!(sacf(&["gcd", "0", "0"]).status.code(), Some(2));
    assert_eq!(sacf(&["render", "--depth", "99"]).status.code(), Some(2));
    assert_eq!(sacf(&["nonsense"]).status.code(), Some(2));
    assert_eq!(sacf(&["gcd", "12", "18"]).status.code(), Some(0));
}

#[test]
fn version_names_the_revision() {
    let out = sacf(&["--version"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("sacf 0.1.0 (git "), "{text}");
}
