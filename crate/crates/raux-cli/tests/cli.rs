use serde_json::Value;
use std::process::{Command, Output};

fn raux(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_raux")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = raux(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn eval_on_the_critical_line_agrees_with_quadrature() {
    let e = json(&["eval", "--s", "0.5,200", "--method", "auto"]);
    let o = json(&["oracle", "--s", "0.5,200", "--path", "saddle"]);
    let region = e["region"].as_str().unwrap();
    assert!(region == "L" || region == "DeltaOnly", "{region}");
    let (a, b) = (&e["value"], &o["value"]);
    let d = (a["re"].as_f64().unwrap() - b["re"].as_f64().unwrap())
        .hypot(a["im"].as_f64().unwrap() - b["im"].as_f64().unwrap());
    assert!(d < 1e-6 * a["log_mod"].as_f64().unwrap().exp());
}

#[test]
fn negative_real_parts_parse() {
    let e = json(&["eval", "--s", "-30,3", "--method", "left", "--k", "10"]);
    assert_eq!(e["method"], "left");
    assert!((e["value"]["re"].as_f64().unwrap() + 18.0497664).abs() < 1e-5);
}

#[test]
fn first_order_coefficients() {
    let doc = json(&["coeffs", "--kmax", "1"]);
    let row = &doc["d"][1];
    assert_eq!((row[0]["re_num"].as_str(), row[0]["re_den"].as_str()), (Some("-1"), Some("12")));
    assert_eq!((row[1]["re_num"].as_str(), row[1]["re_den"].as_str()), (Some("-1"), Some("2")));
    let csv = raux(&["coeffs", "--kmax", "1", "--format", "csv"]);
    assert!(String::from_utf8(csv.stdout).unwrap().contains("d,1,1,-1,2,0,1\n"));
}

#[test]
fn boundary_angle_residual() {
    let doc = json(&["phi", "--r", "22026.465", "--series"]);
    assert!(doc["residual"].as_f64().unwrap().abs() < 1e-12);
    assert!((doc["phi"].as_f64().unwrap() - doc["series"].as_f64().unwrap()).abs() < 1e-4);
}

#[test]
fn zero_census_as_csv() {
    let out = raux(&["zeros", "--box", "0,30,-10,0", "--refine", "--out", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("re,im,x0,x1,y0,y1"));
    assert_eq!(lines.count(), 3);
    assert_eq!(json(&["zeros", "--box", "-21,-19,-1,1"])["count"], 1);
}

#[test]
fn exit_codes() {
    assert_eq!(raux(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(raux(&["eval", "--s", "1,2,3"]).status.code(), Some(64));
    assert_eq!(raux(&["eval", "--s", "-3,0", "--method", "right"]).status.code(), Some(1));
    assert_eq!(raux(&["phi", "--r", "1"]).status.code(), Some(1));
    assert_eq!(raux(&["verify", "--suite", "identities"]).status.code(), Some(0));
}

#[test]
fn calibration_sidecar_is_read_back() {
    let dir = std::env::temp_dir().join(format!("raux-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cal.json");
    let fitted = json(&["calibrate", "--out", path.to_str().unwrap()]);
    let stored: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(fitted, stored);
    let e = json(&["--calibration", path.to_str().unwrap(), "eval", "--s", "0.5,300", "--method", "right", "--k", "3"]);
    assert!(e["err_estimate"].as_f64().unwrap() > 0.0);
    std::fs::remove_dir_all(&dir).unwrap();
}
