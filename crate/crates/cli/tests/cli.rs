use liekernel_cli::app::run;
use serde_json::Value;
use std::path::PathBuf;
use std::process::Command;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("liekernel").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

fn tmp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("liekernel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn roots_a2() {
    let v = json(&["roots", "A2"]);
    let g1: Vec<f64> = serde_json::from_value(v["simple_roots"][0].clone()).unwrap();
    assert!((g1[0] - 1.0).abs() < 1e-12 && g1[1].abs() < 1e-12);
    assert_eq!(v["num_positive"], 3);
    assert!((v["rho2_over_lambda"].as_f64().unwrap() - 8.0 / 24.0).abs() < 1e-12);
}

#[test]
fn volume_and_weyl() {
    let v = json(&["volume", "A1"]);
    assert!((v["V_GmodT"].as_f64().unwrap() - 8.0 * std::f64::consts::PI).abs() < 1e-10);
    assert_eq!(json(&["weyl", "B2"])["order"], 8);
    let e = json(&["weyl", "A2", "--elements"]);
    assert_eq!(e["elements"].as_array().unwrap().len(), 6);
}

#[test]
fn su2_heat_both_routes_agree() {
    let v = json(&["kernel", "SU2", "--heat", "0.5", "--route", "both"]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 32);
    // The spectral sum is accurate relative to K(0), not to the tiny values near the wall.
    let scale = rows
        .iter()
        .map(|r| r["re"].as_f64().unwrap().abs())
        .fold(0.0, f64::max);
    for r in rows {
        let re = r["re"].as_f64().unwrap();
        assert!(
            r["discrepancy"].as_f64().unwrap() * re.abs() < 1e-12 * scale,
            "{r}"
        );
        assert_eq!(r["convergence_tag"], "CONVERGENT");
        assert!(
            (re - r["closed_re"].as_f64().unwrap()).abs() < 1e-12 * scale,
            "{r}"
        );
    }
}

#[test]
fn su11_d0_grid_matches_closed_form() {
    let v = json(&[
        "kernel",
        "SU11",
        "--domain",
        "D0",
        "--t",
        "1.0",
        "--theta-grid",
        "0.1:3.0:30",
    ]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 30);
    for r in rows {
        assert_eq!(r["signature"], "I");
        let (re, im) = (r["re"].as_f64().unwrap(), r["im"].as_f64().unwrap());
        let (cre, cim) = (
            r["closed_re"].as_f64().unwrap(),
            r["closed_im"].as_f64().unwrap(),
        );
        assert!(((re - cre).powi(2) + (im - cim).powi(2)).sqrt() < 1e-10 * (cre.hypot(cim)));
    }
}

#[test]
fn tables_print_golden_format() {
    for (g, file) in [("SU21", "SU21"), ("Sp6R", "Sp6R"), ("SO51", "SO51")] {
        let (code, out, _) = call(&["table", g]);
        assert_eq!(code, 0);
        let golden = std::fs::read_to_string(
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("tests/golden/{file}.txt")),
        )
        .unwrap();
        assert_eq!(out, golden);
    }
    let v = json(&["table", "SU(2,1)", "--format", "json"]);
    assert_eq!(v["domains"].as_array().unwrap().len(), 2);
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["--help"]).0, 0);
    assert_eq!(call(&["frobnicate"]).0, 2);
    assert_eq!(call(&["roots", "E8"]).0, 2);
    assert_eq!(call(&["table", "SU(5,3)"]).0, 2);
    assert_eq!(call(&["kernel", "SU2"]).0, 2, "time missing");
    assert_eq!(call(&["kernel", "SU2", "--heat", "-1"]).0, 2);
    assert_eq!(
        call(&["kernel", "SU2", "--heat", "0.5", "--grid", "0:1:0"]).0,
        2,
        "empty grid"
    );
    assert_eq!(call(&["kernel", "SU11", "--t", "1"]).0, 2, "domain missing");
    assert_eq!(
        call(&["kernel", "SU11", "--domain", "D7", "--t", "1", "--phi", "0.5"]).0,
        2
    );
    let (code, _, err) = call(&[
        "kernel", "SU11", "--domain", "D0", "--t", "1", "--phi", "0.5", "--route", "spectral",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("spectral"), "{err}");
    assert_eq!(
        call(&["kernel", "SU2", "--heat", "0.5", "--format", "xml"]).0,
        2
    );
}

#[test]
fn classify_from_file() {
    let (c, s) = (1.2f64.cosh(), 1.2f64.sinh());
    let nested = tmp(
        "boost.json",
        &format!("[[[{c},0],[{s},0]],[[{s},0],[{c},0]]]"),
    );
    let v = json(&["domains", "classify", "SU(1,1)", nested.to_str().unwrap()]);
    assert_eq!(v["domain"], "D0");
    assert!((v["radial"][0].as_f64().unwrap().abs() - 2.4).abs() < 1e-10);
    let flat = tmp("rot.json", "[[0.6,0.8],[0,0],[0,0],[0.6,-0.8]]");
    assert_eq!(
        json(&["domains", "classify", "SU(1,1)", flat.to_str().unwrap()])["domain"],
        "D1"
    );
    let bad = tmp("bad.json", "[[2,0],[0,0],[0,0],[2,0]]");
    assert_eq!(
        call(&["domains", "classify", "SU(1,1)", bad.to_str().unwrap()]).0,
        2
    );
}

#[test]
fn enumerate_lists_domains() {
    let v = json(&["domains", "enumerate", "Sp(6,R)"]);
    let labels: Vec<&str> = v["domains"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["label"].as_str().unwrap())
        .collect();
    assert_eq!(labels, ["D3", "D2", "D1", "D0"]);
}

#[test]
fn config_file_merges_under_flags() {
    let cfg = tmp(
        "cfg.json",
        r#"{"heat": 0.5, "phi": "1.0;2.0", "route": "both"}"#,
    );
    let a = json(&["--config", cfg.to_str().unwrap(), "kernel", "SU2"]);
    assert_eq!(a.as_array().unwrap().len(), 4);
    let b = json(&[
        "--config",
        cfg.to_str().unwrap(),
        "kernel",
        "SU2",
        "--route",
        "pathsum",
    ]);
    assert_eq!(b.as_array().unwrap().len(), 2);
    assert_eq!(a[0]["re"], b[0]["re"]);
    let unknown = tmp("unknown.json", r#"{"heat": 0.5, "colour": 3}"#);
    assert_eq!(
        call(&["--config", unknown.to_str().unwrap(), "kernel", "SU2"]).0,
        2
    );
}

#[test]
fn csv_and_output_file() {
    let (code, out, _) = call(&[
        "kernel", "SU2", "--heat", "0.5", "--phi", "1.0", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    assert!(out.starts_with("phi,signature,route,re,im"));
    assert_eq!(out.lines().count(), 2);
    let target = tmp("out.json", "");
    let (code, out, _) = call(&["volume", "A2", "--output", target.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, ""));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(target).unwrap()).unwrap();
    assert!(v["V_G"].as_f64().unwrap() > 0.0);
}

#[test]
fn output_is_deterministic_across_workers() {
    let args = ["kernel", "SU3", "--heat", "0.3", "--route", "both"];
    let (_, one, _) = call(&[&["--workers", "1"][..], &args].concat());
    let (_, four, _) = call(&[&["--workers", "4"][..], &args].concat());
    assert_eq!(one, four);
}

#[test]
fn check_list_and_filter() {
    let (code, out, _) = call(&["check", "--list"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "kernel.symmetries"));
    let v = json(&["check", "--only", "weyl.order"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["count"], 5);
    assert_eq!(call(&["check", "--only", "nothing.matches"]).0, 2);
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_liekernel");
    let ok = Command::new(bin).args(["weyl", "C3"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("\"order\": 48"));
    let bad = Command::new(bin)
        .args(["kernel", "SU2", "--heat", "0"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
