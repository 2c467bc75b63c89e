use std::fs;
use std::path::Path;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("landau").chain(args.iter().copied());
    let code = landau_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap_or_else(|| v.to_string().parse().unwrap())
}

#[test]
fn expect_top_level() {
    let (code, out, _) = run(&["expect", "--n", "20", "--m", "20"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert!((num(&v["L_can"]) - 20.0).abs() < 1e-8);
    assert!((num(&v["L_gauge"]) - 21.0).abs() < 1e-8);
    assert!((num(&v["L_mech"]) - 41.0).abs() < 1e-8);
    assert_eq!(v["mode"]["p"], 0);
}

#[test]
fn rotation_table_fractions() {
    let (code, out, _) = run(&["rotation-table", "--pairs", "1,-1;1,-2;1,-3"]);
    assert_eq!(code, 0);
    let v = json(&out);
    let rows = v.as_array().unwrap();
    let rates: Vec<&str> = rows.iter().map(|r| r["rate"].as_str().unwrap()).collect();
    assert_eq!(rates, ["1", "2/3", "2/4"]);
    for (row, exact) in rows.iter().zip([1.0, 2.0 / 3.0, 0.5]) {
        assert!((num(&row["measured"]) - exact).abs() < 1e-6);
        assert!((num(&row["analytic"]) - exact).abs() < 1e-15);
    }
}

#[test]
fn rotation_table_csv() {
    let (code, out, _) = run(&["rotation-table", "--pairs", "-1,8", "--format", "csv"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("m1,m2,rate,analytic,measured"));
    assert!(lines.next().unwrap().starts_with("-1,8,16/9,"));
}

#[test]
fn ground_state_density_at_origin() {
    let (code, out, _) = run(&["state", "--p", "0", "--m", "0", "--r", "0"]);
    assert_eq!(code, 0);
    let v = json(&out);
    // R(0) = 1/l_B, so ρ̃(0) = 1/(2π)
    assert!((num(&v["radial_wavefunction"]) - 1.0).abs() < 1e-15);
    assert!((num(&v["rho"]) - 1.0 / (2.0 * std::f64::consts::PI)).abs() < 1e-15);
}

#[test]
fn usage_errors_exit_one_and_name_the_token() {
    let (code, _, err) = run(&["expect", "--n", "2", "--m", "1", "--bogus"]);
    assert_eq!(code, 1);
    assert!(err.contains("--bogus"));

    let (code, _, err) = run(&["expect", "--n", "3", "--m", "5"]);
    assert_eq!(code, 1);
    assert!(err.contains("m = 5") && err.contains("n = 3"), "{err}");

    let (code, _, err) = run(&["expect", "--n", "x2", "--m", "1"]);
    assert_eq!(code, 1);
    assert!(err.contains("x2"));

    let (code, _, err) = run(&["expect", "--p", "1", "--n", "2", "--m", "0"]);
    assert_eq!(code, 1);
    assert!(err.contains("--p") && err.contains("--n"));

    let (code, _, err) = run(&["rotation-table", "--pairs", "1;2"]);
    assert_eq!(code, 1);
    assert!(err.contains("'1'"));

    let (code, _, err) = run(&["rotation-table", "--pairs", "2,2"]);
    assert_eq!(code, 1);
    assert!(err.contains("error"));
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("rotation-table"));
}

fn read_csv(path: &Path) -> Vec<Vec<f64>> {
    let mut r = csv::Reader::from_path(path).unwrap();
    assert_eq!(r.headers().unwrap().iter().collect::<Vec<_>>(), ["X", "Y", "rho", "jx", "jy"]);
    r.records().map(|rec| rec.unwrap().iter().map(|f| f.parse().unwrap()).collect()).collect()
}

#[test]
fn field_writes_csv_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (code, _, err) = run(&["field", "--p", "0", "--m", "3", "--grid", "21", "--half-width", "5", "--out", d]);
    assert_eq!(code, 0, "{err}");
    let rows = read_csv(&dir.path().join("field_p0_m3.csv"));
    assert_eq!(rows.len(), 21 * 21);
    assert_eq!((rows[0][0], rows[0][1]), (-5.0, -5.0));
    assert_eq!((rows[1][0], rows[1][1]), (-4.5, -5.0));
    let manifest = json(&fs::read_to_string(dir.path().join("manifest.json")).unwrap());
    assert_eq!(manifest["command"], "field");
    assert_eq!(manifest["outputs"][0], "field_p0_m3.csv");
    assert_eq!(manifest["parameters"]["grid"], 21);
    assert!(manifest["tool_version"].is_string());
}

#[test]
fn superpose_writes_one_file_per_z() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["superpose", "--m1", "-1", "--m2", "1", "--z-list", "0,0.4", "--grid", "11", "--out", d];
    let (code, _, err) = run(&args);
    assert_eq!(code, 0, "{err}");
    for z in ["0", "0.4"] {
        let rows = read_csv(&dir.path().join(format!("superpose_p0_m-1_p0_m1_Z{z}.csv")));
        assert_eq!(rows.len(), 121);
        assert!(rows.iter().all(|r| r[2] >= 0.0));
    }
}

#[test]
fn superpose_rejects_nodal_currents() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (code, _, err) = run(&["superpose", "--m1", "0", "--m2", "1", "--p1", "1", "--grid", "5", "--out", d]);
    assert_eq!(code, 1);
    assert!(err.contains("nodeless"));
}

#[test]
fn rerunning_a_manifest_reproduces_identical_files() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let d = dir.path().to_str().unwrap();
        let (code, _, _) = run(&["superpose", "--m1", "0", "--m2", "-1", "--z-list", "0.3", "--grid", "31", "--out", d]);
        assert_eq!(code, 0);
    }
    let manifest = json(&fs::read_to_string(a.path().join("manifest.json")).unwrap());
    for name in manifest["outputs"].as_array().unwrap() {
        let name = name.as_str().unwrap();
        assert_eq!(fs::read(a.path().join(name)).unwrap(), fs::read(b.path().join(name)).unwrap());
    }
    assert_eq!(fs::read(a.path().join("manifest.json")).unwrap(), fs::read(b.path().join("manifest.json")).unwrap());
}

#[test]
fn lgbeam_profile() {
    let (code, out, _) = run(&["lgbeam", "--p", "1", "--m", "2", "--w0", "2", "--k", "1"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert!((num(&v["gouy_jump"]) + 5.0 * std::f64::consts::PI).abs() < 1e-14);
    let profile = v["profile"].as_array().unwrap();
    assert_eq!(profile.len(), 13);
    assert!(profile[6]["curvature_radius"].is_null());
}

#[test]
fn verify_is_byte_identical_and_passes() {
    let (code1, out1, _) = run(&["verify"]);
    let (code2, out2, _) = run(&["verify"]);
    assert_eq!(code1, 0);
    assert_eq!(code2, 0);
    assert_eq!(out1, out2);
    let v = json(&out1);
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 10);
}
