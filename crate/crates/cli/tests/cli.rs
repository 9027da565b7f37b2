use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn markoff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_markoff"))
        .args(args)
        .env_remove("MARKOFF_CACHE")
        .output()
        .expect("spawn markoff")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout)
        .unwrap_or_else(|e| panic!("bad json ({e}): {}", String::from_utf8_lossy(&o.stdout)))
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn reduce_descends_to_the_fundamental_triple() {
    let o = markoff(&["reduce", "--type", "11", "--k", "-2", "--point", "3,6,15"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["reduced"], serde_json::json!([3, 3, 3]));
    assert_eq!(v["status"], "Reduced");
    assert_eq!(v["word"], "Vz Vy");
}

#[test]
fn reduce_reports_exceptional_hit() {
    let o = markoff(&["reduce", "--type", "11", "--k", "6", "--point", "2,3,1"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["status"], "ExceptionalHit");
    assert_eq!(v["exceptional"]["axis"], "x");
    assert_eq!(v["exceptional"]["value"], 2);
}

#[test]
fn reduce_rejects_off_surface_point() {
    let o = markoff(&["reduce", "--type", "11", "--k", "-2", "--point", "1,1,1"]);
    assert_eq!(code(&o), 1);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("residual 2"), "{err}");
}

#[test]
fn reduce_rejects_malformed_input() {
    assert_eq!(code(&markoff(&["reduce", "--k", "-2", "--point", "3,3"])), 1);
    assert_eq!(code(&markoff(&["reduce", "--k", "x", "--point", "3,3,3"])), 1);
    assert_eq!(
        code(&markoff(&["reduce", "--type", "04", "--k", "1,2", "--point", "0,0,0"])),
        1
    );
}

#[test]
fn reduce_complex_min_descent() {
    let o = markoff(&[
        "reduce",
        "--complex",
        "--method",
        "min",
        "--k",
        "1.6875+1.125i",
        "--point=-15891.0576171875+36352.375i,19573073.608215332-17658606.031082153i,-605.4375-273.765625i",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["status"], "Reduced");
    assert_eq!(v["reduced"][2], "5-2.25i");
}

#[test]
fn reduce_complex_compact() {
    let o = markoff(&[
        "reduce",
        "--complex",
        "--method",
        "compact",
        "--k",
        "1.6875+1.125i",
        "--point",
        "0.25-1.5i,-1.25-1.1875i,-3.59375+1.328125i",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("1.5+0.25i") && out.contains(",Vz,1,Reduced,"), "{out}");
}

#[test]
fn reduce_cubic04() {
    // k = 0 gives x^2+y^2+z^2+xyz = 4.
    let o = markoff(&["reduce", "--type", "04", "--k", "0,0,0,0", "--point", "2,0,0"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["surface"], "(0,4)");
}

#[test]
fn scan_five_rows() {
    let o = markoff(&["scan", "--type", "11", "--k-range", "-2..2", "--box", "100"]);
    assert!(matches!(code(&o), 0 | 2));
    let v = json(&o);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    let ks: Vec<i64> = rows.iter().map(|r| r["k"].as_i64().unwrap()).collect();
    assert_eq!(ks, vec![-2, -1, 0, 1, 2]);
    for r in rows {
        assert!(r["h_star_gamma_poly"].is_u64() && r["h_star_gamma_prime"].is_u64());
        assert!(r["h_star_gamma_poly"].as_u64() >= r["h_star_gamma_prime"].as_u64());
        assert!(r["caps_hit"].is_boolean() && r["exceptional"].is_u64());
        assert!(r["representatives"].is_array());
    }
    assert_eq!(rows[0]["h_star_gamma_prime"], 2);
    let any_capped = rows.iter().any(|r| r["caps_hit"] == true);
    assert_eq!(code(&o), if any_capped { 2 } else { 0 });
}

#[test]
fn scan_csv_mirrors_json() {
    let j = json(&markoff(&["scan", "--k-range", "0..3", "--box", "50"]));
    let c = stdout(&markoff(&[
        "scan",
        "--k-range",
        "0..3",
        "--box",
        "50",
        "--format",
        "csv",
    ]));
    let lines: Vec<&str> = c.lines().collect();
    assert_eq!(lines[0], "k,h_star_gamma_poly,h_star_gamma_prime,exceptional,caps_hit");
    for (row, line) in j["rows"].as_array().unwrap().iter().zip(&lines[1..]) {
        let expect = format!(
            "{},{},{},{},{}",
            row["k"], row["h_star_gamma_poly"], row["h_star_gamma_prime"], row["exceptional"], row["caps_hit"]
        );
        assert_eq!(*line, expect);
    }
    assert_eq!(lines.len(), 5);
}

#[test]
fn scan_empty_range_is_header_only() {
    let o = markoff(&["scan", "--k-range", "3..2", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "k,h_star_gamma_poly,h_star_gamma_prime,exceptional,caps_hit\n"
    );
    let o = markoff(&["scan", "--k-range", "3..2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["rows"], serde_json::json!([]));
}

#[test]
fn scan_cubic04_single_row() {
    let o = markoff(&["scan", "--type", "04", "--k", "0,0,0,0", "--box", "20"]);
    assert!(matches!(code(&o), 0 | 2));
    let v = json(&o);
    assert_eq!(v["surface"], "(0,4)");
    assert_eq!(v["rows"].as_array().unwrap().len(), 1);
    assert_eq!(v["rows"][0]["k"], serde_json::json!([0, 0, 0, 0]));
}

fn scan_cached(cache: &Path, via_env: bool) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_markoff"));
    cmd.args(["scan", "--k-range", "-2..6", "--box", "60"]);
    if via_env {
        cmd.env("MARKOFF_CACHE", cache);
    } else {
        cmd.env_remove("MARKOFF_CACHE").arg("--cache").arg(cache);
    }
    cmd.output().unwrap()
}

#[test]
fn warm_cache_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.json");
    let cold = scan_cached(&path, false);
    assert!(path.exists());
    let warm = scan_cached(&path, false);
    assert_eq!(cold.stdout, warm.stdout);
    assert_eq!(cold.status.code(), warm.status.code());
    let uncached = markoff(&["scan", "--k-range", "-2..6", "--box", "60"]);
    assert_eq!(cold.stdout, uncached.stdout);
}

#[test]
fn cache_path_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("env.json");
    let cold = scan_cached(&path, true);
    let entries = std::fs::read_to_string(&path).unwrap();
    assert!(entries.contains("box=60"), "{entries}");
    assert_eq!(cold.stdout, scan_cached(&path, true).stdout);
}

#[test]
fn unwritable_cache_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("c.json");
    let o = markoff(&["scan", "--k", "0", "--box", "10", "--cache", path.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
}

#[test]
fn verify_default_passes() {
    let o = markoff(&["verify"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["ok"], true);
    for s in v["suites"].as_array().unwrap() {
        assert_eq!(s["passed"], 1000);
    }
}

#[test]
fn verify_scaled_down() {
    let o = markoff(&["verify", "--trials", "10", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 9);
}

#[test]
fn verify_negative_control() {
    let o = markoff(&["verify", "--trials", "10", "--inject-fault"]);
    assert_ne!(code(&o), 0);
}

#[test]
fn verify_is_deterministic() {
    let a = markoff(&["verify", "--seed", "7", "--trials", "50"]);
    let b = markoff(&["verify", "--seed", "7", "--trials", "50"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn lines_counts() {
    let count = |k: &str| json(&markoff(&["lines", "--k", k]))["lines"].as_array().unwrap().len();
    assert_eq!(count("6"), 4);
    assert_eq!(count("2"), 2);
    assert_eq!(count("1"), 0);
    let v = json(&markoff(&["lines", "--k", "6"]));
    assert!(v["lines"].as_array().unwrap().iter().all(|l| l["integral"] == true));
}

#[test]
fn orbit_dump_starts_at_root() {
    let o = markoff(&["orbit", "--k", "-2", "--point", "3,3,3", "--cap-height", "30"]);
    assert_eq!(code(&o), 2);
    let v = json(&o);
    assert_eq!(v["caps_hit"], true);
    let pts = v["points"].as_array().unwrap();
    assert_eq!(pts.len(), 40);
    assert_eq!(pts[0]["point"], serde_json::json!([3, 3, 3]));
    assert_eq!(pts[0]["word"], "");
}

#[test]
fn orbit_finite_closure() {
    let o = markoff(&["orbit", "--k", "2", "--point", "2,2,2", "--cap-height", "1000"]);
    assert!(matches!(code(&o), 0 | 2));
    assert!(!json(&o)["points"].as_array().unwrap().is_empty());
}

#[test]
fn equiv_finds_word() {
    let o = markoff(&[
        "equiv",
        "--k",
        "-2",
        "--point",
        "3,3,3",
        "--to",
        "6,15,87",
        "--gens",
        "gamma-poly",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["result"], "yes");
    assert!(v["word"].as_str().unwrap().starts_with('T'));
}

#[test]
fn equiv_proves_no_for_finite_orbit() {
    let o = markoff(&["equiv", "--k", "-2", "--point", "3,3,3", "--to", "0,0,0"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["result"], "no_within_caps");
    assert_eq!(v["caps_hit"], false);
}

#[test]
fn equiv_capped_search_exits_2() {
    let o = markoff(&[
        "equiv",
        "--k",
        "-2",
        "--point",
        "3,3,3",
        "--to",
        "3,-3,-3",
        "--gens",
        "gamma-poly",
        "--cap-height",
        "50",
    ]);
    let v = json(&o);
    if v["result"] == "no_within_caps" {
        assert_eq!(v["caps_hit"], true);
        assert_eq!(code(&o), 2);
    } else {
        assert_eq!(code(&o), 0);
    }
}
