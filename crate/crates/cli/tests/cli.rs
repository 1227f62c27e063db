use fdc_cli::app::{parse_and_run, EXIT_OK, EXIT_UNEQUAL, EXIT_USAGE};
use std::io::Write;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("fdc").chain(args.iter().copied()).map(String::from);
    let code = parse_and_run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn temp_file(name: &str, body: &str) -> String {
    let dir = std::env::temp_dir().join(format!("fdc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::File::create(&path)
        .unwrap()
        .write_all(body.as_bytes())
        .unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn verify_unramified_is_equal() {
    let (code, out, _) = run(&["verify", "bundled:sl2_unramified_depth0"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("verdict: EQUAL"), "{out}");
    assert!(out.contains("9/4"));
}

#[test]
fn q_override_changes_value() {
    let (code, out, _) = run(&["--q", "7", "verify", "bundled:sl2_unramified_depth0"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("49/8"), "{out}");
}

#[test]
fn flagged_passes_unless_strict() {
    let (code, out, _) = run(&["verify", "bundled:sl2_ramified_depth_half"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("FLAGGED"));
    let (code, _, _) = run(&["--strict", "verify", "bundled:sl2_ramified_depth_half"]);
    assert_eq!(code, EXIT_UNEQUAL);
}

#[test]
fn json_reports_are_byte_identical() {
    let args = [
        "--format",
        "json",
        "verify",
        "bundled:sl2_unramified_depth0",
        "bundled:sl2_ramified_depth_half",
    ];
    let (c1, a, _) = run(&args);
    let (c2, b, _) = run(&args);
    assert_eq!((c1, c2), (EXIT_OK, EXIT_OK));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["reports"][0]["verdict"], "EQUAL");
    assert_eq!(v["reports"].as_array().unwrap().len(), 2);
}

#[test]
fn degree_and_gamma_run_one_side() {
    let (code, out, _) = run(&["--format", "json", "degree", "bundled:sl2_unramified_depth0"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["reports"][0]["verdict"].is_null());
    assert!(v["reports"][0]["values"].get("galois").is_none());
    let (code, out, _) = run(&["--format", "json", "gamma", "bundled:sl2_unramified_depth0"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["reports"][0]["values"].get("galois").is_some());
}

#[test]
fn scenario_file_on_disk() {
    let body = fdc_cli::scenario::bundled_source("sl2_unramified_depth0").unwrap();
    let path = temp_file("sl2.json", body);
    let (code, out, _) = run(&["verify", &path]);
    assert_eq!(code, EXIT_OK, "{out}");
}

#[test]
fn validation_failure_exits_two() {
    let mut v: serde_json::Value =
        serde_json::from_str(fdc_cli::scenario::bundled_source("sl2_unramified_depth0").unwrap()).unwrap();
    v["action"]["1"] = serde_json::json!([[1]]);
    let path = temp_file("isotropic.json", &v.to_string());
    let (code, _, err) = run(&["verify", &path]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("ellipticity"), "{err}");
    assert!(err.contains("GRootDatum"), "{err}");
}

#[test]
fn missing_file_and_bad_flags_exit_two() {
    assert_eq!(run(&["verify", "/nonexistent/x.json"]).0, EXIT_USAGE);
    assert_eq!(
        run(&["--format", "xml", "verify", "bundled:sl2_unramified_depth0"]).0,
        EXIT_USAGE
    );
    assert_eq!(
        run(&["--q", "6", "verify", "bundled:sl2_unramified_depth0"]).0,
        EXIT_USAGE
    );
    assert_eq!(run(&["verify", "bundled:nope"]).0, EXIT_USAGE);
}

#[test]
fn chi_check_bundled() {
    let (code, out, _) = run(&["chi-check", "bundled:z4_a1_chi"]);
    assert_eq!(code, EXIT_OK, "{out}");
    let (code, _, _) = run(&["chi-check", "bundled:z8_rot_a1a1_chi"]);
    assert_eq!(code, EXIT_OK);
    let (code, _, err) = run(&["chi-check", "bundled:sl2_unramified_depth0"]);
    assert_eq!(code, EXIT_USAGE, "{err}");
}

#[test]
fn selftest_small_run() {
    let (code, out, err) = run(&[
        "selftest",
        "--n",
        "3",
        "--seed",
        "11",
        "--only",
        "periodic_sum",
        "--only",
        "index_ratio",
    ]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert_eq!(out.lines().filter(|l| l.contains("PASS")).count(), 2);
    assert!(err.contains("seed 11"));
    assert_eq!(run(&["selftest", "--only", "nope"]).0, EXIT_USAGE);
}

#[test]
fn list_and_help() {
    let (code, out, _) = run(&["list"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("bundled:sl2_ramified_depth_half"));
    assert!(out.contains("automorphic_torus_index"));
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("selftest"));
}
