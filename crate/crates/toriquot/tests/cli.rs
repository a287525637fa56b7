use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("toriquot-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn toriquot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toriquot")).args(args).output().unwrap()
}

fn json_ok(args: &[&str]) -> Value {
    let out = toriquot(args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn error_code(args: &[&str]) -> (i32, Value) {
    let out = toriquot(args);
    let code = out.status.code().unwrap();
    let err = serde_json::from_slice(&out.stderr).unwrap_or(Value::Null);
    (code, err)
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn ints(v: &Value) -> Vec<i64> {
    serde_json::from_value(v.clone()).unwrap()
}

#[test]
fn reduce_three_row_example() {
    let m = scratch("three.json", "[[-3,0,0,1,2,3,3],[0,-4,0,3,6,9,9],[0,0,-5,2,4,6,6]]");
    let r = json_ok(&["reduce", path(&m)]);
    assert_eq!(ints(&r["reduced"][0]), vec![-60, 89, 178, 267, 267]);
    assert_eq!(r["type_info"]["kind"], "type-ii");
    assert_eq!(r["type_info"]["beta"], 89);
}

#[test]
fn analyze_reports_reduction_even_when_enumeration_is_guarded() {
    let m = scratch("three_analyze.json", "[[-3,0,0,1,2,3,3],[0,-4,0,3,6,9,9],[0,0,-5,2,4,6,6]]");
    let r = json_ok(&["analyze", path(&m)]);
    assert_eq!(ints(&r["reduced"][0]), vec![-60, 89, 178, 267, 267]);
    assert!(r["skipped"].as_str().unwrap().contains("alpha = 60"));
    assert!(r.get("generators").is_none());
}

#[test]
fn analyze_single_row_series_prefix() {
    let m = scratch("a.json", "[[-2, 3, 6]]");
    let r = json_ok(&["analyze", path(&m), "--degree-bound", "12", "--onshell"]);
    // (1 + t^3 + 2t^4 + t^5 + t^8) / ((1 - t^5)(1 - t^3)(1 - t^2)^3), expanded by hand
    let mut c = vec![0i64; 13];
    for (i, x) in [1, 0, 0, 1, 2, 1, 0, 0, 1].iter().enumerate() {
        c[i] = *x;
    }
    for d in [5usize, 3, 2, 2, 2] {
        for k in d..13 {
            c[k] += c[k - d];
        }
    }
    assert_eq!(ints(&r["series"]["offshell"]), c);
    assert_eq!(r["generators"].as_array().unwrap().len(), 9);
    assert_eq!(r["relations"]["shell"], "on");
    assert!(r["verdicts"].as_array().unwrap().iter().all(|v| v["holds"] == true));
}

#[test]
fn analyze_one_by_one() {
    let m = scratch("one.json", "[[-1]]");
    let r = json_ok(&["analyze", path(&m)]);
    assert_eq!(r["type_info"]["kind"], "general");
    assert_eq!(r["generators"].as_array().unwrap().len(), 1);
    assert_eq!(ints(&r["series"]["onshell"])[..3], [1, 0, 0]);
}

#[test]
fn subcommands_on_a_type_one_matrix() {
    let m = scratch("t1.json", "[[-2, 1, 1]]");
    let g = json_ok(&["invariants", path(&m), "--closed-form"]);
    assert_eq!(g.as_array().unwrap().len(), 11);
    assert_eq!(g[0]["name"], "r1");
    let rel = json_ok(&["relations", path(&m), "--prefix", "x", "--onshell"]);
    assert!(rel["relations"].as_array().unwrap().iter().any(|r| r.as_str().unwrap().contains("x0")));
    let br = json_ok(&["brackets", path(&m)]);
    let n = 11;
    assert_eq!(br.as_array().unwrap().len(), n * (n - 1) / 2);
    let s = json_ok(&["series", path(&m), "--degree-bound", "4"]);
    assert_eq!(s["order"], 4);
    let c = json_ok(&["classify", path(&m)]);
    assert_eq!(c["class"]["triple"]["alpha"], 2);
    assert_eq!(c["class"]["triple"]["beta"], 1);
}

#[test]
fn bundled_real_map() {
    let r = json_ok(&["verify-map", "--bundled", "psi"]);
    assert_eq!(r["graded"], true);
    assert_eq!(r["relations"]["holds"], true);
    assert_eq!(r["inverse"]["relations"]["holds"], true);
    assert_eq!(r["inequalities"]["violated"], true);
    assert_eq!(r["inequalities"]["witness"]["generator"], "p2");
    let certs = r["relations"]["certificates"].as_array().unwrap();
    assert_eq!(certs.len(), 10);
    assert!(certs.iter().any(|c| c["element"] == "p1^2*p2 - p3*p4" && c["holds"] == true));
}

#[test]
fn bundled_complex_map_from_files() {
    let map = concat!(env!("CARGO_MANIFEST_DIR"), "/maps/phi_star.json");
    let a = scratch("src.json", "[[-3, 2, 6]]");
    let b = scratch("dst.json", "[[-2, 3, 6]]");
    let r = json_ok(&["verify-map", map, "--source", path(&a), "--target", path(&b)]);
    assert_eq!(r["poisson"]["holds"], true);
    assert_eq!(r["relations"]["holds"], true);
}

#[test]
fn identity_map_passes_everything() {
    let a = scratch("id.json", "[[-2, 3, 6]]");
    let images: Vec<String> = (0..9).map(|i| format!("\"p{}\": \"q{}\"", i, i)).collect();
    let map = scratch("id_map.json", &format!("{{\"images\": {{{}}}}}", images.join(", ")));
    let r = json_ok(&["verify-map", path(&map), "--source", path(&a), "--target", path(&a)]);
    assert_eq!(r["graded"], true);
    assert_eq!(r["relations"]["holds"], true);
    assert_eq!(r["inverse"]["relations"]["holds"], true);
    assert_eq!(r["poisson"]["holds"], true);
    assert_eq!(r["inequalities"]["violated"], false);
}

#[test]
fn reproduce_items() {
    for item in ["ex3.6", "sec6.ab", "sec6.abdoubleprime"] {
        let r = json_ok(&["reproduce", item]);
        assert_eq!(r["pass"], true, "{}", item);
    }
    let r = json_ok(&["reproduce", "sec6.ab"]);
    let known: Vec<&Value> =
        r["checks"].as_array().unwrap().iter().filter(|c| c.get("known_discrepancy").is_some()).collect();
    assert_eq!(known.len(), 1);
    assert_eq!(known[0]["pass"], false);
    assert_eq!(toriquot(&["reproduce", "sec9"]).status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let bad_json = scratch("bad.json", "[[1, 2], [3");
    let (code, err) = error_code(&["reduce", path(&bad_json)]);
    assert_eq!((code, err["error"].as_str()), (3, Some("parse")));

    let ragged = scratch("ragged.json", "[[1, 2], [3]]");
    assert_eq!(error_code(&["classify", path(&ragged)]).0, 3);

    let general = scratch("general.json", "[[1, 2, 3], [0, 1, 5]]");
    let (code, err) = error_code(&["reduce", path(&general)]);
    assert_eq!(code, 2);
    assert_eq!(err["code"], 2);

    let wide = scratch("wide.json", "[[-1, 1, 1, 1, 1, 1, 1, 1, 1]]");
    let (code, err) = error_code(&["invariants", path(&wide)]);
    assert_eq!((code, err["error"].as_str()), (2, Some("guard")));

    let a = scratch("bad_map_src.json", "[[-2, 3, 6]]");
    let map = scratch("bad_map.json", "{\"images\": {\"p1\": \"q1 +* q2\"}}");
    assert_eq!(error_code(&["verify-map", path(&map), "--source", path(&a), "--target", path(&a)]).0, 3);

    let missing = std::env::temp_dir().join("toriquot-does-not-exist.json");
    assert_eq!(error_code(&["series", path(&missing)]).0, 2);
    assert_eq!(toriquot(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn guard_can_be_lifted() {
    let m = scratch("alpha9.json", "[[-9, 1]]");
    assert_eq!(error_code(&["series", path(&m)]).0, 2);
    let s = json_ok(&["series", path(&m), "--allow-large", "--degree-bound", "10"]);
    assert_eq!(ints(&s["onshell"]).len(), 11);
}

#[test]
fn output_is_byte_identical_across_runs() {
    let m = scratch("det.json", "[[-2, 0, 1, 1], [0, -3, 1, 1]]");
    let first = toriquot(&["analyze", path(&m), "--onshell"]).stdout;
    let second = toriquot(&["analyze", path(&m), "--onshell"]).stdout;
    assert_eq!(first, second);
    let a = toriquot(&["verify-map", "--bundled", "psi", "--seed", "5"]).stdout;
    let b = toriquot(&["verify-map", "--bundled", "psi", "--seed", "5"]).stdout;
    assert_eq!(a, b);
}
