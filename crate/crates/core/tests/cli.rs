use std::fs;
use std::path::PathBuf;
use std::process::Command;

use cartankit::cli::{render_text, run, Report, EXIT_CHECKS_FAILED, EXIT_INPUT_ERROR, EXIT_OK};
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn cli(args: &[&str]) -> (Report, i32) {
    run(std::iter::once("cartankit").chain(args.iter().copied()))
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cartankit"))
}

fn json_of(r: &Report) -> Value {
    serde_json::from_str(&r.to_json()).unwrap()
}

#[test]
fn spaceform_compact_type() {
    let out = bin().args(["spaceform", "--n", "2", "--kappa", "1", "--out", "json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    // One JSON document on stdout.
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let c = &v["results"]["classification"];
    assert_eq!(c["tag"], "compact_type");
    assert_eq!(c["kappa"], "1");
    let sig = &c["fingerprint"]["killing_signature"];
    assert_eq!((&sig["positive"], &sig["negative"], &sig["zero"]), (&Value::from(0), &Value::from(3), &Value::from(0)));
    assert_eq!(c["verdict"], "fingerprints match");
    assert_eq!(v["checks"]["valid"], true);
    assert_eq!(v["exit_status"], 0);
}

#[test]
fn spaceform_other_signatures() {
    let (r, code) = cli(&["spaceform", "--n", "3", "--kappa", "-3/2", "--signature", "1,2", "--out", "json"]);
    assert_eq!(code, EXIT_OK);
    let v = json_of(&r);
    assert_eq!(v["results"]["classification"]["verdict"], "fingerprints match");
    assert_eq!(v["results"]["total_algebra_jacobi_ok"], true);
    let (_, code) = cli(&["spaceform", "--n", "3", "--kappa", "1", "--signature", "1,1"]);
    assert_eq!(code, EXIT_INPUT_ERROR);
    let (_, code) = cli(&["spaceform", "--n", "3", "--kappa", "0.5"]);
    assert_eq!(code, EXIT_INPUT_ERROR);
    let (_, code) = cli(&["spaceform", "--n", "3"]);
    assert_eq!(code, EXIT_INPUT_ERROR);
}

#[test]
fn leftinvariant_su2() {
    let out = bin().args(["leftinvariant", &data("su2_example.json"), "--out", "json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let s = &v["results"]["curvature"]["sectional"];
    assert_eq!((&s["12"], &s["13"], &s["23"]), (&Value::from("181/16"), &Value::from("313/16"), &Value::from("-599/16")));
    assert_eq!(v["results"]["curvature"]["lambda"], serde_json::json!(["8", "2", "1/2"]));
    assert_eq!(v["results"]["milnor_oracle"], serde_json::json!(["181/16", "313/16", "-599/16"]));
}

#[test]
fn leftinvariant_with_isotropy() {
    let (r, code) = cli(&["leftinvariant", &data("su2_example.json"), "--isotropy", &data("su2_isotropy.json")]);
    assert_eq!(code, EXIT_OK);
    let v = json_of(&r);
    assert_eq!(v["results"]["isotropy_group"].as_array().unwrap().len(), 4);
    assert_eq!(v["results"]["locally_symmetric_data"], false);
    assert!(v["checks"]["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn closure_cap_from_environment() {
    let run_with = |cap: &str| {
        bin()
            .env("CARTANKIT_CLOSURE_CAP", cap)
            .args(["leftinvariant", &data("su2_example.json"), "--isotropy", &data("su2_isotropy.json"), "--out", "json"])
            .output()
            .unwrap()
    };
    let out = run_with("3");
    assert_eq!(out.status.code(), Some(EXIT_INPUT_ERROR));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["results"]["error"].as_str().unwrap().contains("exceeded 3 elements"), "{v}");
    assert_eq!(run_with("4").status.code(), Some(EXIT_OK));
    assert_eq!(run_with("many").status.code(), Some(EXIT_INPUT_ERROR));
}

#[test]
fn garbage_names_the_field() {
    let out = bin().args(["validate", &data("garbage.json"), "--out", "json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_INPUT_ERROR));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["results"]["error"].as_str().unwrap().contains("R[0].value[0]"), "{v}");

    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.json");
    fs::write(&broken, "{\"n\": 2,").unwrap();
    let (_, code) = cli(&["validate", broken.to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT_ERROR);
    let (_, code) = cli(&["validate", "/nonexistent/file.json"]);
    assert_eq!(code, EXIT_INPUT_ERROR);
}

#[test]
fn help_and_argument_errors() {
    assert_eq!(cli(&["--help"]).1, EXIT_OK);
    assert_eq!(cli(&["--version"]).1, EXIT_OK);
    assert_eq!(cli(&[]).1, EXIT_INPUT_ERROR);
    assert_eq!(cli(&["frobnicate"]).1, EXIT_INPUT_ERROR);
    assert_eq!(bin().arg("validate").output().unwrap().status.code(), Some(EXIT_INPUT_ERROR));
}

fn spaceform_data(dir: &std::path::Path, name: &str, args: &[&str]) -> PathBuf {
    let mut full = vec!["spaceform", "--out", "json"];
    full.extend_from_slice(args);
    let (r, _) = cli(&full);
    let path = dir.join(name);
    fs::write(&path, serde_json::to_string_pretty(&r.results["cartan_data"]).unwrap()).unwrap();
    path
}

// Emitted Cartan data re-parses and re-validates to the same report.
#[test]
fn cartan_data_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (i, args) in [["--n", "3", "--kappa", "2"], ["--n", "4", "--kappa", "-1"], ["--n", "2", "--kappa", "1/3"]].iter().enumerate() {
        let (sf, _) = cli(&[&["spaceform", "--out", "json"][..], &args[..]].concat());
        let path = spaceform_data(dir.path(), &format!("d{i}.json"), args);
        let (first, code) = cli(&["validate", path.to_str().unwrap(), "--out", "json"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(first.checks, sf.checks);
        let (second, _) = cli(&["validate", path.to_str().unwrap(), "--out", "json"]);
        assert_eq!(first.to_json(), second.to_json());
    }
}

#[test]
fn text_is_rendered_from_json() {
    let out = bin().args(["spaceform", "--n", "2", "--kappa", "-1"]).output().unwrap();
    let (r, _) = cli(&["spaceform", "--n", "2", "--kappa", "-1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim_end(), render_text(&json_of(&r)).trim_end());
    assert!(text.contains("results.classification.tag: lorentz_type"));
}

#[test]
fn invalid_data_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = spaceform_data(dir.path(), "bad.json", &["--n", "3", "--kappa", "1"]);
    let mut v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    v["R"][0]["value"][0] = Value::from("5");
    fs::write(&path, v.to_string()).unwrap();
    let p = path.to_str().unwrap();
    let (r, code) = cli(&["validate", p]);
    assert_eq!(code, EXIT_CHECKS_FAILED);
    let w = &json_of(&r)["checks"]["checks"][3];
    assert_eq!(w["name"], "algebroid_jacobi");
    assert_eq!(w["witness"]["indices"].as_array().unwrap().len(), 3);
    let (r, code) = cli(&["bianchi", p]);
    assert_eq!(code, EXIT_CHECKS_FAILED);
    assert_eq!(r.results["reason"], "data does not validate");
    let (_, code) = cli(&["symmetric-check", p]);
    assert_eq!(code, EXIT_CHECKS_FAILED);
}

#[test]
fn bianchi_and_symmetric_check() {
    let dir = tempfile::tempdir().unwrap();
    let path = spaceform_data(dir.path(), "s.json", &["--n", "3", "--kappa", "1"]);
    let p = path.to_str().unwrap();
    let (r, code) = cli(&["bianchi", p]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r.checks.unwrap().checks.len(), 2);
    let (r, code) = cli(&["symmetric-check", p]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r.results["locally_symmetric_data"], true);
    assert_eq!(r.results["homogeneous_data"], true);
    assert_eq!(r.results["curvature_derivative_first_bianchi"]["holds"], true);
}

#[test]
fn fingerprint_sources_and_compare() {
    let dir = tempfile::tempdir().unwrap();
    let sf = spaceform_data(dir.path(), "s.json", &["--n", "2", "--kappa", "1"]);
    let frame = data("su2_example.json");
    // so(3) as constants and as the total algebra of the κ = 1 plane.
    let (r, code) = cli(&["fingerprint", &data("so3.json"), "--compare", sf.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r.results["compare"]["verdict"], "fingerprints match");
    assert_eq!(r.results["compare"]["source"], "total_algebra");
    // The su(2) frame spans an algebra isomorphic to so(3).
    let (r, code) = cli(&["fingerprint", &data("so3.json"), "--compare", &frame]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r.results["compare"]["source"], "metric_algebra");
    assert_eq!(r.results["compare"]["verdict"], "fingerprints match");
    let (_, code) = cli(&["fingerprint", &data("su2_isotropy.json")]);
    assert_eq!(code, EXIT_INPUT_ERROR);
    let iso = dir.path().join("iso2.json");
    fs::write(&iso, r#"{"dim":3,"brackets":[{"i":0,"j":1,"coeffs":[0,0,1]},{"i":0,"j":2,"coeffs":[0,-1,0]}]}"#).unwrap();
    let (r, _) = cli(&["fingerprint", &data("so3.json"), "--compare", iso.to_str().unwrap()]);
    assert_eq!(r.results["compare"]["verdict"], "fingerprints differ (non-isomorphic)");
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"dim":3,"brackets":[{"i":0,"j":1,"coeffs":[1,0,0]},{"i":1,"j":2,"coeffs":[0,1,0]}]}"#).unwrap();
    let (r, code) = cli(&["fingerprint", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_CHECKS_FAILED);
    assert_eq!(json_of(&r)["checks"]["checks"][0]["witness"]["indices"], serde_json::json!([0, 1, 2]));
}

#[test]
fn batch_writes_one_report_per_file() {
    let dir = tempfile::tempdir().unwrap();
    spaceform_data(dir.path(), "a.json", &["--n", "3", "--kappa", "1"]);
    spaceform_data(dir.path(), "b.json", &["--n", "2", "--kappa", "-2"]);
    fs::copy(data("garbage.json"), dir.path().join("c.json")).unwrap();
    fs::write(dir.path().join("notes.txt"), "ignored").unwrap();

    let out = bin().args(["validate", "--batch", dir.path().to_str().unwrap(), "--out", "json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_INPUT_ERROR));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let files = v["results"]["files"].as_array().unwrap();
    assert_eq!(files.len(), 3);
    let codes: Vec<i64> = files.iter().map(|f| f["exit_status"].as_i64().unwrap()).collect();
    assert_eq!(codes, vec![0, 0, 2]);
    for name in ["a", "b", "c"] {
        let rep: Report = serde_json::from_str(&fs::read_to_string(dir.path().join(format!("{name}.report.json"))).unwrap()).unwrap();
        assert_eq!(rep.command, "validate");
    }
    // A second run skips the reports it wrote.
    fs::remove_file(dir.path().join("c.json")).unwrap();
    let (r, code) = cli(&["validate", "--batch", dir.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r.results["files"].as_array().unwrap().len(), 2);
}
