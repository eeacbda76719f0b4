use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn systole(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_systole")).args(args).output().expect("binary runs")
}

fn fields_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fields")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

#[test]
fn bounds_report_for_seven() {
    let field = fields_dir().join("q-sqrt5.json");
    let out = systole(&["bounds", "--field", field.to_str().unwrap(), "--ideal", r#"{"int":7}"#]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    let r = &v["results"][0];
    assert_eq!(r["ideal_norm"], "49");
    assert!((r["lower_bound_norm_form"]["value"].as_f64().unwrap() - 0.574003387879122).abs() < 1e-12);
    assert_eq!(r["lower_bound_norm_form"]["valid"], true);
    assert_eq!(v["header"]["config"]["command"], "bounds");
    assert_eq!(v["header"]["config_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn whole_ring_is_flagged_invalid() {
    let out = systole(&["bounds", "--ideal", r#"{"int":1}"#]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["results"][0];
    assert_eq!(r["lower_bound_norm_form"]["valid"], false);
    assert!(r["upper_bound_witness_length"].is_null());
}

#[test]
fn csv_has_one_row_per_ideal() {
    let out = systole(&["bounds", "--format", "csv", "--ideal", r#"{"int":7}"#, "--ideal", r#"{"int":11}"#, "--ideal", r#"{"int":13}"#]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let data: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data.len(), 4);
    assert_eq!(data[0], "field_label,ideal,norm,order,lower,theorem,upper_witness,upper_closed,empirical,exhaustive");
    assert!(data[1].starts_with(r#"Q(sqrt5),"{""int"":7}",49,117600,0.5740033879,"#));
}

#[test]
fn order_table() {
    let out = systole(&["order", "--ideal", r#"{"int":2}"#, "--ideal", r#"{"int":11}"#]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["results"][0]["formula"], "60");
    assert_eq!(v["results"][0]["brute"], "60");
    assert_eq!(v["results"][0]["equal"], true);
    assert_eq!(v["results"][1]["formula"], "1742400");
    assert!(v["results"][1]["brute"].is_null());
}

#[test]
fn search_stays_below_the_witness() {
    let out = systole(&["search", "--ideal", r#"{"int":7}"#, "--height", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["results"][0];
    let e = r["empirical_shortest"]["length"].as_f64().unwrap();
    assert!(e <= r["upper_bound_witness_length"].as_f64().unwrap());
    assert_eq!(r["empirical_shortest"]["exhaustive"], true);
}

#[test]
fn search_budget_exits_two_with_partial_report() {
    let out = systole(&["search", "--ideal", r#"{"int":7}"#, "--cap", "500"]);
    assert_eq!(out.status.code(), Some(2));
    let r = &json(&out)["results"][0];
    assert_eq!(r["empirical_shortest"]["exhaustive"], false);
}

#[test]
fn verify_passes() {
    let out = systole(&["verify", "--ideal", r#"{"int":7}"#, "--samples", "200", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let s = &json(&out)["results"][0]["suite"];
    assert_eq!(s["lemma1_failures"], 0);
    assert_eq!(s["proposition_failures"], 0);
    assert!(s["counterexamples"].as_array().unwrap().is_empty());
}

#[test]
fn input_errors_exit_three() {
    let out = systole(&["bounds", "--ideal", r#"{"product": [{"int": 2}, {"gen": "x"}]}"#]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ideal.product[1].gen"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"label\": \"x\",\n \"min_poly\": [-2, 0, 0, 1]}").unwrap();
    let out = systole(&["bounds", "--field", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("real roots"));

    std::fs::write(&bad, "{\"label\": \"x\",\n \"min_poly\": [-2, 0 1]}").unwrap();
    let out = systole(&["bounds", "--field", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    assert_eq!(systole(&["search", "--height", "0"]).status.code(), Some(3));
    assert_eq!(systole(&["nonsense"]).status.code(), Some(3));
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let args = ["order", "--ideal", r#"{"int":3}"#];
    let stdout = systole(&args).stdout;
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    let out = systole(&with_out);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), stdout);
}
