use std::io::Write;

use multitwist::cli::run;
use serde_json::Value;

fn config(name: &str) -> String {
    format!("{}/configs/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["multitwist"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn error_kind(out: &str) -> String {
    let v: Value = serde_json::from_str(out.trim()).expect("error output is JSON");
    v["error"]["kind"].as_str().unwrap().to_string()
}

#[test]
fn invariants_json() {
    let (code, out, _) = invoke(&["invariants", "--config", &config("zeta.json")]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["d"], 1.0);
    assert!((v["q"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(v["xi"][0], -1.0);
}

#[test]
fn spectrum_csv() {
    let (code, out, _) = invoke(&["spectrum", "--config", &config("zetazeta.json"), "--alpha-max", "4.5", "--out", "csv"]);
    assert_eq!(code, 0);
    let mut rdr = csv::Reader::from_reader(out.as_bytes());
    assert_eq!(rdr.headers().unwrap(), vec!["alpha", "witness_count", "witnesses"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 5);
    assert_eq!(&rows[3][2], "(1,4);(2,2);(4,1)");
}

#[test]
fn eval_grid_csv() {
    let (code, out, err) = invoke(&[
        "eval", "--config", &config("zetazeta.json"), "--alpha", "0.7", "--s", "0.9;0.4", "--s", "0.2,1;0.3,-1",
        "--steps", "4", "--out", "csv",
    ]);
    assert_eq!(code, 0, "{err}");
    let mut rdr = csv::Reader::from_reader(out.as_bytes());
    assert_eq!(
        rdr.headers().unwrap(),
        vec!["s1_re", "s1_im", "s2_re", "s2_im", "value_re", "value_im", "ladder_diff"]
    );
    assert_eq!(rdr.records().count(), 4);
}

#[test]
fn eval_zeta_values() {
    let (code, out, _) = invoke(&["eval", "--config", &config("zeta.json"), "--s", "-1"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let re = v["points"][0]["value"][0].as_f64().unwrap();
    assert!((re + 1.0 / 12.0).abs() < 1e-6);
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--config", &config("zetazeta.json"), "--ell", "0", "--samples", "2", "--out", "csv"];
    let (c1, o1, _) = invoke(&args);
    let (c2, o2, _) = invoke(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(o1, o2);
    let (_, o3, _) = invoke(&[&args[..], &["--seed", "5"]].concat());
    assert_ne!(o1, o3);
}

#[test]
fn residue_reports_both_values() {
    let (code, out, _) = invoke(&["residue", "--config", &config("zeta.json"), "--s", "1", "--ell", "0"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["rel_error"].as_f64().unwrap() < 1e-6);
    assert_eq!(v["analytic"][0], 1.0);
}

#[test]
fn expand_w1() {
    let (code, out, _) = invoke(&["expand", "--kind", "w", "--index", "1", "--config", &config("zetazeta.json")]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["degree"], 2);
    assert_eq!(v["text"], "(1/2)*s1^2 + (-1)*s1*s2 + (1/2)*s2^2 + (-1/8)");
}

#[test]
fn precondition_errors_exit_one() {
    let (code, out, err) = invoke(&["residue", "--config", &config("zetazeta.json"), "--alpha", "0.7", "--s", "0.75;0.75", "--ell", "0"]);
    assert_eq!(code, 1);
    assert_eq!(error_kind(&out), "not_in_spectrum");
    assert!(!err.is_empty());
    let (code, out, _) = invoke(&["eval", "--config", &config("zetazeta.json"), "--s", "0.75;0.75"]);
    assert_eq!(code, 1);
    assert_eq!(error_kind(&out), "on_pole_locus");
    let (code, out, _) = invoke(&["eval", "--config", &config("zeta.json"), "--s", "1;2"]);
    assert_eq!(code, 1);
    assert_eq!(error_kind(&out), "invalid_input");
    let (code, out, _) = invoke(&["spectrum", "--config", &config("zeta.json")]);
    assert_eq!(code, 1);
    assert_eq!(error_kind(&out), "usage");
}

#[test]
fn malformed_config_names_the_location() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "{{\n  \"functions\": [],\n  \"kappa\": [\"1\"],\n  \"bogus\": 1\n}}").unwrap();
    let (code, out, _) = invoke(&["invariants", "--config", f.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    let msg = v["error"]["message"].as_str().unwrap();
    assert!(msg.contains("bogus") && msg.contains("line 4"), "{msg}");
}

#[test]
fn convergence_failures_exit_two() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    let text = std::fs::read_to_string(config("zeta.json")).unwrap();
    let text = text.replacen("\"seed\": 0", "\"seed\": 0,\n  \"params\": {\"contour\": {\"max_height\": 3}}", 1);
    f.write_all(text.as_bytes()).unwrap();
    let (code, out, _) = invoke(&["eval", "--config", f.path().to_str().unwrap(), "--s", "2", "--method", "mb"]);
    assert_eq!(code, 2, "{out}");
    assert_eq!(error_kind(&out), "convergence");
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("residue"));
}
