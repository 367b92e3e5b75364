use std::path::PathBuf;
use std::process::{Command, Output};

use fwkit::algebra::parse;
use fwkit::{BigRational, Expr};
use serde_json::Value;

fn fwkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fwkit")).args(args).env_remove("FW_SEED").output().expect("binary runs")
}

fn fwkit_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fwkit")).args(args).env(key, value).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn expr(s: &str) -> Expr {
    parse::<BigRational>(s).unwrap()
}

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    std::fs::read_to_string(path).unwrap()
}

fn without_version(s: &str) -> String {
    s.lines().filter(|l| !l.starts_with("tool_version:")).map(|l| format!("{l}\n")).collect()
}

#[test]
fn sfw_order_two() {
    let o = fwkit(&["symbolic", "sfw", "--order", "2", "--format", "text"]);
    assert_eq!(code(&o), 0);
    let j = json(&fwkit(&["symbolic", "sfw", "--order", "2", "--format", "json"]));
    let rendered = j["cases"][0]["residual"].as_str().unwrap();
    assert_eq!(expr(rendered), expr("-1/2*i*mu*beta*O - 1/4*i*mu^2*[O,E]"));
    assert!(stdout(&o).contains(rendered));
}

#[test]
fn symbolic_goldens() {
    for n in 1..=4 {
        let o = fwkit(&["symbolic", "sfw", "--order", &n.to_string()]);
        assert_eq!(without_version(&stdout(&o)), golden(&format!("sfw_order{n}.txt")), "order {n}");
    }
    let o = fwkit(&["symbolic", "verify-fw1950", "--order", "3", "--expect", "not-fw"]);
    assert_eq!(without_version(&stdout(&o)), golden("verify_fw1950_order3.txt"));
    let o = fwkit(&["symbolic", "identity", "--name", "all", "--order", "4"]);
    assert_eq!(without_version(&stdout(&o)), golden("identity_all_order4.txt"));
}

#[test]
fn original_method_is_not_fw() {
    let o = fwkit(&["symbolic", "verify-fw1950", "--order", "3"]);
    assert_eq!(code(&o), 1);
    let o = fwkit(&["symbolic", "verify-fw1950", "--order", "3", "--expect", "not-fw", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let j = json(&o);
    let case = j["cases"].as_array().unwrap().iter().find(|c| c["name"] == "fw_property").unwrap();
    assert_eq!(expr(case["residual"].as_str().unwrap()), expr("1/16*i*mu^3*beta*[O^2,E]"));
    assert_eq!(case["details"]["lowest_terms_parity"], "even");
    assert_eq!(case["details"]["result"], "not-fw");
}

#[test]
fn identities() {
    let o = fwkit(&["symbolic", "identity", "--name", "lambda-squared", "--order", "4"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("[pass] lambda-squared: 0"));
    assert_eq!(code(&fwkit(&["symbolic", "identity", "--name", "nope", "--order", "2"])), 2);
}

#[test]
fn bad_flags_exit_two() {
    assert_eq!(code(&fwkit(&["symbolic", "sfw"])), 2);
    assert_eq!(code(&fwkit(&["symbolic", "sfw", "--order", "x"])), 2);
    assert_eq!(code(&fwkit(&["symbolic", "sfw", "--order", "0"])), 2);
    assert_eq!(code(&fwkit(&["symbolic", "verify-fw1950", "--order", "2"])), 2);
    assert_eq!(code(&fwkit(&["numeric", "run", "--model", "free-dirac", "--p", "1,2"])), 2);
    assert_eq!(code(&fwkit(&["--format", "yaml", "symbolic", "sfw", "--order", "1"])), 2);
    assert_eq!(code(&fwkit(&["symbolic", "sfw", "--order", "1", "--tol", "-1"])), 2);
    assert_eq!(code(&fwkit_env(&["numeric", "run", "--model", "random-block"], "FW_SEED", "abc")), 2);
}

#[test]
fn model_errors_exit_three() {
    assert_eq!(code(&fwkit(&["numeric", "run", "--model", "random-block", "--dim", "7"])), 3);
    assert_eq!(code(&fwkit(&["numeric", "run", "--model", "free-dirac", "--m", "0"])), 3);
    assert_eq!(code(&fwkit(&["numeric", "run", "--model", "landau-dirac", "--levels", "2"])), 3);
}

#[test]
fn free_dirac_run() {
    let o = fwkit(&["numeric", "run", "--model", "free-dirac", "--m", "1", "--p", "0,0,1", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let j = json(&o);
    let cases = j["cases"].as_array().unwrap();
    let model = &cases[0];
    let h_fw = model["details"]["h_fw"].as_str().unwrap();
    let c: f64 = h_fw.strip_prefix("beta*").unwrap().parse().unwrap();
    assert!((c - 2f64.sqrt()).abs() < 1e-12);
    for case in &cases[1..] {
        assert!(case["residual"].as_f64().unwrap() <= 1e-10, "{case}");
    }

    // verdicts and residual magnitudes only
    let by_name: std::collections::HashMap<&str, &Value> =
        cases.iter().map(|c| (c["name"].as_str().unwrap(), c)).collect();
    let g = golden("numeric_free_dirac.txt");
    let lines: Vec<&str> = g.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(lines.len(), cases.len());
    for line in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let case = by_name[parts[0]];
        assert_eq!(case["verdict"], parts[1]);
        if let Some(bound) = parts.get(2) {
            assert!(case["residual"].as_f64().unwrap() <= bound.parse::<f64>().unwrap(), "{line}");
        }
    }
}

#[test]
fn zero_scale_gives_identity() {
    let o = fwkit(&["numeric", "run", "--model", "random-block", "--dim", "8", "--seed", "7", "--scale", "0", "--format", "json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["cases"][0]["details"]["u_is_identity"], true);
}

#[test]
fn sweep_passes() {
    let o = fwkit(&["numeric", "sweep", "--count", "200", "--seed", "42", "--dim", "8", "--scale", "0.5", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let j = json(&o);
    let g = golden("numeric_sweep.txt");
    let mut lines = g.lines().filter(|l| !l.starts_with('#'));
    let summary: Vec<usize> = lines.next().unwrap().split_whitespace().skip(1).map(|x| x.parse().unwrap()).collect();
    assert_eq!(j["summary"]["passed"], summary[0]);
    assert_eq!(j["summary"]["failed"], summary[1]);
    assert_eq!(j["summary"]["errored"], summary[2]);
    let bound: f64 = lines.next().unwrap().split_whitespace().nth(1).unwrap().parse().unwrap();
    let worst = j["cases"].as_array().unwrap().iter().map(|c| c["residual"].as_f64().unwrap()).fold(0.0, f64::max);
    assert!(worst <= bound);
    let names: Vec<&str> = j["cases"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names[0], "model-0");
    assert_eq!(names[199], "model-199");
}

#[test]
fn sweep_over_dimensions() {
    let o = fwkit(&["numeric", "sweep", "--count", "14", "--seed", "1", "--dim", "4", "--dim-max", "16"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("dim=16"));
}

#[test]
fn reports_are_deterministic() {
    let args = ["numeric", "sweep", "--count", "20", "--seed", "3", "--format", "json"];
    assert_eq!(fwkit(&args).stdout, fwkit(&args).stdout);
    let args = ["symbolic", "identity", "--name", "all", "--order", "3", "--format", "json"];
    assert_eq!(fwkit(&args).stdout, fwkit(&args).stdout);
}

#[test]
fn env_seed_overrides_flag() {
    let a = fwkit_env(&["numeric", "run", "--model", "random-block", "--seed", "1", "--format", "json"], "FW_SEED", "5");
    let b = fwkit(&["numeric", "run", "--model", "random-block", "--seed", "5", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 5);
}

#[test]
fn text_and_json_verdicts_match() {
    let args = ["numeric", "run", "--model", "spin1-pseudo", "--seed", "2"];
    let text = stdout(&fwkit(&args));
    let j = json(&fwkit(&[&args[..], &["--format", "json"]].concat()));
    for case in j["cases"].as_array().unwrap() {
        let tag = format!("[{}] {}:", case["verdict"].as_str().unwrap(), case["name"].as_str().unwrap());
        assert!(text.contains(&tag), "{tag}");
    }
    assert_eq!(j["cases"][0]["details"]["mode"], "beta-pseudo-hermitian");
}

#[test]
fn tolerance_flag_is_applied() {
    let o = fwkit(&["numeric", "run", "--model", "random-block", "--tol", "1e-30", "--format", "json"]);
    assert_eq!(code(&o), 1);
    let j = json(&o);
    assert!(j["summary"]["failed"].as_u64().unwrap() > 0);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("fwkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let o = fwkit(&["symbolic", "sfw", "--order", "1", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let j: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    for key in ["suite", "cases", "summary", "tool_version", "seed"] {
        assert!(j.get(key).is_some(), "{key}");
    }
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn convergence_command() {
    let o = fwkit(&["numeric", "convergence", "--order", "2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let m = json(&o)["cases"][0]["residual"].as_f64().unwrap();
    assert!((m - 3.0).abs() <= 0.3);
    let o = fwkit(&["numeric", "convergence", "--order", "2", "--scale", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("diverged"));
    assert_eq!(code(&fwkit(&["numeric", "convergence", "--order", "2", "--model", "free-dirac"])), 2);
}

#[test]
fn singular_model_reports_error_case() {
    // with O = 0 the lower level sits at e − m = −1e-12
    let o = fwkit(&["numeric", "run", "--model", "commuting-case", "--odd", "0", "--even", "0.999999999999", "--blocks", "1"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("[error] transform"));
}
