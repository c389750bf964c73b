use std::process::{Command, Output};

use serde_json::Value;

fn quadloci(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadloci")).args(args).env_remove("QUADLOCI_JOBS").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let o = quadloci(&all);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn sigma_example() {
    let v = json(&["class", "sigma", "--e", "2", "--f", "2", "--r", "1", "--basis", "chern"]);
    assert_eq!(v["coefficients"], serde_json::json!({"c1E": "-4", "c1F": "2"}));
    assert_eq!(v["metadata"]["command"], "class sigma");
}

#[test]
fn sigma_methods_agree() {
    let get = |m| json(&["class", "sigma", "--e", "4", "--f", "7", "--r", "2", "--method", m])["coefficients"].clone();
    let loc = get("localization");
    assert_eq!(loc, serde_json::json!({"c1E": "-35", "c1F": "10"}));
    assert_eq!(get("closed"), loc);
    assert_eq!(get("residue"), loc);
}

#[test]
fn slope_example() {
    let o = quadloci(&["moduli", "slope", "--series", "1", "--ell", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "34423/5320");
}

#[test]
fn petri_and_dp12() {
    let v = json(&["moduli", "petri", "--g", "6"]);
    assert_eq!(v["coefficients"]["lambda"], "896");
    assert_eq!(v["coefficients"]["delta"], "-112");
    assert_eq!(v["value"], "8");
    assert_eq!(json(&["moduli", "dp12"])["value"], "373/54");
}

#[test]
fn k3_and_hurwitz() {
    let v = json(&["k3", "rank4", "--g", "7"]);
    assert_eq!(v["coefficients"], serde_json::json!({"gamma": "1/4", "lambda": "2"}));
    let v = json(&["hurwitz", "--k", "6"]);
    assert_eq!(v["coefficients"], serde_json::json!({"D0": "-1", "lambda": "7"}));
    let v = json(&["k3", "kosz", "--i", "1"]);
    assert!(v["metadata"]["notes"][0].as_str().unwrap().starts_with("WARN"));
}

#[test]
fn eval_with_bindings() {
    let v = json(&["class", "eval", "2*lambda - (1/3)*delta + g*kappa11", "--set", "g=5/2"]);
    assert_eq!(v["coefficients"]["kappa11"], "5/2");
    assert_eq!(v["coefficients"]["delta"], "-1/3");
}

#[test]
fn projectivize_from_file() {
    let dir = std::env::temp_dir().join(format!("quadloci-proj-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("in.json");
    std::fs::write(&input, r#"{"s":[[3,-1,1],[1,2,2]],"r_i":[2,1,1],"r":6,"class":"a1+2*a2+2*a3"}"#).unwrap();
    let v = json(&["class", "projectivize", "--input", input.to_str().unwrap()]);
    assert_eq!(v["related"]["restriction0"], serde_json::json!({"alpha1": "-2", "alpha2": "3", "alpha3": "1"}));
    assert_eq!(v["related"]["restriction1"], serde_json::json!({}));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn exit_codes() {
    // clap usage errors
    assert_eq!(quadloci(&["class", "sigma", "--e", "2"]).status.code(), Some(2));
    assert_eq!(quadloci(&["nonsense"]).status.code(), Some(2));
    // domain errors
    assert_eq!(quadloci(&["class", "sigma", "--e", "3", "--f", "4", "--r", "1", "--method", "closed"]).status.code(), Some(2));
    assert_eq!(quadloci(&["class", "eval", "foo + 1"]).status.code(), Some(2));
    assert_eq!(quadloci(&["moduli", "slope", "--custom", "--r", "3", "--s", "2", "--a", "2"]).status.code(), Some(2));
    assert_eq!(quadloci(&["hurwitz", "--k", "3"]).status.code(), Some(2));
    assert_eq!(quadloci(&["class", "projectivize", "--input", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(quadloci(&["moduli", "dp12"]).status.code(), Some(0));
}

#[test]
fn out_file_matches_stdout() {
    let path = std::env::temp_dir().join(format!("quadloci-out-{}.json", std::process::id()));
    let args = ["class", "pencil", "--e", "5", "--json"];
    let o = quadloci(&[&args[..], &["--out", path.to_str().unwrap()]].concat());
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, stdout(&quadloci(&args)));
    std::fs::remove_file(&path).ok();
}

#[test]
fn json_round_trips_through_eval() {
    // the coefficient map rebuilt as an expression evaluates to the same class
    let v = json(&["k3", "rank4", "--g", "11"]);
    let expr: Vec<String> = v["coefficients"]
        .as_object()
        .unwrap()
        .iter()
        .map(|(k, c)| format!("({})*{k}", c.as_str().unwrap()))
        .collect();
    let back = json(&["class", "eval", &expr.join(" + ")]);
    assert_eq!(back["coefficients"], v["coefficients"]);
}

#[test]
fn verify_is_independent_of_jobs() {
    let run = |jobs: &str| {
        let o = quadloci(&["verify", "all", "--max-e", "3", "--jobs", jobs, "--json"]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        stdout(&o)
    };
    let one = run("1");
    assert_eq!(one, run("4"));
    let v: Value = serde_json::from_str(&one).unwrap();
    assert!(v["failures"].as_array().unwrap().is_empty());
    let rows = v["rows"].as_array().unwrap();
    assert!(rows.iter().any(|r| r["status"] == "WARN"));
    assert!(rows.iter().all(|r| r["status"] != "FAIL"));
}
