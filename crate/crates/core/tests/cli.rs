use std::path::Path;
use std::process::{Command, Output};

use matsolve::cli::{commutes_exactly, run, Command as Cmd, RunConfig};
use matsolve::json::parse_rat_rows;
use serde_json::Value;

fn matsolve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matsolve")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn count_on_bundled_instance_reports_six() {
    let out = matsolve(&["count"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["result"]["nu"], 6);
    assert_eq!(v["result"]["method"], "groebner");
    for p in v["result"]["points"].as_array().unwrap() {
        assert!(p["check_residual"].as_f64().unwrap() < 1e-8);
    }
}

#[test]
fn fixtures_all_pass() {
    let out = matsolve(&["fixtures"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["result"]["all_passed"], true);
    assert_eq!(v["result"]["fixtures"].as_array().unwrap().len(), 12);
}

#[test]
fn random_instance_is_byte_identical_and_solves() {
    let args = ["random-instance", "--shape", "unilateral", "--n", "2", "--k", "2", "--seed", "7"];
    let a = matsolve(&args);
    let b = matsolve(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "u.json", std::str::from_utf8(&a.stdout).unwrap());
    let out = matsolve(&["solve-unilateral", "--input", &input]);
    let v = json_of(&out);
    assert_eq!(v["result"]["count"], 6);
    assert_eq!(v["result"]["distinct"], 6);
    assert_eq!(v["result"]["method"], "eigen");
    for s in v["result"]["solutions"].as_array().unwrap() {
        assert!(s["residual"].as_f64().unwrap() <= 1e-8);
        assert!(s["check_residual"].as_f64().unwrap() <= 1e-8);
    }
}

#[test]
fn commuting_instances_commute_exactly() {
    for seed in 0..5u64 {
        let mut cfg = RunConfig::new(Cmd::RandomInstance);
        cfg.shape = Some("commuting".parse().unwrap());
        cfg.n = 3;
        cfg.k = 3;
        cfg.seed = seed;
        let v = run(&cfg).unwrap().to_json();
        let coeffs: Vec<_> = v["coeffs"]
            .as_array()
            .unwrap()
            .iter()
            .map(|m| parse_rat_rows(&serde_json::from_value(m.clone()).unwrap()).unwrap())
            .collect();
        assert_eq!(coeffs.len(), 3);
        assert!(commutes_exactly(&coeffs));
    }
}

#[test]
fn reports_are_deterministic_modulo_timings() {
    let dir = tempfile::tempdir().unwrap();
    let gen = matsolve(&["random-instance", "--shape", "riccati", "--seed", "3"]);
    let input = write(dir.path(), "r.json", std::str::from_utf8(&gen.stdout).unwrap());
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timings_ms");
        v
    };
    let a = strip(json_of(&matsolve(&["solve-riccati", "--input", &input])));
    let b = strip(json_of(&matsolve(&["solve-riccati", "--input", &input])));
    assert_eq!(a, b);
    assert_eq!(a["result"]["method"], "hamiltonian");
    assert_eq!(a["digest"].as_str().unwrap().len(), 64);
}

#[test]
fn output_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.json");
    let out = matsolve(&["fixtures", "--output", target.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(target).unwrap()).unwrap();
    assert_eq!(v["command"], "fixtures");
}

#[test]
fn exit_codes_and_error_objects() {
    let dir = tempfile::tempdir().unwrap();

    let out = matsolve(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out)["error"]["kind"], "parse");

    let bad = write(dir.path(), "bad.json", "{\"n\": 2, \"coeffs\": [[[\"1\"]]]}");
    let out = matsolve(&["solve-unilateral", "--input", &bad]);
    assert_eq!(out.status.code(), Some(2));

    // B^2 - C = I has a repeated eigenvalue
    let rep = write(dir.path(), "rep.json", r#"{"n": 2, "B": [["0","0"],["0","0"]], "C": [["-1","0"],["0","-1"]]}"#);
    let out = matsolve(&["solve-symmetric", "--input", &rep]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json_of(&out)["error"]["kind"], "not_generic");

    let out = matsolve(&["count", "--pair-budget", "1"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(json_of(&out)["error"]["kind"], "budget_exceeded");
}

#[test]
fn jacobian_command_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "j.json",
        r#"{"equation": {"n": 2, "terms": [{"word": ["X","X"]}, {"word": ["D","X"]}], "constants": {"D": [["2","0"],["0","-1"]]}},
            "at": [["-1","1/3"],["0","2"]]}"#,
    );
    let v = json_of(&matsolve(&["jacobian", "--input", &input]));
    assert_eq!(v["result"]["singular"], true);
    assert_eq!(v["result"]["jacobian"][1], serde_json::json!(["1/3", "3", "0", "1/3"]));
}

#[test]
fn families_and_lex_order() {
    let dir = tempfile::tempdir().unwrap();
    let fam = write(dir.path(), "f.json", r#"{"kind": "binome", "T": [["1","0"],["0","4"]], "excluded": [0], "Y": [["5/2"]]}"#);
    let v = json_of(&matsolve(&["families", "--input", &fam]));
    assert_eq!(v["result"]["residual"], 0.0);
    assert_eq!(v["result"]["family_dimension"], 1);

    let v = json_of(&matsolve(&["count", "--order", "lex"]));
    assert_eq!(v["result"]["nu"], 6);
    assert_eq!(v["result"]["order"], "lex");
}

#[test]
fn threads_env_is_honoured() {
    let out = Command::new(env!("CARGO_BIN_EXE_matsolve")).arg("fixtures").env("MATSOLVE_THREADS", "1").output().unwrap();
    assert!(out.status.success());
}
