use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_holonomy")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = run(args);
    let v: Value = serde_json::from_slice(&out.stdout).expect("json report");
    (v, out.status.code().unwrap())
}

fn output<'a>(v: &'a Value, name: &str) -> &'a Value {
    v["outputs"].as_array().unwrap().iter().find(|o| o["name"] == name).unwrap_or_else(|| panic!("no output {name}"))
}

#[test]
fn induce_cy_e7() {
    let (v, code) = json(&["induce", "cy", "--xi", "e7"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], 1);
    assert_eq!(output(&v, "omega")["value"], "e16 - e25 - e34");
    assert_eq!(output(&v, "im_omega")["value"], "-e124 + e135 + e236 + e456");
    assert_eq!(output(&v, "j.e1")["value"], "-e6");
    assert_eq!(output(&v, "j.e2")["value"], "e5");
    assert_eq!(output(&v, "j.e3")["value"], "e4");
    assert_eq!(v["passed"], true);
    let raw = String::from_utf8(run(&["induce", "cy", "--xi", "e7"]).stdout).unwrap();
    assert!(raw.contains("e16 - e25 - e34"));
}

#[test]
fn induce_cy_e3() {
    let (v, code) = json(&["induce", "cy", "--xi", "e3"]);
    assert_eq!(code, 0);
    assert_eq!(output(&v, "omega")["value"], "e12 - e47 - e56");
    assert_eq!(output(&v, "im_omega")["matches"], true);
    assert_eq!(output(&v, "j.e1")["value"], "-e2");
}

#[test]
fn induce_g2_matches_printed_expansions() {
    for (gamma, printed) in [
        ("e4", "-e123 + e356 - e378 - e257 - e268 - e158 + e167"),
        ("e5", "e126 - e346 + e137 + e247 + e148 - e238 + e678"),
    ] {
        let (v, code) = json(&["induce", "g2", "--gamma", gamma]);
        assert_eq!(code, 0, "{gamma}");
        let phi = output(&v, "phi");
        assert_eq!(phi["matches"], true);
        let canonical = holonomy_core::dsl::canonicalize(printed, 8).unwrap();
        assert_eq!(phi["value"], canonical.as_str());
    }
}

#[test]
fn zero_samples_is_a_usage_error() {
    let out = run(&["verify", "g2", "--samples", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn parse_errors_exit_2() {
    let out = run(&["induce", "cy", "--xi", "e12"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["equiv", "--a", "e12 + e345", "--b", "e123"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("grade mismatch"));
    let out = run(&["induce", "cy", "--xi", "2 e7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical() {
    let args = ["verify", "g2", "--samples", "5", "--seed", "99"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let t = ["--format", "text", "triality", "--alpha", "e1", "--beta", "e5", "--gamma", "e6"];
    assert_eq!(run(&t).stdout, run(&t).stdout);
}

#[test]
fn verify_suites_pass() {
    for suite in ["g2", "cy", "octonion"] {
        let (v, code) = json(&["verify", suite, "--samples", "10"]);
        assert_eq!(code, 0, "{suite}");
        assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    }
    let (_, code) = json(&["--backend", "float", "verify", "g2", "--samples", "10"]);
    assert_eq!(code, 0);
}

#[test]
fn mirror_report_boundary_values() {
    let (v, code) = json(&["mirror-report", "--xi", "e7", "--xi-prime", "e3"]);
    assert_eq!(code, 0);
    assert_eq!(output(&v, "start.e_re")["value"], "1");
    assert_eq!(output(&v, "start.e_omega")["value"], "0");
    assert_eq!(output(&v, "end.e_re")["value"], "0");
    assert_eq!(output(&v, "end.e_omega")["value"], "1");
    assert_eq!(output(&v, "start.xi_dd")["value"], "-e3");
    assert_eq!(output(&v, "end.xi_dd")["value"], "e7");
}

#[test]
fn triality_table_output() {
    let (v, code) = json(&["triality", "--alpha", "e1", "--beta", "e5", "--gamma", "e6"]);
    assert_eq!(code, 0);
    assert_eq!(output(&v, "table.row1")["value"], "SU(3) SU(3) SU(2) SU(3)");
    assert_eq!(output(&v, "table.row2")["value"], "SU(2) SU(2) SU(2) SU(2)");
}

#[test]
fn equiv_finds_and_rejects() {
    let phi = "e123 + e145 + e167 + e246 - e257 - e347 - e356";
    let flipped = "-e123 - e145 - e167 + e246 - e257 - e347 - e356";
    let (v, code) = json(&["equiv", "--a", phi, "--b", flipped]);
    assert_eq!(code, 0);
    assert_eq!(output(&v, "determinant")["value"], "-1");
    let (v, code) = json(&["equiv", "--a", "e123 + e456", "--b", phi]);
    assert_eq!(code, 1);
    assert_eq!(output(&v, "permutation")["value"], "none");
}

#[test]
fn golden_files_pass() {
    let (v, code) = json(&["golden"]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"].as_array().unwrap().len(), 48);
    let dir = std::env::temp_dir().join(format!("holonomy-golden-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("bad.forms"), "dim = 7\ncy.e7.omega = e16 + e25 - e34\n").unwrap();
    let (v, code) = json(&["golden", "--dir", dir.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(code, 1);
    assert_eq!(v["outputs"][0]["matches"], false);
}

#[test]
fn text_format_summarizes() {
    let out = run(&["--format", "text", "induce", "g2", "--gamma", "e4"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("[matches expected]"));
    assert!(s.ends_with("result: PASS\n"));
    assert!(!s.contains("elapsed"));
    let timed = String::from_utf8(run(&["--format", "text", "--timings", "golden"]).stdout).unwrap();
    assert!(timed.contains("elapsed:"));
}
