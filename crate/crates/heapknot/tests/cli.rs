//! End-to-end tests of the `heapknot` binary: output values, exit codes and
//! determinism across worker counts.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heapknot")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

/// Canonical form of a relator up to cyclic reduction, cyclic permutation
/// and inversion.
fn canonical(word: &[(String, i64)]) -> Vec<(String, i64)> {
    let inverse: Vec<(String, i64)> = word.iter().rev().map(|(s, e)| (s.clone(), -e)).collect();
    let mut letters = Vec::new();
    for w in [word.to_vec(), inverse] {
        let mut flat: Vec<(String, i64)> = Vec::new();
        for (s, e) in &w {
            for _ in 0..e.unsigned_abs() {
                if flat.last().is_some_and(|(t, f)| t == s && *f == -e.signum()) {
                    flat.pop();
                } else {
                    flat.push((s.clone(), e.signum()));
                }
            }
        }
        while flat.len() > 1 && flat[0].0 == flat[flat.len() - 1].0 && flat[0].1 == -flat[flat.len() - 1].1 {
            flat.pop();
            flat.remove(0);
        }
        for k in 0..flat.len() {
            let mut rotated = flat.clone();
            rotated.rotate_left(k);
            letters.push(rotated);
        }
    }
    letters.into_iter().min().unwrap_or_default()
}

fn parse_word(text: &str) -> Vec<(String, i64)> {
    text.split_whitespace()
        .map(|t| match t.split_once('^') {
            Some((s, e)) => (s.to_string(), e.parse().unwrap()),
            None => (t.to_string(), 1),
        })
        .collect()
}

#[test]
fn cohomology_of_z2_with_z3_coefficients() {
    let v = json(&["cohomology", "--group", "Z2", "--coeff", "Z3", "--variant", "full"]);
    assert_eq!(v["rank"], 0);
    assert_eq!(v["torsion"], serde_json::json!([3, 3]));
}

#[test]
fn kinked_unknot_has_nine_z3_colorings() {
    let v = json(&["color", "--group", "Z3", "--strands", "1", "--braid", "", "--framings", "3"]);
    assert_eq!(v["count"], 9);
}

#[test]
fn hopf_style_torus_link_hat_relators() {
    let v = json(&["fundheap", "--strands", "2", "--braid", "1 1 1 1", "--framings", "0", "0"]);
    let got: Vec<_> =
        v["hat"]["relator_text"].as_array().unwrap().iter().map(|r| canonical(&parse_word(r.as_str().unwrap()))).collect();
    for expected in ["a1^-2 a1 a2 a1 a2", "a2^-2 a1 a2 a1 a2"] {
        assert!(got.contains(&canonical(&parse_word(expected))), "missing {expected} in {got:?}");
    }
}

#[test]
fn homomorphism_check_reports_and_sets_exit_code() {
    let v = json(&["fundheap", "--strands", "2", "--braid", "1 1 1", "--map-to", "Z3 | a1=1; a2=1"]);
    assert_eq!(v["homomorphism"]["holds"], true);
    let bad = run(&["fundheap", "--strands", "2", "--braid", "1 1 1", "--map-to", "Z2 | a1=1; a2=0"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["color", "--group", "Q9", "--braid", ""]).status.code(), Some(2));
    assert_eq!(run(&["cohomology", "--group", "Z3", "--variant", "sideways"]).status.code(), Some(2));
}

#[test]
fn computation_errors_exit_with_one() {
    let out = Command::new(env!("CARGO_BIN_EXE_heapknot"))
        .args(["color", "--group", "D3", "--strands", "3", "--braid", "1 2 1 2"])
        .env("HEAPKNOT_STATE_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn output_does_not_depend_on_worker_count() {
    let args = ["invariant", "--group", "D3", "--cocycle", "psi:1", "--strands", "2", "--braid", "1 1 1 1 1 1"];
    let one = run(&[&args[..], &["--workers", "1"]].concat());
    let four = run(&[&args[..], &["--workers", "4"]].concat());
    assert!(one.status.success(), "{}", String::from_utf8_lossy(&one.stderr));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn reproduce_single_criterion_in_text() {
    let out = run(&["reproduce", "--criterion", "3", "--text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().all(|l| !l.starts_with("FAIL")));
    assert!(text.contains("PASS  c3"));
}
