use std::process::{Command, Output};

use cyclokron_cli::run;
use serde_json::Value;

fn bin(args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cyclokron"));
    cmd.args(args).env_remove("CYCLOKRON_SEED");
    cmd
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn run_args(args: &str) -> cyclokron_cli::Outcome {
    run(std::iter::once("cyclokron").chain(args.split_whitespace()))
}

#[test]
fn det_prints_the_integer() {
    let out = bin(&["det", "--vector", "1,2,3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "18\n");
}

#[test]
fn every_algorithm_gives_the_same_answer() {
    for alg in ["leibniz", "bareiss", "multimodular"] {
        let o = run_args(&format!("det --vector 5,-3,2,7 --algorithm {alg}"));
        assert_eq!((o.code, o.stdout.as_str()), (0, "3597\n"), "{alg}");
    }
}

#[test]
fn negative_leading_entry_is_not_a_flag() {
    let o = run_args("det --vector -3,2");
    assert_eq!((o.code, o.stdout.as_str()), (0, "5\n"));
}

#[test]
fn modulus_reduces() {
    // det(1,2) = -3 ≡ 4 (mod 7)
    assert_eq!(run_args("det --vector 1,2 --modulus 7").stdout, "4\n");
    assert_eq!(run_args("det --vector 1,2 --modulus 1").code, 2);
}

#[test]
fn claim_verify_reports_census() {
    let o = run_args("claim verify -p 5");
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("5 fixed, 23 orbits"), "{}", o.stdout);
    assert!(o.stdout.contains("CLAIM HOLDS"));
}

#[test]
fn claim_expand_format() {
    assert_eq!(
        run_args("claim expand -p 3").stdout,
        "+1·a0^3 +1·a1^3 +1·a2^3 -3·a0·a1·a2\n"
    );
    assert_eq!(run_args("claim expand -p 2").stdout, "+1·a0^2 -1·a1^2\n");
    assert_eq!(run_args("claim expand -p 11").code, 2);
}

#[test]
fn usage_errors_are_one_line_exit_two() {
    for args in [
        "det --vector 1,2 --modulu 7",
        "det --vector 1,two",
        "det-congruence --vector 1,2 -p 3",
        "phi -p 8",
        "perm sign --perm 0,3",
        "relation --rationals 1/2,x -p 2",
        "factor --poly 0",
        "factor --poly 1,1,1,1,1,1,1,1,1,1",
        "zeta-identity --vector 1,1 -p 3",
        "det --vector 1,1,1,1,1,1,1,1,1,1 --algorithm leibniz",
        "nonsense",
    ] {
        let o = run_args(args);
        assert_eq!(o.code, 2, "{args}");
        assert_eq!(o.stderr.lines().count(), 1, "{args}: {:?}", o.stderr);
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(run_args("--help").code, 0);
    assert_eq!(run_args("--version").code, 0);
}

#[test]
fn perm_sign_outputs() {
    assert_eq!(
        run_args("perm sign --perm 0,2,1").stdout,
        "-1 (1 inversions)\n"
    );
    assert_eq!(
        run_args("perm sign --perm 1,2,0").stdout,
        "+1 (2 inversions)\n"
    );
}

#[test]
fn relation_not_constant() {
    let o = run_args("relation --rationals 1,1,0 -p 3 --json");
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["is_relation"], false);
    assert_eq!(v["theorem_consistent"], true);
    assert_eq!(v["rationals"], serde_json::json!(["1", "1", "0"]));
}

#[test]
fn json_bigints_are_strings() {
    let o = run_args("det --vector 1000000000000,1 --json");
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["determinant"], "999999999999999999999999");
    assert_eq!(v["algorithm"], "bareiss");
    assert_eq!(v["holds"], true);
}

#[test]
fn factor_json() {
    let o = run_args("factor --poly -1,0,1 --json");
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["factors"][0]["display"], "-1 + t");
    assert_eq!(v["factors"][1]["display"], "1 + t");
    assert_eq!(v["irreducible"], false);
}

fn seed_of(out: &Output) -> Value {
    let v: Value = serde_json::from_str(&stdout(out)).unwrap();
    v["seed"].clone()
}

#[test]
fn seed_defaults_then_env_then_flag() {
    let out = bin(&["irreducible", "-p", "3", "--json"]).output().unwrap();
    assert_eq!(seed_of(&out), 1729);

    let out = bin(&["irreducible", "-p", "3", "--json"])
        .env("CYCLOKRON_SEED", "42")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(seed_of(&out), 42);

    let out = bin(&["irreducible", "-p", "3", "--json", "--seed", "7"])
        .env("CYCLOKRON_SEED", "42")
        .output()
        .unwrap();
    assert_eq!(seed_of(&out), 7);

    let out = bin(&["irreducible", "-p", "3"])
        .env("CYCLOKRON_SEED", "abc")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
