use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use kq_core::gq::gq_pfaffian_1;
use kq_core::scalar::rat;
use kq_core::symfun::{q_series, PSeries, StrictPartition};
use kq_core::{Beta, BetaScalar};

fn kq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kq")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok_json(args: &[&str]) -> Value {
    let o = kq(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn series(v: &Value) -> PSeries {
    PSeries::from_json(&v["series"]).unwrap()
}

fn scalar(v: &Value) -> BetaScalar {
    BetaScalar::from_json(v).unwrap()
}

#[test]
fn gq_with_oracle_reports_agreement() {
    let v = ok_json(&["gq", "2", "1", "--degree", "6", "--routes", "pf1,oracle", "--out", "json"]);
    assert_eq!(v["report"], "routes agree: pf1, oracle");
    let want = gq_pfaffian_1(&StrictPartition::new(vec![2, 1]).unwrap(), 6, &Beta::symbolic()).unwrap();
    assert_eq!(series(&v), want);
}

#[test]
fn classical_limit_gives_q2() {
    let v = ok_json(&["gq", "--degree", "4", "--beta", "0", "2", "--out", "json"]);
    assert_eq!(series(&v), q_series(4)[2]);
    assert_eq!(v["beta"], "0");
}

#[test]
fn gp_one_is_p1() {
    let o = kq(&["gp", "1", "--degree", "3", "--out", "latex"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("gp_{(1)} = p_{1}"), "{}", stdout(&o));
}

#[test]
fn pairing_values() {
    let v = ok_json(&["pair", "--lam", "1", "--mu", "2", "--out", "json"]);
    assert_eq!(scalar(&v["o"]["value"]), BetaScalar::beta().scale(&rat(-1, 2)));
    assert_eq!(v["o"]["agree"], true);

    let v = ok_json(&["pair", "--lam", "3", "1", "--mu", "3", "1", "--out", "json"]);
    assert_eq!(scalar(&v["gp"]["value"]), BetaScalar::one());

    let v = ok_json(&["pair", "--lam", "2", "1", "--mu", "3", "--out", "json"]);
    assert!(scalar(&v["o"]["value"]).is_zero());
    assert_eq!(v["o"]["agree"], true);
}

#[test]
fn verify_all_passes() {
    let o = kq(&["verify", "all", "--degree", "6", "--max-weight", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn verify_fock_lists_two_point_value() {
    let o = kq(&["verify", "fock"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS  ⟨0|φ^β_-1 φ^β_0|0⟩ = -β"));
}

#[test]
fn corrupted_f_table_is_caught() {
    let o = kq(&["verify", "gq", "--degree", "3", "--corrupt-f-table"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("FAIL"));

    let o = kq(&["gq", "2", "1", "--degree", "3", "--corrupt-f-table"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("p(1,1,1)"));
}

#[test]
fn validation_errors_exit_2() {
    for args in [
        &["gq", "2", "2"][..],
        &["gq", "3", "--degree", "2"],
        &["gq", "1", "--routes", "pf3"],
        &["o", "1", "--routes", "oracle"],
        &["gq", "1", "--beta", "x"],
        &["gq", "1", "--degree", "4", "--vars", "3", "--routes", "oracle"],
        &["gp", "1", "--routes", "pf1"],
        &["verify", "gq", "--degree", "3", "--max-weight", "4"],
    ] {
        assert_eq!(kq(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn json_is_deterministic() {
    let args = ["o", "3", "1", "--degree", "5", "--out", "json"];
    let a = kq(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_kq")).args(args).env("KQ_THREADS", "1").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, kq(&args).stdout);
}

#[test]
fn specialization_commutes() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for cmd in [&["gq", "3", "1"][..], &["o", "3", "1"], &["gp", "2", "1"]] {
        let mut args: Vec<&str> = cmd.to_vec();
        args.extend(["--degree", "5", "--out", "json"]);
        let symbolic = series(&ok_json(&args));
        for _ in 0..2 {
            let q = rat(rng.gen_range(-9..=9), rng.gen_range(1..=5));
            let text = q.to_string();
            let mut sargs = args.clone();
            sargs.extend(["--beta", &text]);
            let direct = series(&ok_json(&sargs));
            assert_eq!(symbolic.specialize(&Beta::value(q)).unwrap(), direct, "{cmd:?} at β = {text}");
        }
    }
}
