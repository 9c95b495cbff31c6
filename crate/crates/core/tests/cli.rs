//! The `charp` command line, in process and through the built binary.

use std::process::Command;

use charp::cli::{format_elem, parse_expr, run_args, TowerSpec};
use charp::random::{random_elem, random_tower};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data");

fn charp(args: &[&str]) -> charp::cli::Outcome {
    run_args(std::iter::once("charp").chain(args.iter().copied()))
}

fn data(name: &str) -> String {
    format!("{DATA}/{name}")
}

#[test]
fn intro_antiderivative() {
    let out = charp(&["integrate", "--tower", &data("intro3.json"), "--expr", "E"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "(2*X^2+1)/X^3*E\n"));
    let t = TowerSpec::from_inline("p=3; X:base; E:hyperexp(2*X)").unwrap().build().unwrap();
    let printed = parse_expr(out.stdout.trim(), &t).unwrap();
    assert_eq!(printed, parse_expr("(1-X^2)/X^3*E", &t).unwrap());
}

#[test]
fn intro_verification() {
    let out = charp(&["verify", "--tower", &data("intro3.json"), "--d", "(1-X^2)/X^3*E", "--equals", "E"]);
    assert_eq!(out.code, 0);
    let out = charp(&["verify", "--tower", &data("intro3.json"), "--d", "E", "--equals", "E"]);
    assert_eq!(out.code, 5);
}

#[test]
fn airy_sixth_derivative() {
    let out = charp(&["derive", "--tower", &data("airy3.json"), "--expr", "Y", "--order", "6"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "(X^3+1)*Y\n"));
}

#[test]
fn p5_antiderivative_reparses() {
    let out = charp(&["integrate", "--tower", &data("intro5.json"), "--expr", "E"]);
    assert_eq!(out.code, 0);
    let t = TowerSpec::from_inline("p=5; X:base; E:hyperexp(2*X)").unwrap().build().unwrap();
    let want = parse_expr("(X^4-2*X^2+2)/(2*X^5)*E", &t).unwrap();
    assert_eq!(parse_expr(out.stdout.trim(), &t).unwrap(), want);
}

#[test]
fn json_outputs_reparse() {
    let out = charp(&["integrate", "--inline", "p=3; X:base", "--expr", "X^2", "--format", "json"]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["verified"], true);
    assert_eq!(v["new_generators"][0]["name"], "zeta1");
    let spec: TowerSpec = serde_json::from_value(v["tower"].clone()).unwrap();
    let t = spec.build().unwrap();
    let value = parse_expr(v["value"].as_str().unwrap(), &t).unwrap();
    assert_eq!(t.derive(&value), parse_expr("X^2", &t).unwrap());

    let out = charp(&["solve", "--inline", "p=3; X:base", "--op", "D^2+1", "--format", "json"]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let sol = &v["solutions"][0];
    assert_eq!(sol["alpha"], "formal");
    assert_eq!(sol["modulus"], "alpha1^2+1");
    assert_eq!(v["construction"]["R"], "T^2+1");
    let t = serde_json::from_value::<TowerSpec>(sol["tower"].clone()).unwrap().build().unwrap();
    assert!(parse_expr(sol["value"].as_str().unwrap(), &t).is_ok());
}

#[test]
fn exit_codes() {
    let intro = data("intro3.json");
    let code = |args: &[&str]| charp(args).code;
    assert_eq!(code(&["derive", "--inline", "p=3; X:base", "--expr", "2X"]), 2);
    assert_eq!(code(&["derive", "--inline", "p=3; X:base", "--expr", "Z"]), 2);
    assert_eq!(code(&["derive", "--inline", "p=4; X:base", "--expr", "X"]), 2);
    assert_eq!(code(&["derive", "--expr", "X"]), 2);
    assert_eq!(code(&["derive", "--tower", "/nonexistent.json", "--expr", "X"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["annihilate", "--tower", &intro, "--expr", "E", "--pure", "--jmax", "1"]), 3);
    assert_eq!(code(&["solve", "--inline", "p=3; X:base", "--op", "D^2-X"]), 4);
    assert_eq!(code(&["solve", "--inline", "p=7; X:base", "--op", "D^7-D-1", "--roots", "ff"]), 4);
    assert_eq!(code(&["solve", "--inline", "p=3; X:base", "--op", "D^2-X", "--experimental"]), 0);
    assert_eq!(code(&["integrate", "--inline", "p=3; E:hyperexp(1)", "--expr", "1"]), 4);
    assert_eq!(code(&["verify", "--tower", &intro, "--d", "X", "--equals", "2"]), 5);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn syntax_errors_name_a_position() {
    let out = charp(&["derive", "--inline", "p=3; X:base", "--expr", "X + * 2"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("byte 4"), "{}", out.stderr);
}

#[test]
fn binary_matches_library() {
    let out = Command::new(env!("CARGO_BIN_EXE_charp"))
        .args(["integrate", "--tower", &data("intro3.json"), "--expr", "E"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "(2*X^2+1)/X^3*E\n");
    let out = Command::new(env!("CARGO_BIN_EXE_charp"))
        .args(["annihilate", "--tower", &data("intro3.json"), "--expr", "E", "--pure"])
        .env("CHARP_JMAX", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn format_then_parse_is_identity(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = [2u32, 3, 5, 7][rng.gen_range(0..4)];
        let extra = rng.gen_range(0..3);
        let t = random_tower(&mut rng, p, extra);
        let e = random_elem(&mut rng, &t, 3);
        let text = format_elem(&e, &t);
        prop_assert_eq!(parse_expr(&text, &t).unwrap(), e);
        let spec = TowerSpec::of(&t);
        let rebuilt = TowerSpec::from_inline(&spec.to_inline()).unwrap().build().unwrap();
        prop_assert_eq!(TowerSpec::of(&rebuilt), spec);
    }

    #[test]
    fn malformed_input_exits_cleanly(
        src in proptest::collection::vec(
            prop::sample::select(vec!["X", "E", "1", "2", "+", "-", "*", "/", "^", "(", ")", " ", "$", "Z"]),
            0..12,
        )
    ) {
        let src = src.concat();
        let out = charp(&["derive", "--tower", &data("intro3.json"), "--expr", &src]);
        prop_assert!(out.code == 0 || out.code == 2, "{src}: {out:?}");
        if out.code == 2 {
            prop_assert!(out.stderr.contains("byte"), "{}", out.stderr);
        }
    }
}
