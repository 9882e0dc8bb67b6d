use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mahlerkit::{Poly, RatFunc, Rational};
use mahlerkit_cli::parse_ratfunc_expr;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn mahlerkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mahlerkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_corpus(mode: &str, file: &str, extra: &[&str]) -> (i32, Value) {
    let path = corpus().join(file);
    let mut args = vec![mode, path.to_str().unwrap(), "--deterministic"];
    args.extend_from_slice(extra);
    let out = mahlerkit(&args);
    let doc = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (out.status.code().expect("exit code"), doc)
}

fn mode_of(file: &str) -> String {
    let text = std::fs::read_to_string(corpus().join(file)).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    v["mode"].as_str().unwrap().to_string()
}

#[test]
fn corpus_exit_codes() {
    let text = std::fs::read_to_string(corpus().join("expected.json")).unwrap();
    let expected: BTreeMap<String, i32> = serde_json::from_str(&text).unwrap();
    let on_disk = std::fs::read_dir(corpus())
        .unwrap()
        .filter_map(|e| e.ok()?.file_name().into_string().ok())
        .filter(|n| n.ends_with(".json") && n != "expected.json")
        .count();
    assert_eq!(
        on_disk,
        expected.len(),
        "every corpus file has an expected code"
    );
    for (file, code) in &expected {
        let (got, doc) = run_corpus(&mode_of(file), file, &[]);
        assert_eq!(got, *code, "{file}: {doc}");
        assert_eq!(doc["exit_code"], *code);
        assert_eq!(doc["schema"], "1");
    }
}

#[test]
fn thue_morse_prefix() {
    let (code, doc) = run_corpus("solve", "thue_morse_solve.json", &[]);
    assert_eq!(code, 0);
    let got = &doc["result"]["solutions"][0]["series"]["coefficients"];
    assert_eq!(
        *got,
        serde_json::json!(["1", "-1", "-1", "1", "-1", "1", "1", "-1"])
    );
}

#[test]
fn certificate_and_refusals() {
    let (code, doc) = run_corpus("certify", "pair_2_3.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["value"]["text"], "1/(1 - x)");
    assert_eq!(doc["result"]["verified"], serde_json::json!([true, true]));
    assert!(doc["result"]["prefix_matched"].as_i64().unwrap() >= 64);

    let (code, doc) = run_corpus("certify", "pair_3_5.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["value"]["text"], "(2 - x)/(1 + x^2)");

    let (code, doc) = run_corpus("certify", "thue_morse_q4.json", &[]);
    assert_eq!(code, 3);
    assert_eq!(doc["failure"]["reason"], "hypothesis_violated");
    let (code, doc) = run_corpus("certify", "thue_morse_q3.json", &[]);
    assert_eq!(code, 3);
    assert_eq!(doc["failure"]["reason"], "seed_inconsistent");
}

/// `b_n = 1` when every maximal block of zeros in the binary expansion of
/// `n` has even length, with `b_0 = 1`.
fn baum_sweet(n: u64) -> i64 {
    let mut n = n;
    while n > 0 {
        if n & 1 == 1 {
            n >>= 1;
            continue;
        }
        let mut run = 0;
        while n > 0 && n & 1 == 0 {
            run += 1;
            n >>= 1;
        }
        if run % 2 == 1 {
            return 0;
        }
    }
    1
}

#[test]
fn baum_sweet_equation_matches_the_definition() {
    let (code, doc) = run_corpus("solve", "baum_sweet.json", &["--terms", "500"]);
    assert_eq!(code, 0, "{doc}");
    let coeffs = doc["result"]["solutions"][0]["series"]["coefficients"]
        .as_array()
        .unwrap()
        .clone();
    assert_eq!(coeffs.len(), 500);
    for (n, c) in coeffs.iter().enumerate() {
        assert_eq!(
            c.as_str().unwrap(),
            baum_sweet(n as u64).to_string(),
            "index {n}"
        );
    }
}

#[test]
fn deterministic_output_is_byte_identical() {
    let files: Vec<String> = [
        "pair_2_3.json",
        "thue_morse_q4.json",
        "pair_2_5.json",
        "pair_3_5.json",
    ]
    .iter()
    .map(|f| corpus().join(f).to_str().unwrap().to_string())
    .collect();
    let mut args = vec!["certify", "--deterministic", "--jobs", "4"];
    args.extend(files.iter().map(String::as_str));
    let a = mahlerkit(&args);
    let b = mahlerkit(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(3), "the largest exit code wins");
    let docs: Vec<Value> = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(docs.len(), 4);
    assert_eq!(docs[1]["failure"]["reason"], "hypothesis_violated");

    // same documents sequentially, and for a single file
    args[3] = "1";
    assert_eq!(mahlerkit(&args).stdout, a.stdout);
    let single = mahlerkit(&["certify", &files[0], "--deterministic"]);
    assert_eq!(
        serde_json::from_slice::<Value>(&single.stdout).unwrap(),
        docs[0]
    );

    let stamped = mahlerkit(&["certify", &files[0]]);
    let v: Value = serde_json::from_slice(&stamped.stdout).unwrap();
    assert!(v["timestamp"].is_u64());
    assert!(docs[0].get("timestamp").is_none());
}

#[test]
fn caps_flags_override_the_file() {
    let (code, doc) = run_corpus("certify", "pair_3_5.json", &["--max-degree", "1"]);
    assert_eq!(code, 2);
    assert_eq!(doc["failure"]["reason"], "caps_exhausted");
    let (code, doc) = run_corpus("solve", "thue_morse_solve.json", &["--terms", "3"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["terms"], 3);
}

#[test]
fn usage_and_io_errors_are_input_errors() {
    assert_eq!(mahlerkit(&["certify"]).status.code(), Some(4));
    assert_eq!(mahlerkit(&["prove", "x.json"]).status.code(), Some(4));
    let pair = corpus().join("pair_2_3.json");
    let pair = pair.to_str().unwrap();
    assert_eq!(
        mahlerkit(&["certify", pair, "--terms", "-3"]).status.code(),
        Some(4)
    );
    let missing = mahlerkit(&["certify", "/nonexistent/problem.json", "--deterministic"]);
    assert_eq!(missing.status.code(), Some(4));
    let doc: Value = serde_json::from_slice(&missing.stdout).unwrap();
    assert_eq!(doc["status"], "input_error");
    // the file says certify
    assert_eq!(mahlerkit(&["solve", pair]).status.code(), Some(4));
    assert_eq!(mahlerkit(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_flag_writes_the_document() {
    let path = std::env::temp_dir().join(format!("mahlerkit-cli-test-{}.json", std::process::id()));
    let pair = corpus().join("pair_2_3.json");
    let out = mahlerkit(&[
        "certify",
        pair.to_str().unwrap(),
        "--deterministic",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(doc["result"]["value"]["text"], "1/(1 - x)");
}

fn random_poly(rng: &mut ChaCha8Rng, deg: usize) -> Poly {
    Poly::new(
        (0..=deg)
            .map(|_| {
                Rational::new(
                    rng.gen_range(-9i64..=9).into(),
                    rng.gen_range(1i64..=4).into(),
                )
            })
            .collect(),
    )
}

#[test]
fn print_parse_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let (dn, dd) = (rng.gen_range(0..=6), rng.gen_range(0..=6));
        let num = random_poly(&mut rng, dn);
        let mut den = random_poly(&mut rng, dd);
        if den.is_zero() {
            den = Poly::one();
        }
        let shift = rng.gen_range(0..3);
        let r = RatFunc::new(num, den.shift(shift)).unwrap();
        let text = r.to_string();
        let back = parse_ratfunc_expr(&text).unwrap_or_else(|e| panic!("{text}: {e}"));
        assert_eq!(back, r, "{text}");
        assert_eq!(back.to_string(), text);
    }
}
