use gauss_cli::{run, Outcome};
use gauss_core::{BinaryForm, ClassGroup, Discriminant, Variant};
use serde_json::{json, Value};
use std::process::Command;

fn gauss(args: &str) -> Outcome {
    run(std::iter::once("gauss").chain(args.split_whitespace())).expect("not a help request")
}

fn form_of(v: &Value) -> BinaryForm {
    let c: Vec<i64> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_i64().unwrap())
        .collect();
    BinaryForm::new(c[0], c[1], c[2])
}

#[test]
fn documented_examples() {
    let out = gauss("classgroup -23");
    assert_eq!(out.code, 0);
    assert_eq!(out.output["h"], json!(3));
    assert_eq!(out.output["structure"], json!([3]));
    assert_eq!(
        out.output["reps"],
        json!([[1, 1, 6], [2, 1, 3], [2, -1, 3]])
    );

    assert_eq!(
        gauss("reduce 1 2 2").output,
        json!({"form": [1, 0, 1], "map": [1, -1, 0, 1]})
    );
    assert_eq!(
        gauss("compose 2 1 3 2 1 3").output,
        json!({"form": [2, -1, 3]})
    );
    assert_eq!(
        gauss("compose 2 1 3 2 1 3 --oracle").output,
        json!({"form": [2, -1, 3]})
    );
}

#[test]
fn compose_with_and_without_oracle_agree() {
    for d in [-4i64, -23, -47, -71, -163, -231, 12, 40, 229] {
        let g = ClassGroup::new(&Discriminant::new(d).unwrap(), Variant::Narrow).unwrap();
        for f in &g.reps {
            for h in &g.reps {
                let args = format!("{} {} {} {} {} {}", f.a, f.b, f.c, h.a, h.b, h.c);
                let x = gauss(&format!("compose {args}"));
                let y = gauss(&format!("compose {args} --oracle"));
                assert_eq!((x.code, y.code), (0, 0));
                let (x, y) = (form_of(&x.output["form"]), form_of(&y.output["form"]));
                assert!(x.proper_equivalent(&y).unwrap(), "D = {d}: {f} * {h}");
            }
        }
    }
}

#[test]
fn output_is_byte_stable() {
    for args in [
        "classgroup 229 --narrow",
        "hecke -47 60",
        "clifford 5 3 7",
        "verify-universal",
    ] {
        let a = serde_json::to_string(&gauss(args).output).unwrap();
        let b = serde_json::to_string(&gauss(args).output).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn other_verbs() {
    assert_eq!(
        gauss("equiv 1 1 6 -1 -1 -6 --wide").output["equivalent"],
        json!(true)
    );
    assert_eq!(
        gauss("equiv 1 1 6 -1 -1 -6 --narrow").output["equivalent"],
        json!(false)
    );
    assert_eq!(
        gauss("equiv 2 1 3 6 5 2").output["equivalent"],
        json!(false)
    );
    assert_eq!(
        gauss("equiv 2 -1 3 6 5 2").output["equivalent"],
        json!(true)
    );
    assert_eq!(gauss("norm 1 6 1 -3 2").output["form"], json!([2, -1, 3]));
    let c = gauss("clifford 1 1 6").output;
    assert_eq!(c["ring"], json!([1, 6]));
    assert_eq!(c["disc"], json!(-23));
    assert_eq!(c["orientation"], json!(1));
    let n = gauss("classgroup 12 --narrow").output;
    assert_eq!(
        (n["h"].clone(), n["variant"].clone()),
        (json!(2), json!("narrow"))
    );
    assert_eq!(gauss("classgroup 12").output["h"], json!(1));

    let h = gauss("hecke -23 2").output;
    assert_eq!(h["primes"][0]["p"], json!(2));
    assert_eq!(h["primes"][0]["form"], json!([2, 1, 3]));
    let mut eig: Vec<Value> = h["primes"][0]["eigenvalues"].as_array().unwrap().clone();
    eig.sort_by_key(|v| v[0].as_u64());
    assert_eq!(eig, vec![json!([0, 3]), json!([1, 3]), json!([2, 3])]);

    let v = gauss("verify-universal").output;
    for id in v["identities"].as_array().unwrap() {
        assert!(id["differences"]
            .as_array()
            .unwrap()
            .iter()
            .all(|d| d == "0"));
    }
}

#[test]
fn large_integers_are_strings() {
    let out = gauss("clifford 3000000000 1 -5000000000").output;
    assert_eq!(out["ring"], json!([1, "-15000000000000000000"]));
    assert_eq!(out["disc"], json!("60000000000000000001"));
}

#[test]
fn user_errors_exit_2() {
    for (args, kind) in [
        ("reduce 1 2 1", "degenerate_form"),
        ("reduce -1 0 -1", "negative_definite"),
        ("classgroup -5", "invalid_discriminant"),
        ("classgroup 16", "invalid_discriminant"),
        ("compose 1 1 6 1 0 1", "discriminant_mismatch"),
        ("compose 2 2 4 1 0 7", "imprimitive_form"),
        ("norm 0 1 1 -1 1", "not_good_frame"),
        ("hecke 12 10", "unsupported"),
        ("reduce x 1 2", "usage"),
        ("compose 1 1 6", "usage"),
        ("frobnicate", "usage"),
    ] {
        let out = gauss(args);
        assert_eq!(out.code, 2, "{args}");
        assert_eq!(out.output["error"], json!(kind), "{args}: {}", out.output);
        assert!(out.output["detail"].is_string());
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_gauss");
    let ok = Command::new(bin)
        .args(["compose", "2", "1", "3", "2", "1", "3"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(ok.stdout).unwrap(),
        "{\"form\":[2,-1,3]}\n"
    );
    let bad = Command::new(bin)
        .args(["classgroup", "-5"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&bad.stdout).unwrap();
    assert_eq!(v["error"], json!("invalid_discriminant"));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
}
