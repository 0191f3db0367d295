use std::process::{Command, Output};

use dgla::artin::parse_ring;
use dgla::dgla::fixtures::fixture;
use dgla::gauge::exp_action;
use dgla::mc::{
    element_from_json, element_to_json, mc_check, sample_element, sample_mc, TensorDgla,
};
use dgla::rng::Lcg;
use dgla::workbench::{Outcome, RunReport};
use serde_json::{json, Value};

const BROKEN: &str = concat!(
    env!("CARGO_MANIFEST_DIR"),
    "/../../docs/examples/qobs-broken-jacobi.json"
);

fn dgla(args: &[&str]) -> Output {
    dgla_env(args, &[])
}

fn dgla_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_dgla"));
    c.args(args)
        .env_remove("DGLA_POLY_ORDER")
        .env_remove("DGLA_SEARCH_BUDGET");
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("binary runs")
}

fn report(o: &Output) -> RunReport {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!(
            "{e}: {}{}",
            String::from_utf8_lossy(&o.stdout),
            String::from_utf8_lossy(&o.stderr)
        )
    })
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn validate_builtin_passes() {
    let o = dgla(&["validate", "--dgla", "builtin:CPLX2"]);
    assert_eq!(code(&o), 0);
    let r = report(&o);
    assert_eq!(r.outcome, Outcome::Pass);
    assert_eq!(r.payload["violations"], json!([]));
}

#[test]
fn quadratic_kuranishi_polynomial() {
    let o = dgla(&[
        "kuranishi",
        "poly",
        "--dgla",
        "builtin:QOBS",
        "--order",
        "4",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o).payload, json!({"q1": {"[2]": 1}}));
    // order from the environment when --order is absent
    let o = dgla_env(
        &["kuranishi", "poly", "--dgla", "builtin:QOBS"],
        &[("DGLA_POLY_ORDER", "3")],
    );
    assert_eq!(report(&o).payload, json!({"q1": {"[2]": 1}}));
    let o = dgla_env(
        &["kuranishi", "poly", "--dgla", "builtin:QOBS"],
        &[("DGLA_POLY_ORDER", "0")],
    );
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("DGLA_POLY_ORDER"));
}

#[test]
fn equivalence_verdicts_and_exit_codes() {
    let o = dgla(&[
        "gauge",
        "equiv",
        "--dgla",
        "builtin:QOBS",
        "--ring",
        "t^3",
        "--x",
        r#"{"coeffs":[[0,1]]}"#,
        "--y",
        "0",
    ]);
    assert_eq!(code(&o), 0);
    let r = report(&o);
    assert_eq!(r.verdict.as_deref(), Some("NotEquivalent"));
    assert_eq!(r.payload["complete"], json!(true));
    assert_eq!(r.payload["certificate"]["class"], json!([[1]]));

    let o = dgla(&[
        "gauge",
        "equiv",
        "--dgla",
        "builtin:D2",
        "--ring",
        "eps",
        "--x",
        r#"{"coeffs":[[1]]}"#,
    ]);
    assert_eq!(code(&o), 0);
    let r = report(&o);
    assert_eq!(r.verdict.as_deref(), Some("Equivalent"));
    let t = TensorDgla::new(&fixture("D2").unwrap(), &parse_ring("eps").unwrap()).unwrap();
    let g = element_from_json(&t, &r.payload["witness"].to_string()).unwrap();
    let x = element_from_json(&t, r#"{"coeffs":[[1]]}"#).unwrap();
    assert!(exp_action(&t, &g, &x).unwrap().is_zero());
}

#[test]
fn exhausted_search_exits_with_unknown() {
    let l = fixture("HW2").unwrap();
    let t = TensorDgla::new(&l, &parse_ring("t^3").unwrap()).unwrap();
    let mut rng = Lcg::new(9);
    let mut unknown = 0;
    for _ in 0..6 {
        let x = sample_mc(&l, t.ring(), &mut rng).unwrap();
        let g = sample_element(&t, 0, &mut rng);
        let y = exp_action(&t, &g, &x).unwrap();
        let (xs, ys) = (
            element_to_json(&t, &x).to_string(),
            element_to_json(&t, &y).to_string(),
        );
        let args = [
            "gauge",
            "equiv",
            "--dgla",
            "builtin:HW2",
            "--ring",
            "t^3",
            "--x",
            &xs,
            "--y",
            &ys,
        ];
        let o = dgla_env(&args, &[("DGLA_SEARCH_BUDGET", "1")]);
        let r = report(&o);
        match r.outcome {
            Outcome::Unknown => {
                assert_eq!(code(&o), 2);
                unknown += 1;
                // a real budget settles it
                let full = report(&dgla(&args));
                assert_eq!(full.verdict.as_deref(), Some("Equivalent"));
            }
            _ => {
                assert_eq!(code(&o), 0);
                assert_eq!(r.verdict.as_deref(), Some("Equivalent"));
            }
        }
    }
    assert!(unknown > 0);
}

#[test]
fn broken_jacobi_fails_in_validate() {
    let o = dgla(&["validate", "--dgla", BROKEN]);
    assert_eq!(code(&o), 1);
    let r = report(&o);
    assert_eq!(r.outcome, Outcome::Fail);
    assert_eq!(
        r.payload["violations"],
        json!([{"identity": "jacobi", "tuple": ["e", "e", "e"]}])
    );

    let o = dgla(&["suite", "--fixtures", "QOBS", "--dgla", BROKEN]);
    assert_eq!(code(&o), 1);
    let r = report(&o);
    let failed: Vec<&Value> = r.payload["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == json!(false))
        .collect();
    assert_eq!(failed.len(), 1);
    assert!(failed[0]["name"].as_str().unwrap().ends_with("/validate"));
    assert!(failed[0]["detail"]
        .as_str()
        .unwrap()
        .contains("jacobi(e, e, e)"));
    // nothing else ran for the broken algebra
    let broken = r.payload["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["name"].as_str().unwrap().contains("broken"))
        .count();
    assert_eq!(broken, 1);
}

#[test]
fn suite_is_deterministic_across_seeds() {
    let verdicts = |seed: &str| -> Vec<(String, bool)> {
        let o = dgla(&[
            "suite",
            "--seed",
            seed,
            "--fixtures",
            "QOBS,D2,CPLX2_d",
            "--samples",
            "3",
        ]);
        assert_eq!(code(&o), 0);
        report(&o).payload["checks"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| {
                (
                    c["name"].as_str().unwrap().to_string(),
                    c["passed"].as_bool().unwrap(),
                )
            })
            .collect()
    };
    let one = verdicts("1");
    assert!(one.iter().all(|(_, p)| *p));
    assert_eq!(one, verdicts("2"));
    let mut sorted = one.clone();
    sorted.sort();
    assert_eq!(one, sorted);
}

#[test]
fn output_is_byte_identical() {
    for args in [
        &["suite", "--fixtures", "QOBS,HW2", "--samples", "2"][..],
        &[
            "mc",
            "sample",
            "--dgla",
            "builtin:CPLX2",
            "--ring",
            "x^2,xy,y^2",
            "--count",
            "3",
            "--seed",
            "4",
        ],
        &["cohomology", "--dgla", "builtin:POLY", "--format", "text"],
    ] {
        let a = dgla(args);
        let b = dgla(args);
        assert_eq!(a.stdout, b.stdout);
        assert!(!a.stdout.is_empty());
    }
    let a = report(&dgla(&[
        "mc",
        "sample",
        "--dgla",
        "builtin:QOBS",
        "--ring",
        "t^3",
        "--seed",
        "1",
    ]));
    let b = report(&dgla(&[
        "mc",
        "sample",
        "--dgla",
        "builtin:QOBS",
        "--ring",
        "t^3",
        "--seed",
        "2",
    ]));
    assert_ne!(a.inputs_digest, b.inputs_digest);
    assert!(a.timing_ms.is_none());
    assert!(
        report(&dgla(&["validate", "--dgla", "builtin:D2", "--timing"]))
            .timing_ms
            .is_some()
    );
}

#[test]
fn emitted_elements_reparse() {
    let t = TensorDgla::new(&fixture("CPLX2").unwrap(), &parse_ring("t^3").unwrap()).unwrap();
    let r = report(&dgla(&[
        "mc",
        "sample",
        "--dgla",
        "builtin:CPLX2",
        "--ring",
        "t^3",
        "--count",
        "4",
    ]));
    for s in r.payload["samples"].as_array().unwrap() {
        let x = element_from_json(&t, &s.to_string()).unwrap();
        assert!(mc_check(&t, &x).unwrap());
        assert_eq!(&element_to_json(&t, &x), s);
        // and back through the CLI
        let xs = s.to_string();
        let c = report(&dgla(&[
            "mc",
            "check",
            "--dgla",
            "builtin:CPLX2",
            "--ring",
            "t^3",
            "--x",
            &xs,
        ]));
        assert_eq!(c.verdict.as_deref(), Some("mc"));
    }
}

#[test]
fn gauge_path_round_trip() {
    let g = r#"{"degree":0,"coeffs":[[1,2]]}"#;
    let r = report(&dgla(&[
        "homotopy",
        "from-gauge",
        "--dgla",
        "builtin:D2",
        "--ring",
        "t^3",
        "--g",
        g,
    ]));
    let path = r.payload["path"].to_string();
    let c = report(&dgla(&[
        "homotopy",
        "check",
        "--dgla",
        "builtin:D2",
        "--ring",
        "t^3",
        "--path",
        &path,
    ]));
    assert_eq!(c.verdict.as_deref(), Some("mc"));
    assert_eq!(c.payload["end"], r.payload["y"]);
    let back = report(&dgla(&[
        "homotopy",
        "to-gauge",
        "--dgla",
        "builtin:D2",
        "--ring",
        "t^3",
        "--path",
        &path,
    ]));
    assert_eq!(back.payload["y"], r.payload["y"]);
    assert_eq!(
        back.payload["witness"],
        json!({"degree": 0, "coeffs": [[1, 2]]})
    );
}

#[test]
fn lifting_commands() {
    let o = report(&dgla(&[
        "mc",
        "lift",
        "--dgla",
        "builtin:QOBS",
        "--ring",
        "t^3",
        "--x",
        r#"{"coeffs":[[1]]}"#,
    ]));
    assert_eq!(o.verdict.as_deref(), Some("obstructed"));
    assert_eq!(o.payload["class"], json!([["1/2"]]));
    assert!(o.payload.get("lift").is_none());
    let o = report(&dgla(&[
        "mc",
        "lift",
        "--dgla",
        "builtin:CPLX2",
        "--ring",
        "t^3",
        "--x",
        r#"{"coeffs":[[0],[1],[1],[0]]}"#,
    ]));
    assert_eq!(o.verdict.as_deref(), Some("unobstructed"));
    assert_eq!(
        o.payload["lift"]["coeffs"],
        json!([[0, 0], [1, -1], [1, 0], [0, 0]])
    );
    let path = r#"{"a":{"degree":1,"coeff_by_t_power":{"1":[[-1]]}},"b":{"degree":0,"coeff_by_t_power":{"0":[[-1]]}}}"#;
    let o = report(&dgla(&[
        "homotopy",
        "lift",
        "--dgla",
        "builtin:D2",
        "--ring",
        "t^3",
        "--path",
        path,
    ]));
    assert_eq!(o.verdict.as_deref(), Some("lifted"));
}

#[test]
fn morphism_reports() {
    let r = report(&dgla(&[
        "gauge",
        "report",
        "--dgla",
        "builtin:HW2",
        "--morphism",
        "truncation",
    ]));
    assert_eq!(r.verdict.as_deref(), Some("étale"));
    let r = report(&dgla(&[
        "gauge",
        "report",
        "--dgla",
        "builtin:QOBS",
        "--morphism",
        "truncation",
    ]));
    assert_eq!(r.verdict.as_deref(), Some("isomorphism"));
    let r = report(&dgla(&[
        "gauge",
        "report",
        "--dgla",
        "builtin:QOBS",
        "--morphism",
        "zero",
    ]));
    assert_eq!(r.verdict.as_deref(), Some("inconclusive"));
    let f = r#"{"target":"builtin:QOBS","blocks":{"1":[[2]],"2":[[4]]}}"#;
    let r = report(&dgla(&[
        "gauge",
        "report",
        "--dgla",
        "builtin:QOBS",
        "--morphism",
        f,
    ]));
    assert_eq!(r.verdict.as_deref(), Some("isomorphism"));
    // not a bracket morphism
    let f = r#"{"blocks":{"1":[[2]],"2":[[2]]}}"#;
    assert_eq!(
        code(&dgla(&[
            "gauge",
            "report",
            "--dgla",
            "builtin:QOBS",
            "--morphism",
            f
        ])),
        1
    );
}

#[test]
fn input_errors_name_the_field() {
    let o = dgla(&[
        "mc",
        "check",
        "--dgla",
        "builtin:QOBS",
        "--ring",
        "t^3",
        "--x",
        r#"{"coeffs":[[1,2,3]]}"#,
    ]);
    assert_eq!(code(&o), 1);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("--x") && err.contains("coeffs[0]"), "{err}");
    let o = dgla(&[
        "mc",
        "check",
        "--dgla",
        "builtin:QOBS",
        "--x",
        "{\n\"coeffs\": [[1]],\n\"bogus\": 1}",
    ]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert_eq!(code(&dgla(&["validate", "--dgla", "builtin:NOPE"])), 1);
    assert_eq!(code(&dgla(&["validate"])), 1);
    assert_eq!(code(&dgla(&["frobnicate"])), 1);
    assert_eq!(code(&dgla(&["--help"])), 0);
}

#[test]
fn text_reports() {
    let o = dgla(&["validate", "--dgla", "builtin:QOBS", "--format", "text"]);
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.starts_with("validate: pass\n"));
    let o = dgla(&["suite", "--fixtures", "ABEL1", "--format", "text"]);
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s
        .lines()
        .any(|l| l.trim_start().starts_with("ok") && l.contains("ABEL1/hodge")));
}
