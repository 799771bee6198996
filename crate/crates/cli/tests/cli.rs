use std::path::PathBuf;
use std::process::Command;

use alc_pinpoint::oracle::{Generator, GeneratorConfig};
use alc_pinpoint::MonotoneFormula;
use alcpin_cli::{parse, run};
use proptest::prelude::*;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(
        std::iter::once("alcpin").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn justify_texa() {
    let (code, out, _) = call(&["justify", &data("texa.dl"), "A", "bot"]);
    assert_eq!(code, 0);
    assert_eq!(out, "{a1,a2,a4}\n{a1,a3,a4}\n");
}

#[test]
fn explain_normalized_input_uses_input_names() {
    let (code, out, _) = call(&["explain", &data("texa2.dl"), "A", "bot"]);
    assert_eq!(code, 0);
    assert_eq!(out, "a1 & a4\n");
    let (_, out, _) = call(&["classify", &data("texa2.dl")]);
    assert!(!out.contains("_F"), "{out}");
}

#[test]
fn explain_texa_matches_expected_formula() {
    let (_, out, _) = call(&["explain", &data("texa.dl"), "A", "bot"]);
    let got: MonotoneFormula = out.trim().parse().unwrap();
    assert!(
        got.equivalent(&"a1 & a4 & (a2 | a3)".parse().unwrap()),
        "{got}"
    );
}

#[test]
fn subsumes_on_empty_file() {
    assert_eq!(
        call(&["subsumes", &data("empty.dl"), "A", "B"]),
        (1, "no\n".into(), String::new())
    );
    assert_eq!(call(&["subsumes", &data("empty.dl"), "A", "A"]).0, 0);
    assert_eq!(
        call(&["subsumes", &data("texa.dl"), "A", "B"]),
        (0, "yes\n".into(), String::new())
    );
}

#[test]
fn classify_texa() {
    let (code, out, _) = call(&["classify", &data("texa.dl")]);
    assert_eq!(code, 0);
    assert_eq!(out, "A [= bot\nA [= B\n");
    assert_eq!(call(&["classify", &data("texa.dl"), "--trace"]).1, out);
}

#[test]
fn repair_texa() {
    let (code, out, _) = call(&["repair", &data("texa.dl"), "A", "bot"]);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "diagnoses:\n{a1}\n{a2,a3}\n{a4}\nrepairs:\n{a1,a2,a3}\n{a1,a4}\n{a2,a3,a4}\n"
    );
}

#[test]
fn errors_exit_with_two() {
    let (code, _, err) = call(&["repair", &data("texa.dl"), "B", "A"]);
    assert_eq!(code, 2);
    assert!(err.contains("not entailed"), "{err}");
    let (code, _, err) = call(&["justify", &data("missing.dl"), "A", "B"]);
    assert_eq!(code, 2);
    assert!(err.contains("missing.dl"), "{err}");
    assert_eq!(call(&["subsumes", &data("texa.dl"), "some", "A"]).0, 2);
    assert_eq!(call(&["frobnicate"]).0, 2);
    assert_eq!(
        call(&[
            "explain",
            &data("texa.dl"),
            "A",
            "bot",
            "--order",
            "sideways"
        ])
        .0,
        2
    );
}

#[test]
fn parse_errors_report_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.dl");
    std::fs::write(&path, "a1: A [= B\na2: A [= \n").unwrap();
    let (code, _, err) = call(&["classify", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(
        err.contains(":2:10:") && err.contains("end of input"),
        "{err}"
    );
}

#[test]
fn justify_not_entailed_prints_nothing() {
    assert_eq!(
        call(&["justify", &data("texa.dl"), "B", "A"]),
        (1, String::new(), String::new())
    );
    assert_eq!(
        call(&["explain", &data("texa.dl"), "B", "A"]),
        (1, "false\n".into(), String::new())
    );
}

#[test]
fn trace_goes_to_stderr() {
    let (code, out, err) = call(&["--trace", "explain", &data("texa.dl"), "A", "bot"]);
    assert_eq!(code, 0);
    assert_eq!(out, call(&["explain", &data("texa.dl"), "A", "bot"]).1);
    assert!(!err.is_empty());
    for line in err.lines() {
        assert_eq!(line.split('\t').count(), 7, "{line}");
        assert!(line.starts_with("STEP\t"));
    }
}

#[test]
fn random_orders_agree() {
    let fifo = call(&["justify", &data("texa.dl"), "A", "bot"]);
    for seed in 0..10 {
        let s = seed.to_string();
        assert_eq!(
            call(&[
                "justify",
                &data("texa.dl"),
                "A",
                "bot",
                "--order",
                "random",
                "--seed",
                &s
            ]),
            fifo
        );
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["classify", "texa.dl"],
        vec!["repair", "texa.dl", "A", "bot"],
        vec!["--trace", "explain", "texa2.dl", "A", "bot"],
    ] {
        let args: Vec<String> = args
            .iter()
            .map(|a| {
                if a.ends_with(".dl") {
                    data(a)
                } else {
                    a.to_string()
                }
            })
            .collect();
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(call(&args), call(&args));
        let bin = || {
            Command::new(env!("CARGO_BIN_EXE_alcpin"))
                .args(&args)
                .output()
                .unwrap()
        };
        let (a, b) = (bin(), bin());
        assert_eq!(
            (&a.stdout, &a.stderr, a.status.code()),
            (&b.stdout, &b.stderr, b.status.code())
        );
        assert_eq!(a.stdout, call(&args).1.into_bytes());
    }
}

#[test]
fn binary_exit_codes() {
    let status = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_alcpin"))
            .args(args)
            .output()
            .unwrap()
            .status
            .code()
    };
    assert_eq!(status(&["subsumes", &data("texa.dl"), "A", "B"]), Some(0));
    assert_eq!(status(&["subsumes", &data("empty.dl"), "A", "B"]), Some(1));
    assert_eq!(
        status(&["subsumes", &data("nowhere.dl"), "A", "B"]),
        Some(2)
    );
}

#[test]
fn data_files_round_trip() {
    for f in ["texa.dl", "texa2.dl", "empty.dl"] {
        let d = parse(&std::fs::read_to_string(data(f)).unwrap()).unwrap();
        assert_eq!(parse(&d.to_string()).unwrap(), d, "{f}");
    }
}

#[test]
fn document_matches_ontology() {
    let d = parse(&std::fs::read_to_string(data("texa.dl")).unwrap()).unwrap();
    assert_eq!(d.ontology(), alc_pinpoint::ontology::texa());
    let d = parse(&std::fs::read_to_string(data("texa2.dl")).unwrap()).unwrap();
    assert_eq!(d.ontology(), alc_pinpoint::ontology::texa_prime());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn printed_ontologies_parse_back(seed in any::<u64>(), depth in 0usize..4, size in 1usize..9) {
        let config = GeneratorConfig { max_depth: depth, max_size: size, ..GeneratorConfig::default() };
        let o = Generator::with_config(seed, config).ontology();
        let d = parse(&o.to_string()).unwrap();
        prop_assert_eq!(d.ontology(), o);
        prop_assert_eq!(parse(&d.to_string()).unwrap(), d);
    }
}
