use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_subelliptic"));
    for key in ["MAX_LEVEL", "SEED", "DEGREE_CAP", "P_CAP"] {
        c.env_remove(format!("SUBELLIPTIC_{key}"));
    }
    c
}

fn domains() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("domains")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn schema() -> jsonschema::Validator {
    let text = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/run_output.schema.json")).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn dom(name: &str) -> String {
    domains().join(name).display().to_string()
}

#[test]
fn every_json_output_matches_the_schema() {
    let validator = schema();
    let cases: Vec<Vec<String>> = vec![
        vec!["kohn".into(), dom("ball.dom")],
        vec!["kohn".into(), dom("squares.dom")],
        vec!["kohn".into(), dom("product.dom")],
        vec!["kohn".into(), dom("mixed.dom")],
        vec!["finite-type".into(), dom("squares.dom")],
        vec!["finite-type".into(), dom("product.dom")],
        vec!["groebner".into(), "gb".into(), dom("mixed.dom"), "--order".into(), "lex".into()],
        vec!["groebner".into(), "radical-member".into(), dom("squares.dom"), "--poly".into(), "z1*z2".into()],
        vec!["bounds".into(), "ot".into(), "--precision".into(), "1/1000".into()],
        vec!["bounds".into(), "matsusaka".into(), "--n".into(), "4".into(), "--lk".into(), "3".into(), "--ln".into(), "2".into()],
        vec!["bounds".into(), "skoda".into(), "--n".into(), "3".into(), "--k".into(), "2".into(), "--p".into(), "2".into()],
        vec!["bounds".into(), "generation".into(), "--veronese".into(), "2,2".into(), "--truncation".into(), "4".into()],
    ];
    for args in cases {
        let mut args = args.clone();
        args.push("--json".into());
        let out = bin().args(&args).output().unwrap();
        let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        let errors: Vec<String> = validator.iter_errors(&doc).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
        // Rationals never appear as JSON numbers with a fractional part.
        assert!(!stdout(&out).contains(".0,"), "{args:?}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["kohn", &dom("ball.dom")]).status.code(), Some(0));
    assert_eq!(run(&["kohn", &dom("product.dom")]).status.code(), Some(2));
    assert_eq!(run(&["kohn", "/nonexistent.dom"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["bounds", "skoda", "--n", "0", "--k", "1"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.dom");
    std::fs::write(&bad, "vars z;\nh1 = z + 1;\n").unwrap();
    let out = run(&["kohn", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("2:6") && err.contains("vanish at the origin"), "{err}");
}

#[test]
fn environment_and_flags_layer_over_the_file() {
    let max_level = |o: &Output| {
        let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        doc["config"]["kohn"]["max_level"].as_u64().unwrap()
    };
    // product.dom sets max_level = 5 itself.
    let o = bin().args(["kohn", &dom("product.dom"), "--json"]).env("SUBELLIPTIC_MAX_LEVEL", "3").output().unwrap();
    assert_eq!(max_level(&o), 5);
    let o = bin().args(["kohn", &dom("squares.dom"), "--json"]).env("SUBELLIPTIC_MAX_LEVEL", "2").output().unwrap();
    assert_eq!(max_level(&o), 2);
    assert_eq!(o.status.code(), Some(2));
    let o = bin().args(["kohn", &dom("product.dom"), "--json", "--max-level", "2"]).output().unwrap();
    assert_eq!(max_level(&o), 2);
    let o = bin().args(["kohn", &dom("ball.dom")]).env("SUBELLIPTIC_SEED", "x").output().unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn seeds_change_combinations_but_not_the_verdict() {
    let a = stdout(&run(&["kohn", &dom("squares.dom"), "--json", "--seed", "1"]));
    let b = stdout(&run(&["kohn", &dom("squares.dom"), "--json", "--seed", "1"]));
    let c = stdout(&run(&["kohn", &dom("squares.dom"), "--json", "--seed", "2"]));
    assert_eq!(a, b);
    assert_ne!(a, c);
    let eps = |s: &str| serde_json::from_str::<serde_json::Value>(s).unwrap()["certificate"]["outcome"]["epsilon"].clone();
    assert_eq!(eps(&a), eps(&c));
}

#[test]
fn replay_round_trip_and_mismatches() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.json");
    let o = run(&["kohn", &dom("squares.dom"), "--json"]);
    std::fs::write(&out, &o.stdout).unwrap();
    assert_eq!(run(&["replay", out.to_str().unwrap(), &dom("squares.dom")]).status.code(), Some(0));
    // Wrong domain.
    assert_eq!(run(&["replay", out.to_str().unwrap(), &dom("ball.dom")]).status.code(), Some(3));
    // Reformatting the domain file does not matter; the digest is over the canonical form.
    let reformatted = dir.path().join("sq.dom");
    std::fs::write(&reformatted, "vars z1 z2;   h1=z1*z1;\n# comment\nh2 = (z2)^2;").unwrap();
    assert_eq!(run(&["replay", out.to_str().unwrap(), reformatted.to_str().unwrap()]).status.code(), Some(0));
    // Output without a certificate.
    let ft = dir.path().join("ft.json");
    std::fs::write(&ft, run(&["finite-type", &dom("squares.dom"), "--json"]).stdout).unwrap();
    assert_eq!(run(&["replay", ft.to_str().unwrap(), &dom("squares.dom")]).status.code(), Some(1));
}

#[test]
fn human_output_names_variables() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("xy.dom");
    std::fs::write(&f, "vars x y;\nh1 = x^2;\nh2 = y^2;\n").unwrap();
    let text = stdout(&run(&["kohn", f.to_str().unwrap(), "--trace"]));
    assert!(text.contains("epsilon: 1/64"), "{text}");
    assert!(text.contains("x*y"), "{text}");
    assert!(text.contains("level 2 (full radical)"), "{text}");
}
