//! CLI-level behavior: exit codes, error channels, environment default for
//! the order, and machine-readable records.

use skewpbw::frontend::{run_command, CommandOutput};

fn run(args: &[&str]) -> CommandOutput {
    run_command(std::iter::once("skewpbw").chain(args.iter().copied()).map(String::from))
}

fn write_file(dir: &tempfile::TempDir, name: &str, contents: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, contents).unwrap();
    path.display().to_string()
}

const TORUS: &str = r#"{"n":2,"r":2,"field":{"kind":"Q"},"q":[["1","2"],["1/2","1"]]}"#;
const PLANE_QT: &str =
    r#"{"n":2,"r":0,"field":{"kind":"Qt","params":["t1"]},"q":[["1","t1"],["1/t1","1"]]}"#;
const Z_PLANE: &str = r#"{"n":2,"r":0,"field":{"kind":"Z"},"q":[["1","-1"],["-1","1"]]}"#;

#[test]
fn usage_errors_exit_2() {
    let out = run(&["no-such-command"]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());

    let out = run(&["normalize"]); // missing required args
    assert_eq!(out.code, 2);
}

#[test]
fn domain_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_file(
        &dir,
        "bad.json",
        r#"{"n":2,"r":0,"field":{"kind":"Q"},"q":[["1","2"],["2","1"]]}"#,
    );
    let out = run(&["validate", "-p", &bad]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("q matrix invalid"));

    let torus = write_file(&dir, "torus.json", TORUS);
    let out = run(&["invert", "-p", &torus, "-e", "x1 - x1", "--bound", "(1,0)"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("zero series"));

    // mpow over a non-torus presentation is a domain error
    let plane = write_file(&dir, "plane.json", PLANE_QT);
    let out = run(&["mpow", "-p", &plane, "-e", "x1", "-i", "2"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("torus"));
}

#[test]
fn env_var_supplies_default_order() {
    let dir = tempfile::tempdir().unwrap();
    let torus = write_file(&dir, "torus.json", TORUS);
    // flipped lex via env: x1 + x2 now has valuation (1, 0)
    std::env::set_var("SKEWPBW_ORDER", r#"{"matrix":[["0","1"],["1","0"]]}"#);
    let out = run(&["val", "-p", &torus, "-e", "x1 + x2"]);
    std::env::remove_var("SKEWPBW_ORDER");
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout, "nu = (1, 0)\n");
    // explicit flag wins over env
    std::env::set_var("SKEWPBW_ORDER", r#"{"matrix":[["0","1"],["1","0"]]}"#);
    let out = run(&["val", "-p", &torus, "-e", "x1 + x2", "--order", "lex2"]);
    std::env::remove_var("SKEWPBW_ORDER");
    assert_eq!(out.stdout, "nu = (0, 1)\n");
}

#[test]
fn graded_output_is_a_valid_presentation() {
    let dir = tempfile::tempdir().unwrap();
    let weyl = write_file(
        &dir,
        "weyl.json",
        r#"{"n":1,"r":0,"field":{"kind":"Qt","params":["t1"]},"q":[["1"]],"delta":[{"partials":["1"]}]}"#,
    );
    let out = run(&["graded", "-p", &weyl]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let graded = write_file(&dir, "graded.json", &out.stdout);
    let check = run(&["validate", "-p", &graded]);
    assert_eq!(check.code, 0, "{}", check.stderr);
    assert!(check.stdout.contains("quasi_commutative: true"));
}

#[test]
fn extend_scalars_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let zp = write_file(&dir, "zplane.json", Z_PLANE);
    let out = run(&["extend-scalars", "-p", &zp]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("\"kind\": \"Q\""));
    let qp = write_file(&dir, "qplane.json", &out.stdout);
    let check = run(&["validate", "-p", &qp]);
    assert_eq!(check.code, 0);
    assert!(check.stdout.contains("mode: Q"));
    // extending a non-Z presentation is refused
    let torus = write_file(&dir, "torus.json", TORUS);
    let out = run(&["extend-scalars", "-p", &torus]);
    assert_eq!(out.code, 1);
}

#[test]
fn iterated_stages_listing() {
    let dir = tempfile::tempdir().unwrap();
    let plane = write_file(&dir, "plane.json", PLANE_QT);
    let out = run(&["iterated", "-p", &plane]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(
        out.stdout,
        "stage 1: coefficients via identity\nstage 2: coefficients via identity; z1 -> t1*z1\n"
    );
}

#[test]
fn compare_val_reports() {
    let out = run(&[
        "compare-val",
        "--order1",
        "lex2",
        "--order2",
        "lex1",
        "--tau",
        "[[1,0]]",
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("holds: true"));

    let out = run(&[
        "compare-val",
        "--order1",
        "lex2",
        "--order2",
        "lex1",
        "--tau",
        "[[0,1]]",
    ]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("holds: false"));
    assert!(out.stdout.contains("counterexample"));

    let out = run(&[
        "compare-val",
        "--order1",
        "lex2",
        "--order2",
        "lex2",
        "--tau",
        "[[1,1],[2,2]]",
    ]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("full row rank"));
}

#[test]
fn rank_and_power_bound() {
    let out = run(&["rank", "--tau", "[[1,1],[0,1]]"]);
    assert_eq!(out.stdout, "maximal rank: true\n");
    let out = run(&["rank", "--tau", "[[2,0],[0,1]]"]);
    assert_eq!(out.stdout, "maximal rank: false\n");

    let out = run(&["power-bound", "--order", "lex1", "--imax", "10"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("lambda_1 = 1"));
    assert!(out.stdout.contains("consistent (member of W^i iff k >= i): true"));

    let out = run(&["power-bound", "--order", "lex2"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("archimedean projection: no"));
}

#[test]
fn json_records_have_the_contract_fields() {
    let dir = tempfile::tempdir().unwrap();
    let plane = write_file(&dir, "plane.json", PLANE_QT);
    let out = run(&[
        "--format",
        "json",
        "normalize",
        "-p",
        &plane,
        "-e",
        "x2*x1",
        "--order",
        "lex2",
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let record: serde_json::Value = serde_json::from_str(out.stdout.trim()).unwrap();
    assert_eq!(record["command"], "normalize");
    assert!(record["presentation_hash"].as_str().unwrap().len() == 16);
    assert_eq!(record["input"]["expr"], "x2*x1");
    assert_eq!(record["result"]["normal_form"], "t1*x1*x2");
    assert!(record["diagnostics"].as_array().unwrap().is_empty());

    // identical presentations hash identically, different ones differently
    let plane2 = write_file(&dir, "plane2.json", PLANE_QT);
    let torus = write_file(&dir, "torus.json", TORUS);
    let h = |p: &str| {
        let out = run(&["--format", "json", "validate", "-p", p]);
        let rec: serde_json::Value = serde_json::from_str(out.stdout.trim()).unwrap();
        rec["presentation_hash"].as_str().unwrap().to_string()
    };
    assert_eq!(h(&plane), h(&plane2));
    assert_ne!(h(&plane), h(&torus));

    // domain errors in json mode fill diagnostics
    let out = run(&["--format", "json", "mpow", "-p", &plane, "-e", "x1", "-i", "1"]);
    assert_eq!(out.code, 1);
    let record: serde_json::Value = serde_json::from_str(out.stderr.trim()).unwrap();
    assert!(!record["diagnostics"].as_array().unwrap().is_empty());
}

#[test]
fn normalize_examples_from_the_interface_contract() {
    let dir = tempfile::tempdir().unwrap();
    let plane = write_file(&dir, "plane.json", PLANE_QT);
    let out = run(&["normalize", "-p", &plane, "-e", "x2*x1", "--order", "lex2"]);
    assert_eq!(out.stdout, "t1*x1*x2\n");
    let out = run(&["classify", "-p", &plane, "-e", "3 + x1", "--order", "lex2"]);
    assert_eq!(out.stdout, "class: unit_ring\n");
    let dirt = write_file(&dir, "torus.json", TORUS);
    let out = run(&["classify", "-p", &dirt, "-e", "x1^-1", "--order", "lex2"]);
    assert_eq!(out.stdout, "class: outside_lambda\n");
    let out = run(&["mpow", "-p", &dirt, "-e", "x2^2", "-i", "3", "--order", "lex2"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("member of m^3: false"));
}
