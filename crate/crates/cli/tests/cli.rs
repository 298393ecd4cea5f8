mod common;

use common::run;
use serde_json::Value;

fn parse(text: &str) -> Value {
    serde_json::from_str(text).expect("output is JSON")
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.json");
    let args = ["hull", "--algebra", "sl3", "--span", "sl3_non_algebraic.json"];
    let to_stdout = run(&args);
    let mut with_out = args.to_vec();
    let path = target.to_str().unwrap();
    with_out.extend(["--out", path]);
    let to_file = run(&with_out);
    assert_eq!(to_file.code, to_stdout.code);
    assert!(to_file.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&target).unwrap(), to_stdout.stdout);
}

#[test]
fn unwritable_out_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("missing").join("report.json");
    let r = run(&["killing", "--algebra", "sl2", "--out", target.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert_eq!(parse(&r.stderr)["error"], "io");
}

#[test]
fn usage_errors_exit_2_with_json_on_stderr() {
    for args in [
        &["frobnicate"][..],
        &["hull", "--algebra", "sl3"],
        &["rank", "--algebra", "sl3", "--span", "sl3_borel.json", "--bogus"],
        &["sl3-slice", "--height", "minus-one"],
    ] {
        let r = run(args);
        assert_eq!(r.code, 2, "{args:?}");
        assert!(r.stdout.is_empty(), "{args:?}");
        assert_eq!(parse(&r.stderr)["error"], "usage", "{args:?}");
    }
}

#[test]
fn input_errors_name_their_kind() {
    let cases: [(&[&str], &str); 4] = [
        (&["killing", "--algebra", "bad_jacobi.json"], "invalid-structure"),
        (&["killing", "--algebra", "so7"], "input"),
        (&["sl3-slice", "--height", "0"], "input"),
        (&["validate-bouquet", "--samples", "0"], "input"),
    ];
    for (args, kind) in cases {
        let r = run(args);
        assert_eq!(r.code, 2, "{args:?}");
        assert!(r.stdout.is_empty());
        let err = parse(&r.stderr);
        assert_eq!(err["error"], kind, "{args:?}: {err}");
        assert!(err["message"].as_str().is_some_and(|m| !m.is_empty()));
    }
}

#[test]
fn slice_output_validates_when_read_back() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("slice.json");
    let path = file.to_str().unwrap();
    assert_eq!(run(&["sl3-slice", "--height", "2", "--out", path]).code, 0);
    let slice = parse(&std::fs::read_to_string(&file).unwrap());
    assert_eq!(slice["components"].as_array().unwrap().len(), 4);
    let r = run(&["validate-bouquet", "--bouquet", path, "--samples", "4"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(parse(&r.stdout)["passed"], true);
}

#[test]
fn torus_line_and_heisenberg_spans() {
    let hull = parse(&run(&["hull", "--algebra", "sl3", "--span", "sl3_torus_line.json"]).stdout);
    assert_eq!(hull["is_algebraic"], true);
    assert_eq!(hull["hull_dim"], 1);
    let levi = run(&["levi", "--algebra", "sl3", "--span", "sl3_heisenberg.json"]);
    assert_eq!(levi.code, 0);
    assert_eq!(parse(&levi.stdout)["class"], "0");
    let rank = parse(&run(&["rank", "--algebra", "sl3", "--span", "sl3_heisenberg.json"]).stdout);
    assert_eq!(rank["rank"], 0);
}

#[test]
fn help_goes_to_stdout() {
    let r = run(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("sl3-slice"));
    assert!(r.stderr.is_empty());
}
