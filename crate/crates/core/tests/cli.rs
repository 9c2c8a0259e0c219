mod common;

use std::process::Command as Process;

use common::*;
use gaussmanin::cli::{execute, parse_poly, run, Command, Format, RunConfig};
use proptest::prelude::*;
use serde_json::Value;

fn gm(args: &[&str], default_prec: Option<&str>) -> (i32, String, String) {
    let mut cmd = Process::new(env!("CARGO_BIN_EXE_gm"));
    cmd.args(args).env_remove("GM_DEFAULT_PREC");
    if let Some(p) = default_prec {
        cmd.env("GM_DEFAULT_PREC", p);
    }
    let out = cmd.output().expect("run gm");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, stdout, stderr) = gm(args, None);
    assert_eq!(code, 0, "{stderr}");
    serde_json::from_str(&stdout).unwrap()
}

fn keys(v: &Value) -> Vec<String> {
    v.as_object().unwrap().keys().cloned().collect()
}

fn small(command: &str, poly: &str) -> Vec<String> {
    vec![command.into(), poly.into(), "--prec-s".into(), "4".into(), "--prec-t".into(), "4".into()]
}

fn as_strs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

#[test]
fn exit_codes() {
    assert_eq!(gm(&["milnor", "x^2+y^3"], None).0, 0);
    assert_eq!(gm(&["milnor", "x^2*y^2"], None).0, 2);
    assert_eq!(gm(&["milnor", "x^(-1)"], None).0, 1);
    assert_eq!(gm(&["milnor", "x^2 +* y"], None).0, 1);
    assert_eq!(gm(&["milnor", "x+y^2"], None).0, 2);
    assert_eq!(gm(&["connection", "x^5+y^5+x^2*y^2", "--prec-t", "3"], None).0, 2);
    assert_eq!(gm(&["milnor", "x^2+y^3", "--prec-s", "1"], None).0, 1);
    assert_eq!(gm(&["frobnicate", "x^2"], None).0, 1);
    assert_eq!(gm(&["--help"], None).0, 0);
    assert_eq!(gm(&["milnor", "x^2+y^3"], Some("oops")).0, 1);
}

#[test]
fn parse_errors_report_position() {
    let (code, _, stderr) = gm(&["basis", "x^2 + + y"], None);
    assert_eq!(code, 1);
    assert!(stderr.contains("byte 6"), "{stderr}");
}

#[test]
fn schema_per_command() {
    let milnor = json(&["milnor", "x^2+y^3"]);
    assert_eq!(keys(&milnor), ["mu", "precisions", "weights"]);
    assert_eq!(milnor["mu"], 2);
    let basis = json(&["basis", "x^3+y^4"]);
    assert_eq!(basis["basis"].as_array().unwrap().len(), 6);
    let all = json(&as_strs(&small("all", "x^2+y^3")));
    for field in ["mu", "basis", "weights", "t_matrix", "connection", "exponents", "residues", "rotations", "verdict", "precisions"] {
        assert!(all.get(field).is_some(), "missing {field}");
    }
    for field in ["a0", "a1", "nilpotent_a0"] {
        assert!(all.get(field).is_none(), "unexpected {field}");
    }
    assert_eq!(all["residues"], serde_json::json!(["-1/6", "1/6"]));
    assert_eq!(all["rotations"], serde_json::json!(["1/6", "5/6"]));
    assert_eq!(all["verdict"], "regular");
    let p = &all["precisions"];
    assert_eq!((p["prec_s"].as_i64(), p["prec_t"].as_i64(), p["prec_x"].as_i64()), (Some(4), Some(4), Some(10)));
}

#[test]
fn zero_series_have_null_valuation() {
    let t = json(&as_strs(&small("tmatrix", "x^2+y^3")));
    let off = &t["t_matrix"][0][1];
    assert!(off["valuation"].is_null());
    assert_eq!(off["coefficients"], serde_json::json!([]));
    assert_eq!(t["t_matrix"][0][0]["coefficients"], serde_json::json!(["5/6"]));
}

#[test]
fn non_quasi_homogeneous_output_omits_spectrum() {
    let v = json(&["spectrum", "x^5+y^5+x^2*y^2", "--prec-s", "3", "--prec-t", "3", "--prec-x", "15", "--no-stability-check"]);
    assert!(v.get("weights").is_none());
    for field in ["exponents", "residues", "rotations"] {
        assert!(v.get(field).is_none(), "unexpected {field}");
    }
    assert_eq!(v["nilpotent_a0"], true);
    assert_eq!(v["verdict"], "inconclusive");
}

#[test]
fn environment_sets_default_precision() {
    let (code, stdout, _) = gm(&["tmatrix", "x^2+y^3"], Some("3"));
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["precisions"]["prec_s"], 3);
    assert_eq!(v["precisions"]["prec_t"], 3);
    let (_, stdout, _) = gm(&["tmatrix", "x^2+y^3", "--prec-s", "5"], Some("3"));
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["precisions"]["prec_s"], 5);
}

#[test]
fn table_lists_the_json_fields() {
    for command in ["milnor", "basis", "tmatrix", "connection", "saturate", "spectrum", "all"] {
        let args = small(command, "x^3+y^4");
        let v = json(&as_strs(&args));
        let mut table_args = args.clone();
        table_args.extend(["--format".to_string(), "table".to_string()]);
        let (code, table, _) = gm(&as_strs(&table_args), None);
        assert_eq!(code, 0);
        let row_keys: Vec<&str> = table.lines().filter_map(|l| l.split_whitespace().next()).collect();
        for k in keys(&v) {
            assert!(row_keys.iter().any(|r| *r == k || r.starts_with(&format!("{k}[")) || r.starts_with(&format!("{k}."))), "{command}: {k} absent from table");
        }
    }
}

#[test]
fn library_entry_matches_binary() {
    let f = parse_poly("x^2+y^3").unwrap().to_poly();
    let config = RunConfig { prec_s: 4, prec_t: 4, ..RunConfig::default() };
    let report = run(Command::All, &f, &config).unwrap();
    let outcome = execute(["gm", "all", "x^2+y^3", "--prec-s", "4", "--prec-t", "4"], None);
    assert_eq!(outcome.code, 0);
    assert_eq!(outcome.stdout, gaussmanin::cli::render(&report, Format::Json));
}

#[test]
fn stability_check_accepts_fixtures() {
    for (name, f) in all_fixtures() {
        let config = RunConfig { prec_s: 3, prec_t: 3, prec_x: Some(15), ..RunConfig::default() };
        assert!(run(Command::Milnor, &f, &config).is_ok(), "{name}");
    }
}

fn arb_expr() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        (0i64..20).prop_map(|n| n.to_string()),
        (1i64..9, 1i64..9).prop_map(|(p, q)| format!("{p}/{q}")),
        prop::sample::select(vec!["x", "y", "z"]).prop_map(String::from),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a}+{b}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} - {b}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})*({b})")),
            (inner.clone(), 0u32..4).prop_map(|(a, e)| format!("({a})^{e}")),
            inner.prop_map(|a| format!("-({a})")),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn parser_never_panics(input in "[xyzw0-9+*^()/ -]{0,24}") {
        let _ = parse_poly(&input);
    }

    #[test]
    fn printed_polynomials_parse_back(expr in arb_expr()) {
        let f = parse_poly(&expr).unwrap().to_poly();
        prop_assume!(!f.is_zero());
        let again = parse_poly(&f.to_string()).unwrap().to_poly();
        if again.vars() == f.vars() {
            prop_assert_eq!(again, f);
        } else {
            // variables whose terms cancelled disappear from the reparsed input
            prop_assert!(again.nvars() < f.nvars());
        }
    }
}
