use std::path::PathBuf;
use std::sync::Arc;

use clap::Parser;
use mixval::rational::int;
use mixval::valuation::{Claims, Combination, DiscreteVolume, EulerCharacteristic, ValuationRegistry};
use mixval_cli::{main_with_args, run, Cli, EXIT_INPUT, EXIT_OK, EXIT_VIOLATION};
use serde_json::Value;

fn write_input(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mixval-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn mixval(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = main_with_args(std::iter::once("mixval").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.push("--json");
    let (code, out, err) = mixval(&full);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out} {err}"));
    (code, v)
}

fn certificate<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["certificates"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no certificate {name} in {report}"))
}

const SEGMENTS: &str = r#"{"lattice":"Z","dim":2,"polytopes":[
  {"name":"S1","vertices":[["0","0"],["1","0"]]},
  {"name":"S2","vertices":[[0,0],[0,1]]}]}"#;

const TRIANGLE_SEGMENT: &str = r#"{"lattice":"Z","dim":2,"polytopes":[
  {"name":"T","vertices":[[0,0],[1,0],[0,1]]},
  {"name":"E","vertices":[[0,0],[1,0]]}]}"#;

#[test]
fn cm_of_unit_segments() {
    let input = write_input("segments.json", SEGMENTS);
    let (code, r) = json(&["cm", "--input", input.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r["results"]["value"], "1");
    assert_eq!(r["results"]["positive"], true);
    let dirs: Vec<&Value> = r["results"]["witness"].as_array().unwrap().iter().map(|s| &s["direction"]).collect();
    assert_eq!(dirs, vec![&serde_json::json!(["1", "0"]), &serde_json::json!(["0", "1"])]);
    assert_eq!(r["results"]["table"].as_array().unwrap().len(), 4);
}

#[test]
fn cm_beyond_dimension_and_single_polytope() {
    let three = write_input(
        "three.json",
        r#"{"lattice":"Z","dim":1,"polytopes":[{"name":"A","vertices":[[0],[2]]},{"name":"B","vertices":[[1],[3]]}]}"#,
    );
    let (code, r) = json(&["cm", "--input", three.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r["results"]["value"], "0");
    assert!(r["notes"][0].as_str().unwrap().contains("vanishes"));

    let single = write_input("single.json", r#"{"lattice":"Z","dim":2,"polytopes":[{"name":"T","vertices":[[0,0],[2,0],[0,2]]}]}"#);
    let (_, r) = json(&["cm", "--input", single.to_str().unwrap()]);
    // six lattice points, minus the point at the origin
    assert_eq!(r["results"]["value"], "5");
}

#[test]
fn mixed_volume_examples() {
    let input = write_input("mv-segments.json", SEGMENTS);
    let (code, r) = json(&["mixed-volume", "--input", input.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r["results"]["mixed_volume"], "1/2");
    let squares = write_input(
        "squares.json",
        r#"{"lattice":"Z","dim":2,"polytopes":[{"name":"A","vertices":[[0,0],[1,0],[0,1],[1,1]]},{"name":"B","vertices":[[0,0],[1,0],[0,1],[1,1]]}]}"#,
    );
    let (_, r) = json(&["mixed-volume", "--input", squares.to_str().unwrap()]);
    assert_eq!(r["results"]["mixed_volume"], "1");
    let diagonal = write_input(
        "diagonal.json",
        r#"{"lattice":"Z","dim":2,"polytopes":[{"name":"A","vertices":[[0,0],[2,0],[0,1]]},{"name":"B","vertices":[[0,0],[2,0],[0,1]]}]}"#,
    );
    let (_, r) = json(&["mixed-volume", "--input", diagonal.to_str().unwrap()]);
    assert_eq!(r["results"]["mixed_volume"], "1");
    let wrong = write_input("wrong-arity.json", r#"{"lattice":"Z","dim":2,"polytopes":[{"name":"A","vertices":[[0,0],[1,0]]}]}"#);
    assert_eq!(mixval(&["mixed-volume", "--input", wrong.to_str().unwrap()]).0, EXIT_INPUT);
}

#[test]
fn ehrhart_examples() {
    let tri = write_input("triangle.json", r#"{"lattice":"Z","dim":2,"polytopes":[{"name":"T","vertices":[[0,0],[1,0],[0,1]]}]}"#);
    let (code, r) = json(&["ehrhart", "--input", tri.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let c = &r["results"]["coefficients"];
    assert_eq!((&c["[0]"], &c["[1]"], &c["[2]"]), (&Value::from("1"), &Value::from("2"), &Value::from("1")));
    assert_eq!(r["results"]["h_vector"], serde_json::json!(["1", "0", "0"]));

    let point = write_input("point.json", r#"{"lattice":"Z","dim":2,"polytopes":[{"name":"P","vertices":[[1,1]]}]}"#);
    let (_, r) = json(&["ehrhart", "--input", point.to_str().unwrap()]);
    assert_eq!(r["results"]["coefficients"], serde_json::json!({"[0]": "1"}));

    let segs = write_input("e-segments.json", SEGMENTS);
    let (_, r) = json(&["ehrhart", "--input", segs.to_str().unwrap(), "--dilate", "5"]);
    assert_eq!(r["results"]["coefficients"]["[1, 1]"], "1");
    assert_eq!(certificate(&r, "extrapolation at n = 5")["actual"], "36");
}

#[test]
fn dissect_examples() {
    let (code, r) = json(&["dissect", "--mode", "boxcell", "--dim", "2", "--dilate", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r["results"]["cells"], 3);
    assert_eq!(certificate(&r, "closed total")["actual"], "6");

    let segs = write_input("d-segments.json", SEGMENTS);
    let (code, r) = json(&["dissect", "--mode", "staircase", "--input", segs.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(r["results"]["cells"], 2);

    let ts = write_input("d-ts.json", TRIANGLE_SEGMENT);
    let (code, r) = json(&["dissect", "--mode", "cayley", "--input", ts.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(certificate(&r, "E at n = [1, 1]")["actual"], "5");
    assert!(r["certificates"].as_array().unwrap().iter().all(|c| c["holds"] == true));
}

#[test]
fn exported_dissection_recertifies() {
    let ts = write_input("rt-ts.json", TRIANGLE_SEGMENT);
    let (_, r) = json(&["dissect", "--mode", "cayley", "--input", ts.to_str().unwrap(), "--dilate", "3"]);
    let exported = write_input("rt-dissection.json", &r["results"]["dissection"].to_string());
    let (code, back) = json(&["dissect", "--dissection", exported.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    for name in ["stored count", "stored double counted", "stored missing", "volume sum"] {
        assert_eq!(certificate(&back, name), certificate(&r, name));
    }
    let mut broken: Value = r["results"]["dissection"].clone();
    broken["cells"].as_array_mut().unwrap().pop();
    let broken = write_input("rt-broken.json", &broken.to_string());
    assert_eq!(mixval(&["dissect", "--dissection", broken.to_str().unwrap()]).0, EXIT_VIOLATION);
}

#[test]
fn input_errors_exit_one() {
    assert_eq!(mixval(&["cm", "--input", "/nonexistent/instance.json"]).0, EXIT_INPUT);
    let bad = [
        r#"{"lattice":"Z","dim":2,"polytopes":[{"name":"A","vertices":[["1/2","0"]]}]}"#,
        r#"{"lattice":"Z","dim":2,"polytopes":[{"name":"A","vertices":[[0,0,0]]}]}"#,
        r#"{"lattice":"Z","dim":2,"polytopes":[{"name":"A","vertices":[]}]}"#,
        r#"{"lattice":"Z","dim":2,"polytopes":[],"extra":1}"#,
        r#"not json"#,
    ];
    for (i, body) in bad.iter().enumerate() {
        let path = write_input(&format!("bad-{i}.json"), body);
        let (code, out, err) = mixval(&["cm", "--input", path.to_str().unwrap()]);
        assert_eq!(code, EXIT_INPUT, "{body}: {out}");
        assert!(err.starts_with("error:"), "{err}");
    }
    let rational = write_input("rational.json", r#"{"lattice":"Q","dim":1,"polytopes":[{"name":"A","vertices":[["1/2"],["3/2"]]}]}"#);
    assert_eq!(mixval(&["cm", "--input", rational.to_str().unwrap()]).0, EXIT_INPUT);
    assert_eq!(mixval(&["cm", "--input", rational.to_str().unwrap(), "--valuation", "vol"]).0, EXIT_OK);
    assert_eq!(mixval(&["cm", "--input", rational.to_str().unwrap(), "--valuation", "nope"]).0, EXIT_INPUT);
    assert_eq!(mixval(&["dissect", "--mode", "nope"]).0, EXIT_INPUT);
    assert_eq!(mixval(&["frobnicate"]).0, EXIT_INPUT);
}

#[test]
fn reports_are_byte_stable() {
    let ts = write_input("stable.json", TRIANGLE_SEGMENT);
    for args in [
        vec!["cm", "--input", ts.to_str().unwrap()],
        vec!["dissect", "--mode", "cayley", "--input", ts.to_str().unwrap(), "--json"],
        vec!["verify", "--suite", "fine-mixed", "--trials", "6", "--dim", "2", "--seed", "7"],
    ] {
        let a = mixval(&args);
        let b = mixval(&args);
        assert_eq!(a.0, b.0);
        assert_eq!(a.1, b.1, "{args:?}");
    }
}

#[test]
fn verify_named_suite_passes() {
    let (code, out, _) = mixval(&["verify", "--suite", "vanishing", "--trials", "10"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("vanishing") && out.contains("pass"));
    assert_eq!(mixval(&["verify", "--suite", "no-such-suite"]).0, EXIT_INPUT);
}

#[test]
fn faulty_valuation_is_caught() {
    let mut registry = ValuationRegistry::with_builtins();
    let faulty = Combination::new(
        "faulty",
        vec![(int(1), Arc::new(DiscreteVolume) as _), (int(-2), Arc::new(EulerCharacteristic) as _)],
    )
    .claiming(Claims { weakly_hstar_monotone: true, combinatorially_positive: false });
    registry.register(Arc::new(faulty));
    let cli = Cli::parse_from(["mixval", "verify", "--suite", "weak-hstar", "--trials", "20"]);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(&cli, &registry, &mut out, &mut err);
    let out = String::from_utf8(out).unwrap();
    assert_eq!(code, EXIT_VIOLATION, "{out}");
    assert!(out.contains("faulty claims weak h*-monotonicity but S = "), "{out}");
}
