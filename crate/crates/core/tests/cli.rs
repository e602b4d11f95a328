use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

use liesim::algebra::{AlgebraElement, Basis};
use liesim::engine::{GateSequence, Measurement};
use liesim::gmfh::map_ising;
use liesim::io::{Circuit, CircuitFile, CircuitMeasure};
use liesim::numerics::eigh;
use liesim::oracle::{
    build_fermion_oracle, build_spin_oracle, fermionic_quadratic_matrix, ising_spin_hamiltonian, oracle_expect,
};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> String {
    root().join("fixtures").join(name).to_string_lossy().into_owned()
}

fn liesim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liesim")).args(args).env_remove("LIESIM_TOLERANCE").output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {:?}", out))
}

fn schema_check(schema: &str, v: &Value) {
    let text = std::fs::read_to_string(root().join("docs/schemas").join(schema)).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(v).map(|e| format!("{e} at {}", e.instance_path())).collect();
    assert!(errors.is_empty(), "{schema}: {errors:?}");
}

fn run_ok(args: &[&str], schema: &str) -> Value {
    let out = liesim(args);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let v = json_of(&out);
    schema_check(schema, &v);
    v
}

fn value(v: &Value) -> (f64, f64) {
    (v["value"][0].as_f64().unwrap(), v["value"][1].as_f64().unwrap())
}

fn eigenvalues(v: &Value) -> Vec<f64> {
    v["eigenvalues"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect()
}

fn same_set(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.iter().all(|x| b.iter().any(|y| (x - y).abs() < tol)) && b.iter().all(|y| a.iter().any(|x| (x - y).abs() < tol))
}

#[test]
fn validate_clean_su2() {
    let v = run_ok(&["validate", &fixture("su2.json")], "validate-output.schema.json");
    assert_eq!(v["clean"], true);
}

#[test]
fn validate_flipped_b_names_triple() {
    let out = liesim(&["validate", &fixture("su2_corrupt.json")]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    schema_check("validate-output.schema.json", &v);
    let named = v["violations"].as_array().unwrap().iter().any(|x| x["elements"] == serde_json::json!(["h1", "e+1", "e-1"]));
    assert!(named, "{v}");
}

#[test]
fn validate_malformed_json_is_usage_error() {
    let out = liesim(&["validate", &fixture("malformed.json")]);
    assert_eq!(out.status.code(), Some(2));
    let v = json_of(&out);
    schema_check("error-output.schema.json", &v);
    let msg = v["error"]["message"].as_str().unwrap();
    assert!(msg.contains("line 3") && msg.contains("column"), "{msg}");
}

#[test]
fn missing_file_is_usage_error() {
    let out = liesim(&["solve", "/nonexistent/model.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn expect_empty_circuit_reads_weight() {
    let v = run_ok(&["expect", &fixture("cartan_empty.json")], "expect-output.schema.json");
    let (re, im) = value(&v);
    assert!((re - 0.5).abs() < 1e-12 && im.abs() < 1e-12);
}

#[test]
fn expect_matches_dense_oracle() {
    let path = fixture("so4_circuit.json");
    let v = run_ok(&["expect", &path], "expect-output.schema.json");
    let Circuit { ensemble, measure, .. } =
        CircuitFile::parse(&std::fs::read_to_string(&path).unwrap()).unwrap().resolve().unwrap();
    let CircuitMeasure::Element(w) = measure else { panic!("element fixture expected") };
    let o = oracle_expect(&build_fermion_oracle(2).unwrap(), &ensemble, &Measurement::Element(w)).unwrap();
    let (re, im) = value(&v);
    assert!((re - o.re).abs() < 1e-10 && (im - o.im).abs() < 1e-10, "{re} {im} vs {o}");
}

#[test]
fn expect_exp_abs2_of_zero_is_one() {
    let v = run_ok(&["expect", &fixture("so4_exp_zero.json")], "expect-output.schema.json");
    assert!((value(&v).0 - 1.0).abs() < 1e-10);
}

#[test]
fn expect_correlator() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("corr.json");
    let text = r#"{"algebra": "su(2)", "weight": [2], "ensemble": [{"p": 1, "gates": []}],
        "measure": {"kind": "correlator", "factors": [[0, 1, 0], [0, 0, 1]]}}"#;
    std::fs::write(&path, text).unwrap();
    let v = run_ok(&["expect", path.to_str().unwrap()], "expect-output.schema.json");
    // ⟨j|e+ e−|j⟩ = 2j for the highest weight of spin j = 1.
    assert!((value(&v).0 - 2.0).abs() < 1e-10);
}

#[test]
fn expect_is_reproducible() {
    let path = fixture("so4_circuit.json");
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timing_ms");
        v
    };
    let a = strip(run_ok(&["--threads", "1", "--seed", "3", "expect", &path], "expect-output.schema.json"));
    let b = strip(run_ok(&["--threads", "1", "--seed", "3", "expect", &path], "expect-output.schema.json"));
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn solve_two_site_ising_closed_form() {
    let v = run_ok(&["solve", &fixture("ising_n2.json")], "spectrum-output.schema.json");
    let g: f64 = 1.3;
    let r = (4.0 + g * g).sqrt();
    assert!(same_set(&eigenvalues(&v), &[-r, -g, g, r], 1e-8), "{v}");
    let dense = eigh(&ising_spin_hamiltonian(2, g, false)).unwrap().values;
    assert!(same_set(&eigenvalues(&v), &dense, 1e-8));
}

#[test]
fn solve_diagonal_fermions() {
    let v = run_ok(&["solve", &fixture("diagonal_fermions.json")], "spectrum-output.schema.json");
    assert!(same_set(&eigenvalues(&v), &[-0.75, -0.25, 0.25, 0.75], 1e-12));
}

#[test]
fn solve_random_three_mode_model_matches_dense() {
    let path = fixture("so6_random.json");
    let v = run_ok(&["solve", &path], "spectrum-output.schema.json");
    let file: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let mat = |key: &str| -> Vec<Vec<num_complex::Complex64>> {
        file[key]
            .as_array()
            .unwrap()
            .iter()
            .map(|row| {
                row.as_array()
                    .unwrap()
                    .iter()
                    .map(|z| match z {
                        Value::Array(p) => num_complex::Complex64::new(p[0].as_f64().unwrap(), p[1].as_f64().unwrap()),
                        x => num_complex::Complex64::new(x.as_f64().unwrap(), 0.0),
                    })
                    .collect()
            })
            .collect()
    };
    let dense = eigh(&fermionic_quadratic_matrix(&mat("t"), &mat("u"))).unwrap().values;
    assert!(same_set(&eigenvalues(&v), &dense, 1e-8), "{:?} vs {dense:?}", eigenvalues(&v));
}

fn gates_of(v: &Value, spec: &liesim::algebra::AlgebraSpec) -> GateSequence {
    let gates: Vec<liesim::io::GateJson> = serde_json::from_value(v["gates"].clone()).unwrap();
    liesim::io::gates_from_json(spec, &gates).unwrap()
}

#[test]
fn prepare_ising_energy_matches_dense() {
    let v = run_ok(&["--config", &fixture("config.json"), "prepare", &fixture("ising_n4.json")], "prepare-output.schema.json");
    let (spec, h, even) = liesim::gmfh::map_fermionic(&map_ising(4, 0.7, false).unwrap()).unwrap();
    let weight: liesim::algebra::Weight = serde_json::from_value(v["weight"].clone()).unwrap();
    let o = if weight == even {
        build_fermion_oracle(4).unwrap()
    } else {
        liesim::oracle::build_fermion_oracle_odd(4).unwrap()
    };
    let e = o.energy(&gates_of(&v, &spec), &h).unwrap().re;
    let min = eigh(&ising_spin_hamiltonian(4, 0.7, false)).unwrap().values[0];
    assert!((e - min).abs() < 1e-8, "{e} vs {min}");
    assert!((v["energy"].as_f64().unwrap() - min).abs() < 1e-8);
    assert!(v["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn prepare_minus_h_is_trivial() {
    let v = run_ok(&["prepare", &fixture("minus_h.json")], "prepare-output.schema.json");
    let spec = liesim::algebra::build_su2();
    let h = AlgebraElement::basis(&spec, Basis::Cartan(0)).scale_real(-1.0);
    let e = build_spin_oracle(1).unwrap().energy(&gates_of(&v, &spec), &h).unwrap().re;
    assert!((e + 1.0).abs() < 1e-12);
    assert_eq!(v["gate_count"], 0);
}

#[test]
fn prepare_degenerate_warns() {
    let v = run_ok(&["prepare", &fixture("degenerate.json")], "prepare-output.schema.json");
    assert_eq!(v["degenerate"], true);
    assert!(v["warnings"].as_array().unwrap().iter().any(|w| w.as_str().unwrap().contains("degenerate")));
}

#[test]
fn bad_tolerance_is_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_liesim"))
        .args(["expect", &fixture("cartan_empty.json")])
        .env("LIESIM_TOLERANCE", "-1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "{out:?}");
    schema_check("error-output.schema.json", &json_of(&out));
}

#[test]
fn oracle_check_smoke() {
    let v = liesim(&["oracle-check", "--algebra", "so(4)", "--cases", "5"]);
    assert_eq!(v.status.code(), Some(0), "{v:?}");
    assert_eq!(json_of(&v)["passed"], true);
}

#[test]
fn bench_single_n_csv() {
    let out = liesim(&["bench", "--n-min", "3", "--n-max", "3", "--min-seconds", "0.01", "--emit-csv"]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("n,"));
    assert!(lines.next().unwrap().starts_with("3,"));
}

#[test]
fn input_fixtures_match_schemas() {
    let read = |n: &str| -> Value { serde_json::from_str(&std::fs::read_to_string(fixture(n)).unwrap()).unwrap() };
    schema_check("algebra.schema.json", &read("su2.json"));
    for c in ["cartan_empty.json", "so4_circuit.json", "so4_exp_zero.json"] {
        schema_check("circuit.schema.json", &read(c));
    }
    for m in ["ising_n2.json", "ising_n4.json", "diagonal_fermions.json", "so6_random.json", "minus_h.json", "degenerate.json"] {
        schema_check("model.schema.json", &read(m));
    }
    schema_check("config.schema.json", &read("config.json"));
}
