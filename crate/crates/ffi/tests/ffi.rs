use std::ffi::{CStr, CString};
use std::ptr;

use liesim_ffi::*;

fn take(p: *mut std::ffi::c_char) -> serde_json::Value {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { ls_string_free(p) };
    serde_json::from_str(&s).unwrap()
}

fn last_error() -> String {
    let p = ls_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn version_is_set() {
    let v = unsafe { CStr::from_ptr(ls_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn expect_round_trip() {
    let circuit = CString::new(
        r#"{"algebra": "su(2)", "weight": [3], "ensemble": [{"p": 1}],
            "measure": {"kind": "element", "coeffs": [1, 0, 0]}}"#,
    )
    .unwrap();
    let mut out = ptr::null_mut();
    let st = unsafe { ls_expect(circuit.as_ptr(), ptr::null(), &mut out) };
    assert_eq!(st, LsStatus::Ok);
    assert!(ls_last_error().is_null());
    let v = take(out);
    assert_eq!(v["value"][0].as_f64().unwrap(), 3.0);
}

#[test]
fn solve_and_prepare_ising() {
    let model = CString::new(r#"{"kind": "ising", "n_sites": 2, "g": 1.3}"#).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { ls_solve(model.as_ptr(), ptr::null(), &mut out) }, LsStatus::Ok);
    let v = take(out);
    let e: Vec<f64> = v["eigenvalues"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    let r = (4.0f64 + 1.69).sqrt();
    assert!((e[0] + r).abs() < 1e-10 && (e[3] - r).abs() < 1e-10);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { ls_prepare(model.as_ptr(), ptr::null(), &mut out) }, LsStatus::Ok);
    let v = take(out);
    assert!((v["energy"].as_f64().unwrap() + r).abs() < 1e-10);
}

#[test]
fn error_codes() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { ls_expect(ptr::null(), ptr::null(), &mut out) }, LsStatus::NullPointer);
    let bad = CString::new("{not json").unwrap();
    assert_eq!(unsafe { ls_expect(bad.as_ptr(), ptr::null(), &mut out) }, LsStatus::ParseError);
    assert!(last_error().contains("line 1"));
    let model = CString::new(r#"{"kind": "ising", "n_sites": 1, "g": 1.0}"#).unwrap();
    assert_eq!(unsafe { ls_solve(model.as_ptr(), ptr::null(), &mut out) }, LsStatus::DomainError);
    let cfg = CString::new(r#"{"tolerance": -1}"#).unwrap();
    let ok_model = CString::new(r#"{"kind": "ising", "n_sites": 2, "g": 1.0}"#).unwrap();
    assert_eq!(unsafe { ls_solve(ok_model.as_ptr(), cfg.as_ptr(), &mut out) }, LsStatus::DomainError);
    let bytes = [0xffu8, 0];
    assert_eq!(unsafe { ls_validate(bytes.as_ptr() as *const _, &mut out) }, LsStatus::InvalidUtf8);
}

#[test]
fn simulator_handle() {
    let setup = CString::new(r#"{"algebra": "so(4)", "weight": ["1/2", "1/2"]}"#).unwrap();
    let mut sim = ptr::null_mut();
    assert_eq!(unsafe { ls_simulator_new(setup.as_ptr(), &mut sim) }, LsStatus::Ok);
    let m = unsafe { ls_simulator_dim(sim) };
    assert_eq!(m, 6);
    let mut coeffs = vec![0.0; 2 * m];
    coeffs[0] = 1.0;
    coeffs[2] = -2.0;
    let rho = CString::new(r#"[{"p": 0.5}, {"p": 0.5}]"#).unwrap();
    let mut out = [0.0; 2];
    let st = unsafe { ls_simulator_expect_element(sim, rho.as_ptr(), coeffs.as_ptr(), coeffs.len(), 1e-10, out.as_mut_ptr()) };
    assert_eq!(st, LsStatus::Ok);
    assert!((out[0] + 0.5).abs() < 1e-15 && out[1] == 0.0);
    let st = unsafe { ls_simulator_expect_element(sim, rho.as_ptr(), coeffs.as_ptr(), 3, 1e-10, out.as_mut_ptr()) };
    assert_eq!(st, LsStatus::ParseError);
    unsafe { ls_simulator_free(sim) };
    assert_eq!(unsafe { ls_simulator_dim(ptr::null()) }, 0);
    let bad = CString::new(r#"{"algebra": "so(4)", "weight": [-1, 0]}"#).unwrap();
    assert_eq!(unsafe { ls_simulator_new(bad.as_ptr(), &mut sim) }, LsStatus::DomainError);
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/liesim.h");
    let text = std::fs::read_to_string(header).unwrap();
    for f in ["ls_expect", "ls_solve", "ls_prepare", "ls_validate", "ls_simulator_new", "ls_string_free", "ls_last_error"] {
        assert!(text.contains(f), "{f} missing from header");
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(&src, format!("#include \"{header}\"\nint main(void) {{ return ls_version() == 0; }}\n")).unwrap();
    match std::process::Command::new("cc").args(["-std=c99", "-fsyntax-only"]).arg(&src).status() {
        Ok(s) => assert!(s.success(), "header does not compile"),
        Err(_) => eprintln!("no C compiler found; syntax check skipped"),
    }
}
