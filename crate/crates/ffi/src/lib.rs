//! C interface to `liesim`.
//!
//! Strings cross the boundary as NUL-terminated UTF-8. Every function returns an
//! [`LsStatus`]; on failure the message is available from [`ls_last_error`] on the
//! same thread until the next call. Strings returned through `out` pointers are
//! owned by the caller and released with [`ls_string_free`]. Panics are caught and
//! reported as `LS_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use liesim::algebra::json::AlgebraRef;
use liesim::algebra::{AlgebraElement, AlgebraSpec, Weight};
use liesim::config::RunConfig;
use liesim::engine::{Ensemble, Simulator};
use liesim::io::{gates_from_json, TermJson};
use liesim::rep::{default_rep, MatrixRep, MatrixRepJson};
use liesim::{commands, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed JSON, wrong shapes or unreadable input.
    ParseError = 3,
    /// Well-formed input rejected by the algorithms: invalid values, failed
    /// validation, non-convergence.
    DomainError = 4,
    Panic = 5,
}

/// Algebra, rep and highest weight fixed once for repeated evaluations.
pub struct LsSimulator {
    spec: AlgebraSpec,
    rep: MatrixRep,
    weight: Weight,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> LsStatus {
    if e.exit_code() == 2 {
        LsStatus::ParseError
    } else {
        LsStatus::DomainError
    }
}

struct Fail(LsStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

impl From<serde_json::Error> for Fail {
    fn from(e: serde_json::Error) -> Self {
        Fail(LsStatus::ParseError, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> LsStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LsStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_error(format!("internal error: {msg}"));
            LsStatus::Panic
        }
    }
}

/// # Safety
/// `p` must be null or a valid NUL-terminated string.
unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(LsStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(LsStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// # Safety
/// `p` must be null or a valid NUL-terminated string.
unsafe fn config(p: *const c_char) -> Result<RunConfig, Fail> {
    if p.is_null() {
        return Ok(RunConfig::default());
    }
    Ok(RunConfig::from_json(text(p, "config")?)?)
}

/// # Safety
/// `out` must be null or valid for writing a pointer.
unsafe fn emit<T: serde::Serialize>(value: &T, out: *mut *mut c_char) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(LsStatus::NullPointer, "output pointer is null".into()));
    }
    let s = serde_json::to_string(value)?;
    *out = CString::new(s).map_err(|e| Fail(LsStatus::Panic, e.to_string()))?.into_raw();
    Ok(())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn ls_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message of the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn ls_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from an `out` parameter of this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ls_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Bracket consistency report of an algebra file. A report with violations is
/// still `LS_STATUS_OK`; read its `clean` field.
///
/// # Safety
/// `spec_json` must be a valid string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ls_validate(spec_json: *const c_char, out: *mut *mut c_char) -> LsStatus {
    guard(|| emit(&commands::validate(text(spec_json, "spec")?)?, out))
}

/// Runs a circuit file. `config_json` may be null for defaults.
///
/// # Safety
/// Strings must be valid or null where allowed; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ls_expect(circuit_json: *const c_char, config_json: *const c_char, out: *mut *mut c_char) -> LsStatus {
    guard(|| emit(&commands::expect(text(circuit_json, "circuit")?, &config(config_json)?)?, out))
}

/// Spectrum of a model file.
///
/// # Safety
/// As for [`ls_expect`].
#[no_mangle]
pub unsafe extern "C" fn ls_solve(model_json: *const c_char, config_json: *const c_char, out: *mut *mut c_char) -> LsStatus {
    guard(|| emit(&commands::solve(text(model_json, "model")?, &config(config_json)?)?, out))
}

/// Ground-state preparation of a model file.
///
/// # Safety
/// As for [`ls_expect`].
#[no_mangle]
pub unsafe extern "C" fn ls_prepare(model_json: *const c_char, config_json: *const c_char, out: *mut *mut c_char) -> LsStatus {
    guard(|| emit(&commands::prepare(text(model_json, "model")?, &config(config_json)?)?, out))
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct Setup {
    algebra: AlgebraRef,
    weight: Weight,
    #[serde(default)]
    rep: Option<MatrixRepJson>,
}

/// Creates a simulator from `{"algebra": …, "weight": […], "rep": optional}`.
///
/// # Safety
/// `setup_json` must be a valid string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ls_simulator_new(setup_json: *const c_char, out: *mut *mut LsSimulator) -> LsStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail(LsStatus::NullPointer, "output pointer is null".into()));
        }
        let s: Setup = serde_json::from_str(text(setup_json, "setup")?)?;
        let spec = s.algebra.resolve()?;
        let rep = match &s.rep {
            Some(r) => r.to_rep(&spec)?,
            None => default_rep(&spec)?,
        };
        Simulator::new(&spec, &rep, &s.weight)?;
        *out = Box::into_raw(Box::new(LsSimulator { spec, rep, weight: s.weight }));
        Ok(())
    })
}

/// # Safety
/// `sim` must be null or come from [`ls_simulator_new`], freed once.
#[no_mangle]
pub unsafe extern "C" fn ls_simulator_free(sim: *mut LsSimulator) {
    if !sim.is_null() {
        drop(Box::from_raw(sim));
    }
}

/// Algebra dimension `M`; coefficient arrays hold `2M` doubles. Zero for null.
///
/// # Safety
/// `sim` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ls_simulator_dim(sim: *const LsSimulator) -> usize {
    sim.as_ref().map_or(0, |s| s.spec.dim())
}

/// `Σ_s p_s ⟨hw|U_s^{-1} W U_s|hw⟩` with `W` given as `len = 2M` interleaved
/// real and imaginary parts and the ensemble as a JSON list of `{p, gates}`.
/// Writes the real and imaginary parts of the value to `out[0]`, `out[1]`.
///
/// # Safety
/// `sim` must be a live handle, `coeffs` readable for `len` doubles, `out`
/// writable for two doubles.
#[no_mangle]
pub unsafe extern "C" fn ls_simulator_expect_element(
    sim: *const LsSimulator,
    ensemble_json: *const c_char,
    coeffs: *const f64,
    len: usize,
    tol: f64,
    out: *mut f64,
) -> LsStatus {
    guard(|| {
        let sim = sim.as_ref().ok_or_else(|| Fail(LsStatus::NullPointer, "simulator is null".into()))?;
        if coeffs.is_null() || out.is_null() {
            return Err(Fail(LsStatus::NullPointer, "coefficient or output array is null".into()));
        }
        let m = sim.spec.dim();
        if len != 2 * m {
            return Err(Fail(LsStatus::ParseError, format!("expected {} doubles, got {len}", 2 * m)));
        }
        let raw = std::slice::from_raw_parts(coeffs, len);
        let c = raw.chunks(2).map(|p| liesim::io::ComplexRepr::Pair([p[0], p[1]]).value()).collect();
        let w = AlgebraElement::from_coeffs(&sim.spec, c)?;
        let terms: Vec<TermJson> = serde_json::from_str(text(ensemble_json, "ensemble")?)?;
        let terms = terms
            .iter()
            .map(|t| Ok((t.p, gates_from_json(&sim.spec, &t.gates)?)))
            .collect::<Result<Vec<_>, Error>>()?;
        let rho = Ensemble::new(terms)?;
        let r = Simulator::new(&sim.spec, &sim.rep, &sim.weight)?.expect_element(&w, &rho, tol)?;
        *out = r.value.re;
        *out.add(1) = r.value.im;
        Ok(())
    })
}
