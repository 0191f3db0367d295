//! C ABI over the `dgla` engine.
//!
//! Every fallible call returns a [`DglaStatus`]; on failure the message is
//! kept per thread and read with [`dgla_last_error`]. Strings handed out by
//! this library are owned by the caller and released with
//! [`dgla_string_free`]. Handles are released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use clap::Parser;
use dgla::artin::{parse_ring, ring_to_json, ArtinAlgebra};
use dgla::dgla::fixtures::fixture;
use dgla::dgla::json as dgla_json;
use dgla::dgla::{validate_dgla, Dgla};
use dgla::gauge::{gauge_equivalent, Verdict};
use dgla::kuranishi::kuranishi_polynomials;
use dgla::mc::{element_from_json, element_to_json, mc_check, TensorDgla};
use dgla::workbench::json::vector_json;
use dgla::workbench::{run, Cli};
use dgla::Error;
use serde_json::{json, Value};

/// Result of a call; success is zero.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DglaStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    UnknownFixture = 4,
    /// Input is well formed but violates a mathematical precondition.
    Domain = 5,
    /// Degree window or budget exhausted.
    Limit = 6,
    Internal = 7,
    Panic = 8,
}

/// Opaque DGLA.
pub struct DglaAlgebra(Dgla);

/// Opaque local Artinian ring.
pub struct DglaRing(ArtinAlgebra);

thread_local! {
    static LAST_ERROR: RefCell<Option<String>> = const { RefCell::new(None) };
}

struct Failure(DglaStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse(_) | Error::Io(_) => DglaStatus::Parse,
            Error::UnknownFixture(_) => DglaStatus::UnknownFixture,
            Error::Window(_) | Error::CapOverflow(_) => DglaStatus::Limit,
            Error::Internal(_) => DglaStatus::Internal,
            _ => DglaStatus::Domain,
        };
        Failure(status, e.to_string())
    }
}

type Res<T> = Result<T, Failure>;

fn guard(f: impl FnOnce() -> Res<()>) -> DglaStatus {
    let outcome = catch_unwind(AssertUnwindSafe(f))
        .unwrap_or_else(|_| Err(Failure(DglaStatus::Panic, "panic inside dgla".into())));
    match outcome {
        Ok(()) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            DglaStatus::Ok
        }
        Err(Failure(status, msg)) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
            status
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(DglaStatus::NullArgument, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Res<&'a str> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(DglaStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Res<&'a T> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Res<()> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_json(out: *mut *mut c_char, v: &Value) -> Res<()> {
    if out.is_null() {
        return Err(null("out"));
    }
    let s =
        CString::new(v.to_string()).map_err(|e| Failure(DglaStatus::Internal, e.to_string()))?;
    put(out, s.into_raw(), "out")
}

unsafe fn put_box<T>(out: *mut *mut T, value: T) -> Res<()> {
    if out.is_null() {
        return Err(null("out"));
    }
    put(out, Box::into_raw(Box::new(value)), "out")
}

/// Message of the last failed call on this thread, or null. Free with
/// `dgla_string_free`.
#[no_mangle]
pub extern "C" fn dgla_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| match e.borrow().as_deref() {
        Some(m) => CString::new(m.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn dgla_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Static version string; do not free.
#[no_mangle]
pub extern "C" fn dgla_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builtin by name, e.g. `"QOBS"` or `"HW2_d"`.
///
/// # Safety
/// `name` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn dgla_fixture(
    name: *const c_char,
    out: *mut *mut DglaAlgebra,
) -> DglaStatus {
    guard(|| {
        let l = fixture(text(name, "name")?)?;
        put_box(out, DglaAlgebra(l))
    })
}

/// # Safety
/// `json` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn dgla_from_json(
    json: *const c_char,
    out: *mut *mut DglaAlgebra,
) -> DglaStatus {
    guard(|| {
        let l = dgla_json::dgla_from_json(text(json, "json")?)?;
        put_box(out, DglaAlgebra(l))
    })
}

/// # Safety
/// `l` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn dgla_to_json(l: *const DglaAlgebra, out: *mut *mut c_char) -> DglaStatus {
    guard(|| put_json(out, &dgla_json::dgla_to_json(&borrow(l, "dgla")?.0)))
}

/// # Safety
/// `l` comes from this library and is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dgla_free(l: *mut DglaAlgebra) {
    if !l.is_null() {
        drop(Box::from_raw(l));
    }
}

/// Ring from the short syntax (`"eps"`, `"t^3"`, `"x^2,xy,y^2"`) or, when
/// the text starts with `{`, from its JSON form.
///
/// # Safety
/// `spec` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn dgla_ring_parse(
    spec: *const c_char,
    out: *mut *mut DglaRing,
) -> DglaStatus {
    guard(|| put_box(out, DglaRing(parse_ring(text(spec, "spec")?)?)))
}

/// # Safety
/// `a` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn dgla_ring_to_json(
    a: *const DglaRing,
    out: *mut *mut c_char,
) -> DglaStatus {
    guard(|| put_json(out, &ring_to_json(&borrow(a, "ring")?.0)))
}

/// # Safety
/// `a` comes from this library and is not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dgla_ring_free(a: *mut DglaRing) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Exhaustive axiom check: `{"passed", "checked", "violations": [{"identity", "tuple"}]}`.
///
/// # Safety
/// `l` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn dgla_validate(l: *const DglaAlgebra, out: *mut *mut c_char) -> DglaStatus {
    guard(|| {
        let rep = validate_dgla(&borrow(l, "dgla")?.0);
        let violations: Vec<Value> = rep
            .violations
            .iter()
            .map(|v| json!({ "identity": v.identity.to_string(), "tuple": v.tuple }))
            .collect();
        put_json(
            out,
            &json!({ "passed": rep.passed(), "checked": rep.checked, "violations": violations }),
        )
    })
}

/// Writes whether `element` (element JSON) solves the Maurer–Cartan equation over `a`.
///
/// # Safety
/// Handles are live, `element` is a NUL-terminated string, `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn dgla_mc_check(
    l: *const DglaAlgebra,
    a: *const DglaRing,
    element: *const c_char,
    out: *mut bool,
) -> DglaStatus {
    guard(|| {
        let t = TensorDgla::new(&borrow(l, "dgla")?.0, &borrow(a, "ring")?.0)?;
        let x = element_from_json(&t, text(element, "element")?)?;
        put(out, mc_check(&t, &x)?, "out")
    })
}

/// Gauge equivalence of two Maurer–Cartan elements. The JSON carries
/// `"verdict"` (`"equivalent"`, `"not_equivalent"` or `"unknown"`),
/// `"complete"`, and the witness, certificate or diagnostic.
///
/// # Safety
/// Handles are live, `x` and `y` are NUL-terminated strings, `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn dgla_gauge_equivalent(
    l: *const DglaAlgebra,
    a: *const DglaRing,
    x: *const c_char,
    y: *const c_char,
    budget: usize,
    out: *mut *mut c_char,
) -> DglaStatus {
    guard(|| {
        let (l, a) = (&borrow(l, "dgla")?.0, &borrow(a, "ring")?.0);
        let t = TensorDgla::new(l, a)?;
        let x = element_from_json(&t, text(x, "x")?)?;
        let y = element_from_json(&t, text(y, "y")?)?;
        let d = gauge_equivalent(l, a, &x, &y, budget)?;
        let mut v = match d.verdict {
            Verdict::Equivalent { witness } => {
                json!({ "verdict": "equivalent", "witness": element_to_json(&t, &witness) })
            }
            Verdict::NotEquivalent { certificate } => json!({
                "verdict": "not_equivalent",
                "certificate": {
                    "step": certificate.step,
                    "ring": certificate.ring,
                    "class": certificate.coords.iter().map(|r| vector_json(r)).collect::<Vec<_>>(),
                },
            }),
            Verdict::Unknown { diagnostic } => {
                json!({ "verdict": "unknown", "diagnostic": diagnostic })
            }
        };
        v["complete"] = json!(d.complete);
        put_json(out, &v)
    })
}

/// Kuranishi polynomials truncated above `order`.
///
/// # Safety
/// `l` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn dgla_kuranishi_polynomials(
    l: *const DglaAlgebra,
    order: usize,
    out: *mut *mut c_char,
) -> DglaStatus {
    guard(|| {
        put_json(
            out,
            &kuranishi_polynomials(&borrow(l, "dgla")?.0, order)?.to_json(),
        )
    })
}

/// Runs a workbench command. `argv_json` is a JSON array of the command-line
/// arguments without the program name, e.g.
/// `["gauge","equiv","--dgla","builtin:D2","--x","0","--y","0"]`.
/// The run report goes to `out` and the CLI exit code to `exit_code`.
///
/// # Safety
/// `argv_json` is a NUL-terminated string; `out` and `exit_code` are writable.
#[no_mangle]
pub unsafe extern "C" fn dgla_run(
    argv_json: *const c_char,
    out: *mut *mut c_char,
    exit_code: *mut i32,
) -> DglaStatus {
    guard(|| {
        let args: Vec<String> = serde_json::from_str(text(argv_json, "argv_json")?)
            .map_err(|e| Failure(DglaStatus::Parse, format!("argv_json: {e}")))?;
        let cli = Cli::try_parse_from(std::iter::once("dgla".to_string()).chain(args))
            .map_err(|e| Failure(DglaStatus::Parse, e.to_string()))?;
        let report = run(&cli)?;
        let v = serde_json::to_value(&report)
            .map_err(|e| Failure(DglaStatus::Internal, e.to_string()))?;
        put(exit_code, report.exit_code(), "exit_code")?;
        put_json(out, &v)
    })
}
