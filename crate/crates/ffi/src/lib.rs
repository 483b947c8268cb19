//! C ABI for `sigmapoly`.
//!
//! Polynomials cross the boundary as opaque `SpPoly` handles owned by the
//! caller and released with `sp_poly_free`. Strings returned through `char **`
//! out-parameters are released with `sp_string_free`. Every function returns an
//! `SpStatus`; on failure `sp_last_error` describes the error on the calling
//! thread. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use sigmapoly::ideal::{
    acc_chain_experiment, degree2_slice_membership, factor_quadratic, gram_matrix,
};
use sigmapoly::witness::{make_a, make_u};
use sigmapoly::{DiffPoly, Error};

/// Opaque polynomial handle.
pub struct SpPoly {
    inner: DiffPoly,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    NegativeIndex = 4,
    ZeroDenominator = 5,
    IndexOverflow = 6,
    Contract = 7,
    Internal = 8,
    Panic = 9,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> SpStatus {
    match e {
        Error::Syntax { .. } => SpStatus::Syntax,
        Error::NegativeIndex { .. } => SpStatus::NegativeIndex,
        Error::ZeroDenominator { .. } => SpStatus::ZeroDenominator,
        Error::IndexOverflow(_) => SpStatus::IndexOverflow,
        Error::Contract(_) => SpStatus::Contract,
        Error::Internal(_) => SpStatus::Internal,
    }
}

struct Failure(SpStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(SpStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            SpStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(&message);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(&format!("panic: {msg}"));
            SpStatus::Panic
        }
    }
}

unsafe fn poly_ref<'a>(p: *const SpPoly, what: &str) -> Result<&'a DiffPoly, Failure> {
    p.as_ref().map(|p| &p.inner).ok_or_else(|| null(what))
}

unsafe fn str_arg<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Failure(SpStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn put_poly(out: *mut *mut SpPoly, p: DiffPoly) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(SpPoly { inner: p }));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = CString::new(s.replace('\0', " "))
        .expect("no interior nul")
        .into_raw();
    Ok(())
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String, Failure> {
    serde_json::to_string(v).map_err(|e| Failure(SpStatus::Internal, e.to_string()))
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn sp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, empty after a success.
/// Valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn sp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses `text` in the polynomial grammar.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_poly_parse(text: *const c_char, out: *mut *mut SpPoly) -> SpStatus {
    guard(|| {
        let s = str_arg(text, "text")?;
        put_poly(out, s.parse::<DiffPoly>()?)
    })
}

/// Canonical text form of `p`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_poly_format(p: *const SpPoly, out: *mut *mut c_char) -> SpStatus {
    guard(|| put_string(out, poly_ref(p, "p")?.to_string()))
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `p` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sp_poly_free(p: *mut SpPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `u(n)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_make_u(n: u32, out: *mut *mut SpPoly) -> SpStatus {
    guard(|| put_poly(out, make_u(n)?))
}

/// `A(n)`, `n >= 1`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_make_a(n: u32, out: *mut *mut SpPoly) -> SpStatus {
    guard(|| put_poly(out, make_a(n)?))
}

/// `sigma^k(p)`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_poly_shift(
    p: *const SpPoly,
    k: usize,
    out: *mut *mut SpPoly,
) -> SpStatus {
    guard(|| put_poly(out, poly_ref(p, "p")?.shift(k)?))
}

/// `a + b`.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_poly_add(
    a: *const SpPoly,
    b: *const SpPoly,
    out: *mut *mut SpPoly,
) -> SpStatus {
    guard(|| put_poly(out, poly_ref(a, "a")? + poly_ref(b, "b")?))
}

/// `a * b`.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_poly_mul(
    a: *const SpPoly,
    b: *const SpPoly,
    out: *mut *mut SpPoly,
) -> SpStatus {
    guard(|| put_poly(out, poly_ref(a, "a")? * poly_ref(b, "b")?))
}

/// Writes 1 to `out` if `a == b`, else 0.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_poly_equal(
    a: *const SpPoly,
    b: *const SpPoly,
    out: *mut c_int,
) -> SpStatus {
    guard(|| {
        let eq = poly_ref(a, "a")? == poly_ref(b, "b")?;
        *out.as_mut().ok_or_else(|| null("out"))? = c_int::from(eq);
        Ok(())
    })
}

/// Largest effective order over the terms of `p`. Contract error for zero.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_poly_max_eord(p: *const SpPoly, out: *mut usize) -> SpStatus {
    guard(|| {
        let e = poly_ref(p, "p")?
            .max_eord()
            .ok_or_else(|| Failure(SpStatus::Contract, "zero polynomial has no terms".into()))?;
        *out.as_mut().ok_or_else(|| null("out"))? = e;
        Ok(())
    })
}

/// Degree-2 slice membership of `q` against `[A(1), ..., A(m)]`. Writes 1 or 0
/// to `is_member` and, if `certificate_json` is not null, the certificate.
///
/// # Safety
/// `q` must be a live handle; `is_member` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_slice_membership(
    q: *const SpPoly,
    m: u32,
    is_member: *mut c_int,
    certificate_json: *mut *mut c_char,
) -> SpStatus {
    guard(|| {
        let cert = degree2_slice_membership(poly_ref(q, "q")?, m)?;
        *is_member.as_mut().ok_or_else(|| null("is_member"))? = c_int::from(cert.is_member());
        if !certificate_json.is_null() {
            put_string(certificate_json, to_json(&cert)?)?;
        }
        Ok(())
    })
}

/// Exact rank of the Gram matrix of the homogeneous quadratic `q`.
///
/// # Safety
/// `q` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_gram_rank(q: *const SpPoly, out: *mut usize) -> SpStatus {
    guard(|| {
        let r = gram_matrix(poly_ref(q, "q")?)?.rank();
        *out.as_mut().ok_or_else(|| null("out"))? = r;
        Ok(())
    })
}

/// Factorization verdict for `q` as JSON.
///
/// # Safety
/// `q` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_factor_quadratic(q: *const SpPoly, out: *mut *mut c_char) -> SpStatus {
    guard(|| put_string(out, to_json(&factor_quadratic(poly_ref(q, "q")?)?)?))
}

/// Chain certificates for `m = 1..=m_max` as a JSON array.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_acc_chain_json(m_max: u32, out: *mut *mut c_char) -> SpStatus {
    guard(|| put_string(out, to_json(&acc_chain_experiment(m_max)?)?))
}

/// Runs the command line `sigmapoly argv[0] ... argv[argc-1]` in process.
/// Standard output goes to `out_stdout`, standard error to `out_stderr` (either
/// may be null) and the process exit code to `out_exit`.
///
/// # Safety
/// `argv` must hold `argc` nul-terminated strings; `out_exit` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_run_cli(
    argc: c_int,
    argv: *const *const c_char,
    out_stdout: *mut *mut c_char,
    out_stderr: *mut *mut c_char,
    out_exit: *mut c_int,
) -> SpStatus {
    guard(|| {
        let n = usize::try_from(argc)
            .map_err(|_| Failure(SpStatus::Contract, format!("argc = {argc}")))?;
        if n > 0 && argv.is_null() {
            return Err(null("argv"));
        }
        let mut args = vec!["sigmapoly".to_string()];
        for i in 0..n {
            args.push(str_arg(*argv.add(i), "argv[i]")?.to_string());
        }
        let outcome = sigmapoly::cli::run(args);
        *out_exit.as_mut().ok_or_else(|| null("out_exit"))? = outcome.exit_code;
        if !out_stdout.is_null() {
            put_string(out_stdout, outcome.stdout)?;
        }
        if !out_stderr.is_null() {
            put_string(out_stderr, outcome.stderr)?;
        }
        Ok(())
    })
}
