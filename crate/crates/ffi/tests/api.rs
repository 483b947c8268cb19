use std::ffi::{c_char, c_int, CStr, CString};
use std::ptr;

use sigmapoly_ffi::*;

fn take_string(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { sp_string_free(s) };
    out
}

fn parse(text: &str) -> *mut SpPoly {
    let c = CString::new(text).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { sp_poly_parse(c.as_ptr(), &mut p) }, SpStatus::Ok);
    p
}

fn format(p: *const SpPoly) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { sp_poly_format(p, &mut s) }, SpStatus::Ok);
    take_string(s)
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(sp_last_error()) }
        .to_str()
        .unwrap()
        .to_owned()
}

#[test]
fn parse_format_round_trip() {
    let p = parse("3/2*y1^2 - y0");
    assert_eq!(format(p), "-y0 + 3/2*y1^2");
    unsafe { sp_poly_free(p) };
}

#[test]
fn parse_errors_map_to_status() {
    let mut p = ptr::null_mut();
    let c = CString::new("y1 y2").unwrap();
    assert_eq!(
        unsafe { sp_poly_parse(c.as_ptr(), &mut p) },
        SpStatus::Syntax
    );
    assert!(p.is_null());
    assert!(last_error().contains("byte 3"), "{}", last_error());
    let c = CString::new("y-1").unwrap();
    assert_eq!(
        unsafe { sp_poly_parse(c.as_ptr(), &mut p) },
        SpStatus::NegativeIndex
    );
    let c = CString::new("1/0*y1").unwrap();
    assert_eq!(
        unsafe { sp_poly_parse(c.as_ptr(), &mut p) },
        SpStatus::ZeroDenominator
    );
    assert_eq!(
        unsafe { sp_poly_parse(ptr::null(), &mut p) },
        SpStatus::NullPointer
    );
    let bad = [0xffu8, 0];
    assert_eq!(
        unsafe { sp_poly_parse(bad.as_ptr().cast(), &mut p) },
        SpStatus::InvalidUtf8
    );
    // success clears the message
    let q = parse("y0");
    assert_eq!(last_error(), "");
    unsafe { sp_poly_free(q) };
}

#[test]
fn witnesses_and_arithmetic() {
    let mut a2 = ptr::null_mut();
    assert_eq!(unsafe { sp_make_a(2, &mut a2) }, SpStatus::Ok);
    assert_eq!(format(a2), "y5*y9 + y10*y18");
    let mut bad = ptr::null_mut();
    assert_eq!(unsafe { sp_make_a(0, &mut bad) }, SpStatus::Contract);
    let mut u0 = ptr::null_mut();
    assert_eq!(unsafe { sp_make_u(0, &mut u0) }, SpStatus::Ok);
    assert_eq!(format(u0), "y0*y1");

    let mut eord = 0usize;
    assert_eq!(unsafe { sp_poly_max_eord(a2, &mut eord) }, SpStatus::Ok);
    assert_eq!(eord, 8);

    let mut shifted = ptr::null_mut();
    assert_eq!(unsafe { sp_poly_shift(u0, 3, &mut shifted) }, SpStatus::Ok);
    assert_eq!(format(shifted), "y3*y4");
    assert_eq!(
        unsafe { sp_poly_shift(u0, usize::MAX, &mut bad) },
        SpStatus::IndexOverflow
    );

    let (x, y) = (parse("y0 + y2"), parse("y1 + y4"));
    let mut prod = ptr::null_mut();
    let mut sum = ptr::null_mut();
    assert_eq!(unsafe { sp_poly_mul(x, y, &mut prod) }, SpStatus::Ok);
    assert_eq!(unsafe { sp_poly_add(x, y, &mut sum) }, SpStatus::Ok);
    assert_eq!(format(prod), "y0*y1 + y0*y4 + y1*y2 + y2*y4");
    assert_eq!(format(sum), "y0 + y1 + y2 + y4");
    let mut eq: c_int = -1;
    assert_eq!(unsafe { sp_poly_equal(x, x, &mut eq) }, SpStatus::Ok);
    assert_eq!(eq, 1);
    assert_eq!(unsafe { sp_poly_equal(x, y, &mut eq) }, SpStatus::Ok);
    assert_eq!(eq, 0);

    let mut zero = ptr::null_mut();
    let z = parse("0");
    assert_eq!(
        unsafe { sp_poly_max_eord(z, &mut eord) },
        SpStatus::Contract
    );
    assert_eq!(unsafe { sp_poly_mul(x, z, &mut zero) }, SpStatus::Ok);
    assert_eq!(format(zero), "0");

    for p in [a2, u0, shifted, x, y, prod, sum, z, zero] {
        unsafe { sp_poly_free(p) };
    }
    unsafe { sp_poly_free(ptr::null_mut()) };
}

#[test]
fn slice_and_factorization() {
    let a2 = parse("y5*y9 + y10*y18");
    let mut member: c_int = -1;
    let mut cert = ptr::null_mut();
    assert_eq!(
        unsafe { sp_slice_membership(a2, 1, &mut member, &mut cert) },
        SpStatus::Ok
    );
    assert_eq!(member, 0);
    let v: serde_json::Value = serde_json::from_str(&take_string(cert)).unwrap();
    assert_eq!(v["refutation"]["monomial"], "y5*y9");
    assert_eq!(
        unsafe { sp_slice_membership(a2, 2, &mut member, ptr::null_mut()) },
        SpStatus::Ok
    );
    assert_eq!(member, 1);

    let mut rank = 0usize;
    assert_eq!(unsafe { sp_gram_rank(a2, &mut rank) }, SpStatus::Ok);
    assert_eq!(rank, 4);
    let lin = parse("y0 + y1");
    assert_eq!(unsafe { sp_gram_rank(lin, &mut rank) }, SpStatus::Contract);

    let q = parse("y0*y1 + y0*y4 + y1*y2 + y2*y4");
    let mut js = ptr::null_mut();
    assert_eq!(unsafe { sp_factor_quadratic(q, &mut js) }, SpStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(js)).unwrap();
    assert_eq!(v["kind"], "product");
    assert_eq!(v["rank"], 2);
    for p in [a2, lin, q] {
        unsafe { sp_poly_free(p) };
    }
}

#[test]
fn chain_json() {
    let mut js = ptr::null_mut();
    assert_eq!(unsafe { sp_acc_chain_json(2, &mut js) }, SpStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take_string(js)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
    assert_eq!(v[1]["max_eord_bound"], 8);
    assert_eq!(v[1]["separator_eords"], serde_json::json!([16, 32]));
    assert_eq!(unsafe { sp_acc_chain_json(0, &mut js) }, SpStatus::Contract);
}

#[test]
fn cli_in_process() {
    let args: Vec<CString> = ["gen", "--family", "A", "--n", "1"]
        .iter()
        .map(|s| CString::new(*s).unwrap())
        .collect();
    let argv: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
    let (mut out, mut err, mut code) = (ptr::null_mut(), ptr::null_mut(), -1);
    assert_eq!(
        unsafe {
            sp_run_cli(
                argv.len() as c_int,
                argv.as_ptr(),
                &mut out,
                &mut err,
                &mut code,
            )
        },
        SpStatus::Ok
    );
    assert_eq!(code, 0);
    assert_eq!(take_string(out), "y0*y1 + y2*y4\n");
    assert_eq!(take_string(err), "");

    let args: Vec<CString> = ["acc", "--m-max", "0"]
        .iter()
        .map(|s| CString::new(*s).unwrap())
        .collect();
    let argv: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
    assert_eq!(
        unsafe {
            sp_run_cli(
                3,
                argv.as_ptr(),
                ptr::null_mut(),
                ptr::null_mut(),
                &mut code,
            )
        },
        SpStatus::Ok
    );
    assert_eq!(code, 2);
    assert_eq!(
        unsafe { sp_run_cli(3, ptr::null(), ptr::null_mut(), ptr::null_mut(), &mut code) },
        SpStatus::NullPointer
    );
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(sp_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn errors_are_thread_local() {
    let c = CString::new("y1 +").unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { sp_poly_parse(c.as_ptr(), &mut p) },
        SpStatus::Syntax
    );
    let other = std::thread::spawn(last_error).join().unwrap();
    assert_eq!(other, "");
    assert!(!last_error().is_empty());
}
