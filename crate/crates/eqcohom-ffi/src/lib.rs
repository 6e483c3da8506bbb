//! C interface to the equivariant cohomology engine.
//!
//! Conventions, mirrored in the generated `include/eqcohom.h`:
//!
//! * every fallible call returns an [`EcStatus`] and writes results through
//!   out-pointers, which are touched only on success (except where noted);
//! * strings handed out must be released with `ec_string_free`, complexes
//!   with `ec_complex_free`;
//! * after a failure, `ec_last_error_message` returns a human-readable
//!   explanation for the current thread, valid until the next failing call.
//!
//! Cohomology groups cross the boundary rendered as strings in invariant
//! factor order: `"0"`, `"Z"`, `"Z^2 + Z/2 + Z/4"`. Panics are caught at the
//! boundary and reported as `EC_STATUS_PANICKED` rather than unwinding into
//! foreign frames.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use eqcohom::borel::{borel_cohomology, h_theory};
use eqcohom::bredon::bredon_cohomology;
use eqcohom::catalog;
use eqcohom::coeff::parse_system;
use eqcohom::error::EqError;
use eqcohom::zcw::{Z2CwComplex, ZcwError};

/// Status code returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EcStatus {
    /// The call succeeded and any out-pointers were filled in.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The space name is not in the built-in catalog.
    UnknownSpace = 3,
    /// The JSON input could not be parsed.
    ParseFailed = 4,
    /// The complex violates a structural rule (see the error message).
    InvalidComplex = 5,
    /// The coefficient system name or twist was not recognized.
    InvalidSystem = 6,
    /// The request is outside the range the theory covers.
    Unsupported = 7,
    /// The computation itself failed.
    ComputeFailed = 8,
    /// An internal panic was caught at the boundary.
    Panicked = 9,
}

/// Opaque handle to a finite complex with involution.
pub struct EcComplex {
    inner: Z2CwComplex,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let cleaned = msg.replace('\0', " ");
    let stored = CString::new(cleaned).unwrap_or_else(|_| CString::new("error").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(stored));
}

fn fail(status: EcStatus, msg: String) -> EcStatus {
    set_error(msg);
    status
}

fn status_of(e: &EqError) -> EcStatus {
    match e {
        EqError::UnknownSpace(_) => EcStatus::UnknownSpace,
        EqError::InvalidSystem { .. } => EcStatus::InvalidSystem,
        EqError::Zcw(ZcwError::Serialization(_)) => EcStatus::ParseFailed,
        EqError::Zcw(_) => EcStatus::InvalidComplex,
        _ => EcStatus::ComputeFailed,
    }
}

fn report(e: EqError) -> EcStatus {
    fail(status_of(&e), e.to_string())
}

fn guarded<F: FnOnce() -> EcStatus>(f: F) -> EcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(
            EcStatus::Panicked,
            "internal panic caught at the C boundary".to_string(),
        ),
    }
}

/// # Safety
/// `s` must be null or a valid NUL-terminated C string.
unsafe fn take_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, EcStatus> {
    if s.is_null() {
        return Err(fail(
            EcStatus::NullArgument,
            format!("{what} must not be null"),
        ));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(EcStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn give_string(out: *mut *mut c_char, s: String) -> EcStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            EcStatus::Ok
        }
        Err(_) => fail(
            EcStatus::ComputeFailed,
            "result contained an interior NUL byte".to_string(),
        ),
    }
}

unsafe fn give_complex(out: *mut *mut EcComplex, x: Z2CwComplex) -> EcStatus {
    *out = Box::into_raw(Box::new(EcComplex { inner: x }));
    EcStatus::Ok
}

unsafe fn borrow_complex<'a>(x: *const EcComplex) -> Result<&'a Z2CwComplex, EcStatus> {
    if x.is_null() {
        return Err(fail(
            EcStatus::NullArgument,
            "complex handle must not be null".to_string(),
        ));
    }
    Ok(&(*x).inner)
}

fn require_out<T>(out: *mut T, what: &str) -> Result<(), EcStatus> {
    if out.is_null() {
        return Err(fail(
            EcStatus::NullArgument,
            format!("{what} must not be null"),
        ));
    }
    Ok(())
}

/// Version of the library, as a static string. Never freed.
#[no_mangle]
pub extern "C" fn ec_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message describing the most recent failure on the calling thread, or null
/// if nothing has failed yet. The pointer stays valid until the next failing
/// call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn ec_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(msg) => msg.as_ptr(),
        None => ptr::null(),
    })
}

/// Newline-separated names of the built-in spaces, alphabetically sorted.
/// Release the string with `ec_string_free`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ec_catalog_names(out: *mut *mut c_char) -> EcStatus {
    guarded(|| {
        if let Err(s) = require_out(out, "out") {
            return s;
        }
        let mut names = catalog::catalog_names();
        names.sort_unstable();
        give_string(out, names.join("\n"))
    })
}

/// Build a complex from the built-in catalog by name. On success `*out`
/// receives a handle that must be released with `ec_complex_free`.
///
/// # Safety
/// `name` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ec_build(name: *const c_char, out: *mut *mut EcComplex) -> EcStatus {
    guarded(|| {
        if let Err(s) = require_out(out, "out") {
            return s;
        }
        let name = match take_str(name, "name") {
            Ok(v) => v,
            Err(s) => return s,
        };
        match catalog::build(name) {
            Ok(x) => give_complex(out, x),
            Err(e) => report(e),
        }
    })
}

/// Parse a complex from its JSON description and check it structurally.
/// On success `*out` receives a handle to release with `ec_complex_free`.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ec_complex_from_json(
    json: *const c_char,
    out: *mut *mut EcComplex,
) -> EcStatus {
    guarded(|| {
        if let Err(s) = require_out(out, "out") {
            return s;
        }
        let text = match take_str(json, "json") {
            Ok(v) => v,
            Err(s) => return s,
        };
        let x = match Z2CwComplex::from_json_str(text) {
            Ok(x) => x,
            Err(e) => return report(e.into()),
        };
        let violations = x.validate();
        if !violations.is_empty() {
            return report(ZcwError::InvalidComplex { violations }.into());
        }
        give_complex(out, x)
    })
}

/// Serialize a complex to its canonical JSON form. Release the string with
/// `ec_string_free`.
///
/// # Safety
/// `x` must be a live handle from this library and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ec_complex_to_json(
    x: *const EcComplex,
    out: *mut *mut c_char,
) -> EcStatus {
    guarded(|| {
        if let Err(s) = require_out(out, "out") {
            return s;
        }
        let x = match borrow_complex(x) {
            Ok(v) => v,
            Err(s) => return s,
        };
        match x.to_json_string() {
            Ok(text) => give_string(out, text),
            Err(e) => report(e.into()),
        }
    })
}

/// Check a complex against the structural rules. Returns `EC_STATUS_OK` when
/// it passes. When it fails and `out_report` is non-null, `*out_report`
/// receives a newline-separated list of violations (release with
/// `ec_string_free`); on success `*out_report` is set to null.
///
/// # Safety
/// `x` must be a live handle; `out_report` may be null.
#[no_mangle]
pub unsafe extern "C" fn ec_validate(x: *const EcComplex, out_report: *mut *mut c_char) -> EcStatus {
    guarded(|| {
        let x = match borrow_complex(x) {
            Ok(v) => v,
            Err(s) => return s,
        };
        let violations = x.validate();
        if violations.is_empty() {
            if !out_report.is_null() {
                *out_report = ptr::null_mut();
            }
            return EcStatus::Ok;
        }
        let joined = violations.join("\n");
        if !out_report.is_null() {
            let handed = give_string(out_report, joined.clone());
            if handed != EcStatus::Ok {
                return handed;
            }
        }
        fail(EcStatus::InvalidComplex, joined)
    })
}

/// Cohomology of the orbit-cochain theory in one degree, with the coefficient
/// system named as on the command line (`"0~Z"`, `"0~Ztilde"`, `"constZ"`,
/// `"constA-<rank>"`, `"fixedZ-<rank>"`). `*out` receives the rendered group.
///
/// # Safety
/// `x` must be a live handle, `system` a valid NUL-terminated string, and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ec_bredon(
    x: *const EcComplex,
    system: *const c_char,
    degree: u32,
    out: *mut *mut c_char,
) -> EcStatus {
    guarded(|| {
        if let Err(s) = require_out(out, "out") {
            return s;
        }
        let x = match borrow_complex(x) {
            Ok(v) => v,
            Err(s) => return s,
        };
        let name = match take_str(system, "system") {
            Ok(v) => v,
            Err(s) => return s,
        };
        let sys = match parse_system(name) {
            Ok(v) => v,
            Err(e) => return report(e),
        };
        match bredon_cohomology(x, &sys, degree as usize) {
            Ok(g) => give_string(out, g.to_string()),
            Err(e) => report(e),
        }
    })
}

/// Cohomology of the homotopy-quotient theory in one degree, with integer
/// coefficients twisted by the sign representation when `twist` is 1. When
/// `relative_to_fixed` is true the group is taken relative to the fixed
/// subcomplex. `*out` receives the rendered group.
///
/// # Safety
/// `x` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ec_borel(
    x: *const EcComplex,
    twist: u32,
    degree: u32,
    relative_to_fixed: bool,
    out: *mut *mut c_char,
) -> EcStatus {
    guarded(|| {
        if let Err(s) = require_out(out, "out") {
            return s;
        }
        let x = match borrow_complex(x) {
            Ok(v) => v,
            Err(s) => return s,
        };
        if twist > 1 {
            return fail(
                EcStatus::InvalidSystem,
                format!("twist must be 0 or 1, got {twist}"),
            );
        }
        let rel = if relative_to_fixed {
            match x.fixed_subcomplex() {
                Ok((fix, _)) => Some(fix),
                Err(e) => return report(e.into()),
            }
        } else {
            None
        };
        match borel_cohomology(x, twist as u8, degree as usize, rel.as_ref()) {
            Ok(g) => give_string(out, g.to_string()),
            Err(e) => report(e),
        }
    })
}

/// Classify rank-2k families over the complex. `*out` receives a JSON
/// document with the classifying group, the phase count (a decimal string,
/// or null when the group is infinite), and explanatory notes. Returns
/// `EC_STATUS_UNSUPPORTED` above dimension 4, where the correspondence
/// between phases and group elements is not established.
///
/// # Safety
/// `x` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ec_classify(x: *const EcComplex, out: *mut *mut c_char) -> EcStatus {
    guarded(|| {
        if let Err(s) = require_out(out, "out") {
            return s;
        }
        let x = match borrow_complex(x) {
            Ok(v) => v,
            Err(s) => return s,
        };
        let dim = x.graded_len().saturating_sub(1);
        if dim > 4 {
            return fail(
                EcStatus::Unsupported,
                format!(
                    "classification refused: the correspondence between phases and group \
                     elements is established only through dimension 4 (and is one-to-one \
                     only through 3); this complex has dimension {dim}"
                ),
            );
        }
        let group = match h_theory(x, None, 1, 2) {
            Ok(g) => g,
            Err(e) => return report(e),
        };
        let fix = match x.fixed_subcomplex() {
            Ok((fix, _)) => fix,
            Err(e) => return report(e.into()),
        };
        let free_action = fix.graded_len() == 0;

        let mut notes = Vec::new();
        if dim <= 3 {
            notes.push(
                "complete: inequivalent phases correspond one-to-one to group elements"
                    .to_string(),
            );
        } else {
            notes.push(
                "dimension 4: every group element is realized by a phase, but the \
                 correspondence is not established to be one-to-one"
                    .to_string(),
            );
        }
        notes.push("counts rank-2k families; the count is the same for every k >= 1".to_string());
        if free_action {
            notes.push(
                "the involution is free: odd-rank families are also defined for this space \
                 and are not counted here"
                    .to_string(),
            );
        }

        let torsion: Vec<String> = group.torsion().iter().map(|d| d.to_string()).collect();
        let doc = serde_json::json!({
            "schema_version": 1,
            "dimension": dim,
            "group": {
                "free_rank": group.free_rank(),
                "torsion": torsion,
                "rendered": group.to_string(),
            },
            "phases": group.order().map(|o| o.to_string()),
            "complete": dim <= 3,
            "notes": notes,
        });
        give_string(out, doc.to_string())
    })
}

/// Release a complex handle. Null is ignored.
///
/// # Safety
/// `x` must be null or a handle obtained from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ec_complex_free(x: *mut EcComplex) {
    if !x.is_null() {
        drop(Box::from_raw(x));
    }
}

/// Release a string obtained from this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string obtained from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ec_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cstr(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    unsafe fn grab(ptr: *mut c_char) -> String {
        let s = CStr::from_ptr(ptr).to_str().unwrap().to_string();
        ec_string_free(ptr);
        s
    }

    fn last_error() -> String {
        unsafe {
            let p = ec_last_error_message();
            assert!(!p.is_null());
            CStr::from_ptr(p).to_str().unwrap().to_string()
        }
    }

    unsafe fn build(name: &str) -> *mut EcComplex {
        let mut out: *mut EcComplex = ptr::null_mut();
        let status = ec_build(cstr(name).as_ptr(), &mut out);
        assert_eq!(status, EcStatus::Ok);
        assert!(!out.is_null());
        out
    }

    #[test]
    fn version_and_catalog_are_reachable() {
        unsafe {
            let v = CStr::from_ptr(ec_version()).to_str().unwrap();
            assert!(!v.is_empty());
            let mut out: *mut c_char = ptr::null_mut();
            assert_eq!(ec_catalog_names(&mut out), EcStatus::Ok);
            let names = grab(out);
            assert!(names.lines().any(|l| l == "lens-4"));
            assert!(names.lines().count() >= 10);
        }
    }

    #[test]
    fn bredon_matches_the_headline_value() {
        unsafe {
            let x = build("lens-4");
            let mut out: *mut c_char = ptr::null_mut();
            let status = ec_bredon(x, cstr("0~Ztilde").as_ptr(), 2, &mut out);
            assert_eq!(status, EcStatus::Ok);
            assert_eq!(grab(out), "Z/4");
            let status = ec_bredon(x, cstr("0~Ztilde").as_ptr(), 0, &mut out);
            assert_eq!(status, EcStatus::Ok);
            assert_eq!(grab(out), "0");
            ec_complex_free(x);
        }
    }

    #[test]
    fn borel_twisted_point_is_two_periodic() {
        unsafe {
            let x = build("point");
            let mut out: *mut c_char = ptr::null_mut();
            for (degree, expect) in [(0, "0"), (1, "Z/2"), (2, "0"), (3, "Z/2")] {
                let status = ec_borel(x, 1, degree, false, &mut out);
                assert_eq!(status, EcStatus::Ok);
                assert_eq!(grab(out), expect, "degree {degree}");
            }
            assert_eq!(ec_borel(x, 3, 1, false, &mut out), EcStatus::InvalidSystem);
            assert!(last_error().contains("twist must be 0 or 1"));
            ec_complex_free(x);
        }
    }

    #[test]
    fn relative_borel_agrees_with_bredon_on_the_sphere() {
        unsafe {
            let x = build("tr-sphere-2");
            let mut a: *mut c_char = ptr::null_mut();
            let mut b: *mut c_char = ptr::null_mut();
            for degree in 0..4 {
                assert_eq!(ec_borel(x, 1, degree, true, &mut a), EcStatus::Ok);
                assert_eq!(
                    ec_bredon(x, cstr("0~Ztilde").as_ptr(), degree, &mut b),
                    EcStatus::Ok
                );
                assert_eq!(grab(a), grab(b), "degree {degree}");
            }
            ec_complex_free(x);
        }
    }

    #[test]
    fn classification_reports_counts_and_limits() {
        unsafe {
            let x = build("tr-torus-3");
            let mut out: *mut c_char = ptr::null_mut();
            assert_eq!(ec_classify(x, &mut out), EcStatus::Ok);
            let doc: serde_json::Value = serde_json::from_str(&grab(out)).unwrap();
            assert_eq!(doc["phases"], "16");
            assert_eq!(doc["complete"], true);
            assert_eq!(doc["group"]["rendered"], "Z/2 + Z/2 + Z/2 + Z/2");
            ec_complex_free(x);

            let x = build("sphere-antipodal-4");
            assert_eq!(ec_classify(x, &mut out), EcStatus::Ok);
            let doc: serde_json::Value = serde_json::from_str(&grab(out)).unwrap();
            assert_eq!(doc["complete"], false);
            let notes = doc["notes"].as_array().unwrap();
            assert!(notes.iter().any(|n| n.as_str().unwrap().contains("odd-rank")));
            ec_complex_free(x);

            let x = build("sphere-antipodal-5");
            assert_eq!(ec_classify(x, &mut out), EcStatus::Unsupported);
            assert!(last_error().contains("classification refused"));
            ec_complex_free(x);
        }
    }

    #[test]
    fn json_round_trip_is_canonical() {
        unsafe {
            let x = build("circle-reflection");
            let mut first: *mut c_char = ptr::null_mut();
            assert_eq!(ec_complex_to_json(x, &mut first), EcStatus::Ok);
            let first = grab(first);

            let mut y: *mut EcComplex = ptr::null_mut();
            assert_eq!(
                ec_complex_from_json(cstr(&first).as_ptr(), &mut y),
                EcStatus::Ok
            );
            let mut second: *mut c_char = ptr::null_mut();
            assert_eq!(ec_complex_to_json(y, &mut second), EcStatus::Ok);
            assert_eq!(first, grab(second));

            let mut rep: *mut c_char = ptr::null_mut();
            assert_eq!(ec_validate(y, &mut rep), EcStatus::Ok);
            assert!(rep.is_null());

            ec_complex_free(x);
            ec_complex_free(y);
        }
    }

    #[test]
    fn bad_input_is_rejected_with_the_right_status() {
        unsafe {
            let mut out: *mut EcComplex = ptr::null_mut();
            assert_eq!(
                ec_build(cstr("nowhere").as_ptr(), &mut out),
                EcStatus::UnknownSpace
            );
            assert!(out.is_null());
            assert!(last_error().contains("unknown space"));

            assert_eq!(
                ec_complex_from_json(cstr("{not json").as_ptr(), &mut out),
                EcStatus::ParseFailed
            );

            let x = build("circle-reflection");
            let mut json: *mut c_char = ptr::null_mut();
            assert_eq!(ec_complex_to_json(x, &mut json), EcStatus::Ok);
            let mut doc: serde_json::Value = serde_json::from_str(&grab(json)).unwrap();
            doc["boundary"][1][0][2] = serde_json::json!(3);
            let corrupt = cstr(&doc.to_string());
            assert_eq!(
                ec_complex_from_json(corrupt.as_ptr(), &mut out),
                EcStatus::InvalidComplex
            );
            ec_complex_free(x);

            let y = build("point");
            let mut s: *mut c_char = ptr::null_mut();
            assert_eq!(
                ec_bredon(y, cstr("const-nonsense").as_ptr(), 0, &mut s),
                EcStatus::InvalidSystem
            );
            ec_complex_free(y);
        }
    }

    #[test]
    fn null_arguments_are_caught() {
        unsafe {
            let mut out: *mut EcComplex = ptr::null_mut();
            assert_eq!(ec_build(ptr::null(), &mut out), EcStatus::NullArgument);
            assert_eq!(
                ec_build(cstr("point").as_ptr(), ptr::null_mut()),
                EcStatus::NullArgument
            );
            let mut s: *mut c_char = ptr::null_mut();
            assert_eq!(ec_complex_to_json(ptr::null(), &mut s), EcStatus::NullArgument);
            assert_eq!(ec_classify(ptr::null(), &mut s), EcStatus::NullArgument);

            let bad = [0xffu8, 0x00u8];
            assert_eq!(
                ec_build(bad.as_ptr() as *const c_char, &mut out),
                EcStatus::InvalidUtf8
            );

            ec_complex_free(ptr::null_mut());
            ec_string_free(ptr::null_mut());
        }
    }
}
