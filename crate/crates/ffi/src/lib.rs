//! C ABI over the `supertropical` crate.
//!
//! Every fallible call returns an [`StStatus`] and writes its result through an out
//! pointer. On failure the message is kept per thread and read with [`st_last_error`].
//! Handles and strings handed out here must be released with the matching `*_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use supertropical::divisor::DivisorMonoid;
use supertropical::fate;
use supertropical::presentation::PresentationFile;
use supertropical::{Ambient, Error, QuotientElement, QuotientPresentation};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    Precondition = 4,
    NotFinite = 5,
    LimitExceeded = 6,
    Domain = 7,
    Panic = 8,
}

/// A parsed quotient presentation.
pub struct StPresentation {
    inner: QuotientPresentation,
}

/// A divisor monoid A_ω.
pub struct StDivisorMonoid {
    inner: DivisorMonoid,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> StStatus {
    match e {
        Error::Syntax { .. } | Error::UnknownGenerator(_) | Error::InvalidAmbient(_) => StStatus::Syntax,
        Error::Precondition(_) | Error::AmbientMismatch | Error::NotTangible(_) | Error::DegreeMismatch { .. } => {
            StStatus::Precondition
        }
        Error::NotTangiblyFinite(_) | Error::UnboundedSlice(_) | Error::OutOfBound { .. } => StStatus::NotFinite,
        Error::LimitExceeded(_) => StStatus::LimitExceeded,
        _ => StStatus::Domain,
    }
}

struct Fail(StStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, recording any failure (including a panic) as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> StStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => StStatus::Ok,
        Ok(Err(Fail(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            StStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(StStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(StStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| Fail(StStatus::NullPointer, "null handle".into()))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(StStatus::NullPointer, "null out pointer".into()));
    }
    out.write(value);
    Ok(())
}

fn owned(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("nul bytes removed")
        .into_raw()
}

/// Message of the last failed call on this thread, or NULL. Valid until the next call.
#[no_mangle]
pub extern "C" fn st_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn st_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a presentation file and builds its quotient. A negative `bound` searches
/// for the degree window automatically.
///
/// # Safety
/// `source` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_presentation_parse(
    source: *const c_char,
    bound: i32,
    out: *mut *mut StPresentation,
) -> StStatus {
    guard(|| {
        let file = PresentationFile::parse(text(source)?)?;
        let inner = file.build(u32::try_from(bound).ok())?;
        put(out, Box::into_raw(Box::new(StPresentation { inner })))
    })
}

/// # Safety
/// `p` must come from [`st_presentation_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn st_presentation_free(p: *mut StPresentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of tangibles of a tangibly finite presentation.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_presentation_tangible_count(p: *const StPresentation, out: *mut usize) -> StStatus {
    guard(|| put(out, handle(p)?.inner.tangible_count()?))
}

/// Projects a monomial and writes the element's text form (a representative or a ghost).
///
/// # Safety
/// `p` must be a live handle, `monomial` a NUL-terminated string, `out` writable.
/// The string written to `out` must be released with [`st_string_free`].
#[no_mangle]
pub unsafe extern "C" fn st_presentation_project(
    p: *const StPresentation,
    monomial: *const c_char,
    out: *mut *mut c_char,
) -> StStatus {
    guard(|| {
        let u = &handle(p)?.inner;
        let z = u.ambient().parse_monomial(text(monomial)?)?;
        put(out, owned(u.format_element(&u.project(&z)?)))
    })
}

/// Product of two elements given in text form.
///
/// # Safety
/// As for [`st_presentation_project`].
#[no_mangle]
pub unsafe extern "C" fn st_presentation_mul(
    p: *const StPresentation,
    a: *const c_char,
    b: *const c_char,
    out: *mut *mut c_char,
) -> StStatus {
    guard(|| {
        let u = &handle(p)?.inner;
        let (a, b) = (u.parse_element(text(a)?)?, u.parse_element(text(b)?)?);
        put(out, owned(u.format_element(&u.mul(&a, &b)?)))
    })
}

/// # Safety
/// `p` must be a live handle, `a` and `b` NUL-terminated strings, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn st_presentation_same_fate(
    p: *const StPresentation,
    a: *const c_char,
    b: *const c_char,
    out: *mut bool,
) -> StStatus {
    guard(|| {
        let u = &handle(p)?.inner;
        let (a, b) = (u.parse_element(text(a)?)?, u.parse_element(text(b)?)?);
        put(out, fate::same_fate(u, &a, &b)?)
    })
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_presentation_has_fate_distinction(p: *const StPresentation, out: *mut bool) -> StStatus {
    guard(|| put(out, fate::has_fate_distinction(&handle(p)?.inner)?))
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_presentation_has_uf(p: *const StPresentation, out: *mut bool) -> StStatus {
    guard(|| {
        let u = &handle(p)?.inner;
        u.require_finite()?;
        put(out, u.has_uf())
    })
}

/// A_ω over unit-weight letters; `letters` is a space-separated list such as `"t1 t2"`.
///
/// # Safety
/// `letters` and `omega` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_divisor_new(
    letters: *const c_char,
    omega: *const c_char,
    out: *mut *mut StDivisorMonoid,
) -> StStatus {
    guard(|| {
        let names: Vec<&str> = text(letters)?.split_whitespace().collect();
        let ambient = Arc::new(Ambient::uniform(&names)?);
        let omega = ambient.parse_monomial(text(omega)?)?;
        let inner = DivisorMonoid::new(ambient, omega)?;
        put(out, Box::into_raw(Box::new(StDivisorMonoid { inner })))
    })
}

/// # Safety
/// `d` must come from [`st_divisor_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn st_divisor_free(d: *mut StDivisorMonoid) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn st_divisor_count(d: *const StDivisorMonoid, out: *mut usize) -> StStatus {
    guard(|| put(out, handle(d)?.inner.divisors().len()))
}

/// The complement ω/z of a divisor z.
///
/// # Safety
/// `d` must be a live handle, `z` a NUL-terminated string, `out` writable.
/// The string written to `out` must be released with [`st_string_free`].
#[no_mangle]
pub unsafe extern "C" fn st_divisor_complement(
    d: *const StDivisorMonoid,
    z: *const c_char,
    out: *mut *mut c_char,
) -> StStatus {
    guard(|| {
        let m = &handle(d)?.inner;
        let z = m.ambient().parse_monomial(text(z)?)?;
        put(out, owned(m.ambient().format_monomial(&m.complement(&z)?)))
    })
}

/// Whether a tangible of A_ω is a lonely tyrant (true exactly for ω itself).
///
/// # Safety
/// `d` must be a live handle, `z` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn st_divisor_is_lonely_tyrant(
    d: *const StDivisorMonoid,
    z: *const c_char,
    out: *mut bool,
) -> StStatus {
    guard(|| {
        let m = &handle(d)?.inner;
        let z = m.ambient().parse_monomial(text(z)?)?;
        if !m.contains(&z) {
            return Err(Fail(StStatus::Precondition, "not a divisor of ω".into()));
        }
        let c = fate::classify_tangible(m.presentation(), &QuotientElement::Tangible(z))?;
        put(out, c.lonely_tyrant())
    })
}
