//! C ABI for cartankit.
//!
//! Cartan data lives behind an opaque [`CkCartanData`] handle. Every entry
//! point returns a [`CkStatus`]; on anything but `CK_STATUS_OK` a message is
//! stored per thread and can be read with [`ck_last_error_message`].
//! Strings handed out by the library are owned by the caller and must be
//! released with [`ck_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cartankit::cartan::{check_bianchi, is_locally_symmetric_data, space_form, validate, CartanData};
use cartankit::exactnum::Rational;
use cartankit::Error;

/// Result code of every `ck_*` call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Shape = 4,
    Contract = 5,
    NotClosed = 6,
    DependentBasis = 7,
    ClosureCapExceeded = 8,
    Panic = 9,
}

impl From<&Error> for CkStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Shape(_) => CkStatus::Shape,
            Error::Contract(_) => CkStatus::Contract,
            Error::NotClosed { .. } => CkStatus::NotClosed,
            Error::DependentBasis { .. } => CkStatus::DependentBasis,
            Error::ClosureCapExceeded { .. } => CkStatus::ClosureCapExceeded,
            Error::Parse(_) => CkStatus::Parse,
        }
    }
}

/// Opaque Cartan data. Create with [`ck_cartan_data_from_json`] or
/// [`ck_space_form`], release with [`ck_cartan_data_free`].
pub struct CkCartanData {
    inner: CartanData,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    // Interior NULs would truncate the C string; replace them.
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(status: CkStatus, msg: impl Into<String>) -> CkStatus {
    set_error(msg);
    status
}

/// Runs `f` with panics turned into `CK_STATUS_PANIC`.
fn guard(f: impl FnOnce() -> CkStatus) -> CkStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            fail(CkStatus::Panic, format!("panic: {msg}"))
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, CkStatus> {
    if p.is_null() {
        return Err(fail(CkStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|e| fail(CkStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn handle<'a>(h: *const CkCartanData) -> Result<&'a CartanData, CkStatus> {
    h.as_ref().map(|h| &h.inner).ok_or_else(|| fail(CkStatus::NullPointer, "handle is null"))
}

fn into_c_string(s: String) -> *mut c_char {
    // serde_json never emits a raw NUL, but stay total.
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

unsafe fn emit_handle(d: CartanData, out: *mut *mut CkCartanData) -> CkStatus {
    *out = Box::into_raw(Box::new(CkCartanData { inner: d }));
    CkStatus::Ok
}

macro_rules! try_ck {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

fn lib_err(e: Error) -> CkStatus {
    fail(CkStatus::from(&e), e.to_string())
}

/// Parses Cartan data from a NUL-terminated JSON document.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ck_cartan_data_from_json(json: *const c_char, out: *mut *mut CkCartanData) -> CkStatus {
    guard(|| {
        if out.is_null() {
            return fail(CkStatus::NullPointer, "out is null");
        }
        *out = ptr::null_mut();
        let text = try_ck!(read_str(json, "json"));
        let de = &mut serde_json::Deserializer::from_str(text);
        match serde_path_to_error::deserialize::<_, CartanData>(&mut *de) {
            Ok(d) => match de.end() {
                Ok(()) => emit_handle(d, out),
                Err(e) => fail(CkStatus::Parse, e.to_string()),
            },
            Err(e) => fail(CkStatus::Parse, format!("{}: {}", e.path(), e.inner())),
        }
    })
}

/// Builds the space form of dimension `n` and curvature `kappa`, a decimal
/// rational such as `"-3/2"`. Pass `p = q = 0` for the Riemannian case,
/// otherwise `p + q` must equal `n` and `p` counts the negative directions.
///
/// # Safety
/// `kappa` must be a valid NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ck_space_form(n: usize, kappa: *const c_char, p: usize, q: usize, out: *mut *mut CkCartanData) -> CkStatus {
    guard(|| {
        if out.is_null() {
            return fail(CkStatus::NullPointer, "out is null");
        }
        *out = ptr::null_mut();
        let k: Rational = match try_ck!(read_str(kappa, "kappa")).trim().parse() {
            Ok(k) => k,
            Err(e) => return lib_err(e),
        };
        let sig = (p + q > 0).then_some((p, q));
        match space_form(n, &k, sig) {
            Ok(d) => emit_handle(d, out),
            Err(e) => lib_err(e),
        }
    })
}

/// Serializes the handle back to JSON. Free the result with [`ck_string_free`].
///
/// # Safety
/// `h` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ck_cartan_data_to_json(h: *const CkCartanData, out: *mut *mut c_char) -> CkStatus {
    guard(|| {
        if out.is_null() {
            return fail(CkStatus::NullPointer, "out is null");
        }
        *out = ptr::null_mut();
        let d = try_ck!(handle(h));
        match serde_json::to_string(d) {
            Ok(s) => {
                *out = into_c_string(s);
                CkStatus::Ok
            }
            Err(e) => fail(CkStatus::Parse, e.to_string()),
        }
    })
}

/// Writes `n` and `dim 𝔤` of the data.
///
/// # Safety
/// `h` must be a live handle; `n` and `g_dim` writable pointers.
#[no_mangle]
pub unsafe extern "C" fn ck_cartan_data_dims(h: *const CkCartanData, n: *mut usize, g_dim: *mut usize) -> CkStatus {
    guard(|| {
        if n.is_null() || g_dim.is_null() {
            return fail(CkStatus::NullPointer, "output pointer is null");
        }
        let d = try_ck!(handle(h));
        *n = d.n();
        *g_dim = d.g_dim();
        CkStatus::Ok
    })
}

/// Runs the validator. `valid` receives the verdict; if `report_json` is
/// non-null it receives the full report, to be freed with [`ck_string_free`].
/// Identity violations are not errors: the call still returns `CK_STATUS_OK`.
///
/// # Safety
/// `h` must be a live handle; `valid` writable; `report_json` null or writable.
#[no_mangle]
pub unsafe extern "C" fn ck_validate(h: *const CkCartanData, valid: *mut bool, report_json: *mut *mut c_char) -> CkStatus {
    guard(|| {
        if valid.is_null() {
            return fail(CkStatus::NullPointer, "valid is null");
        }
        let d = try_ck!(handle(h));
        let rep = validate(d);
        *valid = rep.valid();
        if !report_json.is_null() {
            *report_json = into_c_string(serde_json::to_string(&rep).unwrap_or_default());
        }
        CkStatus::Ok
    })
}

/// Checks both Bianchi identities. Same output convention as [`ck_validate`].
/// Fails with `CK_STATUS_CONTRACT` when the data does not validate.
///
/// # Safety
/// `h` must be a live handle; `valid` writable; `report_json` null or writable.
#[no_mangle]
pub unsafe extern "C" fn ck_check_bianchi(h: *const CkCartanData, valid: *mut bool, report_json: *mut *mut c_char) -> CkStatus {
    guard(|| {
        if valid.is_null() {
            return fail(CkStatus::NullPointer, "valid is null");
        }
        let d = try_ck!(handle(h));
        let rep = match check_bianchi(d) {
            Ok(r) => r,
            Err(e) => return lib_err(e),
        };
        *valid = rep.valid();
        if !report_json.is_null() {
            *report_json = into_c_string(serde_json::to_string(&rep).unwrap_or_default());
        }
        CkStatus::Ok
    })
}

/// Writes whether the data is locally symmetric (zero torsion and anchor).
///
/// # Safety
/// `h` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn ck_is_locally_symmetric(h: *const CkCartanData, out: *mut bool) -> CkStatus {
    guard(|| {
        if out.is_null() {
            return fail(CkStatus::NullPointer, "out is null");
        }
        *out = is_locally_symmetric_data(try_ck!(handle(h)));
        CkStatus::Ok
    })
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next `ck_*` call on the same thread.
#[no_mangle]
pub extern "C" fn ck_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ck_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `h` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ck_cartan_data_free(h: *mut CkCartanData) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}
