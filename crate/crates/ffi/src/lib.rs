//! C ABI over `cyclomat`.
//!
//! Matrices live behind the opaque `CyclomatDigraph` handle. Every fallible
//! call returns a `CyclomatStatus`; on failure a message is kept per thread and
//! can be read with `cyclomat_last_error_message` until the next failing call.
//! Strings returned by the library must be released with `cyclomat_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cyclomat::families::{self, FamilyId};
use cyclomat::{document, equivalence, spectra, symmetrize, Digraph, Error};

/// Opaque matrix handle.
pub struct CyclomatDigraph(Digraph);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CyclomatStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Argument = 4,
    NotSymmetrizable = 5,
    CapExceeded = 6,
    BufferTooSmall = 7,
    Overflow = 8,
    Panic = 9,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: CyclomatStatus, msg: impl Into<String>) -> CyclomatStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> CyclomatStatus {
    let status = match e {
        Error::Parse { .. } => CyclomatStatus::Parse,
        Error::CycleCondition(_) | Error::NotSignSymmetric { .. } => CyclomatStatus::NotSymmetrizable,
        Error::CapExceeded { .. } => CyclomatStatus::CapExceeded,
        Error::Argument(_) => CyclomatStatus::Argument,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> CyclomatStatus) -> CyclomatStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(CyclomatStatus::Panic, "internal panic"),
    }
}

unsafe fn digraph<'a>(g: *const CyclomatDigraph) -> Result<&'a Digraph, CyclomatStatus> {
    g.as_ref().map(|h| &h.0).ok_or_else(|| fail(CyclomatStatus::NullPointer, "null digraph handle"))
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, CyclomatStatus> {
    if s.is_null() {
        return Err(fail(CyclomatStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(CyclomatStatus::InvalidUtf8, "string is not UTF-8"))
}

unsafe fn put<T>(out: *mut T, v: T) -> CyclomatStatus {
    if out.is_null() {
        return fail(CyclomatStatus::NullPointer, "null output pointer");
    }
    out.write(v);
    CyclomatStatus::Ok
}

unsafe fn put_handle(out: *mut *mut CyclomatDigraph, g: Digraph) -> CyclomatStatus {
    if out.is_null() {
        return fail(CyclomatStatus::NullPointer, "null output pointer");
    }
    out.write(Box::into_raw(Box::new(CyclomatDigraph(g))));
    CyclomatStatus::Ok
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cyclomat_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses the line-oriented digraph text format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn cyclomat_digraph_parse(
    text: *const c_char,
    out: *mut *mut CyclomatDigraph,
) -> CyclomatStatus {
    guard(|| {
        let s = tri!(read_str(text));
        match document::parse_digraph(s) {
            Ok(g) => put_handle(out, g),
            Err(e) => from_error(e),
        }
    })
}

/// Builds an `n x n` matrix from `n*n` row-major entries.
///
/// # Safety
/// `entries` must point to `n*n` readable values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cyclomat_digraph_new(
    n: usize,
    entries: *const i64,
    out: *mut *mut CyclomatDigraph,
) -> CyclomatStatus {
    guard(|| {
        if n == 0 {
            return fail(CyclomatStatus::Argument, "order must be positive");
        }
        if entries.is_null() {
            return fail(CyclomatStatus::NullPointer, "null entries");
        }
        let Some(len) = n.checked_mul(n) else {
            return fail(CyclomatStatus::Argument, "order too large");
        };
        let data = std::slice::from_raw_parts(entries, len);
        let rows: Vec<Vec<i64>> = data.chunks(n).map(|r| r.to_vec()).collect();
        match Digraph::from_rows(&rows) {
            Ok(g) => put_handle(out, g),
            Err(e) => from_error(e),
        }
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `g` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cyclomat_digraph_free(g: *mut CyclomatDigraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 for a NULL handle.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cyclomat_digraph_order(g: *const CyclomatDigraph) -> usize {
    g.as_ref().map_or(0, |h| h.0.order())
}

/// Reads entry `(i, j)`, 0-indexed.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cyclomat_digraph_entry(
    g: *const CyclomatDigraph,
    i: usize,
    j: usize,
    out: *mut i64,
) -> CyclomatStatus {
    guard(|| {
        let g = tri!(digraph(g));
        if i >= g.order() || j >= g.order() {
            return fail(CyclomatStatus::Argument, format!("index ({i}, {j}) out of range"));
        }
        put(out, g.get(i, j))
    })
}

/// Renders the handle in the text format. Free the result with
/// `cyclomat_string_free`.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cyclomat_digraph_to_string(
    g: *const CyclomatDigraph,
    out: *mut *mut c_char,
) -> CyclomatStatus {
    guard(|| {
        let g = tri!(digraph(g));
        let s = document::DigraphDocument::from_digraph(g).to_string();
        put(out, CString::new(s).expect("no interior NUL").into_raw())
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn cyclomat_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cyclomat_is_symmetrizable(g: *const CyclomatDigraph, out: *mut bool) -> CyclomatStatus {
    guard(|| {
        let g = tri!(digraph(g));
        put(out, symmetrize::is_symmetrizable(g))
    })
}

/// True when the matrix is symmetrizable with every eigenvalue in `[-2, 2]`.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cyclomat_is_cyclotomic(g: *const CyclomatDigraph, out: *mut bool) -> CyclomatStatus {
    guard(|| {
        let g = tri!(digraph(g));
        put(out, spectra::is_cyclotomic(g))
    })
}

/// Writes the characteristic polynomial's coefficients, constant term first,
/// into `coeffs[0..capacity]` and the count (`order + 1`) into `len`. If
/// `capacity` is too small, only `len` is written.
///
/// # Safety
/// `coeffs` must have room for `capacity` values; `g` and `len` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cyclomat_char_poly(
    g: *const CyclomatDigraph,
    coeffs: *mut i64,
    capacity: usize,
    len: *mut usize,
) -> CyclomatStatus {
    guard(|| {
        let g = tri!(digraph(g));
        let p = spectra::char_poly(g);
        let Some(values) = p.coeffs_i64() else {
            return fail(CyclomatStatus::Overflow, "coefficient does not fit in 64 bits");
        };
        tri!(match put(len, values.len()) {
            CyclomatStatus::Ok => Ok(()),
            s => Err(s),
        });
        if capacity < values.len() {
            return fail(CyclomatStatus::BufferTooSmall, format!("need room for {} coefficients", values.len()));
        }
        if coeffs.is_null() {
            return fail(CyclomatStatus::NullPointer, "null coefficient buffer");
        }
        ptr::copy_nonoverlapping(values.as_ptr(), coeffs, values.len());
        CyclomatStatus::Ok
    })
}

/// Equivalence under signed permutations and overall negation.
///
/// # Safety
/// `a`, `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cyclomat_are_equivalent(
    a: *const CyclomatDigraph,
    b: *const CyclomatDigraph,
    out: *mut bool,
) -> CyclomatStatus {
    guard(|| {
        let a = tri!(digraph(a));
        let b = tri!(digraph(b));
        put(out, equivalence::are_equivalent(a, b))
    })
}

/// Builds a named family member such as `"L6+"`, `"O4'"` or `"C~3^T"`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cyclomat_family(name: *const c_char, out: *mut *mut CyclomatDigraph) -> CyclomatStatus {
    guard(|| {
        let s = tri!(read_str(name));
        let id: FamilyId = match s.parse() {
            Ok(id) => id,
            Err(e) => return from_error(e),
        };
        match families::generate(&id) {
            Ok(g) => put_handle(out, g),
            Err(e) => from_error(e),
        }
    })
}
