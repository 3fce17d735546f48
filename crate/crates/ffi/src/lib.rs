//! C interface to `spmut`.
//!
//! Values cross the boundary as opaque heap handles (`SpmutPoset`,
//! `SpmutHom`, `SpmutZHom`) and text. Every fallible call returns a
//! [`SpmutStatus`]; on failure a message is available from
//! [`spmut_last_error`] until the next failing call on the same thread.
//! Strings returned through `out` parameters are owned by the caller and
//! must be released with [`spmut_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use spmut::format::{parse_filtration, parse_function, parse_label_set, parse_poset};
use spmut::spec_z::{parse_prime_set, parse_upper_set, parse_zhom};
use spmut::{
    build_mutation_graph, decompose_to_mutations, enumerate_upper_sets, filtration_to_function,
    function_to_filtration, generate_poset, graph_to_dot, height_function, is_t_function,
    is_z_tfunction, mutate_function, mutate_z, Error, Family, PosetHom, PosetRef, UpperSet,
    ZPosetHom, ZTFunction,
};

/// Result codes. Domain errors map one-to-one onto the library's error names.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpmutStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Panic = 3,
    DuplicateLabel = 10,
    UnknownLabel = 11,
    EmptyLabel = 12,
    InvalidLabel = 13,
    CycleDetected = 14,
    InvalidSize = 15,
    TooLarge = 16,
    PosetMismatch = 17,
    NotUpperSet = 20,
    NotDecreasing = 21,
    NotBounded = 22,
    DuplicateIndex = 23,
    NotIncreasing = 24,
    NotTFunction = 25,
    MissingValue = 26,
    NotMutable = 30,
    NotInvertible = 31,
    EmptyPoset = 32,
    BadWindow = 40,
    UnknownNode = 41,
    NotPrime = 50,
    InvalidHom = 51,
    ParseError = 60,
    LengthMismatch = 61,
}

impl From<&Error> for SpmutStatus {
    fn from(e: &Error) -> Self {
        use SpmutStatus as S;
        match e {
            Error::DuplicateLabel(_) => S::DuplicateLabel,
            Error::UnknownLabel(_) => S::UnknownLabel,
            Error::EmptyLabel => S::EmptyLabel,
            Error::InvalidLabel(_) => S::InvalidLabel,
            Error::CycleDetected(..) => S::CycleDetected,
            Error::InvalidSize(_) => S::InvalidSize,
            Error::TooLarge(_) => S::TooLarge,
            Error::PosetMismatch => S::PosetMismatch,
            Error::NotUpperSet(_) => S::NotUpperSet,
            Error::NotDecreasing(_) => S::NotDecreasing,
            Error::NotBounded(_) => S::NotBounded,
            Error::DuplicateIndex(_) => S::DuplicateIndex,
            Error::NotIncreasing(..) => S::NotIncreasing,
            Error::NotTFunction(..) => S::NotTFunction,
            Error::MissingValue(_) => S::MissingValue,
            Error::NotMutable(_) | Error::NotMutableStep(_) => S::NotMutable,
            Error::NotInvertible(_) => S::NotInvertible,
            Error::EmptyPoset => S::EmptyPoset,
            Error::BadWindow(..) => S::BadWindow,
            Error::UnknownNode => S::UnknownNode,
            Error::NotPrime(_) => S::NotPrime,
            Error::InvalidHom(_) => S::InvalidHom,
            Error::Parse { .. } => S::ParseError,
            Error::AtLine { inner, .. } => S::from(inner.as_ref()),
        }
    }
}

/// A finite poset of prime labels.
pub struct SpmutPoset(PosetRef);

/// An increasing integer function on a poset.
pub struct SpmutHom(PosetHom);

/// A bounded increasing function on the spectrum of the integers.
pub struct SpmutZHom(ZPosetHom);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(SpmutStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(SpmutStatus::from(&e), e.to_string())
    }
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> SpmutStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SpmutStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            SpmutStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(SpmutStatus::NullArgument, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(SpmutStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(SpmutStatus::NullArgument, "null handle".into()))
}

unsafe fn emit<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(SpmutStatus::NullArgument, "null out pointer".into()));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn emit_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(SpmutStatus::NullArgument, "null out pointer".into()));
    }
    *out = CString::new(s).expect("library output has no NUL").into_raw();
    Ok(())
}

unsafe fn emit_value<T>(out: *mut T, v: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(SpmutStatus::NullArgument, "null out pointer".into()));
    }
    *out = v;
    Ok(())
}

/// Message describing the last failure on this thread. The pointer stays
/// valid until the next failing call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn spmut_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn spmut_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the `elem` / `rel` poset text format.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spmut_poset_parse(text_: *const c_char, out: *mut *mut SpmutPoset) -> SpmutStatus {
    guard(|| {
        let p = parse_poset(text(text_)?)?;
        emit(out, SpmutPoset(Arc::new(p)))
    })
}

/// The chain `c0 < ... < c(n-1)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spmut_poset_chain(n: i64, out: *mut *mut SpmutPoset) -> SpmutStatus {
    guard(|| emit(out, SpmutPoset(Arc::new(generate_poset(Family::Chain(n))?))))
}

/// The fan `g < p1, ..., pk`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spmut_poset_fan(k: i64, out: *mut *mut SpmutPoset) -> SpmutStatus {
    guard(|| emit(out, SpmutPoset(Arc::new(generate_poset(Family::Fan(k))?))))
}

/// # Safety
/// `p` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn spmut_poset_free(p: *mut SpmutPoset) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of elements, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live poset handle.
#[no_mangle]
pub unsafe extern "C" fn spmut_poset_len(p: *const SpmutPoset) -> usize {
    p.as_ref().map_or(0, |p| p.0.len())
}

/// # Safety
/// `p` must be a live poset handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spmut_poset_label(p: *const SpmutPoset, index: usize, out: *mut *mut c_char) -> SpmutStatus {
    guard(|| {
        let p = &handle(p)?.0;
        if index >= p.len() {
            return Err(Failure(SpmutStatus::InvalidSize, format!("index {index} out of range")));
        }
        emit_string(out, p.label(index).to_string())
    })
}

/// Whether `set` (`a,b`, `@all` or `@empty`) is upward closed.
///
/// # Safety
/// `p` must be a live poset handle, `set` a NUL-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn spmut_poset_is_upper(p: *const SpmutPoset, set: *const c_char, out: *mut bool) -> SpmutStatus {
    guard(|| {
        let p = &handle(p)?.0;
        let s = parse_label_set(p, text(set)?)?;
        emit_value(out, p.is_upper(&s))
    })
}

/// All upper sets, one per line, in enumeration order.
///
/// # Safety
/// `p` must be a live poset handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spmut_poset_upper_sets(p: *const SpmutPoset, out: *mut *mut c_char) -> SpmutStatus {
    guard(|| {
        let sets = enumerate_upper_sets(&handle(p)?.0)?;
        let lines: String = sets.iter().map(|s| format!("{s}\n")).collect();
        emit_string(out, lines)
    })
}

/// # Safety
/// `p` must be a live poset handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spmut_poset_height(p: *const SpmutPoset, out: *mut *mut SpmutHom) -> SpmutStatus {
    guard(|| emit(out, SpmutHom(height_function(&handle(p)?.0))))
}

/// Graphviz text of the mutation graph of all functions valued in `[a, b]`.
///
/// # Safety
/// `p` must be a live poset handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spmut_poset_graph_dot(
    p: *const SpmutPoset,
    a: i64,
    b: i64,
    nonempty_only: bool,
    out: *mut *mut c_char,
) -> SpmutStatus {
    guard(|| {
        let g = build_mutation_graph(&handle(p)?.0, a, b, nonempty_only)?;
        emit_string(out, graph_to_dot(&g))
    })
}

/// Function from `len` values given in element order.
///
/// # Safety
/// `p` must be a live poset handle, `values` must point to `len` readable
/// integers (or be null when `len` is 0), and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spmut_hom_new(
    p: *const SpmutPoset,
    values: *const i64,
    len: usize,
    out: *mut *mut SpmutHom,
) -> SpmutStatus {
    guard(|| {
        let p = &handle(p)?.0;
        let vals = if len == 0 {
            Vec::new()
        } else if values.is_null() {
            return Err(Failure(SpmutStatus::NullArgument, "null values".into()));
        } else {
            std::slice::from_raw_parts(values, len).to_vec()
        };
        if vals.len() != p.len() {
            return Err(Failure(
                SpmutStatus::LengthMismatch,
                format!("expected {} values, got {}", p.len(), vals.len()),
            ));
        }
        emit(out, SpmutHom(PosetHom::new(p, vals)?))
    })
}

/// Parses the `val <label> <integer>` function format.
///
/// # Safety
/// `p` must be a live poset handle, `text_` a NUL-terminated string and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn spmut_hom_parse(p: *const SpmutPoset, text_: *const c_char, out: *mut *mut SpmutHom) -> SpmutStatus {
    guard(|| {
        let f = parse_function(&handle(p)?.0, text(text_)?)?;
        emit(out, SpmutHom(f))
    })
}

/// Function of a filtration given in the `<n>: <members>` format.
///
/// # Safety
/// `p` must be a live poset handle, `text_` a NUL-terminated string and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn spmut_hom_from_filtration(
    p: *const SpmutPoset,
    text_: *const c_char,
    out: *mut *mut SpmutHom,
) -> SpmutStatus {
    guard(|| {
        let phi = parse_filtration(&handle(p)?.0, text(text_)?)?;
        emit(out, SpmutHom(filtration_to_function(&phi)))
    })
}

/// # Safety
/// `h` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn spmut_hom_free(h: *mut SpmutHom) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Copies the values into `buf`, which must hold exactly the poset size.
///
/// # Safety
/// `h` must be a live handle and `buf` must point to `len` writable integers.
#[no_mangle]
pub unsafe extern "C" fn spmut_hom_values(h: *const SpmutHom, buf: *mut i64, len: usize) -> SpmutStatus {
    guard(|| {
        let v = handle(h)?.0.values();
        if len != v.len() {
            return Err(Failure(
                SpmutStatus::LengthMismatch,
                format!("buffer holds {len}, function has {} values", v.len()),
            ));
        }
        if len > 0 {
            if buf.is_null() {
                return Err(Failure(SpmutStatus::NullArgument, "null buffer".into()));
            }
            ptr::copy_nonoverlapping(v.as_ptr(), buf, len);
        }
        Ok(())
    })
}

/// False for a null handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn spmut_hom_is_t_function(h: *const SpmutHom) -> bool {
    h.as_ref().is_some_and(|h| is_t_function(&h.0))
}

/// `(label:value, ...)` in element order.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spmut_hom_to_string(h: *const SpmutHom, out: *mut *mut c_char) -> SpmutStatus {
    guard(|| emit_string(out, handle(h)?.0.to_string()))
}

/// The matching sp-filtration, one `<n>: <members>` line per stored index.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spmut_hom_filtration(h: *const SpmutHom, out: *mut *mut c_char) -> SpmutStatus {
    guard(|| emit_string(out, function_to_filtration(&handle(h)?.0).to_string()))
}

/// Right mutation at `set` (`a,b`, `@all` or `@empty`); fails with
/// `NotMutable` unless the set is upward closed.
///
/// # Safety
/// `h` must be a live handle, `set` a NUL-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn spmut_hom_mutate(h: *const SpmutHom, set: *const c_char, out: *mut *mut SpmutHom) -> SpmutStatus {
    guard(|| {
        let f = &handle(h)?.0;
        let w = UpperSet::new(f.poset(), parse_label_set(f.poset(), text(set)?)?)?;
        emit(out, SpmutHom(mutate_function(f, &w)?))
    })
}

/// `base: <n>` then one step per line.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spmut_hom_decompose(h: *const SpmutHom, out: *mut *mut c_char) -> SpmutStatus {
    guard(|| emit_string(out, decompose_to_mutations(&handle(h)?.0)?.to_string()))
}

/// Parses `0:<v0>; <value>:<set>; ...`.
///
/// # Safety
/// `text_` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spmut_z_parse(text_: *const c_char, out: *mut *mut SpmutZHom) -> SpmutStatus {
    guard(|| emit(out, SpmutZHom(parse_zhom(text(text_)?)?)))
}

/// The t-function `(n, U)` with `U` in set syntax (`2,3`, `~2,3`, `@empty`).
///
/// # Safety
/// `u` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spmut_z_tfunction(n: i64, u: *const c_char, out: *mut *mut SpmutZHom) -> SpmutStatus {
    guard(|| {
        let u = parse_prime_set(text(u)?)?;
        emit(out, SpmutZHom(ZTFunction::new(n, u).to_hom()))
    })
}

/// # Safety
/// `h` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn spmut_z_free(h: *mut SpmutZHom) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Right mutation at `w` (`@all`, `@empty`, `2,3` or `~2,3`).
///
/// # Safety
/// `h` must be a live handle, `w` a NUL-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn spmut_z_mutate(h: *const SpmutZHom, w: *const c_char, out: *mut *mut SpmutZHom) -> SpmutStatus {
    guard(|| {
        let w = parse_upper_set(text(w)?)?;
        emit(out, SpmutZHom(mutate_z(&handle(h)?.0, &w)))
    })
}

/// False for a null handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn spmut_z_is_tfunction(h: *const SpmutZHom) -> bool {
    h.as_ref().is_some_and(|h| is_z_tfunction(&h.0))
}

/// `(n, U)` for t-functions, otherwise `0:<v0>; <value>:<set>; ...`.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn spmut_z_to_string(h: *const SpmutZHom, out: *mut *mut c_char) -> SpmutStatus {
    guard(|| {
        let h = &handle(h)?.0;
        let s = match h.as_t_function() {
            Some(t) => t.to_string(),
            None => h.to_string(),
        };
        emit_string(out, s)
    })
}
