//! C ABI over `tnm-core`.
//!
//! Complexes live behind the opaque `TnmComplex` handle. Every fallible
//! call returns a `TnmStatus`; on failure a message for the calling thread
//! is available from `tnm_last_error_message` until the next failing call.
//! Variable-length results are copied into caller buffers: pass the
//! capacity, read back the full length, and retry on
//! `TNM_STATUS_BUFFER_TOO_SMALL`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tnm_core::analysis::{are_isomorphic, parameter_solutions};
use tnm_core::homology::{beta1_z2, betti_z2, is_orientable};
use tnm_core::walkup::{
    bar_construction, is_stacked_ball, is_stacked_sphere, kuehnel_solid, kuehnel_torus, random_stacked_ball,
};
use tnm_core::{fct, Error, Face, SimplicialComplex};

/// Outcome of a call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TnmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Precondition = 4,
    Range = 5,
    BufferTooSmall = 6,
    Io = 7,
    Internal = 8,
}

/// Opaque simplicial complex.
pub struct TnmComplex {
    inner: SimplicialComplex,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: TnmStatus, msg: impl Into<String>) -> TnmStatus {
    set_error(msg.into());
    status
}

fn status_of(e: &Error) -> TnmStatus {
    match e {
        Error::Parse { .. } => TnmStatus::Parse,
        Error::Range(_) | Error::DimensionRange { .. } => TnmStatus::Range,
        Error::Io(_) => TnmStatus::Io,
        Error::EmptyComplex
        | Error::EmptyFace
        | Error::DuplicateVertex(_)
        | Error::UnknownVertex(_)
        | Error::UnknownNode(_)
        | Error::UnknownLemma(_)
        | Error::NotAFace(_)
        | Error::VertexClash(_) => TnmStatus::InvalidArgument,
        _ => TnmStatus::Precondition,
    }
}

fn guard(body: impl FnOnce() -> Result<(), TnmStatus>) -> TnmStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => TnmStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(TnmStatus::Internal, "panic inside tnm"),
    }
}

trait OrStatus<T> {
    fn or_status(self) -> Result<T, TnmStatus>;
}

impl<T> OrStatus<T> for tnm_core::Result<T> {
    fn or_status(self) -> Result<T, TnmStatus> {
        self.map_err(|e| fail(status_of(&e), e.to_string()))
    }
}

unsafe fn complex_ref<'a>(c: *const TnmComplex) -> Result<&'a SimplicialComplex, TnmStatus> {
    c.as_ref().map(|c| &c.inner).ok_or_else(|| fail(TnmStatus::NullPointer, "null complex handle"))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), TnmStatus> {
    if out.is_null() {
        return Err(fail(TnmStatus::NullPointer, "null output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_complex(out: *mut *mut TnmComplex, inner: SimplicialComplex) -> Result<(), TnmStatus> {
    if out.is_null() {
        return Err(fail(TnmStatus::NullPointer, "null output pointer"));
    }
    out.write(Box::into_raw(Box::new(TnmComplex { inner })));
    Ok(())
}

unsafe fn put_slice<T: Copy>(values: &[T], buf: *mut T, cap: usize, len_out: *mut usize) -> Result<(), TnmStatus> {
    put(len_out, values.len())?;
    if values.len() > cap {
        return Err(fail(TnmStatus::BufferTooSmall, format!("need room for {} entries", values.len())));
    }
    if !values.is_empty() {
        if buf.is_null() {
            return Err(fail(TnmStatus::NullPointer, "null buffer"));
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    }
    Ok(())
}

/// Message of the last failing call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tnm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds a complex from `num_facets` facets stored back to back in
/// `vertices`, facet `i` having `sizes[i]` labels.
///
/// # Safety
/// `vertices` must hold the sum of `sizes` labels and `sizes` must hold
/// `num_facets` entries.
#[no_mangle]
pub unsafe extern "C" fn tnm_complex_from_facets(
    vertices: *const u32,
    sizes: *const usize,
    num_facets: usize,
    out: *mut *mut TnmComplex,
) -> TnmStatus {
    guard(|| {
        if num_facets == 0 {
            return Err(fail(TnmStatus::InvalidArgument, "a complex needs at least one facet"));
        }
        if vertices.is_null() || sizes.is_null() {
            return Err(fail(TnmStatus::NullPointer, "null facet arrays"));
        }
        let sizes = std::slice::from_raw_parts(sizes, num_facets);
        let total: usize = sizes.iter().sum();
        let labels = std::slice::from_raw_parts(vertices, total);
        let mut faces = Vec::with_capacity(num_facets);
        let mut at = 0;
        for &s in sizes {
            faces.push(Face::new(labels[at..at + s].to_vec()).or_status()?);
            at += s;
        }
        put_complex(out, SimplicialComplex::from_facets(faces).or_status()?)
    })
}

/// Parses FCT text (NUL-terminated UTF-8).
///
/// # Safety
/// `text` must be a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn tnm_complex_parse_fct(text: *const c_char, out: *mut *mut TnmComplex) -> TnmStatus {
    guard(|| {
        if text.is_null() {
            return Err(fail(TnmStatus::NullPointer, "null text"));
        }
        let text = CStr::from_ptr(text).to_str().map_err(|e| fail(TnmStatus::Parse, e.to_string()))?;
        put_complex(out, fct::parse(text).or_status()?)
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `c` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tnm_complex_free(c: *mut TnmComplex) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tnm_kuehnel_solid(d: usize, out: *mut *mut TnmComplex) -> TnmStatus {
    guard(|| put_complex(out, kuehnel_solid(d).or_status()?))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tnm_kuehnel_torus(d: usize, out: *mut *mut TnmComplex) -> TnmStatus {
    guard(|| put_complex(out, kuehnel_torus(d).or_status()?))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tnm_random_stacked_ball(
    d: usize,
    m: usize,
    seed: u64,
    out: *mut *mut TnmComplex,
) -> TnmStatus {
    guard(|| put_complex(out, random_stacked_ball(d, m, seed).or_status()?))
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn tnm_complex_dim(c: *const TnmComplex, out: *mut usize) -> TnmStatus {
    guard(|| put(out, complex_ref(c)?.dim()))
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn tnm_complex_num_vertices(c: *const TnmComplex, out: *mut usize) -> TnmStatus {
    guard(|| put(out, complex_ref(c)?.num_vertices()))
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn tnm_complex_num_facets(c: *const TnmComplex, out: *mut usize) -> TnmStatus {
    guard(|| put(out, complex_ref(c)?.num_facets()))
}

/// Face counts `f_0, ..., f_d`.
///
/// # Safety
/// `buf` must have room for `cap` entries; `len_out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tnm_complex_f_vector(
    c: *const TnmComplex,
    buf: *mut u64,
    cap: usize,
    len_out: *mut usize,
) -> TnmStatus {
    guard(|| put_slice(&complex_ref(c)?.f_vector().counts, buf, cap, len_out))
}

/// Betti numbers over GF(2).
///
/// # Safety
/// `buf` must have room for `cap` entries; `len_out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tnm_complex_betti(
    c: *const TnmComplex,
    buf: *mut u64,
    cap: usize,
    len_out: *mut usize,
) -> TnmStatus {
    guard(|| put_slice(&betti_z2(complex_ref(c)?).betti, buf, cap, len_out))
}

/// First Betti number over GF(2).
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn tnm_complex_beta1(c: *const TnmComplex, out: *mut u64) -> TnmStatus {
    guard(|| put(out, beta1_z2(complex_ref(c)?)))
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn tnm_complex_boundary(c: *const TnmComplex, out: *mut *mut TnmComplex) -> TnmStatus {
    guard(|| {
        let b = complex_ref(c)?.boundary_complex().or_status()?;
        if b.is_empty() {
            return Err(fail(TnmStatus::Precondition, "complex has empty boundary"));
        }
        put_complex(out, b)
    })
}

/// Closure by all vertex sets whose subsets of size at most three are faces.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn tnm_bar_construction(c: *const TnmComplex, out: *mut *mut TnmComplex) -> TnmStatus {
    guard(|| put_complex(out, bar_construction(complex_ref(c)?)))
}

/// Canonical FCT text; release it with `tnm_string_free`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn tnm_complex_to_fct(c: *const TnmComplex, out: *mut *mut c_char) -> TnmStatus {
    guard(|| {
        let text = CString::new(fct::write(complex_ref(c)?)).map_err(|e| fail(TnmStatus::Internal, e.to_string()))?;
        put(out, text.into_raw())
    })
}

/// # Safety
/// `s` must come from this library; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn tnm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn tnm_complex_is_pseudomanifold(c: *const TnmComplex, out: *mut bool) -> TnmStatus {
    guard(|| put(out, complex_ref(c)?.is_pseudomanifold()))
}

/// Every pair of vertices spans an edge.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn tnm_complex_is_neighborly(c: *const TnmComplex, out: *mut bool) -> TnmStatus {
    guard(|| put(out, complex_ref(c)?.is_neighborly(2)))
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn tnm_complex_is_stacked_ball(c: *const TnmComplex, out: *mut bool) -> TnmStatus {
    guard(|| put(out, is_stacked_ball(complex_ref(c)?)))
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn tnm_complex_is_stacked_sphere(c: *const TnmComplex, out: *mut bool) -> TnmStatus {
    guard(|| put(out, is_stacked_sphere(complex_ref(c)?).or_status()?))
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn tnm_complex_is_orientable(c: *const TnmComplex, out: *mut bool) -> TnmStatus {
    guard(|| put(out, is_orientable(complex_ref(c)?).or_status()?))
}

/// Sets `*out` to whether some vertex bijection carries facets onto facets.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn tnm_are_isomorphic(a: *const TnmComplex, b: *const TnmComplex, out: *mut bool) -> TnmStatus {
    guard(|| put(out, are_isomorphic(complex_ref(a)?, complex_ref(b)?).is_some()))
}

/// Solutions `(d_out[i], f0_out[i])` of the tight-neighborly equation for
/// `3 <= d <= d_max`, in ascending `d`.
///
/// # Safety
/// Both buffers must have room for `cap` entries; `len_out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tnm_parameter_solutions(
    beta1: u64,
    d_max: u64,
    d_out: *mut u64,
    f0_out: *mut u64,
    cap: usize,
    len_out: *mut usize,
) -> TnmStatus {
    guard(|| {
        let sols = parameter_solutions(beta1, d_max).or_status()?;
        let ds: Vec<u64> = sols.iter().map(|t| t.d).collect();
        let fs: Vec<u64> = sols.iter().map(|t| t.f0).collect();
        put_slice(&ds, d_out, cap, len_out)?;
        put_slice(&fs, f0_out, cap, len_out)
    })
}
