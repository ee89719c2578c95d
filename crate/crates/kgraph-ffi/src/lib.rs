//! C ABI over the kgraph library.
//!
//! Graphs are opaque `KgGraph` handles released with `kg_graph_free`.
//! Strings returned through `char **` out-parameters are owned by the caller
//! and released with `kg_string_free`. Every function returns a `KgStatus`;
//! on failure `kg_last_error` describes the most recent error on the calling
//! thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use kgraph::bridging::{bridging_search, polymorphism_from_matrix, FlipsDoc, SearchOutcome};
use kgraph::dimension::rank_invariant;
use kgraph::format::parse_graph;
use kgraph::homology::h0;
use kgraph::matrix::parse_matrix;
use kgraph::{KGraph, KgError};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidGraph = 4,
    UnknownFixture = 5,
    NotStrict = 6,
    NotIntertwining = 7,
    Domain = 8,
    Panic = 9,
}

/// Opaque validated k-graph.
pub struct KgGraph {
    inner: KGraph,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &KgError) -> KgStatus {
    match e {
        KgError::Parse(_) => KgStatus::Parse,
        KgError::Invalid(_) => KgStatus::InvalidGraph,
        KgError::UnknownFixture(_) => KgStatus::UnknownFixture,
        KgError::NotStrict => KgStatus::NotStrict,
        KgError::NotIntertwining => KgStatus::NotIntertwining,
        _ => KgStatus::Domain,
    }
}

/// Run `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), KgStatus>) -> KgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => KgStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("panic inside kgraph");
            KgStatus::Panic
        }
    }
}

fn fail(e: KgError) -> KgStatus {
    set_error(&e.to_string());
    status_of(&e)
}

/// # Safety
/// `s` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, KgStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(KgStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        KgStatus::InvalidUtf8
    })
}

/// # Safety
/// `g` must be null or a handle from this library that has not been freed.
unsafe fn read_graph<'a>(g: *const KgGraph) -> Result<&'a KGraph, KgStatus> {
    if g.is_null() {
        set_error("null graph handle");
        return Err(KgStatus::NullPointer);
    }
    Ok(&(*g).inner)
}

fn out_ptr<T>(out: *mut T) -> Result<(), KgStatus> {
    if out.is_null() {
        set_error("null out-parameter");
        Err(KgStatus::NullPointer)
    } else {
        Ok(())
    }
}

fn give_graph(g: KGraph, out: *mut *mut KgGraph) {
    // SAFETY: callers check `out` first
    unsafe { *out = Box::into_raw(Box::new(KgGraph { inner: g })) };
}

fn give_string(s: String, out: *mut *mut c_char) {
    let c = CString::new(s).unwrap_or_default();
    // SAFETY: callers check `out` first
    unsafe { *out = c.into_raw() };
}

/// Message for the most recent failure on this thread (empty if none). The
/// pointer stays valid until the next call into this library on the thread.
#[no_mangle]
pub extern "C" fn kg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parse and validate a graph document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn kg_graph_from_json(json: *const c_char, out: *mut *mut KgGraph) -> KgStatus {
    guard(|| {
        out_ptr(out)?;
        let text = read_str(json)?;
        let g = parse_graph(text).map_err(fail)?;
        give_graph(g, out);
        Ok(())
    })
}

/// Load a bundled example graph by name.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn kg_graph_fixture(name: *const c_char, out: *mut *mut KgGraph) -> KgStatus {
    guard(|| {
        out_ptr(out)?;
        let name = read_str(name)?;
        let g = kgraph::fixtures::fixture(name).map_err(fail)?;
        give_graph(g, out);
        Ok(())
    })
}

/// Release a graph handle. Null is ignored.
///
/// # Safety
/// `g` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kg_graph_free(g: *mut KgGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// The rank k of the graph.
///
/// # Safety
/// `g` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn kg_graph_rank(g: *const KgGraph, out: *mut usize) -> KgStatus {
    guard(|| {
        out_ptr(out)?;
        *out = read_graph(g)?.rank();
        Ok(())
    })
}

/// Number of vertices.
///
/// # Safety
/// `g` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn kg_graph_vertex_count(g: *const KgGraph, out: *mut usize) -> KgStatus {
    guard(|| {
        out_ptr(out)?;
        *out = read_graph(g)?.vertex_count();
        Ok(())
    })
}

/// Rational rank of the dimension group.
///
/// # Safety
/// `g` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn kg_rank_invariant(g: *const KgGraph, out: *mut usize) -> KgStatus {
    guard(|| {
        out_ptr(out)?;
        *out = rank_invariant(read_graph(g)?);
        Ok(())
    })
}

/// Zeroth homology as text, e.g. `rank 0, torsion [3]`.
///
/// # Safety
/// `g` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn kg_h0(g: *const KgGraph, out: *mut *mut c_char) -> KgStatus {
    guard(|| {
        out_ptr(out)?;
        let h = h0(read_graph(g)?).map_err(fail)?;
        give_string(h.to_string(), out);
        Ok(())
    })
}

/// Search for coherent flips for the matrix (rows split by `;`). Writes
/// `exhausted <count>` or `found` followed by one flip per line.
///
/// # Safety
/// `lambda`, `omega` must be live handles, `matrix` a NUL-terminated string
/// and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn kg_bridge_search(
    lambda: *const KgGraph,
    omega: *const KgGraph,
    matrix: *const c_char,
    out: *mut *mut c_char,
) -> KgStatus {
    guard(|| {
        out_ptr(out)?;
        let (lam, om) = (read_graph(lambda)?, read_graph(omega)?);
        let r = parse_matrix(read_str(matrix)?).map_err(|e| fail(KgError::Parse(e)))?;
        let text = match bridging_search(lam, om, &r).map_err(fail)? {
            SearchOutcome::Exhausted(n) => format!("exhausted {n}"),
            SearchOutcome::Found(fam) => {
                let poly = polymorphism_from_matrix(lam, om, &r).map_err(fail)?;
                format!("found\n{}", FlipsDoc::from_family(lam, om, &poly, &fam))
            }
        };
        give_string(text, out);
        Ok(())
    })
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
