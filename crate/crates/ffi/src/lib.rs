//! C ABI over `dedup_layout`. Graphs and stores cross the boundary as opaque
//! handles built from the library's JSON formats; every call returns a
//! [`DlStatus`] and leaves a message for [`dl_last_error`] on failure.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use dedup_layout::families::{gen_example, FamilyParams, Generated};
use dedup_layout::folding::layout_sham;
use dedup_layout::io::{graph_to_json, parse_graph, parse_store, store_to_json};
use dedup_layout::metrics::evaluate;
use dedup_layout::store::Store;
use dedup_layout::zero_frag::zero_frag_t2;
use dedup_layout::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DlStatus {
    Ok = 0,
    NullPointer = 1,
    Utf8 = 2,
    Parse = 3,
    Invalid = 4,
    Guard = 5,
    Internal = 6,
}

/// A file-model graph (plain, sparse Hamiltonian or rooted tree).
pub struct DlGraph(Generated);

/// An uncoded or coded chunk store.
pub struct DlStore(Store);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> DlStatus {
    match e {
        Error::Parse(_) => DlStatus::Parse,
        Error::Guard { .. } => DlStatus::Guard,
        Error::Consistency(_) => DlStatus::Internal,
        _ => DlStatus::Invalid,
    }
}

fn guarded(f: impl FnOnce() -> Result<(), (DlStatus, String)>) -> DlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DlStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            DlStatus::Internal
        }
    }
}

fn lib(e: Error) -> (DlStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (DlStatus, String) {
    (DlStatus::NullPointer, format!("{what} is null"))
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, (DlStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| (DlStatus::Utf8, format!("{what}: {e}")))
}

unsafe fn put<T>(out: *mut *mut T, v: T) {
    *out = Box::into_raw(Box::new(v));
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), (DlStatus, String)> {
    let c = CString::new(s).map_err(|e| (DlStatus::Internal, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message of the last failed call on this thread; valid until the next call.
#[no_mangle]
pub extern "C" fn dl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_graph_from_json(json: *const c_char, out: *mut *mut DlGraph) -> DlStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let g = parse_graph(text(json, "json")?).map_err(lib)?;
        put(out, DlGraph(g));
        Ok(())
    })
}

/// # Safety
/// `g` must come from this library and not be freed twice; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn dl_graph_free(g: *mut DlGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Writes a newly allocated JSON string; release it with [`dl_string_free`].
///
/// # Safety
/// `g` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_graph_to_json(g: *const DlGraph, out: *mut *mut c_char) -> DlStatus {
    guarded(|| {
        let g = g.as_ref().ok_or_else(|| null("graph"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        put_string(out, graph_to_json(&g.0))
    })
}

/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_store_from_json(json: *const c_char, out: *mut *mut DlStore) -> DlStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let s = parse_store(text(json, "json")?).map_err(lib)?;
        put(out, DlStore(s));
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn dl_store_free(s: *mut DlStore) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_store_to_json(s: *const DlStore, out: *mut *mut c_char) -> DlStatus {
    guarded(|| {
        let s = s.as_ref().ok_or_else(|| null("store"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        put_string(out, store_to_json(&s.0))
    })
}

/// Stretch metric as `num/den` and jump metric of `s` over files of at most `t` chunks.
///
/// # Safety
/// Handles must be live; output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn dl_evaluate(
    g: *const DlGraph,
    s: *const DlStore,
    t: usize,
    stretch_num: *mut u64,
    stretch_den: *mut u64,
    jump: *mut usize,
) -> DlStatus {
    guarded(|| {
        let g = g.as_ref().ok_or_else(|| null("graph"))?;
        let s = s.as_ref().ok_or_else(|| null("store"))?;
        if stretch_num.is_null() || stretch_den.is_null() || jump.is_null() {
            return Err(null("output"));
        }
        let rep = evaluate(&s.0, &g.0.to_file_graph(), t).map_err(lib)?;
        *stretch_num = *rep.stretch_metric.numer();
        *stretch_den = *rep.stretch_metric.denom();
        *jump = rep.jump_metric;
        Ok(())
    })
}

/// Named example graph; negative parameters mean "not given".
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_gen_example(
    name: *const c_char,
    n: i64,
    k: i64,
    big_n: i64,
    out: *mut *mut DlGraph,
) -> DlStatus {
    guarded(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let opt = |v: i64| usize::try_from(v).ok();
        let p = FamilyParams {
            n: opt(n),
            k: opt(k),
            big_n: opt(big_n),
        };
        let g = gen_example(text(name, "name")?, &p).map_err(lib)?;
        put(out, DlGraph(g));
        Ok(())
    })
}

/// Folding layout of a sparse Hamiltonian graph.
///
/// # Safety
/// `g` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_layout_sham(g: *const DlGraph, out: *mut *mut DlStore) -> DlStatus {
    guarded(|| {
        let g = g.as_ref().ok_or_else(|| null("graph"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let Generated::Sham(sham) = &g.0 else {
            return Err((DlStatus::Invalid, "graph is not sparse Hamiltonian".into()));
        };
        put(out, DlStore(Store::Uncoded(layout_sham(sham))));
        Ok(())
    })
}

/// Shortest store keeping every edge file contiguous.
///
/// # Safety
/// `g` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn dl_zero_frag_t2(g: *const DlGraph, out: *mut *mut DlStore) -> DlStatus {
    guarded(|| {
        let g = g.as_ref().ok_or_else(|| null("graph"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let z = zero_frag_t2(&g.0.to_file_graph()).map_err(lib)?;
        put(out, DlStore(Store::Uncoded(z.store)));
        Ok(())
    })
}

/// # Safety
/// `s` must come from a `*_to_json` call and not be freed twice; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn dl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
