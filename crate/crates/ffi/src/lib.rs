//! C interface to arkit.
//!
//! Objects cross the boundary as opaque handles; results that are data come
//! back as JSON strings owned by the caller (release with
//! [`arkit_string_free`]). Every function returns an [`ArkitStatus`]; the
//! message for the last failure on the calling thread is available from
//! [`arkit_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use arkit::algebra::Algebra;
use arkit::arq::{export_json, knit, ArQuiver, Category};
use arkit::artrans::TauMethod;
use arkit::cli::{algebra_info, apply_chain_op, verify, ChainOp, Property, RunConfig};
use arkit::io::{chain_from_str, chain_label, chain_to_json};
use arkit::repmod::Rep;
use arkit::Error;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArkitStatus {
    Ok = 0,
    /// Malformed input: bad JSON, unknown names, wrong shapes.
    Input = 1,
    /// Valid input outside the domain of the operation.
    Domain = 2,
    /// Knitting ran out of its object or dimension budget.
    Budget = 3,
    /// A randomized decision procedure did not settle.
    Undecided = 4,
    /// A required pointer was null.
    NullArgument = 5,
    /// Internal failure; the library caught a panic.
    Internal = 6,
}

/// A finite-dimensional algebra.
pub struct ArkitAlgebra(Arc<Algebra>);

/// A chain of modules over an algebra.
pub struct ArkitChain {
    alg: Arc<Algebra>,
    rep: Rep,
}

/// A knitted Auslander-Reiten quiver.
pub struct ArkitQuiver {
    alg: Arc<Algebra>,
    quiver: ArQuiver,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> ArkitStatus {
    match e {
        Error::Input(_) | Error::Dimension(_) | Error::Io(_) | Error::Json(_) => ArkitStatus::Input,
        Error::Domain(_) | Error::InfiniteDimensional(_) => ArkitStatus::Domain,
        Error::Budget(_) | Error::SizeBudget(_) => ArkitStatus::Budget,
        Error::Undecided(_) | Error::ArAmbiguous(_) => ArkitStatus::Undecided,
    }
}

enum Fail {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail::Lib(e)
    }
}

/// Run `f`, translating errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> ArkitStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            ArkitStatus::Ok
        }
        Ok(Err(Fail::Null(what))) => {
            set_error(&format!("null argument: {what}"));
            ArkitStatus::NullArgument
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("internal error: {msg}"));
            ArkitStatus::Internal
        }
    }
}

unsafe fn text<'a>(s: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Fail::Lib(Error::Input(format!("{what} is not UTF-8"))))
}

unsafe fn handle<'a, T>(h: *const T, what: &'static str) -> Result<&'a T, Fail> {
    h.as_ref().ok_or(Fail::Null(what))
}

unsafe fn put<T>(out: *mut *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null("out"));
    }
    *out = Box::into_raw(Box::new(v));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::Null("out"));
    }
    *out = CString::new(s).map_err(|_| Fail::Lib(Error::Input("string contains NUL".into())))?.into_raw();
    Ok(())
}

unsafe fn method_or_default(method: *const c_char) -> Result<TauMethod, Fail> {
    if method.is_null() {
        return Ok(TauMethod::MimoTauCok);
    }
    Ok(text(method, "method")?.parse()?)
}

/// Message for the last failure on this thread; empty after a success.
/// Valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn arkit_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Release a string returned by the library.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn arkit_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Load an algebra by name (`nakayama:N,L`, `selfinj:3`) or from a JSON
/// file path. `p = 0` keeps the default field.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arkit_algebra_load(name: *const c_char, p: u32, out: *mut *mut ArkitAlgebra) -> ArkitStatus {
    guard(|| {
        let name = text(name, "name")?;
        let alg = Algebra::load(name, (p != 0).then_some(p))?;
        put(out, ArkitAlgebra(alg))
    })
}

/// # Safety
/// `a` must come from [`arkit_algebra_load`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn arkit_algebra_free(a: *mut ArkitAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Dimension over the ground field; 0 for a null handle.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn arkit_algebra_dim(a: *const ArkitAlgebra) -> usize {
    a.as_ref().map_or(0, |a| a.0.dim())
}

/// Summary of the algebra as JSON.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arkit_algebra_info(a: *const ArkitAlgebra, seed: u64, out: *mut *mut c_char) -> ArkitStatus {
    guard(|| {
        let a = handle(a, "algebra")?;
        put_string(out, algebra_info(&a.0, seed).to_string())
    })
}

/// Parse a chain from its JSON text.
///
/// # Safety
/// `a` must be a live handle, `json` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn arkit_chain_parse(
    a: *const ArkitAlgebra,
    json: *const c_char,
    out: *mut *mut ArkitChain,
) -> ArkitStatus {
    guard(|| {
        let a = handle(a, "algebra")?;
        let rep = chain_from_str(&a.0, text(json, "json")?)?;
        put(out, ArkitChain { alg: a.0.clone(), rep })
    })
}

/// # Safety
/// `c` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn arkit_chain_free(c: *mut ArkitChain) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Apply a chain operation (`tau-s`, `mimo`, `cok`, `rot`, ...) `power`
/// times. `method` may be null for the default translate formula.
///
/// # Safety
/// `c` must be a live handle, `op` NUL-terminated, `method` null or
/// NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn arkit_chain_apply(
    c: *const ArkitChain,
    op: *const c_char,
    method: *const c_char,
    power: u32,
    seed: u64,
    out: *mut *mut ArkitChain,
) -> ArkitStatus {
    guard(|| {
        let c = handle(c, "chain")?;
        let op: ChainOp = text(op, "op")?.parse()?;
        if op == ChainOp::ArSequence {
            return Err(Fail::Lib(Error::Input("ar-sequence does not return a chain".into())));
        }
        let method = method_or_default(method)?;
        let mut y = c.rep.clone();
        for _ in 0..power {
            y = apply_chain_op(op, &y, method, seed)?;
        }
        put(out, ArkitChain { alg: c.alg.clone(), rep: y })
    })
}

/// Chain as JSON, in the same format [`arkit_chain_parse`] reads.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arkit_chain_to_json(c: *const ArkitChain, seed: u64, out: *mut *mut c_char) -> ArkitStatus {
    guard(|| {
        let c = handle(c, "chain")?;
        let j = chain_to_json(&c.alg, &c.rep, seed)?;
        put_string(out, serde_json::to_string(&j).map_err(Error::from)?)
    })
}

/// Short label such as `(A,S,0)` for indecomposable chains.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arkit_chain_label(c: *const ArkitChain, seed: u64, out: *mut *mut c_char) -> ArkitStatus {
    guard(|| {
        let c = handle(c, "chain")?;
        put_string(out, chain_label(&c.alg, &c.rep, seed)?)
    })
}

/// Knit the quiver of `S`, `F` or `mod` with chains of length `n`.
///
/// # Safety
/// `a` must be a live handle, `category` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn arkit_quiver_knit(
    a: *const ArkitAlgebra,
    n: usize,
    category: *const c_char,
    max_objects: usize,
    seed: u64,
    out: *mut *mut ArkitQuiver,
) -> ArkitStatus {
    guard(|| {
        let a = handle(a, "algebra")?;
        let cat: Category = text(category, "category")?.parse()?;
        let quiver = knit(&a.0, n, cat, max_objects, seed)?;
        put(out, ArkitQuiver { alg: a.0.clone(), quiver })
    })
}

/// # Safety
/// `q` must come from [`arkit_quiver_knit`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn arkit_quiver_free(q: *mut ArkitQuiver) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// Number of vertices; 0 for a null handle.
///
/// # Safety
/// `q` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn arkit_quiver_len(q: *const ArkitQuiver) -> usize {
    q.as_ref().map_or(0, |q| q.quiver.nodes.len())
}

/// Number of projective vertices; 0 for a null handle.
///
/// # Safety
/// `q` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn arkit_quiver_projectives(q: *const ArkitQuiver) -> usize {
    q.as_ref().map_or(0, |q| q.quiver.nodes.iter().filter(|n| n.projective).count())
}

/// Quiver as JSON.
///
/// # Safety
/// `q` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arkit_quiver_to_json(q: *const ArkitQuiver, seed: u64, out: *mut *mut c_char) -> ArkitStatus {
    guard(|| {
        let q = handle(q, "quiver")?;
        put_string(out, export_json(&q.alg, &q.quiver, seed)?)
    })
}

/// Run a verifier (`tau-period`, `rotation`, `counts`, ...) with default
/// settings. The report goes to `out` and `pass` receives its verdict.
///
/// # Safety
/// `property` and `algebra` must be NUL-terminated; `out` and `pass` writable.
#[no_mangle]
pub unsafe extern "C" fn arkit_verify(
    property: *const c_char,
    algebra: *const c_char,
    n: usize,
    seed: u64,
    out: *mut *mut c_char,
    pass: *mut bool,
) -> ArkitStatus {
    guard(|| {
        let prop: Property = text(property, "property")?.parse()?;
        let mut cfg = RunConfig::new(text(algebra, "algebra")?, n);
        cfg.seed = seed;
        if pass.is_null() {
            return Err(Fail::Null("pass"));
        }
        let rep = verify(prop, &cfg)?;
        *pass = rep.all_pass;
        put_string(out, serde_json::to_string(&rep).map_err(Error::from)?)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn panics_become_internal_errors() {
        assert_eq!(guard(|| panic!("boom")), ArkitStatus::Internal);
        let msg = unsafe { CStr::from_ptr(arkit_last_error()) }.to_str().unwrap().to_owned();
        assert!(msg.contains("boom"));
        assert_eq!(guard(|| Ok(())), ArkitStatus::Ok);
        assert_eq!(guard(|| Err(Error::SizeBudget(3).into())), ArkitStatus::Budget);
    }
}
