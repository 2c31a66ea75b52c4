//! C ABI over `gainsparse`.
//!
//! Graphs and certificates are opaque handles owned by the caller and
//! released with their `_free` function. Every fallible call returns a
//! [`GsStatus`]; on failure `gs_last_error_message` describes the cause.
//! Strings returned through `char **` out-parameters are released with
//! `gs_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gainsparse::henneberg::random_construct;
use gainsparse::{build_lift, deconstruct, recognize, verify_certificate, Certificate, ColoredGraph, Error, Family, GroupSpec, Method};

/// Opaque colored graph.
pub struct GsGraph(ColoredGraph);

/// Opaque construction certificate.
pub struct GsCertificate(Certificate);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GsStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Usage = 4,
    UnsupportedGroup = 5,
    Budget = 6,
    Precondition = 7,
    InvalidMove = 8,
    CertificateInvalid = 9,
    Internal = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GsFamily {
    Ross = 0,
    Cone = 1,
    Cylinder = 2,
    ColoredLaman = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GsMethod {
    Auto = 0,
    Brute = 1,
    Lift = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GsVerdict {
    Sparse = 0,
    Tight = 1,
    Violation = 2,
}

impl From<GsFamily> for Family {
    fn from(f: GsFamily) -> Self {
        match f {
            GsFamily::Ross => Family::Ross,
            GsFamily::Cone => Family::ConeLaman,
            GsFamily::Cylinder => Family::CylinderLaman,
            GsFamily::ColoredLaman => Family::ColoredLaman,
        }
    }
}

impl From<GsMethod> for Method {
    fn from(m: GsMethod) -> Self {
        match m {
            GsMethod::Auto => Method::Auto,
            GsMethod::Brute => Method::Brute,
            GsMethod::Lift => Method::Lift,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> GsStatus {
    match e {
        Error::Parse { .. } => GsStatus::Parse,
        Error::SpecMismatch { .. } | Error::InvalidGroup(_) | Error::Usage(_) | Error::Io(_) => GsStatus::Usage,
        Error::UnsupportedGroup { .. } => GsStatus::UnsupportedGroup,
        Error::Budget { .. } => GsStatus::Budget,
        Error::Precondition(_) | Error::NoCandidates(_) | Error::NoCircuit(_) => GsStatus::Precondition,
        Error::InvalidMove(_) => GsStatus::InvalidMove,
        Error::CertificateInvalid { .. } => GsStatus::CertificateInvalid,
        Error::Generation(_) | Error::Internal(_) => GsStatus::Internal,
    }
}

struct Fail(GsStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, converting errors and panics into a status and last-error text.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> GsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GsStatus::Ok,
        Ok(Err(Fail(status, message))) => {
            set_last_error(message);
            status
        }
        Err(_) => {
            set_last_error("panic inside gainsparse".into());
            GsStatus::Panic
        }
    }
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail(GsStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Fail(GsStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(GsStatus::NullArgument, format!("{what} is null")))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(GsStatus::NullArgument, format!("{what} is null")));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn gs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the colored-graph text format.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gs_graph_parse(text: *const c_char, out: *mut *mut GsGraph) -> GsStatus {
    guard(|| {
        let g = ColoredGraph::from_text(self::text(text, "text")?)?;
        put(out, Box::into_raw(Box::new(GsGraph(g))), "out")
    })
}

/// # Safety
/// `g` must come from this library and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn gs_graph_free(g: *mut GsGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn gs_graph_vertex_count(g: *const GsGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.vertex_count())
}

/// # Safety
/// `g` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn gs_graph_edge_count(g: *const GsGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// Serializes a graph to the text format.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gs_graph_to_string(g: *const GsGraph, out: *mut *mut c_char) -> GsStatus {
    guard(|| {
        let g = handle(g, "graph")?;
        put(out, owned_string(g.0.to_text()), "out")
    })
}

/// Checks sparsity for a family. `verdict` receives the outcome; when
/// `report` is non-NULL it receives the `SPARSE`/`TIGHT`/`VIOLATION ...` line.
///
/// # Safety
/// `g` must be a live handle; `verdict` must be writable; `report` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn gs_check(
    g: *const GsGraph,
    family: GsFamily,
    method: GsMethod,
    verdict: *mut GsVerdict,
    report: *mut *mut c_char,
) -> GsStatus {
    guard(|| {
        let g = handle(g, "graph")?;
        let v = recognize::check(&g.0, family.into(), method.into())?;
        let kind = match (v.sparse, v.tight) {
            (_, true) => GsVerdict::Tight,
            (true, false) => GsVerdict::Sparse,
            (false, _) => GsVerdict::Violation,
        };
        put(verdict, kind, "verdict")?;
        if !report.is_null() {
            report.write(owned_string(v.to_string()));
        }
        Ok(())
    })
}

/// Builds the symmetric cover and returns it in the multigraph text format.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gs_lift_to_string(g: *const GsGraph, out: *mut *mut c_char) -> GsStatus {
    guard(|| {
        let g = handle(g, "graph")?;
        let sg = build_lift(&g.0)?;
        put(out, owned_string(sg.to_text()), "out")
    })
}

/// Reduces a tight graph to its base. Fails with `PRECONDITION` when the
/// graph is not tight for the family.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gs_deconstruct(g: *const GsGraph, family: GsFamily, out: *mut *mut GsCertificate) -> GsStatus {
    guard(|| {
        let g = handle(g, "graph")?;
        let cert = deconstruct(&g.0, family.into())?;
        put(out, Box::into_raw(Box::new(GsCertificate(cert))), "out")
    })
}

/// Seeded random certificate with `steps` moves. `group` is a group spec
/// such as `Z/5`, or NULL for the family default.
///
/// # Safety
/// `group` must be NULL or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gs_construct(
    family: GsFamily,
    group: *const c_char,
    steps: usize,
    seed: u64,
    out: *mut *mut GsCertificate,
) -> GsStatus {
    guard(|| {
        let family = Family::from(family);
        let spec: GroupSpec = if group.is_null() {
            gainsparse::henneberg::default_group(family)?
        } else {
            text(group, "group")?.parse()?
        };
        let cert = random_construct(family, spec, steps, seed)?;
        put(out, Box::into_raw(Box::new(GsCertificate(cert))), "out")
    })
}

/// # Safety
/// `text` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gs_certificate_parse(text: *const c_char, out: *mut *mut GsCertificate) -> GsStatus {
    guard(|| {
        let cert = Certificate::from_text(self::text(text, "text")?)?;
        put(out, Box::into_raw(Box::new(GsCertificate(cert))), "out")
    })
}

/// # Safety
/// `c` must come from this library and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn gs_certificate_free(c: *mut GsCertificate) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gs_certificate_to_string(c: *const GsCertificate, out: *mut *mut c_char) -> GsStatus {
    guard(|| {
        let c = handle(c, "certificate")?;
        put(out, owned_string(c.0.to_text()), "out")
    })
}

/// Replays a certificate. On `CERTIFICATE_INVALID`, `failed_step` (if
/// non-NULL) receives the step index: 0 for the base, i for the i-th move.
/// On success `graph` (if non-NULL) receives the final graph.
///
/// # Safety
/// `c` must be a live handle; `graph` and `failed_step` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn gs_certificate_verify(
    c: *const GsCertificate,
    graph: *mut *mut GsGraph,
    failed_step: *mut usize,
) -> GsStatus {
    guard(|| {
        let c = handle(c, "certificate")?;
        match verify_certificate(&c.0) {
            Ok(g) => {
                if !graph.is_null() {
                    graph.write(Box::into_raw(Box::new(GsGraph(g))));
                }
                Ok(())
            }
            Err(e) => {
                if let (Error::CertificateInvalid { step, .. }, false) = (&e, failed_step.is_null()) {
                    failed_step.write(*step);
                }
                Err(e.into())
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statuses_match_error_kinds() {
        assert_eq!(status_of(&Error::Budget { edges: 30, budget: 24 }), GsStatus::Budget);
        assert_eq!(status_of(&Error::Parse { line: 2, message: String::new() }), GsStatus::Parse);
        assert_eq!(status_of(&Error::CertificateInvalid { step: 1, reason: String::new() }), GsStatus::CertificateInvalid);
    }
}
