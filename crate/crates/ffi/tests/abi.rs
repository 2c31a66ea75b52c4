use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use gainsparse_ffi::*;

fn owned(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { gs_string_free(s) };
    out
}

fn parse(text: &str) -> *mut GsGraph {
    let c = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { gs_graph_parse(c.as_ptr(), &mut g) }, GsStatus::Ok);
    g
}

#[test]
fn check_cone_base_by_lift() {
    let g = parse("group Z/3\nvertices 1\nedge 0 0 1\n");
    let mut verdict = GsVerdict::Violation;
    let mut report = ptr::null_mut();
    let status = unsafe { gs_check(g, GsFamily::Cone, GsMethod::Lift, &mut verdict, &mut report) };
    assert_eq!(status, GsStatus::Ok);
    assert_eq!(verdict, GsVerdict::Tight);
    assert_eq!(owned(report), "TIGHT");

    let mut lift = ptr::null_mut();
    assert_eq!(unsafe { gs_lift_to_string(g, &mut lift) }, GsStatus::Ok);
    assert_eq!(owned(lift).lines().filter(|l| l.starts_with("edge ")).count(), 3);
    unsafe { gs_graph_free(g) };
}

#[test]
fn parse_error_sets_message() {
    let c = CString::new("group Z/3\nvertices 2\nedge 0 7 1\n").unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { gs_graph_parse(c.as_ptr(), &mut g) }, GsStatus::Parse);
    assert!(g.is_null());
    let msg = unsafe { CStr::from_ptr(gs_last_error_message()) }.to_str().unwrap();
    assert!(msg.starts_with("line 3"), "{msg}");
}

#[test]
fn null_arguments_are_reported() {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { gs_graph_parse(ptr::null(), &mut g) }, GsStatus::NullArgument);
    let mut v = GsVerdict::Sparse;
    assert_eq!(
        unsafe { gs_check(ptr::null(), GsFamily::Cone, GsMethod::Auto, &mut v, ptr::null_mut()) },
        GsStatus::NullArgument
    );
    unsafe {
        gs_graph_free(ptr::null_mut());
        gs_certificate_free(ptr::null_mut());
        gs_string_free(ptr::null_mut());
    }
}

#[test]
fn construct_verify_deconstruct() {
    let group = CString::new("Z/7").unwrap();
    let mut cert = ptr::null_mut();
    assert_eq!(unsafe { gs_construct(GsFamily::Cone, group.as_ptr(), 5, 11, &mut cert) }, GsStatus::Ok);
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { gs_certificate_verify(cert, &mut g, ptr::null_mut()) }, GsStatus::Ok);
    assert_eq!(unsafe { gs_graph_vertex_count(g) }, 6);
    assert_eq!(unsafe { gs_graph_edge_count(g) }, 11);

    let mut back = ptr::null_mut();
    assert_eq!(unsafe { gs_deconstruct(g, GsFamily::Cone, &mut back) }, GsStatus::Ok);
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { gs_certificate_to_string(back, &mut text) }, GsStatus::Ok);
    let text = CString::new(owned(text)).unwrap();
    let mut reparsed = ptr::null_mut();
    assert_eq!(unsafe { gs_certificate_parse(text.as_ptr(), &mut reparsed) }, GsStatus::Ok);
    assert_eq!(unsafe { gs_certificate_verify(reparsed, ptr::null_mut(), ptr::null_mut()) }, GsStatus::Ok);
    unsafe {
        gs_certificate_free(cert);
        gs_certificate_free(back);
        gs_certificate_free(reparsed);
        gs_graph_free(g);
    }
}

#[test]
fn invalid_certificate_reports_step() {
    let text = "family ross\nbegin base\ngroup Z^2\nvertices 2\nedge 0 1 1,0\nedge 0 1 0,1\nend base\n\
                h1cp n=2 a=0 ca=0,0 loop=1,0\n";
    let c = CString::new(text).unwrap();
    let mut cert = ptr::null_mut();
    assert_eq!(unsafe { gs_certificate_parse(c.as_ptr(), &mut cert) }, GsStatus::Ok);
    let mut step = usize::MAX;
    assert_eq!(unsafe { gs_certificate_verify(cert, ptr::null_mut(), &mut step) }, GsStatus::CertificateInvalid);
    assert_eq!(step, 1);
    unsafe { gs_certificate_free(cert) };
}

#[test]
fn deconstruct_rejects_loose_graph() {
    let g = parse("group Z/5\nvertices 2\nedge 0 0 1\n");
    let mut cert = ptr::null_mut();
    assert_eq!(unsafe { gs_deconstruct(g, GsFamily::Cone, &mut cert) }, GsStatus::Precondition);
    unsafe { gs_graph_free(g) };
}

#[test]
fn header_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/gainsparse.h");
    assert!(header.exists());
    let Ok(status) = Command::new("cc").args(["-fsyntax-only", "-x", "c", "-std=c99", "-Wall", "-Werror"]).arg(&header).status()
    else {
        eprintln!("no C compiler; skipping header syntax check");
        return;
    };
    assert!(status.success());
}
