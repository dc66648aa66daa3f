use std::ffi::{CStr, CString};
use std::ptr;

use tnm_ffi::*;

fn solid(d: usize) -> *mut TnmComplex {
    let mut c = ptr::null_mut();
    assert_eq!(unsafe { tnm_kuehnel_solid(d, &mut c) }, TnmStatus::Ok);
    c
}

#[test]
fn torus_counts_and_betti() {
    let mut t = ptr::null_mut();
    unsafe {
        assert_eq!(tnm_kuehnel_torus(2, &mut t), TnmStatus::Ok);
        let mut n = 0usize;
        assert_eq!(tnm_complex_num_vertices(t, &mut n), TnmStatus::Ok);
        assert_eq!(n, 7);
        let mut len = 0usize;
        assert_eq!(tnm_complex_f_vector(t, ptr::null_mut(), 0, &mut len), TnmStatus::BufferTooSmall);
        assert_eq!(len, 3);
        let mut f = [0u64; 3];
        assert_eq!(tnm_complex_f_vector(t, f.as_mut_ptr(), 3, &mut len), TnmStatus::Ok);
        assert_eq!(f, [7, 21, 14]);
        let mut b = [0u64; 4];
        assert_eq!(tnm_complex_betti(t, b.as_mut_ptr(), 4, &mut len), TnmStatus::Ok);
        assert_eq!(&b[..len], &[1, 2, 1]);
        let mut orientable = false;
        assert_eq!(tnm_complex_is_orientable(t, &mut orientable), TnmStatus::Ok);
        assert!(orientable);
        tnm_complex_free(t);
    }
}

#[test]
fn closure_of_boundary_is_isomorphic_to_solid() {
    let s = solid(4);
    unsafe {
        let mut boundary = ptr::null_mut();
        assert_eq!(tnm_complex_boundary(s, &mut boundary), TnmStatus::Ok);
        let mut bar = ptr::null_mut();
        assert_eq!(tnm_bar_construction(boundary, &mut bar), TnmStatus::Ok);
        let mut iso = false;
        assert_eq!(tnm_are_isomorphic(bar, s, &mut iso), TnmStatus::Ok);
        assert!(iso);
        let mut text = ptr::null_mut();
        assert_eq!(tnm_complex_to_fct(bar, &mut text), TnmStatus::Ok);
        assert_eq!(CStr::from_ptr(text).to_str().unwrap().lines().count(), 11);
        tnm_string_free(text);
        for c in [s, boundary, bar] {
            tnm_complex_free(c);
        }
    }
}

#[test]
fn facets_from_flat_arrays() {
    let labels = [0u32, 1, 2, 1, 2, 3];
    let sizes = [3usize, 3];
    let mut c = ptr::null_mut();
    unsafe {
        assert_eq!(tnm_complex_from_facets(labels.as_ptr(), sizes.as_ptr(), 2, &mut c), TnmStatus::Ok);
        let mut ball = false;
        assert_eq!(tnm_complex_is_stacked_ball(c, &mut ball), TnmStatus::Ok);
        assert!(ball);
        tnm_complex_free(c);
    }
}

#[test]
fn errors_carry_status_and_message() {
    let mut c = ptr::null_mut();
    unsafe {
        let bad = CString::new("0 1 2\n0 1 x\n").unwrap();
        assert_eq!(tnm_complex_parse_fct(bad.as_ptr(), &mut c), TnmStatus::Parse);
        assert!(c.is_null());
        let msg = CStr::from_ptr(tnm_last_error_message()).to_str().unwrap();
        assert!(msg.starts_with("line 2"), "{msg}");

        assert_eq!(tnm_kuehnel_solid(1, &mut c), TnmStatus::Range);
        let dup = [0u32, 0];
        assert_eq!(tnm_complex_from_facets(dup.as_ptr(), [2usize].as_ptr(), 1, &mut c), TnmStatus::InvalidArgument);

        let mut n = 0usize;
        assert_eq!(tnm_complex_dim(ptr::null(), &mut n), TnmStatus::NullPointer);
        let s = solid(3);
        assert_eq!(tnm_complex_dim(s, ptr::null_mut()), TnmStatus::NullPointer);
        let mut sphere = false;
        assert_eq!(tnm_complex_is_stacked_sphere(s, &mut sphere), TnmStatus::Precondition);
        tnm_complex_free(s);
        tnm_complex_free(ptr::null_mut());
    }
}

#[test]
fn parameter_triples() {
    let mut d = [0u64; 8];
    let mut f0 = [0u64; 8];
    let mut len = 0usize;
    unsafe {
        assert_eq!(tnm_parameter_solutions(2, 500, d.as_mut_ptr(), f0.as_mut_ptr(), 8, &mut len), TnmStatus::Ok);
    }
    assert_eq!(&d[..len], &[13, 83, 491]);
    assert_eq!(&f0[..len], &[35, 204, 1189]);
    assert_eq!(
        unsafe { tnm_parameter_solutions(0, 5, d.as_mut_ptr(), f0.as_mut_ptr(), 8, &mut len) },
        TnmStatus::Range
    );
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/tnm.h");
    let source = include_str!("../src/lib.rs");
    for line in source.lines() {
        if let Some(rest) = line.split("extern \"C\" fn ").nth(1) {
            let name = rest.split('(').next().unwrap();
            assert!(header.contains(&format!("{name}(")), "{name} missing from header");
        }
    }
    assert!(header.contains("typedef struct TnmComplex TnmComplex;"));
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include "tnm.h"

int main(void) {
    TnmComplex *t = NULL;
    if (tnm_kuehnel_torus(4, &t) != TNM_STATUS_OK) return 10;
    uint64_t beta1 = 0;
    if (tnm_complex_beta1(t, &beta1) != TNM_STATUS_OK || beta1 != 1) return 11;
    bool neighborly = false;
    tnm_complex_is_neighborly(t, &neighborly);
    if (!neighborly) return 12;
    TnmComplex *bad = NULL;
    if (tnm_complex_parse_fct("", &bad) != TNM_STATUS_PARSE) return 13;
    if (tnm_last_error_message() == NULL) return 14;
    tnm_complex_free(t);
    printf("ok\n");
    return 0;
}
"#;

/// Compiles a C client against the generated header and the static library.
/// Skipped when no C compiler or static archive is around.
#[test]
fn c_client_links_against_static_library() {
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|p| p.parent()).unwrap();
    let archive = profile_dir.join("libtnm_ffi.a");
    if !archive.exists() || std::process::Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no static archive or C compiler");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("client.c");
    let bin = dir.path().join("client");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let include = concat!(env!("CARGO_MANIFEST_DIR"), "/include");
    let status = std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-I", include])
        .arg(&src)
        .arg(&archive)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C client failed to build");
    let out = std::process::Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "C client exited with {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
