use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use lts_ffi::*;

const TWO_DIM: &str = r#"{"dim":2,"entries":[{"args":[0,1,1],"value":{"0":"1"}},{"args":[1,0,1],"value":{"0":"-1"}}]}"#;
const RB_MAP: &str = r#"{"rows":2,"cols":2,"entries":[["0","1"],["0","2"]]}"#;
const IDENTITY: &str = r#"{"rows":2,"cols":2,"entries":[["1","0"],["0","1"]]}"#;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = lts_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

unsafe fn system(json: &str) -> *mut LtsSystem {
    let mut sys = ptr::null_mut();
    assert_eq!(lts_system_from_json(c(json).as_ptr(), &mut sys), LtsStatus::Ok);
    sys
}

unsafe fn map(json: &str) -> *mut LtsMap {
    let mut m = ptr::null_mut();
    assert_eq!(lts_map_from_json(c(json).as_ptr(), &mut m), LtsStatus::Ok);
    m
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_string_lossy().into_owned();
    lts_string_free(s);
    out
}

#[test]
fn system_lifecycle() {
    unsafe {
        let sys = system(TWO_DIM);
        assert_eq!(lts_system_dim(sys), 2);
        let mut passed = false;
        let mut report = ptr::null_mut();
        assert_eq!(lts_system_check_axioms(sys, &mut passed, &mut report), LtsStatus::Ok);
        assert!(passed);
        assert!(take(report).contains("\"passed\":true"));
        let mut json = ptr::null_mut();
        assert_eq!(lts_system_to_json(sys, &mut json), LtsStatus::Ok);
        let back = take(json);
        let again = system(&back);
        assert_eq!(lts_system_dim(again), 2);
        lts_system_free(again);
        lts_system_free(sys);
        lts_system_free(ptr::null_mut());
    }
}

#[test]
fn input_errors() {
    unsafe {
        let mut sys = ptr::null_mut();
        assert_eq!(lts_system_from_json(c("{\"dim\": 2").as_ptr(), &mut sys), LtsStatus::InputError);
        assert!(sys.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(lts_system_from_json(ptr::null(), &mut sys), LtsStatus::NullPointer);
        let bad = r#"{"dim":2,"entries":[{"args":[0,1,5],"value":{"0":"1"}}]}"#;
        assert_eq!(lts_system_from_json(c(bad).as_ptr(), &mut sys), LtsStatus::InputError);
        assert!(last_error().contains("out of range"));
        assert_eq!(lts_system_dim(ptr::null()), 0);
        let mut passed = false;
        assert_eq!(lts_system_check_axioms(ptr::null(), &mut passed, ptr::null_mut()), LtsStatus::NullPointer);
    }
}

#[test]
fn rota_baxter_and_reports() {
    unsafe {
        let sys = system(TWO_DIM);
        let rb = map(RB_MAP);
        let id = map(IDENTITY);
        let mut holds = false;
        let mut ce = [9usize; 3];
        assert_eq!(lts_check_relative_rb(sys, ptr::null(), rb, &mut holds, ce.as_mut_ptr()), LtsStatus::Ok);
        assert!(holds);
        assert_eq!(lts_check_relative_rb(sys, ptr::null(), id, &mut holds, ce.as_mut_ptr()), LtsStatus::Ok);
        assert!(!holds);
        assert_ne!(ce, [9; 3]);

        let mut out = ptr::null_mut();
        assert_eq!(lts_twist_report(sys, ptr::null(), rb, LtsTwistPaths::Both, &mut out), LtsStatus::Ok);
        let report: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(report["classification"], "twilled");
        assert_eq!(report["path_agreement"]["agree"], true);

        assert_eq!(lts_mc_report(sys, ptr::null(), id, &mut out), LtsStatus::Ok);
        let report: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(report["residual_zero"], false);
        assert_eq!(report["agree"], true);

        let wrong = map(r#"{"rows":3,"cols":2,"entries":[["0","0"],["0","0"],["0","0"]]}"#);
        assert_eq!(
            lts_twist_report(sys, ptr::null(), wrong, LtsTwistPaths::Conjugation, &mut out),
            LtsStatus::InputError
        );
        assert!(last_error().contains("dimension mismatch"));

        lts_map_free(wrong);
        lts_map_free(id);
        lts_map_free(rb);
        lts_system_free(sys);
    }
}

#[test]
fn representation_handles() {
    unsafe {
        let sys = system(TWO_DIM);
        let rep_json = r#"{"base_dim":2,"carrier_dim":2,"entries":[{"args":[1,1,0],"value":{"0":"1"}},{"args":[0,1,1],"value":{"0":"-1"}}]}"#;
        let mut rep = ptr::null_mut();
        assert_eq!(lts_representation_from_json(c(rep_json).as_ptr(), &mut rep), LtsStatus::Ok);
        let rb = map(RB_MAP);
        let mut holds = false;
        assert_eq!(lts_check_relative_rb(sys, rep, rb, &mut holds, ptr::null_mut()), LtsStatus::Ok);
        assert!(holds);
        lts_representation_free(rep);
        lts_map_free(rb);
        lts_system_free(sys);
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(lts_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/lts.h")).unwrap();
    for name in [
        "lts_version",
        "lts_last_error",
        "lts_string_free",
        "lts_system_from_json",
        "lts_system_free",
        "lts_system_check_axioms",
        "lts_map_from_json",
        "lts_check_relative_rb",
        "lts_twist_report",
        "lts_mc_report",
        "typedef struct LtsSystem LtsSystem",
        "LTS_STATUS_INPUT_ERROR = 2",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}

/// Compiles and runs a C program against the header and the static library.
#[test]
fn c_program_links() {
    let exe = std::env::current_exe().unwrap();
    let deps = exe.parent().unwrap();
    let lib = [deps.join("liblts_ffi.a"), deps.parent().unwrap().join("liblts_ffi.a")]
        .into_iter()
        .find(|p| p.exists())
        .unwrap_or_else(|| deps.join("liblts_ffi.a"));
    assert!(lib.exists(), "static library not found at {}", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    std::fs::write(
        &src,
        format!(
            r#"#include <stdio.h>
#include "lts.h"
int main(void) {{
    LtsSystem *sys = NULL;
    LtsMap *map = NULL;
    bool holds = false;
    size_t ce[3] = {{0, 0, 0}};
    if (lts_system_from_json({sys:?}, &sys) != LTS_STATUS_OK) return 10;
    if (lts_map_from_json({map:?}, &map) != LTS_STATUS_OK) return 11;
    if (lts_check_relative_rb(sys, NULL, map, &holds, ce) != LTS_STATUS_OK) return 12;
    if (lts_system_from_json("{{", &sys) != LTS_STATUS_INPUT_ERROR || lts_last_error() == NULL) return 13;
    printf("%s %d\n", lts_version(), holds ? 1 : 0);
    lts_map_free(map);
    lts_system_free(sys);
    return 0;
}}
"#,
            sys = TWO_DIM,
            map = RB_MAP
        ),
    )
    .unwrap();
    let bin = dir.path().join("main");
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("a C compiler named cc");
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), format!("{} 1", env!("CARGO_PKG_VERSION")));
}
