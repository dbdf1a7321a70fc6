use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use stokit_ffi::*;

const DEFECTIVE: &str = r#"{"rows": [["1/3", "2/3", "0"], ["1/3", "1/6", "1/2"], ["1/3", "1/6", "1/2"]]}"#;

fn parse(text: &str) -> Result<*mut StokitMatrix, StokitStatus> {
    let c = CString::new(text).unwrap();
    let mut m = ptr::null_mut();
    match unsafe { stokit_matrix_parse(c.as_ptr(), &mut m) } {
        StokitStatus::Ok => Ok(m),
        status => Err(status),
    }
}

fn last_error() -> Option<String> {
    let p = stokit_last_error();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}

fn take_json(call: impl FnOnce(*mut *mut c_char) -> StokitStatus) -> serde_json::Value {
    let mut out = ptr::null_mut();
    assert_eq!(call(&mut out), StokitStatus::Ok, "{:?}", last_error());
    let value = serde_json::from_slice(unsafe { CStr::from_ptr(out) }.to_bytes()).unwrap();
    unsafe { stokit_string_free(out) };
    value
}

#[test]
fn parse_validate_and_analyze() {
    let m = parse(DEFECTIVE).unwrap();
    unsafe {
        assert_eq!(stokit_matrix_dim(m), 3);
        assert!(stokit_matrix_is_exact(m));
        let mut valid = false;
        assert_eq!(stokit_validate(m, &mut valid), StokitStatus::Ok);
        assert!(valid);

        let mut xi = [0.0; 3];
        assert_eq!(stokit_stationary(m, xi.as_mut_ptr(), 3), StokitStatus::Ok);
        assert_eq!(xi, [1.0 / 3.0; 3]);

        let mut diag = 7;
        assert_eq!(stokit_is_diagonalizable(m, &mut diag), StokitStatus::Ok);
        assert_eq!(diag, 0);

        let report = take_json(|out| stokit_analyze_json(m, 10, 1, out));
        assert_eq!(report["class"], "unique_limit");
        let spectrum = take_json(|out| stokit_spectrum_json(m, out));
        assert!(spectrum["char_poly"].is_string() || spectrum["char_poly"].is_array());
        let matrix = take_json(|out| stokit_matrix_json(m, out));
        assert_eq!(matrix["rows"][0][1], "2/3");
        stokit_matrix_free(m);
    }
}

#[test]
fn float_rows_and_classification() {
    let swap = [0.0, 1.0, 1.0, 0.0];
    let mut m = ptr::null_mut();
    unsafe {
        assert_eq!(stokit_matrix_from_rows_f64(swap.as_ptr(), 2, &mut m), StokitStatus::Ok);
        assert!(!stokit_matrix_is_exact(m));
        let class = take_json(|out| stokit_classify_json(m, out));
        assert_eq!(class["class"], "non_convergent");
        let mut diag = 7;
        assert_eq!(stokit_is_diagonalizable(m, &mut diag), StokitStatus::Ok);
        assert_eq!(diag, -1);
        stokit_matrix_free(m);
    }
    let m = parse("0,1\n1,0\n").unwrap();
    let mut diag = 7;
    unsafe {
        assert_eq!(stokit_is_diagonalizable(m, &mut diag), StokitStatus::Ok);
        stokit_matrix_free(m);
    }
    assert_eq!(diag, 1);
}

#[test]
fn constructions() {
    let mut m = ptr::null_mut();
    unsafe {
        assert_eq!(stokit_construct_defective_example(&mut m), StokitStatus::Ok);
        let rows = take_json(|out| stokit_matrix_json(m, out));
        assert_eq!(rows["rows"][1], serde_json::json!(["1/3", "1/6", "1/2"]));
        stokit_matrix_free(m);

        assert_eq!(stokit_construct_defective(1, 4, &mut m), StokitStatus::Ok);
        let mut diag = 7;
        assert_eq!(stokit_is_diagonalizable(m, &mut diag), StokitStatus::Ok);
        assert_eq!(diag, 0);
        stokit_matrix_free(m);

        assert_eq!(stokit_construct_defective(-3, 4, &mut m), StokitStatus::Infeasible);
        assert!(last_error().is_some());
        assert_eq!(stokit_construct_defective(1, 0, &mut m), StokitStatus::InvalidArgument);
    }
}

#[test]
fn errors_and_null_handling() {
    assert_eq!(parse(r#"{"rows": [["1/2""#).unwrap_err(), StokitStatus::Parse);
    assert!(last_error().is_some());

    let bad = parse(r#"{"rows": [["1/2", "1"], ["1/3", "0"]]}"#).unwrap();
    unsafe {
        let mut valid = true;
        assert_eq!(stokit_validate(bad, &mut valid), StokitStatus::Ok);
        assert!(!valid);
        assert!(last_error().is_none());
        let mut xi = [0.0; 2];
        assert_eq!(stokit_stationary(bad, xi.as_mut_ptr(), 2), StokitStatus::NotStochastic);
        stokit_matrix_free(bad);

        let m = parse(DEFECTIVE).unwrap();
        let mut xi = [0.0; 2];
        assert_eq!(stokit_stationary(m, xi.as_mut_ptr(), 2), StokitStatus::InvalidArgument);
        assert_eq!(stokit_stationary(m, ptr::null_mut(), 3), StokitStatus::InvalidArgument);
        stokit_matrix_free(m);

        let mut valid = false;
        assert_eq!(stokit_validate(ptr::null(), &mut valid), StokitStatus::InvalidArgument);
        assert_eq!(last_error().as_deref(), Some("null matrix handle"));
        assert_eq!(stokit_matrix_parse(ptr::null(), &mut ptr::null_mut()), StokitStatus::InvalidArgument);
        assert_eq!(stokit_matrix_dim(ptr::null()), 0);
        stokit_matrix_free(ptr::null_mut());
        stokit_string_free(ptr::null_mut());
    }
}

fn target_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_static_library() {
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libstokit_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let exe = target_dir().join("stokit_ffi_smoke");
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-I"])
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("3 0 0.33333333333333331 {"), "{stdout}");
}
