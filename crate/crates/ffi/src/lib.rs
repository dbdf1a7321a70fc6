//! C interface to `stokit`.
//!
//! Matrices live behind an opaque [`StokitMatrix`] handle. Every function
//! returns a [`StokitStatus`]; on failure a message is available from
//! [`stokit_last_error`] until the next call on the same thread. Strings
//! handed out by the library must be released with [`stokit_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use stokit::construction::{construct_defective_example, construct_defective_scaled};
use stokit::convergence::classify_convergence;
use stokit::decomposition::stationary_distribution;
use stokit::io::{parse_matrix, AnyMatrix};
use stokit::report;
use stokit::spectral::{is_diagonalizable_exact, spectral_report, Diagonalizability};
use stokit::validation::validate_stochastic;
use stokit::{AnalysisConfig, Backend, BigRational, Error, Matrix, Scalar, StochasticMatrix};

/// Opaque matrix handle.
pub struct StokitMatrix {
    inner: AnyMatrix,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StokitStatus {
    Ok = 0,
    /// Null pointer, wrong buffer length or malformed argument.
    InvalidArgument = 1,
    /// Matrix text could not be parsed.
    Parse = 2,
    /// The matrix is not column-stochastic.
    NotStochastic = 3,
    /// No feasible construction exists for the requested parameters.
    Infeasible = 4,
    /// Any other analysis failure (size limits, root finding, ...).
    Failed = 5,
    /// A panic was caught at the boundary.
    Internal = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("NUL bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: StokitStatus, msg: impl Into<String>) -> StokitStatus {
    set_error(msg.into());
    status
}

fn status_of(e: &Error) -> StokitStatus {
    match e {
        Error::Parse(_) | Error::Io(_) => StokitStatus::Parse,
        Error::NotStochastic(_) => StokitStatus::NotStochastic,
        Error::Infeasible(_) => StokitStatus::Infeasible,
        Error::Precondition(_) | Error::DimensionMismatch { .. } => StokitStatus::InvalidArgument,
        _ => StokitStatus::Failed,
    }
}

/// Runs `f`, records its error, and converts panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<(), StokitStatus>) -> StokitStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => StokitStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(StokitStatus::Internal, "internal error"),
    }
}

trait OrStatus<T> {
    fn or_status(self) -> Result<T, StokitStatus>;
}

impl<T> OrStatus<T> for stokit::Result<T> {
    fn or_status(self) -> Result<T, StokitStatus> {
        self.map_err(|e| fail(status_of(&e), e.to_string()))
    }
}

unsafe fn handle<'a>(m: *const StokitMatrix) -> Result<&'a StokitMatrix, StokitStatus> {
    // SAFETY: caller passes null or a live handle from this library.
    unsafe { m.as_ref() }.ok_or_else(|| fail(StokitStatus::InvalidArgument, "null matrix handle"))
}

fn out_ptr<T>(out: *mut T) -> Result<*mut T, StokitStatus> {
    if out.is_null() {
        Err(fail(StokitStatus::InvalidArgument, "null output pointer"))
    } else {
        Ok(out)
    }
}

fn emit_handle(out: *mut *mut StokitMatrix, inner: AnyMatrix) {
    let boxed = Box::into_raw(Box::new(StokitMatrix { inner }));
    // SAFETY: `out` was checked non-null by the caller of this helper.
    unsafe { *out = boxed };
}

fn emit_json(out: *mut *mut c_char, value: &serde_json::Value) -> Result<(), StokitStatus> {
    let text = CString::new(value.to_string()).map_err(|_| fail(StokitStatus::Internal, "JSON held a NUL byte"))?;
    // SAFETY: `out` was checked non-null by the caller of this helper.
    unsafe { *out = text.into_raw() };
    Ok(())
}

fn stochastic<T: Scalar>(m: &Matrix<T>, cfg: &AnalysisConfig) -> Result<StochasticMatrix<T>, StokitStatus> {
    StochasticMatrix::new(m.clone(), cfg).or_status()
}

/// Parses a JSON or CSV matrix (`rows[i][j] = a_ij`). Integer-only input
/// uses the rational backend.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn stokit_matrix_parse(text: *const c_char, out: *mut *mut StokitMatrix) -> StokitStatus {
    guard(|| {
        let out = out_ptr(out)?;
        if text.is_null() {
            return Err(fail(StokitStatus::InvalidArgument, "null text"));
        }
        // SAFETY: caller guarantees a NUL-terminated string.
        let text = unsafe { CStr::from_ptr(text) }
            .to_str()
            .map_err(|_| fail(StokitStatus::Parse, "text is not UTF-8"))?;
        let m = parse_matrix(text, Backend::Rational).or_status()?;
        emit_handle(out, m);
        Ok(())
    })
}

/// Builds a float matrix from `n * n` row-major doubles (`data[i * n + j] = a_ij`).
///
/// # Safety
/// `data` must point to `n * n` readable doubles and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn stokit_matrix_from_rows_f64(
    data: *const f64,
    n: usize,
    out: *mut *mut StokitMatrix,
) -> StokitStatus {
    guard(|| {
        let out = out_ptr(out)?;
        if data.is_null() || n == 0 {
            return Err(fail(StokitStatus::InvalidArgument, "empty or null matrix data"));
        }
        let len = n.checked_mul(n).ok_or_else(|| fail(StokitStatus::InvalidArgument, "n is too large"))?;
        // SAFETY: caller guarantees `n * n` readable doubles.
        let values = unsafe { std::slice::from_raw_parts(data, len) };
        if values.iter().any(|v| !v.is_finite()) {
            return Err(fail(StokitStatus::InvalidArgument, "non-finite entry"));
        }
        let m = Matrix::from_rows(values.chunks(n).map(<[f64]>::to_vec).collect()).or_status()?;
        emit_handle(out, AnyMatrix::Float(m));
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `m` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn stokit_matrix_free(m: *mut StokitMatrix) {
    if !m.is_null() {
        // SAFETY: caller guarantees `m` came from `Box::into_raw` here.
        drop(unsafe { Box::from_raw(m) });
    }
}

/// Dimension of the matrix, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn stokit_matrix_dim(m: *const StokitMatrix) -> usize {
    // SAFETY: caller passes null or a live handle.
    unsafe { m.as_ref() }.map_or(0, |m| m.inner.n())
}

/// `true` when the matrix stores exact rationals.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn stokit_matrix_is_exact(m: *const StokitMatrix) -> bool {
    // SAFETY: caller passes null or a live handle.
    unsafe { m.as_ref() }.is_some_and(|m| m.inner.backend() == Backend::Rational)
}

/// Writes whether the matrix is column-stochastic.
///
/// # Safety
/// `m` must be a live handle and `valid` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn stokit_validate(m: *const StokitMatrix, valid: *mut bool) -> StokitStatus {
    guard(|| {
        // SAFETY: forwarded caller guarantee.
        let m = unsafe { handle(m) }?;
        let valid = out_ptr(valid)?;
        let cfg = AnalysisConfig::default();
        let report = match &m.inner {
            AnyMatrix::Rational(r) => validate_stochastic(r, &cfg),
            AnyMatrix::Float(f) => validate_stochastic(f, &cfg),
        };
        // SAFETY: checked non-null.
        unsafe { *valid = report.valid };
        Ok(())
    })
}

fn json_command(
    m: *const StokitMatrix,
    out: *mut *mut c_char,
    f: impl FnOnce(&AnyMatrix, &AnalysisConfig) -> Result<serde_json::Value, StokitStatus>,
) -> StokitStatus {
    guard(|| {
        // SAFETY: forwarded caller guarantee.
        let m = unsafe { handle(m) }?;
        let out = out_ptr(out)?;
        let value = f(&m.inner, &AnalysisConfig::default())?;
        emit_json(out, &value)
    })
}

/// Full analysis report as a JSON string.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer. Free the result with
/// [`stokit_string_free`].
#[no_mangle]
pub unsafe extern "C" fn stokit_analyze_json(
    m: *const StokitMatrix,
    samples: usize,
    seed: u64,
    out: *mut *mut c_char,
) -> StokitStatus {
    json_command(m, out, |inner, cfg| match inner {
        AnyMatrix::Rational(r) => report::analyze_json(&stochastic(r, cfg)?, samples, seed, cfg).or_status(),
        AnyMatrix::Float(f) => report::analyze_json(&stochastic(f, cfg)?, samples, seed, cfg).or_status(),
    })
}

/// Spectrum, characteristic polynomial and diagonalizability as JSON.
///
/// # Safety
/// As for [`stokit_analyze_json`].
#[no_mangle]
pub unsafe extern "C" fn stokit_spectrum_json(m: *const StokitMatrix, out: *mut *mut c_char) -> StokitStatus {
    json_command(m, out, |inner, cfg| match inner {
        AnyMatrix::Rational(r) => spectral_report(r, cfg).map(|s| report::spectral_json(&s)).or_status(),
        AnyMatrix::Float(f) => spectral_report(f, cfg).map(|s| report::spectral_json(&s)).or_status(),
    })
}

/// Convergence class of `Mᵐx` as JSON.
///
/// # Safety
/// As for [`stokit_analyze_json`].
#[no_mangle]
pub unsafe extern "C" fn stokit_classify_json(m: *const StokitMatrix, out: *mut *mut c_char) -> StokitStatus {
    json_command(m, out, |inner, cfg| match inner {
        AnyMatrix::Rational(r) => classify_convergence(&stochastic(r, cfg)?, cfg).map(|c| report::classification_json(&c)),
        AnyMatrix::Float(f) => classify_convergence(&stochastic(f, cfg)?, cfg).map(|c| report::classification_json(&c)),
    }
    .or_status())
}

/// Matrix entries as JSON (`{"n", "scalar", "rows"}`).
///
/// # Safety
/// As for [`stokit_analyze_json`].
#[no_mangle]
pub unsafe extern "C" fn stokit_matrix_json(m: *const StokitMatrix, out: *mut *mut c_char) -> StokitStatus {
    json_command(m, out, |inner, _| Ok(serde_json::to_value(inner.to_file()).expect("plain data serializes")))
}

/// Writes the stationary distribution (as doubles) into `out[0..len]`;
/// `len` must equal the matrix dimension.
///
/// # Safety
/// `m` must be a live handle and `out` must hold `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn stokit_stationary(m: *const StokitMatrix, out: *mut f64, len: usize) -> StokitStatus {
    guard(|| {
        // SAFETY: forwarded caller guarantee.
        let m = unsafe { handle(m) }?;
        let out = out_ptr(out)?;
        if len != m.inner.n() {
            return Err(fail(StokitStatus::InvalidArgument, format!("buffer length {len}, dimension {}", m.inner.n())));
        }
        let cfg = AnalysisConfig::default();
        let values = match &m.inner {
            AnyMatrix::Rational(r) => stationary_distribution(&stochastic(r, &cfg)?, &cfg).or_status()?.stationary().vector().to_f64(),
            AnyMatrix::Float(f) => stationary_distribution(&stochastic(f, &cfg)?, &cfg).or_status()?.stationary().vector().clone(),
        };
        // SAFETY: caller guarantees `len` writable doubles.
        unsafe { std::slice::from_raw_parts_mut(out, len) }.copy_from_slice(values.as_slice());
        Ok(())
    })
}

/// Writes 1 if diagonalizable, 0 if defective, -1 if undecided. Rational
/// matrices are decided exactly. Float matrices are always undecided since
/// Jordan structure does not survive rounding; parse them as fractions to
/// get an answer.
///
/// # Safety
/// `m` must be a live handle and `result` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn stokit_is_diagonalizable(m: *const StokitMatrix, result: *mut i32) -> StokitStatus {
    guard(|| {
        // SAFETY: forwarded caller guarantee.
        let m = unsafe { handle(m) }?;
        let result = out_ptr(result)?;
        let cfg = AnalysisConfig::default();
        let verdict = match &m.inner {
            AnyMatrix::Rational(r) => i32::from(is_diagonalizable_exact(r).or_status()?.diagonalizable),
            AnyMatrix::Float(f) => match spectral_report(f, &cfg).or_status()?.diagonalizable {
                Diagonalizability::True => 1,
                Diagonalizability::False => 0,
                Diagonalizability::Indeterminate => -1,
            },
        };
        // SAFETY: checked non-null.
        unsafe { *result = verdict };
        Ok(())
    })
}

/// The defective 3×3 example with spectrum {1, 0, 0}.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn stokit_construct_defective_example(out: *mut *mut StokitMatrix) -> StokitStatus {
    guard(|| {
        let out = out_ptr(out)?;
        let c = construct_defective_example().or_status()?;
        emit_handle(out, AnyMatrix::Rational(c.matrix.into_matrix()));
        Ok(())
    })
}

/// Defective 3×3 Markov matrix with spectrum {1, λ, λ}, `λ = num / den`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn stokit_construct_defective(num: i64, den: i64, out: *mut *mut StokitMatrix) -> StokitStatus {
    guard(|| {
        let out = out_ptr(out)?;
        if den == 0 {
            return Err(fail(StokitStatus::InvalidArgument, "zero denominator"));
        }
        let lambda = BigRational::new(num.into(), den.into());
        let c = construct_defective_scaled(&lambda).or_status()?;
        emit_handle(out, AnyMatrix::Rational(c.matrix.into_matrix()));
        Ok(())
    })
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn stokit_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn stokit_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: caller guarantees `s` came from `CString::into_raw` here.
        drop(unsafe { CString::from_raw(s) });
    }
}
