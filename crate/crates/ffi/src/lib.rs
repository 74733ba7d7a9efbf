//! C ABI for the `quadpencil` classifier.
//!
//! Objects cross the boundary as opaque handles (`QpPencil`, `QpReport`) that
//! must be released with their `*_free` function. Strings returned through
//! `char **` out-parameters are owned by the caller and released with
//! `qp_string_free`. Every entry point returns a `QpStatus`; on failure the
//! message is available from `qp_last_error_message` on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use quadpencil::report::{self, ClassificationReport};
use quadpencil::verdict::Status;
use quadpencil::{Error, Pencil};

/// Result code of every `qp_*` call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QpStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    SingularIntersection = 3,
    UnsupportedDimension = 4,
    InvalidArgument = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

/// Rationality status of the real locus.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QpVerdict {
    Rational = 0,
    NotRational = 1,
    Open = 2,
    OutOfScope = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QpLatticeCounts {
    pub weights: usize,
    pub disjoint: usize,
    pub meet_in_n_minus_1_plane: usize,
    pub reducible_quadrics: usize,
}

/// A validated pencil `(n, F1, F2)`.
pub struct QpPencil {
    pencil: Pencil,
    label: String,
}

/// A classification report.
pub struct QpReport {
    report: ClassificationReport,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> QpStatus {
    match e {
        Error::SingularIntersection => QpStatus::SingularIntersection,
        Error::UnsupportedDimension(_) => QpStatus::UnsupportedDimension,
        Error::Parse(_)
        | Error::Rational(_)
        | Error::NotSquare { .. }
        | Error::NotSymmetric(..)
        | Error::EmptyMatrix
        | Error::DimensionMismatch { .. } => QpStatus::Parse,
        _ => QpStatus::InvalidArgument,
    }
}

/// Runs `f`, records its error message and converts panics.
fn guard(f: impl FnOnce() -> Result<(), (QpStatus, String)>) -> QpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            QpStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            QpStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (QpStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (QpStatus, String) {
    (QpStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (QpStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (QpStatus::Parse, format!("{what} is not UTF-8")))
}

fn into_c_string(s: String) -> Result<*mut c_char, (QpStatus, String)> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| (QpStatus::InvalidArgument, "output contains a nul byte".to_string()))
}

/// Parses a pencil document `{"n": .., "label": .., "F1": [[..]], "F2": [[..]]}`.
/// Matrix entries are integers or `"p/q"` strings.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qp_pencil_from_json(json: *const c_char, out: *mut *mut QpPencil) -> QpStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let text = read_str(json, "json")?;
        let doc = report::PencilDocument::from_json(text).map_err(lib_err)?;
        let pencil = doc.to_pencil().map_err(lib_err)?;
        let label = doc.label.unwrap_or_default();
        *out = Box::into_raw(Box::new(QpPencil { pencil, label }));
        Ok(())
    })
}

/// # Safety
/// `pencil` must be null or a handle from `qp_pencil_from_json` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qp_pencil_free(pencil: *mut QpPencil) {
    if !pencil.is_null() {
        drop(Box::from_raw(pencil));
    }
}

/// Classifies a pencil. Fails with `SingularIntersection` when the base locus is singular.
///
/// # Safety
/// `pencil` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qp_classify(pencil: *const QpPencil, out: *mut *mut QpReport) -> QpStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let p = pencil.as_ref().ok_or_else(|| null("pencil"))?;
        let report = report::classify_pencil(&p.pencil, &p.label).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(QpReport { report }));
        Ok(())
    })
}

/// # Safety
/// `report` must be null or a handle from `qp_classify` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qp_report_free(report: *mut QpReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Full report as JSON. Release with `qp_string_free`.
///
/// # Safety
/// `report` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qp_report_json(report: *const QpReport, out: *mut *mut c_char) -> QpStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        *out = into_c_string(r.report.to_json())?;
        Ok(())
    })
}

/// Human-readable report, identical to the CLI text output. Release with `qp_string_free`.
///
/// # Safety
/// `report` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qp_report_text(report: *const QpReport, out: *mut *mut c_char) -> QpStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        *out = into_c_string(r.report.to_string())?;
        Ok(())
    })
}

/// Writes the canonical Krasnov invariant, e.g. `(1,3,5)`, into `buf`.
/// `needed` (optional) receives the required size including the nul byte;
/// `BufferTooSmall` is returned when `len` is less than that.
///
/// # Safety
/// `buf` must point to `len` writable bytes; `needed` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn qp_report_invariant(
    report: *const QpReport,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> QpStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        let s = r.report.krasnov.to_string();
        let size = s.len() + 1;
        if !needed.is_null() {
            *needed = size;
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        if len < size {
            return Err((QpStatus::BufferTooSmall, format!("need {size} bytes, got {len}")));
        }
        ptr::copy_nonoverlapping(s.as_ptr(), buf.cast::<u8>(), s.len());
        *buf.add(s.len()) = 0;
        Ok(())
    })
}

/// # Safety
/// `report` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qp_report_verdict(report: *const QpReport, out: *mut QpVerdict) -> QpStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = match r.report.verdict.status {
            Status::Rational => QpVerdict::Rational,
            Status::NotRational => QpVerdict::NotRational,
            Status::Open => QpVerdict::Open,
            Status::OutOfScope => QpVerdict::OutOfScope,
        };
        Ok(())
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a string from a `qp_*` out-parameter not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Dihedral normal form of a cyclic sequence of positive integers.
/// `out` receives `len` entries.
///
/// # Safety
/// `parts` and `out` must each point to `len` elements.
#[no_mangle]
pub unsafe extern "C" fn qp_canonical_dihedral(parts: *const usize, len: usize, out: *mut usize) -> QpStatus {
    guard(|| {
        if parts.is_null() {
            return Err(null("parts"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let input = std::slice::from_raw_parts(parts, len);
        let canon = quadpencil::krasnov::canonical_dihedral(input).map_err(lib_err)?;
        ptr::copy_nonoverlapping(canon.as_ptr(), out, canon.len());
        Ok(())
    })
}

/// Plane and reducible-quadric counts in the weight class of the given parity (0 even, 1 odd)
/// of `D_(2n+3)`, for `1 <= n <= 5`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qp_lattice_counts(n: usize, parity: u32, out: *mut QpLatticeCounts) -> QpStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if parity > 1 {
            return Err((QpStatus::InvalidArgument, format!("parity must be 0 or 1, got {parity}")));
        }
        let c = report::lattice_counts(n, parity).map_err(lib_err)?;
        *out = QpLatticeCounts {
            weights: c.weights,
            disjoint: c.disjoint,
            meet_in_n_minus_1_plane: c.meet_in_n_minus_1_plane,
            reducible_quadrics: c.reducible_quadrics,
        };
        Ok(())
    })
}

/// All isotopy classes for `1 <= n <= 4` as JSON. Release with `qp_string_free`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qp_atlas_json(n: usize, out: *mut *mut c_char) -> QpStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let atlas = report::atlas(n).map_err(lib_err)?;
        *out = into_c_string(atlas.to_json())?;
        Ok(())
    })
}

/// Message of the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next `qp_*` call on the same thread.
#[no_mangle]
pub extern "C" fn qp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_statuses() {
        assert_eq!(status_of(&Error::SingularIntersection), QpStatus::SingularIntersection);
        assert_eq!(status_of(&Error::UnsupportedDimension(0)), QpStatus::UnsupportedDimension);
        assert_eq!(status_of(&Error::Parse(String::new())), QpStatus::Parse);
        assert_eq!(status_of(&Error::EmptySequence), QpStatus::InvalidArgument);
    }

    #[test]
    fn panics_are_contained() {
        assert_eq!(guard(|| panic!("boom")), QpStatus::Panic);
        let msg = unsafe { CStr::from_ptr(qp_last_error_message()) };
        assert_eq!(msg.to_str().unwrap(), "internal panic");
    }
}
