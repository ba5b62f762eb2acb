//! C interface to the analysis pipeline.
//!
//! A caller creates an [`ArcSession`], submits JSON job specifications and
//! receives JSON reports as heap strings that must be released with
//! [`arcmodel_string_free`]. Every entry point returns an [`ArcStatus`]; the
//! message for the last failure is kept on the session.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use arcmodel::cli::{run_stages, JobSpec, Stage, StageError};

/// Result codes of the C interface.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArcStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8 or the job was not valid JSON.
    InvalidJob = 2,
    /// The input was rejected (cone, valuation, orders).
    InvalidInput = 3,
    /// A hypothesis of the construction failed for this input.
    HypothesisViolation = 4,
    /// The finite-order comparison did not pass; the report is still
    /// returned.
    VerificationFailed = 5,
    /// An internal error; the session stays usable.
    Internal = 6,
}

/// Stage selection bits for [`arcmodel_run`].
pub const ARC_STAGE_HILBERT: u32 = 1;
pub const ARC_STAGE_RELATIONS: u32 = 1 << 1;
pub const ARC_STAGE_MODEL: u32 = 1 << 2;
pub const ARC_STAGE_DECOMPOSE: u32 = 1 << 3;
pub const ARC_STAGE_HENSEL: u32 = 1 << 4;
pub const ARC_STAGE_VERIFY: u32 = 1 << 5;
pub const ARC_STAGE_ALL: u32 = (1 << 6) - 1;

/// Opaque session handle.
pub struct ArcSession {
    last_error: Option<CString>,
}

impl ArcSession {
    fn fail(&mut self, status: ArcStatus, msg: impl Into<String>) -> ArcStatus {
        let msg = msg.into().replace('\0', " ");
        self.last_error = Some(CString::new(msg).expect("nul bytes removed"));
        status
    }
}

fn stages(mask: u32) -> Vec<Stage> {
    [
        (ARC_STAGE_HILBERT, Stage::Hilbert),
        (ARC_STAGE_RELATIONS, Stage::Relations),
        (ARC_STAGE_MODEL, Stage::Model),
        (ARC_STAGE_DECOMPOSE, Stage::Decompose),
        (ARC_STAGE_HENSEL, Stage::Hensel),
        (ARC_STAGE_VERIFY, Stage::Verify),
    ]
    .into_iter()
    .filter(|(bit, _)| mask & bit != 0)
    .map(|(_, s)| s)
    .collect()
}

fn status_of(e: &StageError) -> ArcStatus {
    match e.exit_code() {
        2 => ArcStatus::HypothesisViolation,
        3 => ArcStatus::VerificationFailed,
        _ => ArcStatus::InvalidInput,
    }
}

/// Creates a session. Release it with [`arcmodel_session_free`].
#[no_mangle]
pub extern "C" fn arcmodel_session_new() -> *mut ArcSession {
    Box::into_raw(Box::new(ArcSession { last_error: None }))
}

/// Releases a session. Null is ignored.
///
/// # Safety
/// `session` must be null or a pointer returned by
/// [`arcmodel_session_new`] that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn arcmodel_session_free(session: *mut ArcSession) {
    if !session.is_null() {
        drop(Box::from_raw(session));
    }
}

/// Runs the stages selected by `stage_mask` on the JSON job `job_json` and
/// stores the JSON report in `*out`. On `Ok` and `VerificationFailed` the
/// report is set; otherwise `*out` is null and the message is available
/// from [`arcmodel_last_error`].
///
/// # Safety
/// `session` must be a live session, `job_json` a nul-terminated string and
/// `out` a valid pointer to write to.
#[no_mangle]
pub unsafe extern "C" fn arcmodel_run(
    session: *mut ArcSession,
    job_json: *const c_char,
    stage_mask: u32,
    out: *mut *mut c_char,
) -> ArcStatus {
    let Some(session) = session.as_mut() else {
        return ArcStatus::NullArgument;
    };
    session.last_error = None;
    if out.is_null() {
        return session.fail(ArcStatus::NullArgument, "out is null");
    }
    *out = ptr::null_mut();
    if job_json.is_null() {
        return session.fail(ArcStatus::NullArgument, "job_json is null");
    }
    let Ok(text) = CStr::from_ptr(job_json).to_str() else {
        return session.fail(ArcStatus::InvalidJob, "job is not valid UTF-8");
    };
    let job: JobSpec = match serde_json::from_str(text) {
        Ok(j) => j,
        Err(e) => return session.fail(ArcStatus::InvalidJob, format!("job: {e}")),
    };
    let wanted = stages(stage_mask);
    let result = catch_unwind(AssertUnwindSafe(|| run_stages(&job, &wanted)));
    let report = match result {
        Ok(Ok(r)) => r,
        Ok(Err(e)) => return session.fail(status_of(&e), e.to_string()),
        Err(_) => return session.fail(ArcStatus::Internal, "internal error"),
    };
    let failed = report.comparison_failed();
    let json = CString::new(report.to_json()).expect("JSON has no nul bytes");
    *out = json.into_raw();
    if failed {
        let detail = report.comparison.map(|c| c.detail).unwrap_or_default();
        return session.fail(ArcStatus::VerificationFailed, detail);
    }
    ArcStatus::Ok
}

/// [`arcmodel_run`] with every stage.
///
/// # Safety
/// As for [`arcmodel_run`].
#[no_mangle]
pub unsafe extern "C" fn arcmodel_analyze(
    session: *mut ArcSession,
    job_json: *const c_char,
    out: *mut *mut c_char,
) -> ArcStatus {
    arcmodel_run(session, job_json, ARC_STAGE_ALL, out)
}

/// Message of the last failure on this session, or null. The pointer stays
/// valid until the next call on the session.
///
/// # Safety
/// `session` must be null or a live session.
#[no_mangle]
pub unsafe extern "C" fn arcmodel_last_error(session: *const ArcSession) -> *const c_char {
    session
        .as_ref()
        .and_then(|s| s.last_error.as_ref())
        .map_or(ptr::null(), |m| m.as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned through an `out` parameter of this
/// library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn arcmodel_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn arcmodel_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn masks_select_stages_in_order() {
        assert!(stages(0).is_empty());
        assert_eq!(stages(ARC_STAGE_ALL).len(), 6);
        assert_eq!(stages(ARC_STAGE_HENSEL | ARC_STAGE_HILBERT), vec![Stage::Hilbert, Stage::Hensel]);
    }

    #[test]
    fn null_session_is_rejected() {
        let mut out = ptr::null_mut();
        let status = unsafe { arcmodel_run(ptr::null_mut(), c"{}".as_ptr(), ARC_STAGE_ALL, &mut out) };
        assert_eq!(status, ArcStatus::NullArgument);
        assert!(unsafe { arcmodel_last_error(ptr::null()) }.is_null());
    }
}
