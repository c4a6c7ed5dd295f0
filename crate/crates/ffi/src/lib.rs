//! C interface to the knowtruth workbench.
//!
//! Every call takes a `KtSession` handle and returns a `KtStatus`. Strings
//! handed out through `out` parameters are owned by the caller and must be
//! released with `kt_string_free`. After a failure, `kt_last_error` describes
//! what went wrong.

use knowtruth::coding::{decode, gc, GodelCode};
use knowtruth::kernel::check_proof;
use knowtruth::kernel::text::{parse_proofs, print_proofs};
use knowtruth::scripts::{self, Ctx, ScriptError};
use knowtruth::syntax::parse_syntax;
use libc::c_char;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KtStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Rejected = 4,
    UnknownScript = 5,
    Internal = 6,
}

/// Opaque session: a system registry, a theorem store and the last error.
pub struct KtSession {
    ctx: Ctx,
    error: Option<CString>,
}

struct Fail(KtStatus, String);

impl Fail {
    fn new(status: KtStatus, msg: impl ToString) -> Self {
        Fail(status, msg.to_string())
    }
}

fn to_c(s: String) -> CString {
    CString::new(s).unwrap_or_else(|e| {
        let mut v = e.into_vec();
        v.retain(|b| *b != 0);
        CString::new(v).unwrap()
    })
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::new(KtStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Fail::new(KtStatus::InvalidUtf8, e))
}

unsafe fn guarded(
    session: *mut KtSession,
    out: *mut *mut c_char,
    body: impl FnOnce(&mut KtSession) -> Result<String, Fail>,
) -> KtStatus {
    if session.is_null() || out.is_null() {
        return KtStatus::NullArgument;
    }
    *out = ptr::null_mut();
    let s = &mut *session;
    s.error = None;
    let r = catch_unwind(AssertUnwindSafe(|| body(&mut *session)))
        .unwrap_or_else(|_| Err(Fail::new(KtStatus::Internal, "internal panic")));
    let s = &mut *session;
    match r {
        Ok(text) => {
            *out = to_c(text).into_raw();
            KtStatus::Ok
        }
        Err(Fail(status, msg)) => {
            s.error = Some(to_c(msg));
            status
        }
    }
}

#[no_mangle]
pub extern "C" fn kt_session_new() -> *mut KtSession {
    Box::into_raw(Box::new(KtSession { ctx: Ctx::new(), error: None }))
}

/// # Safety
/// `session` is null or a handle from `kt_session_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kt_session_free(session: *mut KtSession) {
    if !session.is_null() {
        drop(Box::from_raw(session));
    }
}

/// The message of the last failed call on `session`, or null. Borrowed: valid
/// until the next call on the same session.
///
/// # Safety
/// `session` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kt_last_error(session: *const KtSession) -> *const c_char {
    match session.as_ref().and_then(|s| s.error.as_ref()) {
        Some(e) => e.as_ptr(),
        None => ptr::null(),
    }
}

/// # Safety
/// `s` is null or a string returned through an `out` parameter, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse a term or formula and write its Gödel code in decimal.
///
/// # Safety
/// `session` is a live handle, `text` a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kt_code(session: *mut KtSession, text: *const c_char, out: *mut *mut c_char) -> KtStatus {
    guarded(session, out, |_| {
        let x = parse_syntax(read_str(text)?).map_err(|e| Fail::new(KtStatus::Parse, e))?;
        Ok(gc(&x).to_string())
    })
}

/// Decode a decimal Gödel code back into the expression's text.
///
/// # Safety
/// As for `kt_code`.
#[no_mangle]
pub unsafe extern "C" fn kt_decode(session: *mut KtSession, code: *const c_char, out: *mut *mut c_char) -> KtStatus {
    guarded(session, out, |_| {
        let n: GodelCode = read_str(code)?.parse().map_err(|e| Fail::new(KtStatus::Parse, e))?;
        decode(&n).map(|x| x.to_string()).map_err(|e| Fail::new(KtStatus::Rejected, e))
    })
}

/// Check every proof in a bundle and write the conclusion of the last one.
/// Returns `KT_STATUS_REJECTED` at the first proof the kernel refuses.
///
/// # Safety
/// As for `kt_code`.
#[no_mangle]
pub unsafe extern "C" fn kt_check(session: *mut KtSession, proofs: *const c_char, out: *mut *mut c_char) -> KtStatus {
    guarded(session, out, |s| {
        let ps = parse_proofs(read_str(proofs)?).map_err(|e| Fail::new(KtStatus::Parse, e))?;
        let mut last = None;
        for (i, p) in ps.iter().enumerate() {
            let v = check_proof(&s.ctx.reg, &s.ctx.db, p)
                .map_err(|e| Fail::new(KtStatus::Rejected, format!("proof {}: {e}", i + 1)))?;
            last = Some(v.conclusion);
        }
        last.map(|f| f.to_string()).ok_or_else(|| Fail::new(KtStatus::Parse, "no proofs"))
    })
}

/// Run a built-in script and write its proofs as a bundle `kt_check` accepts.
///
/// # Safety
/// As for `kt_code`.
#[no_mangle]
pub unsafe extern "C" fn kt_run_script(session: *mut KtSession, id: *const c_char, out: *mut *mut c_char) -> KtStatus {
    guarded(session, out, |s| {
        let run = scripts::run(&s.ctx, read_str(id)?).map_err(|e| match e {
            ScriptError::Unknown(_) => Fail::new(KtStatus::UnknownScript, e),
            _ => Fail::new(KtStatus::Rejected, e),
        })?;
        Ok(print_proofs(&run.proofs))
    })
}
