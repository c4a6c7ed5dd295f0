use knowtruth_ffi::*;
use std::ffi::{CStr, CString};
use std::ptr;

struct Session(*mut KtSession);

impl Session {
    fn new() -> Self {
        Session(kt_session_new())
    }

    fn call(
        &self,
        f: unsafe extern "C" fn(*mut KtSession, *const libc::c_char, *mut *mut libc::c_char) -> KtStatus,
        arg: &str,
    ) -> (KtStatus, String) {
        let arg = CString::new(arg).unwrap();
        let mut out = ptr::null_mut();
        unsafe {
            let status = f(self.0, arg.as_ptr(), &mut out);
            if status == KtStatus::Ok {
                let s = CStr::from_ptr(out).to_str().unwrap().to_owned();
                kt_string_free(out);
                (status, s)
            } else {
                assert!(out.is_null());
                let e = kt_last_error(self.0);
                (status, CStr::from_ptr(e).to_str().unwrap().to_owned())
            }
        }
    }
}

impl Drop for Session {
    fn drop(&mut self) {
        unsafe { kt_session_free(self.0) }
    }
}

#[test]
fn code_round_trip() {
    let s = Session::new();
    let (st, code) = s.call(kt_code, "forall v0 (T(v0) -> 0 = 0)");
    assert_eq!(st, KtStatus::Ok);
    let (st, back) = s.call(kt_decode, &code);
    assert_eq!(st, KtStatus::Ok);
    assert_eq!(back, "forall v0 (T(v0) -> 0 = 0)");
    assert_eq!(s.call(kt_code, "forall (").0, KtStatus::Parse);
    assert_eq!(s.call(kt_decode, "twelve").0, KtStatus::Parse);
}

#[test]
fn scripts_and_checking() {
    let s = Session::new();
    let (st, bundle) = s.call(kt_run_script, "montague");
    assert_eq!(st, KtStatus::Ok);
    let (st, concl) = s.call(kt_check, &bundle);
    assert_eq!(st, KtStatus::Ok, "{concl}");
    assert_eq!(concl, knowtruth::syntax::Formula::bot().to_string());

    let tampered = bundle.replace("system: Montague", "system: Base");
    let (st, msg) = s.call(kt_check, &tampered);
    assert_eq!(st, KtStatus::Rejected, "{msg}");
    assert!(msg.starts_with("proof 2:"), "{msg}");

    let (st, msg) = s.call(kt_run_script, "no-such-script");
    assert_eq!(st, KtStatus::UnknownScript);
    assert!(msg.contains("no-such-script"));
}

#[test]
fn null_arguments() {
    let s = Session::new();
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(kt_code(s.0, ptr::null(), &mut out), KtStatus::NullArgument);
        assert_eq!(kt_code(ptr::null_mut(), c"0".as_ptr(), &mut out), KtStatus::NullArgument);
        assert_eq!(kt_code(s.0, c"0".as_ptr(), ptr::null_mut()), KtStatus::NullArgument);
        assert!(kt_last_error(ptr::null()).is_null());
        kt_string_free(ptr::null_mut());
        kt_session_free(ptr::null_mut());
    }
}

#[test]
fn header_is_generated() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/knowtruth.h")).unwrap();
    for name in
        ["kt_session_new", "kt_check", "kt_run_script", "KT_STATUS_REJECTED", "typedef struct KtSession KtSession"]
    {
        assert!(h.contains(name), "{name}");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = std::process::Command::new("cc").arg("--version").output() else {
        eprintln!("no C compiler on PATH");
        return;
    };
    assert!(cc.status.success());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(
        &src,
        "#include \"knowtruth.h\"\nint main(void) { KtSession *s = kt_session_new(); kt_session_free(s); return KT_STATUS_OK; }\n",
    )
    .unwrap();
    let st = std::process::Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-I", concat!(env!("CARGO_MANIFEST_DIR"), "/include")])
        .arg(&src)
        .status()
        .unwrap();
    assert!(st.success());
}
