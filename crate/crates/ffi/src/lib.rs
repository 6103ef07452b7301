//! C ABI over `redgit`. Groups, homomorphisms and actions are opaque
//! handles built from the same JSON accepted by the command-line tool;
//! structured results come back as JSON strings owned by the caller.
//!
//! Every function returns an `RgStatus`. On failure a message is kept in
//! thread-local storage and can be read with `rg_last_error_message`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use redgit::bundle::{split_semistable_checked, SplitBundle};
use redgit::change_of_group::{destabilizing_witness, is_adapted, push_degree, HomData};
use redgit::cli::{strata_report, InvariantsOut, PushOut};
use redgit::io::{builtin_group, degree_str, DegreeFile, Loader};
use redgit::kirwan::{
    candidate_betas, instability, is_semistable, stratify_supports, verify_recursion, LinearizedAction, SupportPattern,
    DEFAULT_CANDIDATE_CAP, DEFAULT_PATTERN_CAP,
};
use redgit::root_datum::{central_cocharacters, rational_characters, root_kernel, weyl_group, GroupData};
use redgit::{Error, ErrorClass, QVec};

/// Result codes. The first four match the command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RgStatus {
    Ok = 0,
    InvalidInput = 1,
    CapExceeded = 2,
    Unsupported = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    Internal = 6,
}

/// A group presentation.
pub struct RgGroup(GroupData);

/// Homomorphism data between two groups.
pub struct RgHom(HomData);

/// A linearized action.
pub struct RgAction(LinearizedAction);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

enum Failure {
    Lib(Error),
    Null(&'static str),
    Utf8(&'static str),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> RgStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RgStatus::Ok,
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            match e.class() {
                ErrorClass::InvalidInput => RgStatus::InvalidInput,
                ErrorClass::CapExceeded => RgStatus::CapExceeded,
                ErrorClass::Unsupported => RgStatus::Unsupported,
            }
        }
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            RgStatus::NullPointer
        }
        Ok(Err(Failure::Utf8(what))) => {
            set_error(format!("invalid UTF-8 in {what}"));
            RgStatus::InvalidUtf8
        }
        Err(_) => {
            set_error("internal panic".into());
            RgStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::Utf8(what))
}

unsafe fn handle<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &'static str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_json<T: serde::Serialize>(out: *mut *mut c_char, value: &T) -> Result<(), Failure> {
    let s = serde_json::to_string(value).expect("results serialize");
    write_out(out, CString::new(s).expect("JSON has no nul bytes").into_raw(), "out")
}

fn parse_vec(json: &str) -> Result<QVec, Failure> {
    serde_json::from_str(json).map_err(|e| Failure::Lib(Error::Parse(format!("vector: {e}"))))
}

/// The message of the last failed call on this thread, or null. Valid until
/// the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn rg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn rg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a group file (JSON text). Relative paths resolve against the
/// working directory.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rg_group_from_json(json: *const c_char, out: *mut *mut RgGroup) -> RgStatus {
    guard(|| {
        let g = Loader::default().group_str(text(json, "json")?)?;
        write_out(out, Box::into_raw(Box::new(RgGroup(g))), "out")
    })
}

/// A builtin group such as `"gl3"`, `"sp4"` or `"normalizer2"`.
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rg_group_builtin(name: *const c_char, out: *mut *mut RgGroup) -> RgStatus {
    guard(|| {
        let g = builtin_group(text(name, "name")?)?;
        write_out(out, Box::into_raw(Box::new(RgGroup(g))), "out")
    })
}

/// # Safety
/// `g` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn rg_group_free(g: *mut RgGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rg_group_rank(g: *const RgGroup, out: *mut usize) -> RgStatus {
    guard(|| write_out(out, handle(g, "group")?.0.rank(), "out"))
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rg_group_weyl_order(g: *const RgGroup, out: *mut usize) -> RgStatus {
    guard(|| {
        let w = weyl_group(&handle(g, "group")?.0)?;
        write_out(out, w.order(), "out")
    })
}

/// Rational characters, central cocharacters and root kernel as JSON.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable. Free the result with
/// `rg_string_free`.
#[no_mangle]
pub unsafe extern "C" fn rg_group_invariants_json(g: *const RgGroup, out: *mut *mut c_char) -> RgStatus {
    guard(|| {
        let g = &handle(g, "group")?.0;
        let v = InvariantsOut {
            rational_characters: rational_characters(g)?,
            central_cocharacters: central_cocharacters(g)?,
            root_kernel: root_kernel(g.datum()),
        };
        write_json(out, &v)
    })
}

/// Three-way checked semistability of the split bundle with degrees
/// `delta_json` (a JSON array of rationals).
///
/// # Safety
/// `g` must be a live handle, `delta_json` a nul-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rg_split_semistable(g: *const RgGroup, delta_json: *const c_char, out: *mut bool) -> RgStatus {
    guard(|| {
        let b = SplitBundle::new(&handle(g, "group")?.0, parse_vec(text(delta_json, "delta_json")?)?)?;
        write_out(out, split_semistable_checked(&b)?, "out")
    })
}

/// Parses a homomorphism file (JSON text).
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rg_hom_from_json(json: *const c_char, out: *mut *mut RgHom) -> RgStatus {
    guard(|| {
        let f = Loader::default().hom_str(text(json, "json")?)?;
        write_out(out, Box::into_raw(Box::new(RgHom(f))), "out")
    })
}

/// # Safety
/// `f` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn rg_hom_free(f: *mut RgHom) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Is the degree (a degree file, as JSON text, on the source) adapted?
///
/// # Safety
/// `f` must be a live handle, `degree_json` a nul-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rg_hom_is_adapted(f: *const RgHom, degree_json: *const c_char, out: *mut bool) -> RgStatus {
    guard(|| {
        let f = &handle(f, "hom")?.0;
        let deg = degree_str(f.source(), text(degree_json, "degree_json")?)?;
        write_out(out, is_adapted(f, &deg)?, "out")
    })
}

/// The pushed degree as `{"image": [...], "degree": {"F": [...], "d": [...]}}`.
///
/// # Safety
/// As `rg_hom_is_adapted`; free the result with `rg_string_free`.
#[no_mangle]
pub unsafe extern "C" fn rg_hom_push_degree_json(f: *const RgHom, degree_json: *const c_char, out: *mut *mut c_char) -> RgStatus {
    guard(|| {
        let f = &handle(f, "hom")?.0;
        let deg = degree_str(f.source(), text(degree_json, "degree_json")?)?;
        let p = push_degree(f, &deg)?;
        write_json(out, &PushOut { image: p.image, degree: DegreeFile::from_degree(&p.degree) })
    })
}

/// The destabilizing witness `{"lambda_prime", "parabolic", "weight"}`.
///
/// # Safety
/// As `rg_hom_is_adapted`; free the result with `rg_string_free`.
#[no_mangle]
pub unsafe extern "C" fn rg_hom_witness_json(f: *const RgHom, degree_json: *const c_char, out: *mut *mut c_char) -> RgStatus {
    guard(|| {
        let f = &handle(f, "hom")?.0;
        let deg = degree_str(f.source(), text(degree_json, "degree_json")?)?;
        write_json(out, &destabilizing_witness(f, &deg)?)
    })
}

/// Parses an action file (JSON text).
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rg_action_from_json(json: *const c_char, out: *mut *mut RgAction) -> RgStatus {
    guard(|| {
        let a = Loader::default().action_str(text(json, "json")?)?;
        write_out(out, Box::into_raw(Box::new(RgAction(a))), "out")
    })
}

/// # Safety
/// `a` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn rg_action_free(a: *mut RgAction) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

unsafe fn pattern(indices: *const usize, len: usize) -> Result<SupportPattern, Failure> {
    if indices.is_null() {
        return Err(Failure::Null("indices"));
    }
    Ok(SupportPattern::new(std::slice::from_raw_parts(indices, len).iter().copied())?)
}

/// Semistability of points with support `indices[0..len]`.
///
/// # Safety
/// `a` must be a live handle, `indices` must point to `len` values, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rg_action_is_semistable(a: *const RgAction, indices: *const usize, len: usize, out: *mut bool) -> RgStatus {
    guard(|| {
        let a = &handle(a, "action")?.0;
        write_out(out, is_semistable(a, &pattern(indices, len)?)?, "out")
    })
}

/// The stratum of points with support `indices[0..len]`, as JSON.
///
/// # Safety
/// As `rg_action_is_semistable`; free the result with `rg_string_free`.
#[no_mangle]
pub unsafe extern "C" fn rg_action_instability_json(
    a: *const RgAction,
    indices: *const usize,
    len: usize,
    out: *mut *mut c_char,
) -> RgStatus {
    guard(|| {
        let a = &handle(a, "action")?.0;
        write_json(out, &instability(a, &pattern(indices, len)?)?)
    })
}

/// All strata with their support patterns, as a JSON list.
///
/// # Safety
/// `a` must be a live handle; `out` writable. Free with `rg_string_free`.
#[no_mangle]
pub unsafe extern "C" fn rg_action_strata_json(a: *const RgAction, out: *mut *mut c_char) -> RgStatus {
    guard(|| {
        let a = &handle(a, "action")?.0;
        write_json(out, &strata_report(a, DEFAULT_PATTERN_CAP, DEFAULT_CANDIDATE_CAP)?)
    })
}

/// Checks the stratification and the centre recursion for every candidate.
///
/// # Safety
/// `a` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rg_action_verify(a: *const RgAction, out: *mut bool) -> RgStatus {
    guard(|| {
        let a = &handle(a, "action")?.0;
        stratify_supports(a)?;
        let mut ok = true;
        for s in candidate_betas(a)? {
            ok &= verify_recursion(a, &s)?;
        }
        write_out(out, ok, "out")
    })
}
