//! C ABI over `bmw-core`: parameter specs and Gram matrices behind opaque
//! handles, status codes on every call, and a thread-local error message.
//!
//! Strings returned through `char **` out-parameters are owned by the caller
//! and must be released with `bmw_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use bmw_core::cellmod::{gram, gram_det, GramBackend, GramMatrix};
use bmw_core::classify::classify_bmw;
use bmw_core::coeff::{ParamSpec, RForm};
use bmw_core::combin::{cells, CellIndex, Partition};
use bmw_core::linalg;
use bmw_core::oracle::singular_oracle;

/// Result of every call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BmwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    /// A valid request the mathematics rejects, e.g. a bad cell.
    Domain = 4,
    /// The operation needs a concrete spec.
    NeedsConcrete = 5,
    OutOfRange = 6,
    Panic = 7,
}

/// A parsed parameter spec.
pub struct BmwSpec(ParamSpec);

/// The Gram matrix of one cell module, possibly with `r` substituted.
pub struct BmwGram(Arc<GramMatrix>);

/// Verdicts across the boundary.
pub const BMW_SINGULAR: i32 = 1;
pub const BMW_NONSINGULAR: i32 = 0;
pub const BMW_UNDECIDED: i32 = -1;

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

fn fail(status: BmwStatus, msg: impl Into<String>) -> BmwStatus {
    set_error(msg);
    status
}

/// Run `f`, turning a panic into `BmwStatus::Panic`.
fn guard(f: impl FnOnce() -> BmwStatus) -> BmwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(e) => {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            fail(BmwStatus::Panic, msg)
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, BmwStatus> {
    if s.is_null() {
        return Err(fail(BmwStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(BmwStatus::InvalidUtf8, "string argument is not UTF-8"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> BmwStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            BmwStatus::Ok
        }
        Err(_) => fail(BmwStatus::Panic, "interior NUL in output"),
    }
}

macro_rules! non_null {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            return fail(BmwStatus::NullPointer, concat!("null argument `", stringify!($p), "`"));
        })+
    };
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn bmw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// The message of the last failed call on this thread, or NULL. The caller
/// frees it with `bmw_string_free`.
#[no_mangle]
pub extern "C" fn bmw_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map_or(ptr::null_mut(), |c| c.clone().into_raw())
    })
}

/// # Safety
/// `s` is NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bmw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse a spec such as `"r=-q e=7 p=0"` or `"p=5 q0=2 r0=3"`.
///
/// # Safety
/// `text` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn bmw_spec_parse(text: *const c_char, out: *mut *mut BmwSpec) -> BmwStatus {
    guard(|| {
        non_null!(out);
        let text = tri!(read_str(text));
        match text.parse::<ParamSpec>() {
            Ok(s) => {
                *out = Box::into_raw(Box::new(BmwSpec(s)));
                BmwStatus::Ok
            }
            Err(e) => fail(BmwStatus::Parse, e.to_string()),
        }
    })
}

/// # Safety
/// `spec` is NULL or a handle from `bmw_spec_parse` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bmw_spec_free(spec: *mut BmwSpec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// Canonical text of a spec.
///
/// # Safety
/// `spec` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn bmw_spec_to_string(
    spec: *const BmwSpec,
    out: *mut *mut c_char,
) -> BmwStatus {
    guard(|| {
        non_null!(spec, out);
        write_string(out, (*spec).0.to_string())
    })
}

/// Classify `(r, q)` for `B_n`. `singular` receives `BMW_SINGULAR`,
/// `BMW_NONSINGULAR` or `BMW_UNDECIDED`; `clause` (may be NULL) the clause of
/// the theorem that decided it.
///
/// # Safety
/// `spec` is a live handle; `singular` is writable; `clause` is NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn bmw_classify(
    n: u32,
    spec: *const BmwSpec,
    singular: *mut i32,
    clause: *mut *mut c_char,
) -> BmwStatus {
    guard(|| {
        non_null!(spec, singular);
        match classify_bmw(n, &(*spec).0) {
            Ok(v) => {
                *singular = match v.singular {
                    Some(true) => BMW_SINGULAR,
                    Some(false) => BMW_NONSINGULAR,
                    None => BMW_UNDECIDED,
                };
                if clause.is_null() {
                    BmwStatus::Ok
                } else {
                    write_string(clause, v.clause)
                }
            }
            Err(e) => fail(BmwStatus::Domain, e.to_string()),
        }
    })
}

/// The full verdict of `bmw_classify` as JSON.
///
/// # Safety
/// `spec` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn bmw_classify_json(
    n: u32,
    spec: *const BmwSpec,
    out: *mut *mut c_char,
) -> BmwStatus {
    guard(|| {
        non_null!(spec, out);
        match classify_bmw(n, &(*spec).0) {
            Ok(v) => write_string(out, serde_json::to_string(&v).unwrap()),
            Err(e) => fail(BmwStatus::Domain, e.to_string()),
        }
    })
}

/// Brute-force singularity over `GF(p)`; needs a concrete spec.
///
/// # Safety
/// `spec` is a live handle; `singular` is writable.
#[no_mangle]
pub unsafe extern "C" fn bmw_oracle(
    n: u32,
    spec: *const BmwSpec,
    singular: *mut bool,
) -> BmwStatus {
    guard(|| {
        non_null!(spec, singular);
        let Some(c) = (*spec).0.as_concrete() else {
            return fail(BmwStatus::NeedsConcrete, "the oracle needs p, q0 and r0");
        };
        if !(1..=6).contains(&n) {
            return fail(BmwStatus::OutOfRange, format!("n = {n} is outside 1..=6"));
        }
        match singular_oracle(n, c) {
            Ok(r) => {
                *singular = r.singular;
                BmwStatus::Ok
            }
            Err(e) => fail(BmwStatus::Domain, e.to_string()),
        }
    })
}

/// `Σ dim Δ(f,λ)^2` over the cells of `B_n`.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn bmw_dims_sum_of_squares(n: u32, out: *mut u64) -> BmwStatus {
    guard(|| {
        non_null!(out);
        if !(1..=12).contains(&n) {
            return fail(BmwStatus::OutOfRange, format!("n = {n} is outside 1..=12"));
        }
        *out = cells(n).iter().map(|c| (c.dim() * c.dim()) as u64).sum();
        BmwStatus::Ok
    })
}

/// The Gram matrix of `Δ(f, λ)` in `B_n`; `lambda` is like `"(2,1)"`.
///
/// # Safety
/// `lambda` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn bmw_gram_new(
    n: u32,
    f: u32,
    lambda: *const c_char,
    out: *mut *mut BmwGram,
) -> BmwStatus {
    guard(|| {
        non_null!(out);
        let text = tri!(read_str(lambda));
        let lambda: Partition = match text.parse() {
            Ok(l) => l,
            Err(e) => return fail(BmwStatus::Parse, e.to_string()),
        };
        let cell = match CellIndex::new(n, f, lambda) {
            Ok(c) => c,
            Err(e) => return fail(BmwStatus::Domain, e.to_string()),
        };
        if n > 6 {
            return fail(BmwStatus::OutOfRange, format!("n = {n} is outside 1..=6"));
        }
        match gram(&cell, GramBackend::Inflation) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(BmwGram(g)));
                BmwStatus::Ok
            }
            Err(e) => fail(BmwStatus::Domain, e.to_string()),
        }
    })
}

/// # Safety
/// `g` is NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bmw_gram_free(g: *mut BmwGram) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// A new handle with `r` replaced, `subst` like `"r=q^-1"` or `"r=-q"`.
///
/// # Safety
/// `g` is a live handle; `subst` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn bmw_gram_substitute(
    g: *const BmwGram,
    subst: *const c_char,
    out: *mut *mut BmwGram,
) -> BmwStatus {
    guard(|| {
        non_null!(g, out);
        let text = tri!(read_str(subst));
        let rhs = text.strip_prefix("r=").unwrap_or(text);
        match rhs.parse::<RForm>() {
            Ok(RForm::Power { sign, exp }) => {
                let s = (*g).0.substitute_r(sign as i32, exp);
                *out = Box::into_raw(Box::new(BmwGram(Arc::new(s))));
                BmwStatus::Ok
            }
            _ => fail(BmwStatus::Parse, format!("expected r=±q^a, got {text:?}")),
        }
    })
}

/// # Safety
/// `g` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn bmw_gram_dim(g: *const BmwGram, out: *mut usize) -> BmwStatus {
    guard(|| {
        non_null!(g, out);
        *out = (*g).0.dim();
        BmwStatus::Ok
    })
}

/// Entry `(i, j)` as text.
///
/// # Safety
/// `g` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn bmw_gram_entry(
    g: *const BmwGram,
    i: usize,
    j: usize,
    out: *mut *mut c_char,
) -> BmwStatus {
    guard(|| {
        non_null!(g, out);
        let m = &(*g).0;
        if i >= m.dim() || j >= m.dim() {
            return fail(
                BmwStatus::OutOfRange,
                format!("({i}, {j}) outside a {0}x{0} matrix", m.dim()),
            );
        }
        write_string(out, m.entries[i][j].to_string())
    })
}

/// The determinant; `normalized` selects `unit * (core)` over the raw form.
///
/// # Safety
/// `g` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn bmw_gram_det(
    g: *const BmwGram,
    normalized: bool,
    out: *mut *mut c_char,
) -> BmwStatus {
    guard(|| {
        non_null!(g, out);
        let m = &(*g).0;
        if m.dim() > 64 {
            return fail(
                BmwStatus::OutOfRange,
                "symbolic determinants stop at dimension 64",
            );
        }
        let d = gram_det(m);
        let text = if !normalized {
            d.to_string()
        } else {
            match d.normalize_unit() {
                Ok((_, core)) => format!("unit * ({core})"),
                Err(_) => "0".into(),
            }
        };
        write_string(out, text)
    })
}

/// Rank over `GF(p)`; needs a concrete spec.
///
/// # Safety
/// `g` and `spec` are live handles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn bmw_gram_rank(
    g: *const BmwGram,
    spec: *const BmwSpec,
    out: *mut usize,
) -> BmwStatus {
    guard(|| {
        non_null!(g, spec, out);
        let Some(c) = (*spec).0.as_concrete() else {
            return fail(BmwStatus::NeedsConcrete, "rank needs p, q0 and r0");
        };
        let m = &(*g).0;
        match linalg::specialize(&m.entries, c) {
            Ok(m) => {
                *out = linalg::rank_fp(&m);
                BmwStatus::Ok
            }
            Err(e) => fail(BmwStatus::Domain, e.to_string()),
        }
    })
}

/// The matrix in the common JSON format.
///
/// # Safety
/// `g` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn bmw_gram_to_json(g: *const BmwGram, out: *mut *mut c_char) -> BmwStatus {
    guard(|| {
        non_null!(g, out);
        write_string(out, (*g).0.to_json().to_string())
    })
}
