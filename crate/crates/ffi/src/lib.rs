//! C interface. Surfaces and census results are opaque handles; every call returns a
//! [`QlStatus`] and writes its result through an out-pointer. Strings handed out must be
//! released with [`ql_string_free`]. The message of the last failure on the calling thread is
//! available from [`ql_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};


use quartic_lines::error::Error;
use quartic_lines::field::{FieldSpec, FiniteField, Rationals};
use quartic_lines::poly::parse::Bindings;
use quartic_lines::poly::MultiPoly;
use quartic_lines::report::{self, AnyCensus, JobConfig};
use quartic_lines::surface::io::parse_quartic;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidField = 4,
    Singular = 5,
    LineNotOnSurface = 6,
    /// A mathematical finding: budget violation, contradiction, pathological fibre.
    Finding = 7,
    Unsupported = 8,
    EnlargeField = 9,
    OutOfRange = 10,
    Other = 11,
    Panic = 12,
}

fn status_of(e: &Error) -> QlStatus {
    match e {
        Error::Parse { .. } | Error::Degree(_) | Error::NotHomogeneous | Error::ZeroPolynomial => {
            QlStatus::Parse
        }
        Error::InvalidField(_) | Error::FieldMismatch(_) => QlStatus::InvalidField,
        Error::SingularPoint(_) => QlStatus::Singular,
        Error::LineNotOnSurface => QlStatus::LineNotOnSurface,
        Error::BudgetViolated(_)
        | Error::RamificationContradiction(_)
        | Error::Pathological(_)
        | Error::Inconsistent(_) => QlStatus::Finding,
        Error::Unsupported(_) | Error::NonIsolated => QlStatus::Unsupported,
        Error::EnlargeField(_) => QlStatus::EnlargeField,
        _ => QlStatus::Other,
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), (QlStatus, String)>) -> QlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            QlStatus::Ok
        }
        Ok(Err((s, m))) => {
            set_error(&m);
            s
        }
        Err(_) => {
            set_error("internal panic");
            QlStatus::Panic
        }
    }
}

type Fail = (QlStatus, String);

fn lib(e: Error) -> Fail {
    (status_of(&e), e.to_string())
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err((QlStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (QlStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

fn out_string(s: String, out: *mut *mut c_char) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| (QlStatus::Other, "interior NUL in output".into()))?;
    unsafe { *out = c.into_raw() };
    Ok(())
}

fn check_out<T>(out: *mut T) -> Result<(), Fail> {
    if out.is_null() {
        Err((QlStatus::NullPointer, "null output pointer".into()))
    } else {
        Ok(())
    }
}

/// A quartic together with the field and job settings used for every computation on it.
pub struct QlSurface {
    poly: MultiPoly<Rationals>,
    cfg: JobConfig,
}

/// Result of a census.
pub struct QlCensus {
    count: Option<usize>,
    lines: Vec<String>,
    json: String,
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn ql_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread; empty after a success. Valid until the next
/// call on the same thread.
#[no_mangle]
pub extern "C" fn ql_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parse a quartic such as `"x1^4 + x2^4 + x3^4 + x4^4"`. `field` is `"Q"`, `"F p"` or
/// `"F p k"`; NULL means Q.
///
/// # Safety
/// `quartic` and `field` must be NUL-terminated strings or NULL; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ql_surface_new(
    quartic: *const c_char,
    field: *const c_char,
    out: *mut *mut QlSurface,
) -> QlStatus {
    guard(|| {
        check_out(out)?;
        let poly = parse_quartic(text(quartic)?, &Bindings::new()).map_err(lib)?;
        let spec = if field.is_null() {
            FieldSpec::Rationals
        } else {
            FieldSpec::parse(text(field)?).map_err(lib)?
        };
        if spec != FieldSpec::Rationals {
            FiniteField::from_spec(&spec).map_err(lib)?;
        }
        let cfg = JobConfig {
            field: spec,
            ..JobConfig::default()
        };
        *out = Box::into_raw(Box::new(QlSurface { poly, cfg }));
        Ok(())
    })
}

/// # Safety
/// `s` must come from [`ql_surface_new`] and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn ql_surface_free(s: *mut QlSurface) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Largest extension degree of the census tower (default 4), worker threads (0 = all cores)
/// and seed.
///
/// # Safety
/// `s` must be a live surface handle.
#[no_mangle]
pub unsafe extern "C" fn ql_surface_configure(
    s: *mut QlSurface,
    tower: u32,
    threads: u32,
    seed: u64,
) -> QlStatus {
    guard(|| {
        let s = s.as_mut().ok_or((QlStatus::NullPointer, "null surface".into()))?;
        s.cfg.tower = tower.max(1);
        s.cfg.threads = (threads > 0).then_some(threads as usize);
        s.cfg.seed = seed;
        Ok(())
    })
}

unsafe fn surface<'a>(s: *const QlSurface) -> Result<&'a QlSurface, Fail> {
    s.as_ref().ok_or((QlStatus::NullPointer, "null surface".into()))
}

/// Lines over the surface's field and its tower. Over Q the count comes from several good
/// primes and no individual lines are available.
///
/// # Safety
/// `s` must be a live surface handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ql_census(s: *const QlSurface, out: *mut *mut QlCensus) -> QlStatus {
    guard(|| {
        check_out(out)?;
        let s = surface(s)?;
        let c = match report::census(&s.poly, &s.cfg).map_err(lib)? {
            AnyCensus::Finite(r) => QlCensus {
                count: Some(r.count),
                lines: r.lines.iter().map(|l| l.line.pluecker.join(", ")).collect(),
                json: to_json(&r)?,
            },
            AnyCensus::Rational(r) => QlCensus {
                count: r.count,
                lines: Vec::new(),
                json: to_json(&r)?,
            },
        };
        *out = Box::into_raw(Box::new(c));
        Ok(())
    })
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String, Fail> {
    serde_json::to_string_pretty(v).map_err(|e| lib(e.into()))
}

/// # Safety
/// `c` must come from [`ql_census`] and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn ql_census_free(c: *mut QlCensus) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

unsafe fn census<'a>(c: *const QlCensus) -> Result<&'a QlCensus, Fail> {
    c.as_ref().ok_or((QlStatus::NullPointer, "null census".into()))
}

/// Number of lines. `QL_STATUS_FINDING` when the primes of a census over Q disagree.
///
/// # Safety
/// `c` must be a live census handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ql_census_count(c: *const QlCensus, out: *mut usize) -> QlStatus {
    guard(|| {
        check_out(out)?;
        let c = census(c)?;
        *out = c.count.ok_or((QlStatus::Finding, "primes disagree on the count".into()))?;
        Ok(())
    })
}

/// Number of individual lines held (zero for a census over Q).
///
/// # Safety
/// `c` must be a live census handle.
#[no_mangle]
pub unsafe extern "C" fn ql_census_line_count(c: *const QlCensus) -> usize {
    c.as_ref().map_or(0, |c| c.lines.len())
}

/// Pluecker coordinates of line `i`, comma separated.
///
/// # Safety
/// `c` must be a live census handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ql_census_line(
    c: *const QlCensus,
    i: usize,
    out: *mut *mut c_char,
) -> QlStatus {
    guard(|| {
        check_out(out)?;
        let c = census(c)?;
        let l = c
            .lines
            .get(i)
            .ok_or((QlStatus::OutOfRange, format!("line {i} of {}", c.lines.len())))?;
        out_string(l.clone(), out)
    })
}

/// The full census report as JSON.
///
/// # Safety
/// `c` must be a live census handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ql_census_json(c: *const QlCensus, out: *mut *mut c_char) -> QlStatus {
    guard(|| {
        check_out(out)?;
        out_string(census(c)?.json.clone(), out)
    })
}

/// Singular fibres of the pencil through `line` (`"L1 = L2 = 0"`), as JSON.
///
/// # Safety
/// `s` must be a live surface handle, `line` a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ql_fibration_json(
    s: *const QlSurface,
    line: *const c_char,
    out: *mut *mut c_char,
) -> QlStatus {
    guard(|| {
        check_out(out)?;
        let s = surface(s)?;
        let r = report::fibration(&s.poly, text(line)?, &s.cfg).map_err(lib)?;
        out_string(to_json(&r)?, out)
    })
}

/// Kind, ramification type and normal form of `line`, as JSON.
///
/// # Safety
/// As for [`ql_fibration_json`].
#[no_mangle]
pub unsafe extern "C" fn ql_classify_line_json(
    s: *const QlSurface,
    line: *const c_char,
    out: *mut *mut c_char,
) -> QlStatus {
    guard(|| {
        check_out(out)?;
        let s = surface(s)?;
        let r = report::classify_line(&s.poly, text(line)?, &s.cfg).map_err(lib)?;
        out_string(to_json(&r)?, out)
    })
}

/// Incidence graph of the lines, as JSON. With `fibrations` nonzero each degree is compared with
/// N from the line's pencil.
///
/// # Safety
/// `s` must be a live surface handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ql_graph_json(
    s: *const QlSurface,
    fibrations: i32,
    out: *mut *mut c_char,
) -> QlStatus {
    guard(|| {
        check_out(out)?;
        let s = surface(s)?;
        let r = report::graph(&s.poly, &s.cfg, fibrations != 0).map_err(lib)?;
        out_string(to_json(&r)?, out)
    })
}

/// # Safety
/// `p` must be a string returned by this library, or NULL.
#[no_mangle]
pub unsafe extern "C" fn ql_string_free(p: *mut c_char) {
    if !p.is_null() {
        drop(CString::from_raw(p));
    }
}

