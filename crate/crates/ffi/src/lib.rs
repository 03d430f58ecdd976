//! C interface. Every function returns a [`PgStatus`]; on failure the message is
//! available from [`pg_last_error`] until the next call on the same thread.
//!
//! Strings returned through `char **` are owned by the caller and released with
//! [`pg_string_free`]. Root sequences are passed as inline text, vectors separated
//! by `;` (for example `"1 0 0; 0 1 0"`), or `NULL` for all positive roots.

use picgroup::cli::parse_inline_roots;
use picgroup::context::{ContextError, RootContext};
use picgroup::geometry::{enumerate_mgs, green_digraph, verify_theorem_a, GeometryError};
use picgroup::group::{GroupError, Limits, Presentation};
use picgroup::order::sort_vertical;
use picgroup::picture::{build_picture, render_svg, PictureError, Style};
use picgroup::quiver::ValuedQuiver;
use picgroup::roots::{RootError, RootId};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed quiver text, root list or style.
    Parse = 3,
    /// The quiver is not of finite type.
    NotFiniteType = 4,
    /// A vector is not a root, repeats, or the set is unsuitable for the request.
    InvalidRoots = 5,
    /// A word, path or root limit was exceeded.
    Overflow = 6,
    /// A check ran to completion and failed.
    VerificationFailed = 7,
    /// Representation-theoretic data could not be computed.
    Representation = 8,
    /// A Rust panic was caught at the boundary.
    Internal = 9,
}

/// A quiver with its positive roots and hom/ext table.
pub struct PgContext {
    inner: RootContext,
}

/// Counts from comparing green sequences with the Coxeter-element closure.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct PgTheoremA {
    pub compartments: usize,
    pub mgs: usize,
    pub closure: usize,
    pub passed: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(PgStatus, String);

impl Failure {
    fn new(status: PgStatus, msg: impl ToString) -> Self {
        Failure(status, msg.to_string())
    }
}

impl From<RootError> for Failure {
    fn from(e: RootError) -> Self {
        let status = match e {
            RootError::NotFiniteType { .. } => PgStatus::NotFiniteType,
            _ => PgStatus::InvalidRoots,
        };
        Failure::new(status, e)
    }
}

impl From<ContextError> for Failure {
    fn from(e: ContextError) -> Self {
        match e {
            ContextError::Roots(r) => r.into(),
            ContextError::Repr(r) => Failure::new(PgStatus::Representation, r),
        }
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        let status = match e {
            GroupError::ClosureOverflow(_) => PgStatus::Overflow,
            _ => PgStatus::InvalidRoots,
        };
        Failure::new(status, e)
    }
}

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Self {
        match e {
            GeometryError::PathExplosion(_) => Failure::new(PgStatus::Overflow, e),
            GeometryError::Group(g) => g.into(),
            _ => Failure::new(PgStatus::InvalidRoots, e),
        }
    }
}

impl From<PictureError> for Failure {
    fn from(e: PictureError) -> Self {
        match e {
            PictureError::Geometry(g) => g.into(),
            _ => Failure::new(PgStatus::InvalidRoots, e),
        }
    }
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

/// Runs `f`, records its error and converts panics.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PgStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PgStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            PgStatus::Internal
        }
    }
}

/// # Safety
/// `p` is null or a valid NUL-terminated string.
unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(PgStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure::new(PgStatus::InvalidUtf8, e))
}

/// # Safety
/// `p` is null or points to a live context.
unsafe fn context<'a>(p: *const PgContext) -> Result<&'a RootContext, Failure> {
    p.as_ref()
        .map(|c| &c.inner)
        .ok_or_else(|| Failure::new(PgStatus::NullPointer, "null context"))
}

fn out_ptr<T>(p: *mut T) -> Result<(), Failure> {
    if p.is_null() {
        Err(Failure::new(PgStatus::NullPointer, "null output pointer"))
    } else {
        Ok(())
    }
}

/// # Safety
/// `roots` is null or a valid NUL-terminated string.
unsafe fn sequence(ctx: &RootContext, roots: *const c_char) -> Result<Vec<RootId>, Failure> {
    if roots.is_null() {
        return Ok(sort_vertical(ctx, &ctx.roots.ids().collect::<Vec<_>>()));
    }
    let vs = parse_inline_roots(text(roots)?).map_err(|e| Failure::new(PgStatus::Parse, e))?;
    Ok(ctx.roots.parse_root_sequence(&vs)?)
}

fn to_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|e| Failure::new(PgStatus::Internal, e))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn pg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread; empty after a success. Valid until the next call.
#[no_mangle]
pub extern "C" fn pg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses quiver text and builds the root and hom tables.
///
/// # Safety
/// `quiver_text` is a NUL-terminated string and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pg_context_new(
    quiver_text: *const c_char,
    seed: u64,
    out: *mut *mut PgContext,
) -> PgStatus {
    guard(|| {
        out_ptr(out)?;
        *out = ptr::null_mut();
        let q = ValuedQuiver::parse(text(quiver_text)?)
            .map_err(|e| Failure::new(PgStatus::Parse, e))?;
        let inner = RootContext::build(&q, seed)?;
        *out = Box::into_raw(Box::new(PgContext { inner }));
        Ok(())
    })
}

/// Releases a context. Null is ignored.
///
/// # Safety
/// `ctx` is null or was returned by [`pg_context_new`] and not freed before.
#[no_mangle]
pub unsafe extern "C" fn pg_context_free(ctx: *mut PgContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Number of positive roots.
///
/// # Safety
/// `ctx` is a live context and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pg_root_count(ctx: *const PgContext, out: *mut usize) -> PgStatus {
    guard(|| {
        out_ptr(out)?;
        *out = context(ctx)?.roots.len();
        Ok(())
    })
}

/// Generators and relations in the `gen`/`rel` line format.
///
/// # Safety
/// `ctx` is a live context, `roots` is null or a string, `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pg_presentation(
    ctx: *const PgContext,
    roots: *const c_char,
    out: *mut *mut c_char,
) -> PgStatus {
    guard(|| {
        out_ptr(out)?;
        let c = context(ctx)?;
        let s = sequence(c, roots)?;
        *out = to_c_string(Presentation::new(c, &s).to_text(c))?;
        Ok(())
    })
}

/// Number of compartments of the arrangement.
///
/// # Safety
/// `ctx` is a live context, `roots` is null or a string, `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pg_compartment_count(
    ctx: *const PgContext,
    roots: *const c_char,
    out: *mut usize,
) -> PgStatus {
    guard(|| {
        out_ptr(out)?;
        let c = context(ctx)?;
        *out = green_digraph(c, &sequence(c, roots)?)?.compartments.len();
        Ok(())
    })
}

/// Number of maximal green sequences, failing with `Overflow` beyond `max_paths`.
///
/// # Safety
/// `ctx` is a live context, `roots` is null or a string, `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pg_mgs_count(
    ctx: *const PgContext,
    roots: *const c_char,
    max_paths: usize,
    out: *mut usize,
) -> PgStatus {
    guard(|| {
        out_ptr(out)?;
        let c = context(ctx)?;
        *out = enumerate_mgs(c, &sequence(c, roots)?, max_paths)?.1.len();
        Ok(())
    })
}

/// Compares sequence words with the rewrite closure of the Coxeter element.
/// Fills `out` and returns `VerificationFailed` when the two sets differ.
///
/// # Safety
/// `ctx` is a live context, `roots` is null or a string, `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pg_verify_theorem_a(
    ctx: *const PgContext,
    roots: *const c_char,
    max_words: usize,
    max_paths: usize,
    out: *mut PgTheoremA,
) -> PgStatus {
    guard(|| {
        out_ptr(out)?;
        let c = context(ctx)?;
        let limits = Limits {
            max_words,
            ..Limits::default()
        };
        let r = verify_theorem_a(c, &sequence(c, roots)?, limits, max_paths)?;
        *out = PgTheoremA {
            compartments: r.compartments,
            mgs: r.mgs,
            closure: r.closure,
            passed: r.ok(),
        };
        if r.ok() {
            Ok(())
        } else {
            Err(Failure::new(
                PgStatus::VerificationFailed,
                "sequence words and rewrite closure differ",
            ))
        }
    })
}

/// SVG of the rank-three picture. `style` is null or `key=value` entries.
///
/// # Safety
/// `ctx` is a live context, `roots` and `style` are null or strings, `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn pg_render_picture_svg(
    ctx: *const PgContext,
    roots: *const c_char,
    style: *const c_char,
    out: *mut *mut c_char,
) -> PgStatus {
    guard(|| {
        out_ptr(out)?;
        let c = context(ctx)?;
        let style = if style.is_null() {
            Style::default()
        } else {
            Style::parse(text(style)?).map_err(|e| Failure::new(PgStatus::Parse, e))?
        };
        let p = build_picture(c, &sequence(c, roots)?)?;
        *out = to_c_string(render_svg(&p, &style))?;
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` is null or came from this library and was not freed before.
#[no_mangle]
pub unsafe extern "C" fn pg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
