//! C ABI over the `charcol` engine.
//!
//! Chains are opaque handles created with [`charcol_chain_new`] and released
//! with [`charcol_chain_free`]. Every fallible call returns a
//! [`CharcolStatus`]; the message for the most recent failure on the
//! calling thread is available from [`charcol_last_error`]. Strings handed
//! out by the library must be released with [`charcol_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use charcol::chain::Chain;
use charcol::engine::Engine;
use charcol::hgroup::{ColoredCycleType, DEFAULT_MAX_ORDER};
use charcol::mckay::build_graph;
use charcol::verify::suite::{run_builtin, Suite};
use charcol::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharcolStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// A label, class or name could not be parsed or is unknown.
    Parse = 3,
    /// The request does not make sense for this chain or level.
    Usage = 4,
    /// An explicit table would exceed the size bound.
    SizeBound = 5,
    /// Chain or table data failed validation.
    InvalidData = 6,
    /// The output buffer is too small; the required length was written.
    BufferTooSmall = 7,
    /// A value does not fit in a 64-bit integer.
    Overflow = 8,
    Io = 9,
    /// The library panicked; this is a bug.
    Internal = 10,
}

/// Opaque chain handle.
pub struct CharcolChain {
    chain: Chain,
    max_order: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(err: &Error) -> CharcolStatus {
    match err {
        Error::Parse(_) | Error::UnknownName(_) | Error::MissingLabel(_) => CharcolStatus::Parse,
        Error::Precondition(_) | Error::LevelMismatch { .. } | Error::UnsupportedChain(_) => CharcolStatus::Usage,
        Error::SizeBound { .. } => CharcolStatus::SizeBound,
        Error::InvalidTable(_) | Error::NotSurjective { .. } | Error::InconsistentChain(_) | Error::Json(_) => {
            CharcolStatus::InvalidData
        }
        Error::Io(_) => CharcolStatus::Io,
    }
}

struct Failure(CharcolStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Runs `f`, records any failure, and turns panics into `Internal`.
fn guard(f: impl FnOnce() -> Outcome) -> CharcolStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CharcolStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(format!("internal error: {msg}"));
            CharcolStatus::Internal
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(CharcolStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> std::result::Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(CharcolStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn chain_ref<'a>(p: *const CharcolChain) -> std::result::Result<&'a CharcolChain, Failure> {
    p.as_ref().ok_or_else(|| null("chain"))
}

fn give_string(s: String, out: *mut *mut c_char) -> Outcome {
    let c = CString::new(s).map_err(|_| Failure(CharcolStatus::Internal, "output contains a nul byte".into()))?;
    // SAFETY: callers check `out` for null before calling.
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Creates a chain: "sym", "trivial", "S", "z2wreath", "Z2", or a path to a
/// GroupTable JSON for H. Writes the handle to `*out`.
///
/// # Safety
/// `name` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn charcol_chain_new(name: *const c_char, out: *mut *mut CharcolChain) -> CharcolStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let name = read_str(name, "name")?;
        let chain = Chain::from_name(name)?;
        *out = Box::into_raw(Box::new(CharcolChain { chain, max_order: DEFAULT_MAX_ORDER }));
        Ok(())
    })
}

/// Releases a chain. Null is ignored.
///
/// # Safety
/// `chain` must come from [`charcol_chain_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn charcol_chain_free(chain: *mut CharcolChain) {
    if !chain.is_null() {
        drop(Box::from_raw(chain));
    }
}

/// Sets the bound on |H|^k·k! for explicitly constructed tables.
///
/// # Safety
/// `chain` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn charcol_set_max_order(chain: *mut CharcolChain, max_order: u64) -> CharcolStatus {
    guard(|| {
        let c = chain.as_mut().ok_or_else(|| null("chain"))?;
        if max_order == 0 {
            return Err(Failure(CharcolStatus::Usage, "max order must be positive".into()));
        }
        c.max_order = max_order;
        Ok(())
    })
}

/// Number of irreps at level `n`.
///
/// # Safety
/// `chain` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn charcol_basis_size(chain: *const CharcolChain, n: usize, out: *mut usize) -> CharcolStatus {
    guard(|| {
        let c = chain_ref(chain)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = c.chain.basis_size(n);
        Ok(())
    })
}

/// Label of the `index`-th irrep at level `n`, in basis order. Free the
/// result with [`charcol_string_free`].
///
/// # Safety
/// `chain` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn charcol_basis_label(
    chain: *const CharcolChain,
    n: usize,
    index: usize,
    out: *mut *mut c_char,
) -> CharcolStatus {
    guard(|| {
        let c = chain_ref(chain)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let basis = c.chain.basis(n);
        let label = basis.get(index).ok_or_else(|| {
            Failure(CharcolStatus::Usage, format!("index {index} outside the {} irreps of level {n}", basis.len()))
        })?;
        give_string(c.chain.format_label(label), out)
    })
}

/// Character column of `class` at level `n`, in basis order.
///
/// The number of values is written to `*out_len`. If `capacity` is smaller
/// than that, nothing is copied and `BufferTooSmall` is returned, so a call
/// with `capacity` 0 queries the length.
///
/// # Safety
/// `chain` must be a live handle, `class` a nul-terminated string, `values`
/// valid for `capacity` writes (or null when `capacity` is 0), and
/// `out_len` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn charcol_column(
    chain: *const CharcolChain,
    class: *const c_char,
    n: usize,
    values: *mut i64,
    capacity: usize,
    out_len: *mut usize,
) -> CharcolStatus {
    guard(|| {
        let c = chain_ref(chain)?;
        let text = read_str(class, "class")?;
        if out_len.is_null() {
            return Err(null("out_len"));
        }
        let class = ColoredCycleType::parse(c.chain.h(), text)?;
        if class.size() > n {
            return Err(Error::LevelMismatch { expected: n, got: class.size() }.into());
        }
        let column = Engine::new(&c.chain, c.max_order).character_column(&class.without_fixed_points(), n)?;
        *out_len = column.values.len();
        if capacity < column.values.len() {
            return Err(Failure(
                CharcolStatus::BufferTooSmall,
                format!("column has {} entries, buffer holds {capacity}", column.values.len()),
            ));
        }
        if values.is_null() {
            return Err(null("values"));
        }
        let small = column
            .values
            .iter()
            .map(|v| i64::try_from(v).map_err(|_| Failure(CharcolStatus::Overflow, format!("character value {v} exceeds 64 bits"))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        ptr::copy_nonoverlapping(small.as_ptr(), values, small.len());
        Ok(())
    })
}

/// X = Ind·Res at level `n` as JSON {"n", "basis", "entries"}, entries
/// sorted by (row, col). Free the result with [`charcol_string_free`].
///
/// # Safety
/// `chain` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn charcol_indres_json(chain: *const CharcolChain, n: usize, out: *mut *mut c_char) -> CharcolStatus {
    guard(|| {
        let c = chain_ref(chain)?;
        if out.is_null() {
            return Err(null("out"));
        }
        give_string(build_graph(&c.chain, n)?.to_json()?, out)
    })
}

/// Runs a check suite ("heisenberg", "tasyopari", "jeongha" or "all") up to
/// level `max_n`. Writes whether every check passed to `*passed` and, if
/// `report` is not null, the JSON report to `*report`.
///
/// # Safety
/// `chain` must be a live handle, `suite` a nul-terminated string, `passed`
/// a valid pointer and `report` null or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn charcol_verify(
    chain: *const CharcolChain,
    suite: *const c_char,
    max_n: usize,
    passed: *mut bool,
    report: *mut *mut c_char,
) -> CharcolStatus {
    guard(|| {
        let c = chain_ref(chain)?;
        let suite: Suite = read_str(suite, "suite")?.parse()?;
        if passed.is_null() {
            return Err(null("passed"));
        }
        let r = run_builtin(&c.chain, suite, max_n, c.max_order)?;
        *passed = r.pass;
        if !report.is_null() {
            give_string(r.to_json(), report)?;
        }
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn charcol_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn charcol_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
