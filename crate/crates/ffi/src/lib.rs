//! C interface to `rcakit`.
//!
//! Automata are passed around as opaque `RcaAutomaton` handles owned by the
//! caller and released with [`rca_automaton_free`]. Every fallible function
//! returns a status code: [`RCA_OK`] on success, a negative code for misuse
//! of the interface itself, or one of the positive `RCA_ERR_*` codes, which
//! coincide with the library's error codes. After a failure,
//! [`rca_last_error_message`] describes what went wrong.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use rcakit::ca::{self, RuleFile};
use rcakit::paut::{eval_word, GroupWord, Registry};
use rcakit::verify::{run_suite, Options};
use rcakit::{Alphabet, Ca, EqualityVerdict, Error, SupportedConfig};

/// An owned cellular automaton.
pub struct RcaAutomaton(Ca);

/// Outcome of an equality test.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RcaVerdict {
    ExactEqual = 0,
    ExactUnequal = 1,
    SampledEqual = 2,
    SampledUnequal = 3,
}

pub const RCA_OK: i32 = 0;
pub const RCA_NULL_POINTER: i32 = -1;
pub const RCA_INVALID_UTF8: i32 = -2;
pub const RCA_PANIC: i32 = -3;

pub const RCA_ERR_DEGENERATE_INPUT: i32 = 10;
pub const RCA_ERR_NOT_UNBORDERED: i32 = 11;
pub const RCA_ERR_ALPHABET_MISMATCH: i32 = 12;
pub const RCA_ERR_SIZE_MISMATCH: i32 = 13;
pub const RCA_ERR_LENGTH_MISMATCH: i32 = 14;
pub const RCA_ERR_BAD_TRACK: i32 = 15;
pub const RCA_ERR_NOT_REVERSIBLE: i32 = 20;
pub const RCA_ERR_RADIUS_BOUND_EXCEEDED: i32 = 21;
pub const RCA_ERR_BIRADIUS_EXCEEDED: i32 = 22;
pub const RCA_ERR_BUDGET_EXCEEDED: i32 = 23;
pub const RCA_ERR_NOT_EVEN: i32 = 30;
pub const RCA_ERR_NOT_IN_HYPOCENTER: i32 = 31;
pub const RCA_ERR_NOT_WEAKLY_CONNECTED: i32 = 32;
pub const RCA_ERR_ALPHABET_TOO_SMALL: i32 = 33;
pub const RCA_ERR_PARITY_VIOLATION: i32 = 34;
pub const RCA_ERR_NOT_INVERTIBLE: i32 = 40;
pub const RCA_ERR_NON_FREE_ORBIT: i32 = 41;
pub const RCA_ERR_UNRESOLVED_NAME: i32 = 50;
pub const RCA_ERR_PARSE: i32 = 51;
pub const RCA_ERR_INCONSISTENT: i32 = 60;
pub const RCA_ERR_IO: i32 = 70;
pub const RCA_ERR_INVALID: i32 = 71;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

enum Failure {
    Status(i32, String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

/// Runs `body`, turning errors and panics into status codes.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> i32 {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            RCA_OK
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(&e.to_string());
            e.code()
        }
        Ok(Err(Failure::Status(code, msg))) => {
            set_error(&msg);
            code
        }
        Err(_) => {
            set_error("internal panic");
            RCA_PANIC
        }
    }
}

fn null(what: &str) -> Failure {
    Failure::Status(RCA_NULL_POINTER, format!("null pointer: {what}"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::Status(RCA_INVALID_UTF8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a>(p: *const RcaAutomaton, what: &str) -> Result<&'a Ca, Failure> {
    p.as_ref().map(|h| &h.0).ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, v: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

unsafe fn put_automaton(out: *mut *mut RcaAutomaton, f: Ca) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(Box::into_raw(Box::new(RcaAutomaton(f))));
    Ok(())
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn rca_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// The identity automaton on an alphabet of `alphabet_size` symbols.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rca_automaton_identity(alphabet_size: usize, out: *mut *mut RcaAutomaton) -> i32 {
    guard(|| put_automaton(out, Ca::identity(&Alphabet::new(alphabet_size)?)))
}

/// An automaton from its local rule: `table[i]` is the image of the `i`-th
/// window over cells `lo..=hi`, leftmost cell most significant.
///
/// # Safety
/// `table` must point to `len` readable values and `out` must be valid
/// for writes.
#[no_mangle]
pub unsafe extern "C" fn rca_automaton_from_table(
    alphabet_size: usize,
    lo: i64,
    hi: i64,
    table: *const u32,
    len: usize,
    out: *mut *mut RcaAutomaton,
) -> i32 {
    guard(|| {
        if table.is_null() {
            return Err(null("table"));
        }
        let t = std::slice::from_raw_parts(table, len).to_vec();
        put_automaton(out, Ca::from_table(Alphabet::new(alphabet_size)?, lo, hi, t)?)
    })
}

/// Loads a JSON rule file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rca_automaton_load(path: *const c_char, out: *mut *mut RcaAutomaton) -> i32 {
    guard(|| put_automaton(out, RuleFile::load(Path::new(text(path, "path")?))?))
}

/// Saves `f` as a JSON rule file.
///
/// # Safety
/// `f` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn rca_automaton_save(f: *const RcaAutomaton, path: *const c_char) -> i32 {
    guard(|| Ok(RuleFile::save(handle(f, "f")?, Path::new(text(path, "path")?))?))
}

/// Evaluates a word such as `s1^-1 * p[1,0,3,2]` over the product alphabet
/// with the given track sizes.
///
/// # Safety
/// `word` must be NUL-terminated, `factors` must point to `n_factors`
/// readable values and `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rca_automaton_from_word(
    word: *const c_char,
    factors: *const usize,
    n_factors: usize,
    out: *mut *mut RcaAutomaton,
) -> i32 {
    guard(|| {
        if factors.is_null() {
            return Err(null("factors"));
        }
        let alphabet = Alphabet::product(std::slice::from_raw_parts(factors, n_factors))?;
        let reg = Registry::new();
        let w = GroupWord::parse(text(word, "word")?, &reg)?;
        put_automaton(out, eval_word(&alphabet, &w, &reg)?)
    })
}

/// `f ∘ g`.
///
/// # Safety
/// `f` and `g` must be live handles and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rca_automaton_compose(
    f: *const RcaAutomaton,
    g: *const RcaAutomaton,
    out: *mut *mut RcaAutomaton,
) -> i32 {
    guard(|| put_automaton(out, ca::compose(handle(f, "f")?, handle(g, "g")?)?))
}

/// The inverse of `f`, searched up to radius `max_radius`.
///
/// # Safety
/// `f` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rca_automaton_invert(
    f: *const RcaAutomaton,
    max_radius: usize,
    out: *mut *mut RcaAutomaton,
) -> i32 {
    guard(|| put_automaton(out, ca::invert(handle(f, "f")?, max_radius)?))
}

/// Decides whether `f` is injective (hence reversible).
///
/// # Safety
/// `f` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rca_automaton_is_reversible(f: *const RcaAutomaton, out: *mut bool) -> i32 {
    guard(|| put(out, ca::is_reversible(handle(f, "f")?)?, "out"))
}

/// Decides `f = g`, exactly when the enumeration fits `budget`.
///
/// # Safety
/// `f` and `g` must be live handles and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rca_automaton_equal(
    f: *const RcaAutomaton,
    g: *const RcaAutomaton,
    budget: u64,
    seed: u64,
    out: *mut RcaVerdict,
) -> i32 {
    guard(|| {
        let v = match ca::equal(handle(f, "f")?, handle(g, "g")?, budget, seed)? {
            EqualityVerdict::ExactEqual => RcaVerdict::ExactEqual,
            EqualityVerdict::ExactUnequal { .. } => RcaVerdict::ExactUnequal,
            EqualityVerdict::SampledEqual { .. } => RcaVerdict::SampledEqual,
            EqualityVerdict::SampledUnequal { .. } => RcaVerdict::SampledUnequal,
        };
        put(out, v, "out")
    })
}

/// Number of symbols of the alphabet of `f`, or 0 for a null handle.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rca_automaton_alphabet_size(f: *const RcaAutomaton) -> usize {
    f.as_ref().map(|h| h.0.alphabet().size()).unwrap_or(0)
}

/// The neighbourhood `[lo, hi]` of `f`.
///
/// # Safety
/// `f` must be a live handle; `lo` and `hi` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rca_automaton_interval(f: *const RcaAutomaton, lo: *mut i64, hi: *mut i64) -> i32 {
    guard(|| {
        let (a, b) = handle(f, "f")?.interval();
        put(lo, a, "lo")?;
        put(hi, b, "hi")
    })
}

/// Applies `f` to the periodic configuration with period `cells[0..len]`
/// (cell 0 at the origin), writing one period of the image to `out`.
///
/// # Safety
/// `cells` must point to `len` readable values and `out` to `len` writable
/// ones; `f` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn rca_automaton_apply_periodic(
    f: *const RcaAutomaton,
    cells: *const u32,
    len: usize,
    out: *mut u32,
) -> i32 {
    guard(|| {
        let f = handle(f, "f")?;
        if cells.is_null() {
            return Err(null("cells"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        if len == 0 {
            return Err(Error::DegenerateInput("empty period".into()).into());
        }
        let period = std::slice::from_raw_parts(cells, len).to_vec();
        let x = SupportedConfig::new(f.alphabet().clone(), period.clone(), period.clone(), period)?;
        let image = f.apply_window(&x, 0, len as i64);
        std::slice::from_raw_parts_mut(out, len).copy_from_slice(&image);
        Ok(())
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `f` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rca_automaton_free(f: *mut RcaAutomaton) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Runs the named acceptance suite. `passed` receives the verdict and, when
/// `report` is not null, it receives a JSON report to be released with
/// [`rca_string_free`].
///
/// # Safety
/// `name` must be NUL-terminated, `passed` valid for writes and `report`
/// null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn rca_verify(name: *const c_char, seed: u64, passed: *mut bool, report: *mut *mut c_char) -> i32 {
    guard(|| {
        let opts = Options { seed, ..Options::default() };
        let r = run_suite(text(name, "name")?, &opts)?;
        put(passed, r.passed, "passed")?;
        if !report.is_null() {
            let json = serde_json::to_string(&r).map_err(|e| Error::Invalid(e.to_string()))?;
            report.write(CString::new(json).map_err(|e| Error::Invalid(e.to_string()))?.into_raw());
        }
        Ok(())
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rca_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
