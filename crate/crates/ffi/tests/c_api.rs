use std::ffi::{CStr, CString};
use std::ptr;

use rcakit::Error;
use rcakit_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(rca_last_error_message()) }.to_string_lossy().into_owned()
}

/// The left shift on two symbols: the new cell 0 is the old cell 1.
fn shift() -> *mut RcaAutomaton {
    let mut f = ptr::null_mut();
    let table = [0u32, 1];
    assert_eq!(unsafe { rca_automaton_from_table(2, 1, 1, table.as_ptr(), 2, &mut f) }, RCA_OK);
    f
}

#[test]
fn shift_and_inverse_compose_to_identity() {
    unsafe {
        let f = shift();
        let mut g = ptr::null_mut();
        assert_eq!(rca_automaton_invert(f, 4, &mut g), RCA_OK);
        let (mut lo, mut hi) = (0, 0);
        assert_eq!(rca_automaton_interval(g, &mut lo, &mut hi), RCA_OK);
        assert_eq!((lo, hi), (-1, -1));
        let mut fg = ptr::null_mut();
        assert_eq!(rca_automaton_compose(f, g, &mut fg), RCA_OK);
        let mut id = ptr::null_mut();
        assert_eq!(rca_automaton_identity(2, &mut id), RCA_OK);
        let mut v = RcaVerdict::SampledUnequal;
        assert_eq!(rca_automaton_equal(fg, id, 1 << 20, 0, &mut v), RCA_OK);
        assert_eq!(v, RcaVerdict::ExactEqual);
        assert_eq!(rca_automaton_equal(f, id, 1 << 20, 0, &mut v), RCA_OK);
        assert_eq!(v, RcaVerdict::ExactUnequal);
        for h in [f, g, fg, id] {
            rca_automaton_free(h);
        }
    }
}

#[test]
fn periodic_application_and_reversibility() {
    unsafe {
        let f = shift();
        let cells = [1u32, 0, 0, 1, 1];
        let mut out = [9u32; 5];
        assert_eq!(rca_automaton_apply_periodic(f, cells.as_ptr(), 5, out.as_mut_ptr()), RCA_OK);
        assert_eq!(out, [0, 0, 1, 1, 1]);
        let mut rev = false;
        assert_eq!(rca_automaton_is_reversible(f, &mut rev), RCA_OK);
        assert!(rev);
        // x_{i-1} xor x_{i+1} is not injective
        let xor = [0u32, 1, 0, 1, 1, 0, 1, 0];
        let mut g = ptr::null_mut();
        assert_eq!(rca_automaton_from_table(2, -1, 1, xor.as_ptr(), 8, &mut g), RCA_OK);
        assert_eq!(rca_automaton_is_reversible(g, &mut rev), RCA_OK);
        assert!(!rev);
        let mut inv = ptr::null_mut();
        assert_eq!(rca_automaton_invert(g, 4, &mut inv), RCA_ERR_NOT_REVERSIBLE);
        assert!(inv.is_null());
        assert!(!last_error().is_empty());
        rca_automaton_free(f);
        rca_automaton_free(g);
    }
}

#[test]
fn words_and_rule_files() {
    unsafe {
        let word = CString::new("s1 * s1^-1 * p[1,0,3,2]^2").unwrap();
        let factors = [2usize, 2];
        let mut f = ptr::null_mut();
        assert_eq!(rca_automaton_from_word(word.as_ptr(), factors.as_ptr(), 2, &mut f), RCA_OK);
        assert_eq!(rca_automaton_alphabet_size(f), 4);
        let dir = std::env::temp_dir().join(format!("rcakit-ffi-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = CString::new(dir.join("rule.json").to_str().unwrap()).unwrap();
        assert_eq!(rca_automaton_save(f, path.as_ptr()), RCA_OK);
        let mut g = ptr::null_mut();
        assert_eq!(rca_automaton_load(path.as_ptr(), &mut g), RCA_OK);
        let mut flat = ptr::null_mut();
        assert_eq!(rca_automaton_identity(4, &mut flat), RCA_OK);
        let mut v = RcaVerdict::ExactEqual;
        assert_eq!(rca_automaton_equal(g, flat, 1 << 20, 0, &mut v), RCA_ERR_ALPHABET_MISMATCH);
        rca_automaton_free(flat);
        let trivial = CString::new("s2^-1 * s2").unwrap();
        let mut id = ptr::null_mut();
        assert_eq!(rca_automaton_from_word(trivial.as_ptr(), factors.as_ptr(), 2, &mut id), RCA_OK);
        let mut v = RcaVerdict::SampledUnequal;
        assert_eq!(rca_automaton_equal(g, id, 1 << 20, 0, &mut v), RCA_OK);
        assert_eq!(v, RcaVerdict::ExactEqual);
        let bad = CString::new("s1 *").unwrap();
        let mut h = ptr::null_mut();
        assert_eq!(rca_automaton_from_word(bad.as_ptr(), factors.as_ptr(), 2, &mut h), RCA_ERR_PARSE);
        for x in [f, g, id] {
            rca_automaton_free(x);
        }
        std::fs::remove_dir_all(dir).unwrap();
    }
}

#[test]
fn misuse_is_reported() {
    unsafe {
        assert_eq!(rca_automaton_identity(2, ptr::null_mut()), RCA_NULL_POINTER);
        let mut out = false;
        assert_eq!(rca_automaton_is_reversible(ptr::null(), &mut out), RCA_NULL_POINTER);
        let table = [0u32, 5];
        let mut f = ptr::null_mut();
        assert_eq!(rca_automaton_from_table(2, 0, 0, table.as_ptr(), 2, &mut f), RCA_ERR_INVALID);
        assert_eq!(rca_automaton_alphabet_size(ptr::null()), 0);
        rca_automaton_free(ptr::null_mut());
        rca_string_free(ptr::null_mut());
    }
}

#[test]
fn verify_suite_with_report() {
    unsafe {
        let name = CString::new("example41").unwrap();
        let mut passed = false;
        let mut report = ptr::null_mut();
        assert_eq!(rca_verify(name.as_ptr(), 0, &mut passed, &mut report), RCA_OK);
        assert!(passed);
        let json = CStr::from_ptr(report).to_str().unwrap().to_string();
        assert!(json.contains("\"passed\":true"));
        rca_string_free(report);
        let unknown = CString::new("nope").unwrap();
        assert_eq!(rca_verify(unknown.as_ptr(), 0, &mut passed, ptr::null_mut()), RCA_ERR_INVALID);
    }
}

#[test]
fn status_codes_match_library_codes() {
    let pairs = [
        (Error::DegenerateInput(String::new()), RCA_ERR_DEGENERATE_INPUT),
        (Error::NotUnbordered(1), RCA_ERR_NOT_UNBORDERED),
        (Error::AlphabetMismatch(String::new()), RCA_ERR_ALPHABET_MISMATCH),
        (Error::SizeMismatch { expected: 0, got: 0 }, RCA_ERR_SIZE_MISMATCH),
        (Error::LengthMismatch { expected: 0, got: 0 }, RCA_ERR_LENGTH_MISMATCH),
        (Error::BadTrack { track: 0, arity: 0 }, RCA_ERR_BAD_TRACK),
        (Error::NotReversible, RCA_ERR_NOT_REVERSIBLE),
        (Error::RadiusBoundExceeded(0), RCA_ERR_RADIUS_BOUND_EXCEEDED),
        (Error::BiradiusExceeded { found: 0, bound: 0 }, RCA_ERR_BIRADIUS_EXCEEDED),
        (Error::BudgetExceeded { needed: 0, budget: 0 }, RCA_ERR_BUDGET_EXCEEDED),
        (Error::NotEven, RCA_ERR_NOT_EVEN),
        (Error::NotInHypocenter, RCA_ERR_NOT_IN_HYPOCENTER),
        (Error::NotWeaklyConnected, RCA_ERR_NOT_WEAKLY_CONNECTED),
        (Error::AlphabetTooSmall(String::new()), RCA_ERR_ALPHABET_TOO_SMALL),
        (Error::ParityViolation { b: 0, c: 0 }, RCA_ERR_PARITY_VIOLATION),
        (Error::NotInvertible, RCA_ERR_NOT_INVERTIBLE),
        (Error::NonFreeOrbit(String::new()), RCA_ERR_NON_FREE_ORBIT),
        (Error::UnresolvedName(String::new()), RCA_ERR_UNRESOLVED_NAME),
        (Error::Parse(String::new()), RCA_ERR_PARSE),
        (Error::Inconsistent(String::new()), RCA_ERR_INCONSISTENT),
        (Error::Io(String::new()), RCA_ERR_IO),
        (Error::Invalid(String::new()), RCA_ERR_INVALID),
    ];
    for (e, code) in pairs {
        assert_eq!(e.code(), code, "{e:?}");
    }
}

#[test]
fn generated_header_declares_the_interface() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/rcakit.h")).unwrap();
    for name in ["rca_automaton_compose", "rca_verify", "RCA_ERR_NOT_EVEN", "typedef struct RcaAutomaton"] {
        assert!(header.contains(name), "{name}");
    }
}
