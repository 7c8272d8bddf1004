//! C ABI for the `polarize` engine.
//!
//! Conventions: every function returns a [`PolarizeStatus`]; results come
//! back through out-pointers. Handles ([`PolarizeElement`],
//! [`PolarizeContext`]) are opaque and must be released with the matching
//! `_free` function; strings returned through `char **` are owned by the
//! caller and released with [`polarize_string_free`]. On any non-OK
//! status, [`polarize_last_error_message`] returns a human-readable
//! description. The header `include/polarize.h` is generated at build
//! time by cbindgen.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_traits::ToPrimitive;

use polarize::calculus::{standard_context, CalculusContext, IdentityVerdict};
use polarize::parse::{parse_identity, parse_ring_element};
use polarize::rings::{ratio_is_root_of_unity, ring_make, RingElement, RingKind};
use polarize::scenario::{run_scenario, RunOptions, ScenarioName};

/// Status code returned by every API function.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PolarizeStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// Input failed to parse; see `polarize_last_error_message`.
    ParseError = 2,
    /// A mathematical precondition was violated (zero argument, ring
    /// mismatch, non-unit in an invariance set, ...).
    MathError = 3,
    /// Unknown ring kind or scenario name.
    InvalidName = 4,
    /// A string argument was not valid UTF-8.
    Utf8Error = 5,
    /// The requested value does not exist (e.g. no polarization scalar).
    NoValue = 6,
    /// A numeric result did not fit the requested fixed-width type.
    Overflow = 7,
    /// Internal panic; a bug, please report.
    Internal = 8,
}

/// Supported coefficient rings.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PolarizeRingKind {
    Gaussian = 0,
    SixthRoot = 1,
    FifthRoot = 2,
}

impl PolarizeRingKind {
    fn to_kind(self) -> RingKind {
        match self {
            PolarizeRingKind::Gaussian => RingKind::Gaussian,
            PolarizeRingKind::SixthRoot => RingKind::SixthRoot,
            PolarizeRingKind::FifthRoot => RingKind::FifthRoot,
        }
    }
}

/// Identity verdict against the relation lattice.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PolarizeVerdict {
    Holds = 0,
    HoldsUpToTorsion = 1,
    NotDerivable = 2,
}

/// Opaque ring element handle.
pub struct PolarizeElement(RingElement);

/// Opaque calculus context handle (ring + unit invariances + relation
/// lattice).
pub struct PolarizeContext(CalculusContext);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let message = message.into();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(message).ok();
    });
}

fn clear_error() {
    LAST_ERROR.with(|slot| slot.borrow_mut().take());
}

fn guarded<F: FnOnce() -> PolarizeStatus>(f: F) -> PolarizeStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            PolarizeStatus::Internal
        }
    }
}

/// # Safety
/// `text` must be a valid NUL-terminated C string.
unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, PolarizeStatus> {
    if text.is_null() {
        set_error("null string argument");
        return Err(PolarizeStatus::NullArgument);
    }
    CStr::from_ptr(text).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        PolarizeStatus::Utf8Error
    })
}

fn give_string(s: String, out: *mut *mut c_char) -> PolarizeStatus {
    let c = match CString::new(s) {
        Ok(c) => c,
        Err(_) => {
            set_error("result contained an interior NUL byte");
            return PolarizeStatus::Internal;
        }
    };
    unsafe { *out = c.into_raw() };
    PolarizeStatus::Ok
}

/// Most recent error message for this thread, or NULL if none. The caller
/// owns the string and must release it with `polarize_string_free`.
#[no_mangle]
pub extern "C" fn polarize_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(msg) => msg.clone().into_raw(),
        None => std::ptr::null_mut(),
    })
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must have been returned by a `polarize_*` function and not freed
/// before.
#[no_mangle]
pub unsafe extern "C" fn polarize_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a ring element (e.g. `"2+i"`, `"(1+z)*(1+z^2)"`) in the given
/// ring.
///
/// # Safety
/// `text` must be a valid NUL-terminated C string; `out` must be a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn polarize_element_parse(
    kind: PolarizeRingKind,
    text: *const c_char,
    out: *mut *mut PolarizeElement,
) -> PolarizeStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null out pointer");
            return PolarizeStatus::NullArgument;
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match parse_ring_element(text, ring_make(kind.to_kind())) {
            Ok(elem) => {
                *out = Box::into_raw(Box::new(PolarizeElement(elem)));
                PolarizeStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                PolarizeStatus::ParseError
            }
        }
    })
}

/// Releases an element handle.
///
/// # Safety
/// `elem` must come from `polarize_element_parse` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn polarize_element_free(elem: *mut PolarizeElement) {
    if !elem.is_null() {
        drop(Box::from_raw(elem));
    }
}

/// Canonical rendering of an element (caller frees).
///
/// # Safety
/// `elem` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn polarize_element_to_string(
    elem: *const PolarizeElement,
    out: *mut *mut c_char,
) -> PolarizeStatus {
    guarded(|| {
        if elem.is_null() || out.is_null() {
            set_error("null argument");
            return PolarizeStatus::NullArgument;
        }
        give_string((*elem).0.to_string(), out)
    })
}

/// Field norm of an element, as a decimal string (exact, unbounded).
///
/// # Safety
/// `elem` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn polarize_element_norm(
    elem: *const PolarizeElement,
    out: *mut *mut c_char,
) -> PolarizeStatus {
    guarded(|| {
        if elem.is_null() || out.is_null() {
            set_error("null argument");
            return PolarizeStatus::NullArgument;
        }
        give_string((*elem).0.norm().to_string(), out)
    })
}

/// Exact root-of-unity decision for a nonzero element.
///
/// # Safety
/// `elem` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn polarize_element_is_root_of_unity(
    elem: *const PolarizeElement,
    out: *mut bool,
) -> PolarizeStatus {
    guarded(|| {
        if elem.is_null() || out.is_null() {
            set_error("null argument");
            return PolarizeStatus::NullArgument;
        }
        match (*elem).0.is_root_of_unity() {
            Ok(b) => {
                *out = b;
                PolarizeStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                PolarizeStatus::MathError
            }
        }
    })
}

/// Whether the diagonal of `A × A` is preperiodic under `(phi1, phi2)`:
/// exactly when `phi1/phi2` is a root of unity.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn polarize_diagonal_preperiodic(
    phi1: *const PolarizeElement,
    phi2: *const PolarizeElement,
    out: *mut bool,
) -> PolarizeStatus {
    guarded(|| {
        if phi1.is_null() || phi2.is_null() || out.is_null() {
            set_error("null argument");
            return PolarizeStatus::NullArgument;
        }
        match ratio_is_root_of_unity(&(*phi1).0, &(*phi2).0) {
            Ok(b) => {
                *out = b;
                PolarizeStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                PolarizeStatus::MathError
            }
        }
    })
}

/// Builds the standard calculus context of a ring: the base divisor is
/// declared invariant under every root of unity.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn polarize_context_standard(
    kind: PolarizeRingKind,
    out: *mut *mut PolarizeContext,
) -> PolarizeStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null out pointer");
            return PolarizeStatus::NullArgument;
        }
        let ctx = standard_context(kind.to_kind());
        *out = Box::into_raw(Box::new(PolarizeContext(ctx)));
        PolarizeStatus::Ok
    })
}

/// Releases a context handle.
///
/// # Safety
/// `ctx` must come from `polarize_context_standard` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn polarize_context_free(ctx: *mut PolarizeContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Decides a divisor identity such as `"[2+i]*D ~ 5 D"` in the context.
///
/// # Safety
/// All pointers must be valid; `identity` must be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn polarize_verify_identity(
    ctx: *const PolarizeContext,
    identity: *const c_char,
    out: *mut PolarizeVerdict,
) -> PolarizeStatus {
    guarded(|| {
        if ctx.is_null() || out.is_null() {
            set_error("null argument");
            return PolarizeStatus::NullArgument;
        }
        let text = match read_str(identity) {
            Ok(t) => t,
            Err(status) => return status,
        };
        let parsed = match parse_identity(text, (*ctx).0.ring()) {
            Ok(p) => p,
            Err(e) => {
                set_error(e.to_string());
                return PolarizeStatus::ParseError;
            }
        };
        let (lhs, rhs) = parsed.sides();
        match (*ctx).0.verify(&lhs, &rhs) {
            Ok(verdict) => {
                *out = match verdict {
                    IdentityVerdict::Holds => PolarizeVerdict::Holds,
                    IdentityVerdict::HoldsUpToTorsion { .. } => PolarizeVerdict::HoldsUpToTorsion,
                    IdentityVerdict::NotDerivable => PolarizeVerdict::NotDerivable,
                };
                PolarizeStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                PolarizeStatus::MathError
            }
        }
    })
}

/// Polarization scalar of `[alpha]` in the context: the unique `c >= 1`
/// with `[alpha]*D ~ c D` up to torsion. `NoValue` when absent.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn polarize_polarization_scalar(
    ctx: *const PolarizeContext,
    alpha: *const PolarizeElement,
    out: *mut i64,
) -> PolarizeStatus {
    guarded(|| {
        if ctx.is_null() || alpha.is_null() || out.is_null() {
            set_error("null argument");
            return PolarizeStatus::NullArgument;
        }
        match (*ctx).0.polarization_scalar(&(*alpha).0) {
            Ok(Some(c)) => match c.to_i64() {
                Some(v) => {
                    *out = v;
                    PolarizeStatus::Ok
                }
                None => {
                    set_error(format!("polarization scalar {c} does not fit in i64"));
                    PolarizeStatus::Overflow
                }
            },
            Ok(None) => {
                set_error("no polarization scalar is derivable for this element");
                PolarizeStatus::NoValue
            }
            Err(e) => {
                set_error(e.to_string());
                PolarizeStatus::MathError
            }
        }
    })
}

/// Refutation certificate for the hypothesis `[alpha]*D ~ a D`, `a >= 1`:
/// requires `q(alpha) + q(beta) ~ s q(1)` and `q(alpha beta) ~ t q(1)` to
/// be derivable; the hypothesis then forces `a(s - a) = t`. On success,
/// `out_s`/`out_t` receive the derived scalars, `out_refuted` is true
/// when no integer solution `a >= 1` exists, and `out_solutions` (if
/// non-NULL) receives the comma-separated solution list (empty string
/// when refuted; caller frees).
///
/// # Safety
/// `ctx`, `alpha`, `beta` and the non-NULL out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn polarize_refute_scalar_hypothesis(
    ctx: *const PolarizeContext,
    alpha: *const PolarizeElement,
    beta: *const PolarizeElement,
    out_s: *mut i64,
    out_t: *mut i64,
    out_refuted: *mut bool,
    out_solutions: *mut *mut c_char,
) -> PolarizeStatus {
    guarded(|| {
        if ctx.is_null()
            || alpha.is_null()
            || beta.is_null()
            || out_s.is_null()
            || out_t.is_null()
            || out_refuted.is_null()
        {
            set_error("null argument");
            return PolarizeStatus::NullArgument;
        }
        let cert = match (*ctx).0.refute_scalar_hypothesis(&(*alpha).0, &(*beta).0) {
            Ok(c) => c,
            Err(e) => {
                set_error(e.to_string());
                return PolarizeStatus::MathError;
            }
        };
        let (Some(s), Some(t)) = (cert.sum_scalar.to_i64(), cert.product_scalar.to_i64()) else {
            set_error("certificate scalars do not fit in i64");
            return PolarizeStatus::Overflow;
        };
        *out_s = s;
        *out_t = t;
        *out_refuted = cert.is_refuted();
        if !out_solutions.is_null() {
            let joined = cert
                .solutions
                .iter()
                .map(|a| a.to_string())
                .collect::<Vec<_>>()
                .join(",");
            return give_string(joined, out_solutions);
        }
        PolarizeStatus::Ok
    })
}

/// Runs the point-level Jacobian suite on `y² = f(x)` and returns the
/// JSON report. `curve` is a polynomial in x, e.g. `"x^5-x"`.
///
/// # Safety
/// `curve` must be NUL-terminated; `out_json` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn polarize_jacobian_check_json(
    curve: *const c_char,
    prime: u64,
    seed: u64,
    out_json: *mut *mut c_char,
) -> PolarizeStatus {
    guarded(|| {
        if out_json.is_null() {
            set_error("null out pointer");
            return PolarizeStatus::NullArgument;
        }
        let curve = match read_str(curve) {
            Ok(t) => t,
            Err(status) => return status,
        };
        let coeffs = match polarize::parse::parse_integer_polynomial(curve, 'x') {
            Ok(c) => c,
            Err(e) => {
                set_error(e.to_string());
                return PolarizeStatus::ParseError;
            }
        };
        match polarize::scenario::jacobian_check(&coeffs, prime, seed) {
            Ok(report) => give_string(report.to_json(), out_json),
            Err(e) => {
                set_error(e.to_string());
                PolarizeStatus::MathError
            }
        }
    })
}

/// Runs a built-in scenario (`"deg5"`, `"deg6"`, `"deg6-alpha"`,
/// `"zeta5"`) and returns the JSON report. `prime` 0 keeps the scenario
/// default. Reports with failed expectations still return `Ok`; inspect
/// the `success` field.
///
/// # Safety
/// `name` must be NUL-terminated; `out_json` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn polarize_run_scenario_json(
    name: *const c_char,
    prime: u64,
    seed: u64,
    out_json: *mut *mut c_char,
) -> PolarizeStatus {
    guarded(|| {
        if out_json.is_null() {
            set_error("null out pointer");
            return PolarizeStatus::NullArgument;
        }
        let name = match read_str(name) {
            Ok(t) => t,
            Err(status) => return status,
        };
        let scenario: ScenarioName = match name.parse() {
            Ok(s) => s,
            Err(e) => {
                set_error(e.to_string());
                return PolarizeStatus::InvalidName;
            }
        };
        let options = RunOptions {
            prime: if prime == 0 { None } else { Some(prime) },
            seed,
        };
        match run_scenario(scenario, &options) {
            Ok(report) => give_string(report.to_json(), out_json),
            Err(e) => {
                set_error(e.to_string());
                PolarizeStatus::MathError
            }
        }
    })
}
