//! C interface to `horn_amoeba`.
//!
//! Every fallible call returns an [`HaStatus`]; on failure the message is
//! available from [`ha_last_error`] on the same thread. Objects are opaque
//! handles released with their `_free` function. Strings returned through
//! out-parameters are owned by the caller and released with
//! [`ha_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use horn_amoeba::algebra::{parse_default, parse_rat, MultiPoly};
use horn_amoeba::amoeba::{component_census, membership, Census, GridParams, Membership, MembershipParams, Verdict};
use horn_amoeba::horn::{compatibility_check, horn_from_ore_sato, principal_symbols, symbol_resultant, HornSystem, OreSatoCoefficient};
use horn_amoeba::supports::{admissible_supports, horn_fan};
use horn_amoeba::{Error, Rat};

/// Result of a call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Invalid = 4,
    DimensionMismatch = 5,
    Unsupported = 6,
    Singular = 7,
    Numerical = 8,
    OutOfRange = 9,
    Panic = 10,
}

/// Classification of a point of `R^n` with respect to the amoeba.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HaMembership {
    Outside = 0,
    Inside = 1,
    Unknown = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HaVerdict {
    Solid = 0,
    NotSolid = 1,
    Inconclusive = 2,
}

/// Exact Laurent polynomial with rational coefficients.
pub struct HaPoly(MultiPoly);
/// Validated Ore-Sato coefficient.
pub struct HaCoefficient(OreSatoCoefficient);
/// Horn system of equations.
pub struct HaSystem(HornSystem);
/// Result of a complement census.
pub struct HaCensus(Census);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(HaStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse { .. } => HaStatus::Parse,
            Error::Invalid(_) | Error::InvalidParameter(_) => HaStatus::Invalid,
            Error::DimensionMismatch { .. } => HaStatus::DimensionMismatch,
            Error::Unsupported(_) => HaStatus::Unsupported,
            Error::Singular(_) => HaStatus::Singular,
            Error::Numerical(_) => HaStatus::Numerical,
        };
        Fail(status, e.to_string())
    }
}

fn fail<T>(status: HaStatus, msg: impl Into<String>) -> Result<T, Fail> {
    Err(Fail(status, msg.into()))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> HaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            HaStatus::Ok
        }
        Ok(Err(Fail(s, m))) => {
            set_error(m);
            s
        }
        Err(p) => {
            let m = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {}", m));
            HaStatus::Panic
        }
    }
}

unsafe fn cstr<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return fail(HaStatus::NullPointer, format!("{} is null", what));
    }
    CStr::from_ptr(p)
        .to_str()
        .or_else(|_| fail(HaStatus::InvalidUtf8, format!("{} is not UTF-8", what)))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().map_or_else(|| fail(HaStatus::NullPointer, format!("{} is null", what)), Ok)
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return fail(HaStatus::NullPointer, "output pointer is null");
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return fail(HaStatus::NullPointer, "output pointer is null");
    }
    *out = CString::new(s).map_err(|e| Fail(HaStatus::Invalid, e.to_string()))?.into_raw();
    Ok(())
}

unsafe fn floats<'a>(p: *const f64, n: usize, what: &str) -> Result<&'a [f64], Fail> {
    if n == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return fail(HaStatus::NullPointer, format!("{} is null", what));
    }
    Ok(std::slice::from_raw_parts(p, n))
}

/// Message of the last failed call on this thread, or null after a
/// successful one. Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn ha_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ha_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn ha_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

// ---- polynomials ----

/// Parses a polynomial in `x1, x2, ...` with at least `min_vars` variables.
///
/// # Safety
/// `text` must be a valid C string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ha_poly_parse(text: *const c_char, min_vars: usize, out: *mut *mut HaPoly) -> HaStatus {
    guard(|| put(out, HaPoly(parse_default(cstr(text, "text")?, min_vars)?)))
}

/// # Safety
/// `p` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ha_poly_free(p: *mut HaPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of variables, or 0 for a null handle.
///
/// # Safety
/// `p` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ha_poly_nvars(p: *const HaPoly) -> usize {
    p.as_ref().map_or(0, |p| p.0.nvars())
}

/// Writes the polynomial in the parser's syntax.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ha_poly_to_string(p: *const HaPoly, out: *mut *mut c_char) -> HaStatus {
    guard(|| put_string(out, handle(p, "poly")?.0.to_string()))
}

/// Sets `*equal` to whether two polynomials coincide exactly.
///
/// # Safety
/// Handles must be live and `equal` writable.
#[no_mangle]
pub unsafe extern "C" fn ha_poly_equal(a: *const HaPoly, b: *const HaPoly, equal: *mut bool) -> HaStatus {
    guard(|| {
        let r = handle(a, "a")?.0 == handle(b, "b")?.0;
        if equal.is_null() {
            return fail(HaStatus::NullPointer, "equal is null");
        }
        *equal = r;
        Ok(())
    })
}

// ---- coefficients and systems ----

/// Parses and validates an Ore-Sato coefficient from its JSON form.
///
/// # Safety
/// `json` must be a valid C string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ha_coefficient_from_json(json: *const c_char, out: *mut *mut HaCoefficient) -> HaStatus {
    guard(|| {
        let c = OreSatoCoefficient::from_json(cstr(json, "json")?)?;
        c.validate()?;
        put(out, HaCoefficient(c))
    })
}

/// # Safety
/// `c` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ha_coefficient_free(c: *mut HaCoefficient) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Builds the Horn system of a coefficient.
///
/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ha_coefficient_horn_system(c: *const HaCoefficient, out: *mut *mut HaSystem) -> HaStatus {
    guard(|| put(out, HaSystem(horn_from_ore_sato(&handle(c, "coefficient")?.0)?)))
}

/// Writes the support fan (cones, selections and fan verdict) as JSON.
///
/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ha_coefficient_fan_json(c: *const HaCoefficient, out: *mut *mut c_char) -> HaStatus {
    guard(|| {
        let fan = horn_fan(&handle(c, "coefficient")?.0)?;
        put_string(out, serde_json::to_string(&fan).expect("fan serializes"))
    })
}

/// Parses a Horn system from its JSON form.
///
/// # Safety
/// `json` must be a valid C string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ha_system_from_json(json: *const c_char, out: *mut *mut HaSystem) -> HaStatus {
    guard(|| put(out, HaSystem(HornSystem::from_json(cstr(json, "json")?)?)))
}

/// # Safety
/// `s` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ha_system_free(s: *mut HaSystem) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ha_system_to_json(s: *const HaSystem, out: *mut *mut c_char) -> HaStatus {
    guard(|| put_string(out, handle(s, "system")?.0.to_json_value().to_string()))
}

/// Sets `*compatible` to whether the system's operators satisfy the
/// compatibility conditions.
///
/// # Safety
/// `s` must be a live handle and `compatible` writable.
#[no_mangle]
pub unsafe extern "C" fn ha_system_is_compatible(s: *const HaSystem, compatible: *mut bool) -> HaStatus {
    guard(|| {
        let r = compatibility_check(&handle(s, "system")?.0);
        if compatible.is_null() {
            return fail(HaStatus::NullPointer, "compatible is null");
        }
        *compatible = r;
        Ok(())
    })
}

/// Resultant of the principal symbols, with the `x` variables renamed
/// `x1..xn`.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ha_system_symbol_resultant(s: *const HaSystem, out: *mut *mut HaPoly) -> HaStatus {
    guard(|| {
        let sym = principal_symbols(&handle(s, "system")?.0)?;
        put(out, HaPoly(symbol_resultant(&sym)?))
    })
}

/// Admissible supports as a JSON array. `gamma` holds `n` rationals as
/// strings, or is null for zero.
///
/// # Safety
/// `s` must be a live handle; `gamma` null or an array of `n` C strings.
#[no_mangle]
pub unsafe extern "C" fn ha_system_supports_json(
    s: *const HaSystem,
    gamma: *const *const c_char,
    window: i64,
    out: *mut *mut c_char,
) -> HaStatus {
    guard(|| {
        let h = &handle(s, "system")?.0;
        let g: Vec<Rat> = if gamma.is_null() {
            vec![Rat::from_integer(0.into()); h.n]
        } else {
            (0..h.n)
                .map(|i| parse_rat(cstr(*gamma.add(i), "gamma entry")?).map_err(Fail::from))
                .collect::<Result<_, _>>()?
        };
        let specs = admissible_supports(h, &g, window)?;
        put_string(out, serde_json::to_string(&specs).expect("supports serialize"))
    })
}

// ---- amoebas ----

fn membership_params(n_circle: usize) -> MembershipParams {
    let mut p = MembershipParams::default();
    if n_circle > 0 {
        p.n_circle = n_circle;
    }
    p
}

/// Classifies the point `t` of `R^n`. When outside, the order of the
/// complement component is written to `order` if `order_cap >= n`.
///
/// # Safety
/// `p` must be live, `t` must hold `nvars` values, `state` writable and
/// `order` null or holding `order_cap` slots.
#[no_mangle]
pub unsafe extern "C" fn ha_membership(
    p: *const HaPoly,
    t: *const f64,
    seed: u64,
    state: *mut HaMembership,
    order: *mut i64,
    order_cap: usize,
) -> HaStatus {
    guard(|| {
        let f = &handle(p, "poly")?.0;
        let t = floats(t, f.nvars(), "t")?;
        if state.is_null() {
            return fail(HaStatus::NullPointer, "state is null");
        }
        let m = membership(f, t, &MembershipParams::default(), seed)?;
        *state = match &m {
            Membership::Outside { order: o, .. } => {
                if !order.is_null() && order_cap >= o.len() {
                    ptr::copy_nonoverlapping(o.as_ptr(), order, o.len());
                }
                HaMembership::Outside
            }
            Membership::Inside { .. } => HaMembership::Inside,
            Membership::Unknown { .. } => HaMembership::Unknown,
        };
        Ok(())
    })
}

/// Runs a complement census on a regular grid.
///
/// `lo` and `hi` hold `nvars` bounds each, or are both null for the default
/// box. A `resolution` of 0 picks the default; `n_circle` of 0 keeps the
/// default sampling; `max_unknown` below 0 keeps the default threshold.
///
/// # Safety
/// `p` must be live, `lo`/`hi` null or holding `nvars` values, `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn ha_census_run(
    p: *const HaPoly,
    lo: *const f64,
    hi: *const f64,
    resolution: usize,
    n_circle: usize,
    max_unknown: f64,
    seed: u64,
    out: *mut *mut HaCensus,
) -> HaStatus {
    guard(|| {
        let f = &handle(p, "poly")?.0;
        let n = f.nvars();
        let mut params = GridParams {
            membership: membership_params(n_circle),
            seed,
            ..GridParams::default()
        };
        match (lo.is_null(), hi.is_null()) {
            (true, true) => {}
            (false, false) => {
                params.lo = Some(floats(lo, n, "lo")?.to_vec());
                params.hi = Some(floats(hi, n, "hi")?.to_vec());
            }
            _ => return fail(HaStatus::NullPointer, "lo and hi must both be given or both null"),
        }
        if resolution > 0 {
            params.resolution = Some(resolution);
        }
        if max_unknown >= 0.0 {
            params.max_unknown = max_unknown;
        }
        let (_, census) = component_census(f, &params)?;
        put(out, HaCensus(census))
    })
}

/// # Safety
/// `c` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ha_census_free(c: *mut HaCensus) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Number of complement components found, or 0 for a null handle.
///
/// # Safety
/// `c` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ha_census_component_count(c: *const HaCensus) -> usize {
    c.as_ref().map_or(0, |c| c.0.components.len())
}

/// # Safety
/// `c` must be a live handle and `verdict` writable.
#[no_mangle]
pub unsafe extern "C" fn ha_census_verdict(c: *const HaCensus, verdict: *mut HaVerdict) -> HaStatus {
    guard(|| {
        let v = match handle(c, "census")?.0.verdict {
            Verdict::Solid => HaVerdict::Solid,
            Verdict::NotSolid => HaVerdict::NotSolid,
            Verdict::Inconclusive => HaVerdict::Inconclusive,
        };
        if verdict.is_null() {
            return fail(HaStatus::NullPointer, "verdict is null");
        }
        *verdict = v;
        Ok(())
    })
}

/// Copies the order of component `index` into `order`, which must have
/// room for `nvars` entries.
///
/// # Safety
/// `c` must be live and `order` hold `order_cap` slots.
#[no_mangle]
pub unsafe extern "C" fn ha_census_order(c: *const HaCensus, index: usize, order: *mut i64, order_cap: usize) -> HaStatus {
    guard(|| {
        let comps = &handle(c, "census")?.0.components;
        let Some(comp) = comps.get(index) else {
            return fail(HaStatus::OutOfRange, format!("component {} of {}", index, comps.len()));
        };
        if order.is_null() {
            return fail(HaStatus::NullPointer, "order is null");
        }
        if order_cap < comp.order.len() {
            return fail(HaStatus::OutOfRange, format!("order needs {} slots", comp.order.len()));
        }
        ptr::copy_nonoverlapping(comp.order.as_ptr(), order, comp.order.len());
        Ok(())
    })
}

/// Full census report as JSON.
///
/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ha_census_to_json(c: *const HaCensus, out: *mut *mut c_char) -> HaStatus {
    guard(|| put_string(out, serde_json::to_string(&handle(c, "census")?.0).expect("census serializes")))
}
