//! C ABI over `redistrict`.
//!
//! Objects live behind opaque handles created by `rd_*_parse` or by an
//! operation's out-parameter, and are released with the matching
//! `rd_*_free`. Every fallible call returns an [`RdStatus`]; on failure
//! [`rd_last_error`] describes it until the next call on the same thread.
//! Strings returned as `char *` are owned by the caller and released with
//! [`rd_string_free`].
#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use redistrict::connectivity::{compute_m, switch_graph_connected};
use redistrict::district::{
    contract_district, replay, validate_map, DistrictMap, Switch, SwitchPlan,
};
use redistrict::planner::{plan_path, PlanOutcome};
use redistrict::{Error, Graph};

/// Result of a call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidEdge = 4,
    NotConnected = 5,
    NotBiconnected = 6,
    Biconnected = 7,
    KOutOfRange = 8,
    InvalidMap = 9,
    InvalidSwitch = 10,
    IncontractibleDistrict = 11,
    InvalidTarget = 12,
    IncontractibleInput = 13,
    PreconditionViolated = 14,
    NotPseudoCanonical = 15,
    MismatchedK = 16,
    TooLarge = 17,
    UnknownSignature = 18,
    BadParams = 19,
    BadFormula = 20,
    NotSatisfying = 21,
    WrongKind = 22,
    InvalidPlan = 23,
    Io = 24,
    Internal = 25,
    /// Exactly one of the two maps is contractible.
    Unreachable = 26,
    /// Both maps are incontractible.
    UnsupportedPair = 27,
    /// The plan does not end at the target map.
    WrongEnd = 28,
    Panic = 29,
    IndexOutOfRange = 30,
}

impl From<&Error> for RdStatus {
    fn from(e: &Error) -> RdStatus {
        match e {
            Error::Parse { .. } => RdStatus::Parse,
            Error::InvalidEdge(..) => RdStatus::InvalidEdge,
            Error::NotConnected => RdStatus::NotConnected,
            Error::NotBiconnected => RdStatus::NotBiconnected,
            Error::Biconnected => RdStatus::Biconnected,
            Error::KOutOfRange { .. } => RdStatus::KOutOfRange,
            Error::InvalidMap(_) => RdStatus::InvalidMap,
            Error::InvalidSwitch { .. } => RdStatus::InvalidSwitch,
            Error::IncontractibleDistrict(_) => RdStatus::IncontractibleDistrict,
            Error::InvalidTarget(_) => RdStatus::InvalidTarget,
            Error::IncontractibleInput => RdStatus::IncontractibleInput,
            Error::PreconditionViolated(_) => RdStatus::PreconditionViolated,
            Error::NotPseudoCanonical => RdStatus::NotPseudoCanonical,
            Error::MismatchedK(..) => RdStatus::MismatchedK,
            Error::TooLarge(_) => RdStatus::TooLarge,
            Error::UnknownSignature => RdStatus::UnknownSignature,
            Error::BadParams(_) => RdStatus::BadParams,
            Error::BadFormula(_) => RdStatus::BadFormula,
            Error::NotSatisfying => RdStatus::NotSatisfying,
            Error::WrongKind { .. } => RdStatus::WrongKind,
            Error::InvalidPlan(_) => RdStatus::InvalidPlan,
            Error::Io(_) => RdStatus::Io,
            Error::Internal(_) => RdStatus::Internal,
        }
    }
}

/// Opaque graph handle.
pub struct RdGraph(Graph);

/// Opaque district map handle.
pub struct RdMap(DistrictMap);

/// Opaque switch sequence handle.
pub struct RdPlan(Vec<Switch>);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(RdStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail((&e).into(), e.to_string())
    }
}

fn fail(status: RdStatus, msg: &str) -> Fail {
    Fail(status, msg.into())
}

/// Runs `f`, recording failures and turning panics into [`RdStatus::Panic`].
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> RdStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RdStatus::Ok,
        Ok(Err(Fail(s, m))) => {
            set_error(&m);
            s
        }
        Err(_) => {
            set_error("panic inside redistrict");
            RdStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(fail(RdStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(RdStatus::InvalidUtf8, "string is not UTF-8"))
}

unsafe fn borrow<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| fail(RdStatus::NullPointer, "null handle"))
}

unsafe fn put<T>(out: *mut *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(fail(RdStatus::NullPointer, "null out-parameter"));
    }
    *out = Box::into_raw(Box::new(v));
    Ok(())
}

unsafe fn set<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(fail(RdStatus::NullPointer, "null out-parameter"));
    }
    *out = v;
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message for the last failed call on this thread; empty after success.
/// Valid until the next call.
#[no_mangle]
pub extern "C" fn rd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn rd_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[no_mangle]
pub unsafe extern "C" fn rd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the graph text format (`n m`, then `u v` per edge).
#[no_mangle]
pub unsafe extern "C" fn rd_graph_parse(src: *const c_char, out: *mut *mut RdGraph) -> RdStatus {
    guard(|| put(out, RdGraph(Graph::parse(text(src)?)?)))
}

#[no_mangle]
pub unsafe extern "C" fn rd_graph_free(g: *mut RdGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

#[no_mangle]
pub unsafe extern "C" fn rd_graph_vertex_count(g: *const RdGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

#[no_mangle]
pub unsafe extern "C" fn rd_graph_edge_count(g: *const RdGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.m())
}

/// Parses the map text format and checks it against `g`.
#[no_mangle]
pub unsafe extern "C" fn rd_map_parse(
    g: *const RdGraph,
    src: *const c_char,
    out: *mut *mut RdMap,
) -> RdStatus {
    guard(|| {
        let g = &borrow(g)?.0;
        let p = DistrictMap::parse(g.n(), text(src)?)?;
        if let Err(v) = validate_map(g, &p) {
            return Err(Error::InvalidMap(v[0].to_string()).into());
        }
        put(out, RdMap(p))
    })
}

#[no_mangle]
pub unsafe extern "C" fn rd_map_free(p: *mut RdMap) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

#[no_mangle]
pub unsafe extern "C" fn rd_map_district_count(p: *const RdMap) -> usize {
    p.as_ref().map_or(0, |p| p.0.k())
}

/// District index of `v`, stable under switches.
#[no_mangle]
pub unsafe extern "C" fn rd_map_district_of(
    p: *const RdMap,
    v: usize,
    out: *mut usize,
) -> RdStatus {
    guard(|| {
        let p = &borrow(p)?.0;
        if v >= p.n() {
            return Err(fail(RdStatus::IndexOutOfRange, "vertex out of range"));
        }
        set(out, p.district_of(v))
    })
}

/// Canonical signature such as `{0,1|2}`; free with [`rd_string_free`].
#[no_mangle]
pub unsafe extern "C" fn rd_map_signature(p: *const RdMap) -> *mut c_char {
    p.as_ref().map_or(ptr::null_mut(), |p| {
        owned_string(p.0.signature().to_string())
    })
}

/// Map text format; free with [`rd_string_free`].
#[no_mangle]
pub unsafe extern "C" fn rd_map_to_text(p: *const RdMap) -> *mut c_char {
    p.as_ref()
        .map_or(ptr::null_mut(), |p| owned_string(p.0.to_text()))
}

/// Applies the switch `(u, v, w)` in place.
#[no_mangle]
pub unsafe extern "C" fn rd_map_apply(
    g: *const RdGraph,
    p: *mut RdMap,
    u: usize,
    v: usize,
    w: usize,
) -> RdStatus {
    guard(|| {
        let g = &borrow(g)?.0;
        let p = p
            .as_mut()
            .ok_or_else(|| fail(RdStatus::NullPointer, "null handle"))?;
        Ok(p.0.apply(g, Switch::new(u, v, w))?)
    })
}

/// Whether every pair of `k`-district maps of `g` is joined by switches.
#[no_mangle]
pub unsafe extern "C" fn rd_switch_graph_connected(
    g: *const RdGraph,
    k: usize,
    out: *mut bool,
) -> RdStatus {
    guard(|| {
        let v = switch_graph_connected(&borrow(g)?.0, k)?;
        set(out, v.connected)
    })
}

/// Fewest vertices of a district holding two leaf blocks.
#[no_mangle]
pub unsafe extern "C" fn rd_compute_m(g: *const RdGraph, out: *mut usize) -> RdStatus {
    guard(|| set(out, compute_m(&borrow(g)?.0)?.m))
}

/// Plans switches from `a` to `b`. Returns [`RdStatus::Unreachable`] or
/// [`RdStatus::UnsupportedPair`] when no plan is produced.
#[no_mangle]
pub unsafe extern "C" fn rd_plan(
    g: *const RdGraph,
    a: *const RdMap,
    b: *const RdMap,
    out: *mut *mut RdPlan,
) -> RdStatus {
    guard(
        || match plan_path(&borrow(g)?.0, &borrow(a)?.0, &borrow(b)?.0)? {
            PlanOutcome::Plan(pp) => put(out, RdPlan(pp.plan.steps)),
            PlanOutcome::Unreachable => Err(fail(
                RdStatus::Unreachable,
                "exactly one map is contractible",
            )),
            PlanOutcome::UnsupportedPair => Err(fail(
                RdStatus::UnsupportedPair,
                "both maps are incontractible",
            )),
        },
    )
}

/// Contracts district `district` of `p` to `{target}`.
#[no_mangle]
pub unsafe extern "C" fn rd_contract(
    g: *const RdGraph,
    p: *const RdMap,
    district: usize,
    target: usize,
    out: *mut *mut RdPlan,
) -> RdStatus {
    guard(|| {
        let plan = contract_district(&borrow(g)?.0, &borrow(p)?.0, district, target)?;
        put(out, RdPlan(plan.steps))
    })
}

/// Parses the plan text format (step count, then `u v w` per line).
#[no_mangle]
pub unsafe extern "C" fn rd_plan_parse(src: *const c_char, out: *mut *mut RdPlan) -> RdStatus {
    guard(|| put(out, RdPlan(SwitchPlan::parse_steps(text(src)?)?)))
}

#[no_mangle]
pub unsafe extern "C" fn rd_plan_free(p: *mut RdPlan) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

#[no_mangle]
pub unsafe extern "C" fn rd_plan_len(p: *const RdPlan) -> usize {
    p.as_ref().map_or(0, |p| p.0.len())
}

/// Step `i` of a plan as `(u, v, w)`.
#[no_mangle]
pub unsafe extern "C" fn rd_plan_step(
    p: *const RdPlan,
    i: usize,
    u: *mut usize,
    v: *mut usize,
    w: *mut usize,
) -> RdStatus {
    guard(|| {
        let s = *borrow(p)?
            .0
            .get(i)
            .ok_or_else(|| fail(RdStatus::IndexOutOfRange, "step out of range"))?;
        set(u, s.u)?;
        set(v, s.v)?;
        set(w, s.w)
    })
}

/// Plan text format; free with [`rd_string_free`].
#[no_mangle]
pub unsafe extern "C" fn rd_plan_to_text(p: *const RdPlan) -> *mut c_char {
    p.as_ref().map_or(ptr::null_mut(), |p| {
        let mut s = format!("{}\n", p.0.len());
        for st in &p.0 {
            s.push_str(&format!("{st}\n"));
        }
        owned_string(s)
    })
}

/// Replays `plan` from `a` and checks that it ends at `b`.
#[no_mangle]
pub unsafe extern "C" fn rd_plan_verify(
    g: *const RdGraph,
    a: *const RdMap,
    plan: *const RdPlan,
    b: *const RdMap,
) -> RdStatus {
    guard(|| {
        let end = replay(&borrow(g)?.0, &borrow(a)?.0, &borrow(plan)?.0)?;
        if end.signature() != borrow(b)?.0.signature() {
            return Err(fail(RdStatus::WrongEnd, "plan ends elsewhere"));
        }
        Ok(())
    })
}
