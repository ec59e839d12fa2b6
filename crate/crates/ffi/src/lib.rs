//! C ABI over the `delpezzo` library.
//!
//! Every fallible call returns a [`DpStatus`] and writes results through out
//! pointers. On failure a message is kept per thread and can be read with
//! [`dp_last_error_message`]. Exact rationals cross the boundary as
//! `int64_t` numerator/denominator pairs; a value that does not fit reports
//! `DP_STATUS_OVERFLOW`. Opaque handles come from `dp_count` and the
//! `dp_action_*` constructors and are released with the matching `*_free`.

use delpezzo::constants::{
    c_star, d_star_direct, main_term_h, omega_p_direct, sigma_infinity, CStarConfig, LocalEngine, QuadratureConfig,
    QuadratureMethod,
};
use delpezzo::fibration::{count_n1_fast, Fiber};
use delpezzo::nefcone::{alpha, vol_w0, GroupAction, PicLattice};
use delpezzo::par::Par;
use delpezzo::surface::{count_naive, strata_fast};
use delpezzo::{Error, Q};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Domain = 3,
    NotPrime = 4,
    NotCoprime = 5,
    CapExceeded = 6,
    Overflow = 7,
    Hypothesis = 8,
    InvalidAction = 9,
    Geometry = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DpEngine {
    Naive = 0,
    Fast = 1,
}

/// An exact rational `num / den` with `den > 0`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DpRational {
    pub num: i64,
    pub den: i64,
}

/// A floating-point value with an error bar.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DpEstimate {
    pub value: f64,
    pub error_bar: f64,
}

/// Opaque Galois action on the lines of a del Pezzo surface.
pub struct DpAction {
    degree: u32,
    inner: GroupAction,
}

/// Opaque result of a point count.
pub struct DpCount {
    bound: i64,
    n_u: u64,
    n1: u64,
    stratum_zero: u64,
    stratum_x4: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> DpStatus {
    match e {
        Error::Domain(_) | Error::Config(_) => DpStatus::Domain,
        Error::NotPrime(_) => DpStatus::NotPrime,
        Error::NotCoprime(..) => DpStatus::NotCoprime,
        Error::CapExceeded(_) => DpStatus::CapExceeded,
        Error::Overflow(_) => DpStatus::Overflow,
        Error::Hypothesis(_) => DpStatus::Hypothesis,
        Error::InvalidAction(_) => DpStatus::InvalidAction,
        Error::OffSurface | Error::ExcludedLine | Error::TangentLine | Error::WrongChamber => DpStatus::Geometry,
    }
}

struct Failure(DpStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(DpStatus::NullPointer, format!("{what} is null"))
}

/// Run `f`, translating errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> DpStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DpStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            DpStatus::Panic
        }
    }
}

fn rational(q: Q) -> Result<DpRational, Failure> {
    match (i64::try_from(*q.numer()), i64::try_from(*q.denom())) {
        (Ok(num), Ok(den)) => Ok(DpRational { num, den }),
        _ => Err(Failure(DpStatus::Overflow, format!("{q} does not fit in 64-bit integers"))),
    }
}

fn from_rational(r: DpRational) -> Result<Q, Failure> {
    if r.den == 0 {
        return Err(Failure(DpStatus::Domain, "zero denominator".into()));
    }
    Ok(Q::new(r.num as i128, r.den as i128))
}

/// # Safety
/// `out` must be null or valid for writes of `T`.
unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn dp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Static name of a `DpStatus` value; unknown codes give "unknown status".
#[no_mangle]
pub extern "C" fn dp_status_name(status: i32) -> *const c_char {
    let s: &'static CStr = match status {
        0 => c"ok",
        1 => c"null pointer",
        2 => c"invalid utf-8",
        3 => c"domain error",
        4 => c"not prime",
        5 => c"not coprime",
        6 => c"cap exceeded",
        7 => c"overflow",
        8 => c"hypothesis violated",
        9 => c"invalid group action",
        10 => c"geometric precondition violated",
        11 => c"internal panic",
        _ => c"unknown status",
    };
    s.as_ptr()
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn dp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Count points of height at most `bound` on the open subset. `engine` is a
/// `DpEngine` value.
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn dp_count(bound: i64, engine: u32, out: *mut *mut DpCount) -> DpStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let count = match engine {
            e if e == DpEngine::Naive as u32 => {
                let r = count_naive(bound, Par::Rayon)?;
                DpCount {
                    bound,
                    n_u: r.n_u,
                    n1: r.n_generic / 8,
                    stratum_zero: r.stratum_zero,
                    stratum_x4: r.stratum_x4,
                }
            }
            e if e == DpEngine::Fast as u32 => {
                let n1 = count_n1_fast(bound, Par::Rayon)?;
                let s = strata_fast(bound);
                DpCount { bound, n_u: 8 * n1 + s.zero + s.x4, n1, stratum_zero: s.zero, stratum_x4: s.x4 }
            }
            e => return Err(Failure(DpStatus::Domain, format!("unknown engine {e}"))),
        };
        out.write(Box::into_raw(Box::new(count)));
        Ok(())
    })
}

/// The bound the count was made for. Returns 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live handle from [`dp_count`].
#[no_mangle]
pub unsafe extern "C" fn dp_count_bound(c: *const DpCount) -> i64 {
    c.as_ref().map_or(0, |c| c.bound)
}

/// Points on the open subset. Returns 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live handle from [`dp_count`].
#[no_mangle]
pub unsafe extern "C" fn dp_count_n_u(c: *const DpCount) -> u64 {
    c.as_ref().map_or(0, |c| c.n_u)
}

/// `N_1`, one eighth of the generic count. Returns 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live handle from [`dp_count`].
#[no_mangle]
pub unsafe extern "C" fn dp_count_n1(c: *const DpCount) -> u64 {
    c.as_ref().map_or(0, |c| c.n1)
}

/// Points with a vanishing coordinate among `x0..x3`. Returns 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live handle from [`dp_count`].
#[no_mangle]
pub unsafe extern "C" fn dp_count_stratum_zero(c: *const DpCount) -> u64 {
    c.as_ref().map_or(0, |c| c.stratum_zero)
}

/// Points with `x4 = 0`. Returns 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live handle from [`dp_count`].
#[no_mangle]
pub unsafe extern "C" fn dp_count_stratum_x4(c: *const DpCount) -> u64 {
    c.as_ref().map_or(0, |c| c.stratum_x4)
}

/// # Safety
/// `c` must be null or a live handle from [`dp_count`]; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn dp_count_free(c: *mut DpCount) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `out` must be valid for writing one pointer.
unsafe fn new_action(
    degree: u32,
    out: *mut *mut DpAction,
    make: impl FnOnce(&PicLattice) -> Result<GroupAction, Error>,
) -> DpStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let pic = PicLattice::new(degree)?;
        let inner = make(&pic)?;
        inner.validate(&pic, &pic.lines())?;
        out.write(Box::into_raw(Box::new(DpAction { degree, inner })));
        Ok(())
    })
}

/// The trivial action in degree 3 or 4.
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn dp_action_trivial(degree: u32, out: *mut *mut DpAction) -> DpStatus {
    new_action(degree, out, |_| Ok(GroupAction::trivial()))
}

/// The whole Weyl group acting on the lines.
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn dp_action_full(degree: u32, out: *mut *mut DpAction) -> DpStatus {
    new_action(degree, out, |pic| Ok(GroupAction::full_weyl(pic)))
}

/// Complex conjugation on the quartic of interest (degree 4).
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn dp_action_conj(out: *mut *mut DpAction) -> DpStatus {
    new_action(4, out, GroupAction::conj_q_i)
}

/// Generators in cycle notation over 0-based line indices, one per line.
///
/// # Safety
/// `text` must be null or a nul-terminated string; `out` must be valid for
/// writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn dp_action_parse(degree: u32, text: *const c_char, out: *mut *mut DpAction) -> DpStatus {
    if text.is_null() {
        return guard(|| Err(null("text")));
    }
    let Ok(text) = CStr::from_ptr(text).to_str() else {
        return guard(|| Err(Failure(DpStatus::InvalidUtf8, "action text is not utf-8".into())));
    };
    new_action(degree, out, |pic| GroupAction::parse_cycles(text, pic.lines().len()))
}

/// # Safety
/// `a` must be null or a live action handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn dp_action_free(a: *mut DpAction) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Nef-cone volume for an action, plus the rank of the invariant Picard group.
///
/// # Safety
/// `a` must be a live action handle; `out` and `rank` must be valid for writes
/// (`rank` may be null).
#[no_mangle]
pub unsafe extern "C" fn dp_alpha(a: *const DpAction, out: *mut DpRational, rank: *mut u32) -> DpStatus {
    guard(|| {
        let a = a.as_ref().ok_or_else(|| null("action"))?;
        let r = alpha(&a.inner, a.degree)?;
        write(out, rational(r.alpha)?, "out")?;
        if !rank.is_null() {
            rank.write(r.rank as u32);
        }
        Ok(())
    })
}

/// The exact volume of the region W0.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dp_vol_w0(out: *mut DpRational) -> DpStatus {
    guard(|| write(out, rational(vol_w0())?, "out"))
}

/// `omega*` at `p` from a direct count modulo `p^n`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dp_omega_p_direct(p: u64, n: u32, out: *mut DpRational) -> DpStatus {
    guard(|| write(out, rational(omega_p_direct(p, n, LocalEngine::Fibered)?)?, "out"))
}

/// The conic density `D*_{mu,nu}(p^n)` for the fiber data `(c, d)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dp_d_star(p: u64, n: u32, mu: u32, nu: u32, c: i64, d: i64, out: *mut DpRational) -> DpStatus {
    guard(|| write(out, rational(d_star_direct(p, n, mu, nu, c as i128, d as i128)?)?, "out"))
}

/// `h(a, b; Y)` for the fiber `(a, b)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dp_main_term_h(a: i64, b: i64, y: DpRational, out: *mut DpRational) -> DpStatus {
    guard(|| {
        let f = Fiber::new(a, b)?;
        write(out, rational(main_term_h(&f, from_rational(y)?)?)?, "out")
    })
}

/// The Euler product `C*` over primes up to `pmax`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dp_c_star(pmax: u64, nucap: u32, out: *mut DpEstimate) -> DpStatus {
    guard(|| {
        if pmax < 4 {
            return Err(Failure(DpStatus::Domain, "pmax must be at least 4".into()));
        }
        let e = c_star(CStarConfig { pmax, nucap });
        write(out, DpEstimate { value: e.value, error_bar: e.error_bar }, "out")
    })
}

/// `sigma_inf` by adaptive quadrature to the given tolerance.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn dp_sigma_infinity(tolerance: f64, out: *mut DpEstimate) -> DpStatus {
    guard(|| {
        if !(tolerance > 0.0 && tolerance < 1.0) {
            return Err(Failure(DpStatus::Domain, "tolerance must lie in (0, 1)".into()));
        }
        let cfg = QuadratureConfig { method: QuadratureMethod::AdaptiveGrid { tolerance }, par: Par::Rayon };
        let e = sigma_infinity(cfg);
        write(out, DpEstimate { value: e.value, error_bar: e.error_bar }, "out")
    })
}
