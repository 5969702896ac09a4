//! C ABI over `qosc`.
//!
//! Every function returns a [`QoscStatus`]; results go through out-pointers.
//! On failure the message is kept per thread and can be read with
//! [`qosc_last_error_message`]. Handles are opaque and must be released with
//! the matching `*_free` function. Panics never cross the boundary: they are
//! reported as [`QoscStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qosc::angular::{spherical_harmonic, QSphericalHarmonic};
use qosc::observables::quadrupole_moment;
use qosc::radial::{radial_wavefunction, RadialState, RootBranch};
use qosc::spectrum::{energy_closed_form, enumerate_levels, Level};
use qosc::{qnum, CasimirKind, Error, QParam, Regime};

/// Result code of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QoscStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidParameter = 3,
    RootOfUnity = 4,
    Domain = 5,
    HarmonicUndefined = 6,
    NoRealRoots = 7,
    Quadrature = 8,
    ImaginaryResidue = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QoscRegime {
    /// q = e^w with w real
    Real = 0,
    /// q = e^{iw} with 0 < |w| < π
    UnitCircle = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QoscCasimir {
    Cq = 0,
    CqPrime = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QoscBranch {
    Plus = 0,
    Minus = 1,
}

/// One entry of a spectrum.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QoscLevel {
    pub n: u32,
    pub l: u32,
    pub casimir: QoscCasimir,
    pub branch: QoscBranch,
    pub alpha: f64,
    pub energy: f64,
}

/// Quadrupole moment of an l = 0 state split into its factors.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QoscQuadrupole {
    pub radial: f64,
    pub angular: f64,
    pub value: f64,
}

/// Deformation parameter.
pub struct QoscParam(QParam);

/// Sorted list of levels.
pub struct QoscSpectrum(Vec<Level>);

/// Deformed spherical harmonic.
pub struct QoscHarmonic(QSphericalHarmonic);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

enum Fail {
    Null(&'static str),
    Arg(String),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn status_of(e: &Error) -> QoscStatus {
    match e {
        Error::InvalidParameter(_) => QoscStatus::InvalidParameter,
        Error::RootOfUnity { .. } => QoscStatus::RootOfUnity,
        Error::Domain(_) => QoscStatus::Domain,
        Error::HarmonicUndefined { .. } => QoscStatus::HarmonicUndefined,
        Error::NoRealRoots { .. } => QoscStatus::NoRealRoots,
        Error::Quadrature { .. } => QoscStatus::Quadrature,
        Error::ImaginaryResidue { .. } => QoscStatus::ImaginaryResidue,
    }
}

/// Runs `f`, records any failure and maps it to a status.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> QoscStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            QoscStatus::Ok
        }
        Ok(Err(Fail::Null(name))) => {
            set_error(format!("null pointer: {name}"));
            QoscStatus::NullPointer
        }
        Ok(Err(Fail::Arg(msg))) => {
            set_error(msg);
            QoscStatus::InvalidArgument
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            QoscStatus::Panic
        }
    }
}

unsafe fn get<'a, T>(p: *const T, name: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(name))
}

unsafe fn put<T>(p: *mut T, value: T, name: &'static str) -> Result<(), Fail> {
    if p.is_null() {
        return Err(Fail::Null(name));
    }
    p.write(value);
    Ok(())
}

fn non_null<T>(p: *mut T, name: &'static str) -> Result<(), Fail> {
    if p.is_null() {
        Err(Fail::Null(name))
    } else {
        Ok(())
    }
}

impl From<QoscCasimir> for CasimirKind {
    fn from(c: QoscCasimir) -> Self {
        match c {
            QoscCasimir::Cq => CasimirKind::Cq,
            QoscCasimir::CqPrime => CasimirKind::CqPrime,
        }
    }
}

impl From<CasimirKind> for QoscCasimir {
    fn from(c: CasimirKind) -> Self {
        match c {
            CasimirKind::Cq => QoscCasimir::Cq,
            CasimirKind::CqPrime => QoscCasimir::CqPrime,
        }
    }
}

impl From<QoscBranch> for RootBranch {
    fn from(b: QoscBranch) -> Self {
        match b {
            QoscBranch::Plus => RootBranch::Plus,
            QoscBranch::Minus => RootBranch::Minus,
        }
    }
}

impl From<RootBranch> for QoscBranch {
    fn from(b: RootBranch) -> Self {
        match b {
            RootBranch::Plus => QoscBranch::Plus,
            RootBranch::Minus => QoscBranch::Minus,
        }
    }
}

impl From<&Level> for QoscLevel {
    fn from(lv: &Level) -> Self {
        QoscLevel {
            n: lv.n,
            l: lv.l,
            casimir: lv.kind.into(),
            branch: lv.branch.into(),
            alpha: lv.alpha,
            energy: lv.energy,
        }
    }
}

/// Message of the last failed call on this thread, or NULL after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn qosc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qosc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates a parameter. Unit-circle angles at a root of unity are rejected.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qosc_param_new(regime: QoscRegime, w: f64, out: *mut *mut QoscParam) -> QoscStatus {
    guard(|| {
        non_null(out, "out")?;
        let regime = match regime {
            QoscRegime::Real => Regime::RealPositive,
            QoscRegime::UnitCircle => Regime::UnitCircle,
        };
        let qp = QParam::new(regime, w)?;
        put(out, Box::into_raw(Box::new(QoscParam(qp))), "out")
    })
}

/// # Safety
/// `p` must come from [`qosc_param_new`] or be NULL.
#[no_mangle]
pub unsafe extern "C" fn qosc_param_free(p: *mut QoscParam) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// q-number `[x]_q`.
///
/// # Safety
/// `p` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qosc_bracket(p: *const QoscParam, x: f64, out: *mut f64) -> QoscStatus {
    guard(|| {
        let qp = &get(p, "param")?.0;
        put(out, qnum::bracket(x, qp), "out")
    })
}

/// Eigenvalue of the chosen Casimir on angular momentum `l`.
///
/// # Safety
/// `p` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qosc_casimir(p: *const QoscParam, l: u32, casimir: QoscCasimir, out: *mut f64) -> QoscStatus {
    guard(|| {
        let qp = &get(p, "param")?.0;
        put(out, qnum::casimir_eigenvalue(l, casimir.into(), qp), "out")
    })
}

/// Closed-form energy of level `(n, l)` on the given branch.
///
/// # Safety
/// `p` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qosc_energy(
    p: *const QoscParam,
    n: u32,
    l: u32,
    casimir: QoscCasimir,
    branch: QoscBranch,
    out: *mut f64,
) -> QoscStatus {
    guard(|| {
        let qp = &get(p, "param")?.0;
        let e = energy_closed_form(n, l, casimir.into(), branch.into(), qp)?;
        put(out, e, "out")
    })
}

/// All admissible levels with `n ≤ n_max`, `l ≤ l_max`, sorted by energy.
///
/// # Safety
/// `p` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qosc_spectrum_new(
    p: *const QoscParam,
    n_max: u32,
    l_max: u32,
    casimir: QoscCasimir,
    out: *mut *mut QoscSpectrum,
) -> QoscStatus {
    guard(|| {
        let qp = &get(p, "param")?.0;
        non_null(out, "out")?;
        let levels = enumerate_levels(n_max, l_max, casimir.into(), qp);
        put(out, Box::into_raw(Box::new(QoscSpectrum(levels))), "out")
    })
}

/// Number of levels, 0 for NULL.
///
/// # Safety
/// `s` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn qosc_spectrum_len(s: *const QoscSpectrum) -> usize {
    s.as_ref().map_or(0, |s| s.0.len())
}

/// # Safety
/// `s` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qosc_spectrum_get(s: *const QoscSpectrum, index: usize, out: *mut QoscLevel) -> QoscStatus {
    guard(|| {
        let levels = &get(s, "spectrum")?.0;
        let lv = levels
            .get(index)
            .ok_or_else(|| Fail::Arg(format!("index {index} out of range for {} levels", levels.len())))?;
        put(out, lv.into(), "out")
    })
}

/// # Safety
/// `s` must come from [`qosc_spectrum_new`] or be NULL.
#[no_mangle]
pub unsafe extern "C" fn qosc_spectrum_free(s: *mut QoscSpectrum) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Normalized radial function `S(r)` of level `(n, l)`.
///
/// # Safety
/// `p` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qosc_radial(
    p: *const QoscParam,
    n: u32,
    l: u32,
    casimir: QoscCasimir,
    branch: QoscBranch,
    r: f64,
    out: *mut f64,
) -> QoscStatus {
    guard(|| {
        let qp = &get(p, "param")?.0;
        if r.is_nan() || r < 0.0 {
            return Err(Fail::Arg(format!("r = {r} must be non-negative")));
        }
        let st = RadialState::new(n, l, casimir.into(), branch.into(), qp)?;
        put(out, radial_wavefunction(&st, r), "out")
    })
}

/// Builds the normalized harmonic `Y_lm`.
///
/// # Safety
/// `p` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qosc_harmonic_new(
    p: *const QoscParam,
    l: u32,
    m: i32,
    out: *mut *mut QoscHarmonic,
) -> QoscStatus {
    guard(|| {
        let qp = &get(p, "param")?.0;
        non_null(out, "out")?;
        if m.unsigned_abs() > l {
            return Err(Fail::Arg(format!("|m| = {} exceeds l = {l}", m.unsigned_abs())));
        }
        let y = spherical_harmonic(l, m, qp)?;
        put(out, Box::into_raw(Box::new(QoscHarmonic(y))), "out")
    })
}

/// Evaluates a harmonic at `(theta, phi)`.
///
/// # Safety
/// `h` must be a live handle; `re` and `im` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qosc_harmonic_eval(
    h: *const QoscHarmonic,
    theta: f64,
    phi: f64,
    re: *mut f64,
    im: *mut f64,
) -> QoscStatus {
    guard(|| {
        let y = &get(h, "harmonic")?.0;
        non_null(re, "re")?;
        non_null(im, "im")?;
        let v = y.evaluate(theta, phi)?;
        put(re, v.re, "re")?;
        put(im, v.im, "im")
    })
}

/// # Safety
/// `h` must come from [`qosc_harmonic_new`] or be NULL.
#[no_mangle]
pub unsafe extern "C" fn qosc_harmonic_free(h: *mut QoscHarmonic) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Quadrupole moment of the l = 0 state `n` on the given branch.
///
/// # Safety
/// `p` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qosc_quadrupole(
    p: *const QoscParam,
    n: u32,
    casimir: QoscCasimir,
    branch: QoscBranch,
    out: *mut QoscQuadrupole,
) -> QoscStatus {
    guard(|| {
        let qp = &get(p, "param")?.0;
        let q = quadrupole_moment(n, casimir.into(), branch.into(), qp)?;
        put(out, QoscQuadrupole { radial: q.radial_part, angular: q.angular_part, value: q.value }, "out")
    })
}
