//! C interface to `h2zeeman`.
//!
//! Every fallible call returns an [`H2zStatus`] and writes its result through
//! an out-pointer. Models are opaque handles created by `h2z_model_new_default`
//! or `h2z_model_load` and released with `h2z_model_free`. After a failure,
//! `h2z_last_error_message` gives the detailed message for the calling thread.
//!
//! Angular momenta are passed doubled (`twice_j = 2j`) so half-integers stay exact.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use h2zeeman::angular::{self, AngularMomentum, Projection};
use h2zeeman::gfactor::{GFactorModel, OrbitalData};
use h2zeeman::hfs::{HyperfineLevel, MixingTable, RovibLevel};
use h2zeeman::zeeman::{pi_splitting, sigma_line_center_shift, MagneticField, Polarization, TwoPhotonTransition};
use h2zeeman::{Error, PhysicalConstants};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum H2zStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    QuantumNumber = 3,
    Domain = 4,
    Validation = 5,
    DataMissing = 6,
    MissingMixing = 7,
    Inversion = 8,
    Forbidden = 9,
    Parse = 10,
    Io = 11,
    Panic = 12,
}

/// Opaque model: constants, orbital data and mixing coefficients.
pub struct H2zModel {
    inner: GFactorModel,
}

/// g-factor breakdown of one level.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct H2zGFactor {
    pub g1: f64,
    pub g2: f64,
    pub g3: f64,
    pub total: f64,
    pub mixed: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> H2zStatus {
    match e {
        Error::QuantumNumber(_) => H2zStatus::QuantumNumber,
        Error::Domain(_) => H2zStatus::Domain,
        Error::Validation { .. } => H2zStatus::Validation,
        Error::DataMissing { .. } => H2zStatus::DataMissing,
        Error::MissingMixing(_) => H2zStatus::MissingMixing,
        Error::Inversion(_) => H2zStatus::Inversion,
        Error::Forbidden(_) => H2zStatus::Forbidden,
        Error::Parse { .. } => H2zStatus::Parse,
        Error::Io(_) => H2zStatus::Io,
    }
}

enum Failure {
    Status(H2zStatus, String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guarded<T>(out: *mut T, f: impl FnOnce() -> Result<T, Failure>) -> H2zStatus {
    if out.is_null() {
        set_last_error("output pointer is null");
        return H2zStatus::NullPointer;
    }
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(value)) => {
            // SAFETY: `out` is non-null and the caller guarantees it is writable.
            unsafe { out.write(value) };
            set_last_error("");
            H2zStatus::Ok
        }
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(&e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Status(s, msg))) => {
            set_last_error(&msg);
            s
        }
        Err(_) => {
            set_last_error("internal panic");
            H2zStatus::Panic
        }
    }
}

fn model_ref<'a>(model: *const H2zModel) -> Result<&'a GFactorModel, Failure> {
    if model.is_null() {
        return Err(Failure::Status(H2zStatus::NullPointer, "model handle is null".into()));
    }
    // SAFETY: non-null handles come from `h2z_model_new_default`/`h2z_model_load`.
    Ok(unsafe { &(*model).inner })
}

fn optional_path(p: *const c_char) -> Result<Option<String>, Failure> {
    if p.is_null() {
        return Ok(None);
    }
    // SAFETY: the caller passes a NUL-terminated string.
    let s = unsafe { CStr::from_ptr(p) };
    s.to_str()
        .map(|s| Some(s.to_owned()))
        .map_err(|_| Failure::Status(H2zStatus::InvalidArgument, "path is not valid UTF-8".into()))
}

fn level(v: u32, l: u32, twice_f: u32, twice_j: u32) -> Result<HyperfineLevel, Failure> {
    Ok(HyperfineLevel::new(
        RovibLevel::new(v, l),
        AngularMomentum::from_twice(twice_f),
        AngularMomentum::from_twice(twice_j),
    )?)
}

/// A model with the bundled constants and data. Never returns null.
#[no_mangle]
pub extern "C" fn h2z_model_new_default() -> *mut H2zModel {
    Box::into_raw(Box::new(H2zModel {
        inner: GFactorModel::bundled(),
    }))
}

/// Builds a model from files; any path may be null to use the bundled data.
///
/// # Safety
/// Non-null paths must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn h2z_model_load(
    constants_path: *const c_char,
    orbital_path: *const c_char,
    mixing_path: *const c_char,
    allow_extended: bool,
    out: *mut *mut H2zModel,
) -> H2zStatus {
    guarded(out, || {
        let constants = match optional_path(constants_path)? {
            Some(p) => PhysicalConstants::from_path(p)?,
            None => PhysicalConstants::default(),
        };
        let orbital = match optional_path(orbital_path)? {
            Some(p) => OrbitalData::from_path(p, allow_extended)?,
            None => OrbitalData::bundled(),
        };
        let mixing = match optional_path(mixing_path)? {
            Some(p) => MixingTable::from_path(p)?,
            None => MixingTable::bundled(),
        };
        let inner = GFactorModel {
            constants,
            orbital,
            mixing,
        };
        Ok(Box::into_raw(Box::new(H2zModel { inner })))
    })
}

/// Releases a model; null is ignored.
///
/// # Safety
/// `model` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn h2z_model_free(model: *mut H2zModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Static description of a status code (an `H2zStatus` value).
/// Unknown codes give "unknown status".
#[no_mangle]
pub extern "C" fn h2z_status_message(code: i32) -> *const c_char {
    let s: &'static CStr = match code {
        0 => c"ok",
        1 => c"null pointer argument",
        2 => c"invalid argument",
        3 => c"invalid quantum number",
        4 => c"quantum numbers outside the model's domain",
        5 => c"input data failed validation",
        6 => c"orbital data missing for the requested level",
        7 => c"mixing coefficients missing for the requested level",
        8 => c"mixing inversion has no solution",
        9 => c"transition forbidden for this polarization",
        10 => c"could not parse input",
        11 => c"i/o error",
        12 => c"internal error",
        _ => c"unknown status",
    };
    s.as_ptr()
}

/// Detailed message of the last failed call on this thread ("" after success).
/// Valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn h2z_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// `{j1 j2 j3; j4 j5 j6}` from doubled arguments; 0 for inadmissible triads.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn h2z_wigner_6j(
    tj1: u32,
    tj2: u32,
    tj3: u32,
    tj4: u32,
    tj5: u32,
    tj6: u32,
    out: *mut f64,
) -> H2zStatus {
    guarded(out, || Ok(angular::wigner_6j_twice([tj1, tj2, tj3, tj4, tj5, tj6])))
}

/// `(j1 j2 j3; m1 m2 m3)` from doubled arguments.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn h2z_wigner_3j(
    tj1: u32,
    tj2: u32,
    tj3: u32,
    tm1: i32,
    tm2: i32,
    tm3: i32,
    out: *mut f64,
) -> H2zStatus {
    guarded(out, || {
        let j = AngularMomentum::from_twice;
        let m = Projection::from_twice;
        Ok(angular::wigner_3j(j(tj1), j(tj2), j(tj3), m(tm1), m(tm2), m(tm3)))
    })
}

/// `⟨j1 m1 j2 m2 | J M⟩` from doubled arguments.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn h2z_clebsch_gordan(
    tj1: u32,
    tm1: i32,
    tj2: u32,
    tm2: i32,
    tj: u32,
    tm: i32,
    out: *mut f64,
) -> H2zStatus {
    guarded(out, || {
        let j = AngularMomentum::from_twice;
        let m = Projection::from_twice;
        Ok(angular::clebsch_gordan(j(tj1), m(tm1), j(tj2), m(tm2), j(tj), m(tm)))
    })
}

/// g-factor of level `(v, L, F, J)`; `F` is `F~` for mixed levels and 1/2 for even `L`.
///
/// # Safety
/// `model` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn h2z_g_factor(
    model: *const H2zModel,
    v: u32,
    l: u32,
    twice_f: u32,
    twice_j: u32,
    out: *mut H2zGFactor,
) -> H2zStatus {
    guarded(out, || {
        let m = model_ref(model)?;
        let b = m.g_total(&level(v, l, twice_f, twice_j)?)?;
        Ok(H2zGFactor {
            g1: b.g1,
            g2: b.g2,
            g3: b.g3,
            total: b.total,
            mixed: b.mixed,
        })
    })
}

/// Rotational g-factor of `(v, L)`.
///
/// # Safety
/// `model` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn h2z_g_rot(model: *const H2zModel, v: u32, l: u32, out: *mut f64) -> H2zStatus {
    guarded(out, || Ok(model_ref(model)?.g_rot(RovibLevel::new(v, l))?))
}

fn homologous(v_lower: u32, v_upper: u32, l: u32, twice_f: u32, twice_j: u32) -> Result<TwoPhotonTransition, Failure> {
    Ok(TwoPhotonTransition::homologous(
        level(v_lower, l, twice_f, twice_j)?,
        v_upper,
    )?)
}

fn field(tesla: f64) -> Result<MagneticField, Failure> {
    Ok(MagneticField::tesla(tesla)?)
}

/// σ⁺ line-center shift (Hz) of the homologous line `v_lower → v_upper`.
/// Returns `Forbidden` for `J = 1/2`.
///
/// # Safety
/// `model` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn h2z_sigma_shift(
    model: *const H2zModel,
    v_lower: u32,
    v_upper: u32,
    l: u32,
    twice_f: u32,
    twice_j: u32,
    field_tesla: f64,
    out: *mut f64,
) -> H2zStatus {
    guarded(out, || {
        let m = model_ref(model)?;
        let line = homologous(v_lower, v_upper, l, twice_f, twice_j)?;
        Ok(sigma_line_center_shift(
            &line,
            Polarization::SigmaPlus,
            field(field_tesla)?,
            m,
        )?)
    })
}

/// Signed π splitting (Hz) of the homologous line `v_lower → v_upper`.
///
/// # Safety
/// `model` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn h2z_pi_splitting(
    model: *const H2zModel,
    v_lower: u32,
    v_upper: u32,
    l: u32,
    twice_f: u32,
    twice_j: u32,
    field_tesla: f64,
    out: *mut f64,
) -> H2zStatus {
    guarded(out, || {
        let m = model_ref(model)?;
        let line = homologous(v_lower, v_upper, l, twice_f, twice_j)?;
        Ok(pi_splitting(&line, field(field_tesla)?, m)?)
    })
}
