//! C interface to `hypmod`.
//!
//! Every function returns a [`HypmodStatus`] (or a sentinel value for the
//! few that return data directly) and writes results through out-pointers.
//! The message for the most recent failure on the calling thread is
//! available from [`hypmod_last_error_message`]. Panics never cross the
//! boundary; they surface as `HYPMOD_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hypmod::closed_form::{
    extremal_density, mod_annulus_joining, mod_annulus_separating, mod_quad_arcs, mod_quad_segments, DensityField,
};
use hypmod::domains::{quad_area_euclidean, Annulus, Domain, FamilyKind, NormalQuad};
use hypmod::error::Error;
use hypmod::hyp_core::{dist, HPoint};
use hypmod::numeric::report::{verify_report, ModulusReport, VerifyOptions};
use hypmod::polar::{from_cartesian, to_cartesian, PolarPoint};
use hypmod::specfun::{catalan, ti2};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HypmodStatus {
    Ok = 0,
    InvalidPoint = 1,
    InvalidIsometry = 2,
    DuplicatePoints = 3,
    NegativeArgument = 4,
    BadParameters = 5,
    DegenerateDomain = 6,
    DegenerateQuad = 7,
    DegenerateAnnulus = 8,
    EmptyFamily = 9,
    QuadratureFailure = 10,
    NotNested = 11,
    IoFailure = 12,
    NullPointer = 13,
    Panic = 14,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HypmodFamily {
    QuadArcs = 0,
    QuadSegments = 1,
    AnnulusJoining = 2,
    AnnulusSeparating = 3,
}

impl From<HypmodFamily> for FamilyKind {
    fn from(f: HypmodFamily) -> Self {
        match f {
            HypmodFamily::QuadArcs => FamilyKind::QuadArcs,
            HypmodFamily::QuadSegments => FamilyKind::QuadSegments,
            HypmodFamily::AnnulusJoining => FamilyKind::AnnulusJoining,
            HypmodFamily::AnnulusSeparating => FamilyKind::AnnulusSeparating,
        }
    }
}

/// Opaque extremal density.
pub struct HypmodDensity(DensityField);

/// Opaque verification report.
pub struct HypmodReport(ModulusReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> HypmodStatus {
    match e {
        Error::InvalidPoint { .. } => HypmodStatus::InvalidPoint,
        Error::InvalidIsometry(_) => HypmodStatus::InvalidIsometry,
        Error::DuplicatePoints => HypmodStatus::DuplicatePoints,
        Error::NegativeArgument(_) => HypmodStatus::NegativeArgument,
        Error::BadParameters(_) => HypmodStatus::BadParameters,
        Error::DegenerateDomain(_) => HypmodStatus::DegenerateDomain,
        Error::DegenerateQuad(_) => HypmodStatus::DegenerateQuad,
        Error::DegenerateAnnulus { .. } => HypmodStatus::DegenerateAnnulus,
        Error::EmptyFamily { .. } => HypmodStatus::EmptyFamily,
        Error::QuadratureFailure { .. } => HypmodStatus::QuadratureFailure,
        Error::NotNested => HypmodStatus::NotNested,
        Error::IoFailure(_) => HypmodStatus::IoFailure,
    }
}

enum Failure {
    Lib(Error),
    Null(&'static str),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Runs `f`, converting errors and panics into a status code.
fn guard<F>(f: F) -> HypmodStatus
where
    F: FnOnce() -> Result<(), Failure>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HypmodStatus::Ok,
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Null(what))) => {
            set_last_error(format!("NullPointer: {what} must not be null"));
            HypmodStatus::NullPointer
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            set_last_error(format!("Panic: {msg}"));
            HypmodStatus::Panic
        }
    }
}

/// Writes `v` through `out`.
///
/// # Safety
/// `out` must be null or valid for writes.
unsafe fn write<T>(out: *mut T, v: T, what: &'static str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null(what));
    }
    out.write(v);
    Ok(())
}

/// # Safety
/// `p` must be null or point to a live value of type `T`.
unsafe fn borrow<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

fn domain_for(family: HypmodFamily, p1: f64, p2: f64) -> hypmod::Result<Domain> {
    Ok(match family {
        HypmodFamily::QuadArcs | HypmodFamily::QuadSegments => Domain::Quad(NormalQuad::new(p1, p2)?),
        HypmodFamily::AnnulusJoining | HypmodFamily::AnnulusSeparating => {
            Domain::Annulus(Annulus::centered(p1, p2)?)
        }
    })
}

/// Message for the most recent failure on this thread, or null if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hypmod_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Hyperbolic distance between `(l1, t1)` and `(l2, t2)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hypmod_dist(l1: f64, t1: f64, l2: f64, t2: f64, out: *mut f64) -> HypmodStatus {
    guard(|| {
        let d = dist(&HPoint::new(l1, t1)?, &HPoint::new(l2, t2)?);
        write(out, d, "out")
    })
}

/// Polar coordinates about `(1, 0)` to half-plane coordinates.
///
/// # Safety
/// `out_lambda` and `out_t` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hypmod_polar_to_cartesian(
    r: f64,
    theta: f64,
    out_lambda: *mut f64,
    out_t: *mut f64,
) -> HypmodStatus {
    guard(|| {
        let p = to_cartesian(&PolarPoint::new(r, theta)?);
        write(out_lambda, p.lambda(), "out_lambda")?;
        write(out_t, p.t(), "out_t")
    })
}

/// Half-plane coordinates to polar coordinates about `(1, 0)`.
///
/// # Safety
/// `out_r` and `out_theta` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hypmod_polar_from_cartesian(
    lambda: f64,
    t: f64,
    out_r: *mut f64,
    out_theta: *mut f64,
) -> HypmodStatus {
    guard(|| {
        let p = from_cartesian(&HPoint::new(lambda, t)?);
        write(out_r, p.r(), "out_r")?;
        write(out_theta, p.theta(), "out_theta")
    })
}

/// Inverse tangent integral `Ti2(x)` for `x >= 0`. `out_err` may be null.
///
/// # Safety
/// `out_value` must be valid for writes; `out_err` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn hypmod_ti2(x: f64, out_value: *mut f64, out_err: *mut f64) -> HypmodStatus {
    guard(|| {
        let r = ti2(x)?;
        write(out_value, r.value, "out_value")?;
        if !out_err.is_null() {
            out_err.write(r.est_abs_error);
        }
        Ok(())
    })
}

#[no_mangle]
pub extern "C" fn hypmod_catalan() -> f64 {
    catalan()
}

/// Closed-form modulus of `family` on the domain given by `(p1, p2)`:
/// `(a, b)` for quadrilaterals, `(r1, r2)` for annuli.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hypmod_modulus(family: HypmodFamily, p1: f64, p2: f64, out: *mut f64) -> HypmodStatus {
    guard(|| {
        let v = match family {
            HypmodFamily::QuadArcs | HypmodFamily::QuadSegments => {
                let a = NormalQuad::new(p1, p2)?.normalized().a();
                if family == HypmodFamily::QuadArcs {
                    mod_quad_arcs(a)?
                } else {
                    mod_quad_segments(a)?
                }
            }
            HypmodFamily::AnnulusJoining => mod_annulus_joining(p1, p2)?,
            HypmodFamily::AnnulusSeparating => mod_annulus_separating(p1, p2)?,
        };
        write(out, v.value, "out")
    })
}

/// Euclidean area of the quadrilateral with parameters `(a, b)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hypmod_quad_area(a: f64, b: f64, out: *mut f64) -> HypmodStatus {
    guard(|| write(out, quad_area_euclidean(a, b)?, "out"))
}

/// Creates the extremal density of `family`. Quadrilateral densities need `b = 1`.
/// Release with [`hypmod_density_free`].
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hypmod_density_new(
    family: HypmodFamily,
    p1: f64,
    p2: f64,
    out: *mut *mut HypmodDensity,
) -> HypmodStatus {
    guard(|| {
        let rho = extremal_density(family.into(), &domain_for(family, p1, p2)?)?;
        write(out, Box::into_raw(Box::new(HypmodDensity(rho))), "out")
    })
}

/// Density value at `(lambda, t)`; zero outside the domain.
///
/// # Safety
/// `density` must come from [`hypmod_density_new`]; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hypmod_density_eval(
    density: *const HypmodDensity,
    lambda: f64,
    t: f64,
    out: *mut f64,
) -> HypmodStatus {
    guard(|| {
        let rho = borrow(density, "density")?;
        write(out, rho.0.evaluate(&HPoint::new(lambda, t)?), "out")
    })
}

/// # Safety
/// `density` must be null or come from [`hypmod_density_new`], and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hypmod_density_free(density: *mut HypmodDensity) {
    if !density.is_null() {
        let _ = catch_unwind(AssertUnwindSafe(|| drop(Box::from_raw(density))));
    }
}

/// Runs the full verification for `family` with default settings and the
/// given seed. Release with [`hypmod_report_free`].
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hypmod_report_new(
    family: HypmodFamily,
    p1: f64,
    p2: f64,
    seed: u64,
    out: *mut *mut HypmodReport,
) -> HypmodStatus {
    guard(|| {
        let opts = VerifyOptions {
            seed,
            ..VerifyOptions::default()
        };
        let report = verify_report(family.into(), &domain_for(family, p1, p2)?, &opts)?;
        write(out, Box::into_raw(Box::new(HypmodReport(report))), "out")
    })
}

/// # Safety
/// `report` must come from [`hypmod_report_new`]; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hypmod_report_closed_form(report: *const HypmodReport, out: *mut f64) -> HypmodStatus {
    guard(|| write(out, borrow(report, "report")?.0.closed_form, "out"))
}

/// # Safety
/// `report` must come from [`hypmod_report_new`]; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hypmod_report_density_energy(report: *const HypmodReport, out: *mut f64) -> HypmodStatus {
    guard(|| write(out, borrow(report, "report")?.0.density_energy, "out"))
}

/// # Safety
/// `report` must come from [`hypmod_report_new`]; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hypmod_report_min_integral(report: *const HypmodReport, out: *mut f64) -> HypmodStatus {
    guard(|| write(out, borrow(report, "report")?.0.admissibility.min_integral, "out"))
}

/// # Safety
/// `report` must come from [`hypmod_report_new`]; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hypmod_report_lower_bound(report: *const HypmodReport, out: *mut f64) -> HypmodStatus {
    guard(|| write(out, borrow(report, "report")?.0.discrete_lower_bound, "out"))
}

/// # Safety
/// `report` must come from [`hypmod_report_new`]; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hypmod_report_warning_count(report: *const HypmodReport, out: *mut usize) -> HypmodStatus {
    guard(|| write(out, borrow(report, "report")?.0.warnings.len(), "out"))
}

/// JSON text of the report. Release with [`hypmod_string_free`].
///
/// # Safety
/// `report` must come from [`hypmod_report_new`]; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hypmod_report_to_json(report: *const HypmodReport, out: *mut *mut c_char) -> HypmodStatus {
    guard(|| {
        let text = serde_json::to_string(&borrow(report, "report")?.0.to_json()).expect("serializable");
        let c = CString::new(text).expect("JSON has no nul bytes");
        write(out, c.into_raw(), "out")
    })
}

/// # Safety
/// `report` must be null or come from [`hypmod_report_new`], and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hypmod_report_free(report: *mut HypmodReport) {
    if !report.is_null() {
        let _ = catch_unwind(AssertUnwindSafe(|| drop(Box::from_raw(report))));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hypmod_string_free(s: *mut c_char) {
    if !s.is_null() {
        let _ = catch_unwind(AssertUnwindSafe(|| drop(CString::from_raw(s))));
    }
}
