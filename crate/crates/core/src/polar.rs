//! Hyperbolic polar coordinates based at `(1, 0)`.
//!
//! The map sends `(r, θ)` to the image of `e^r` under the rotation by `θ`
//! about the base point:
//!
//! ```text
//! λ = 1 / (cosh r - cos θ sinh r),   t = sin θ sinh r / (cosh r - cos θ sinh r)
//! ```
//!
//! In these coordinates the metric is `dr² + sinh² r dθ²` and the area
//! element is `sinh r dr dθ`. Coordinates about any other center are obtained
//! by conjugating with the affine isometry that moves `(1, 0)` there.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::hyp_core::{HPoint, MobiusIsometry};

/// Polar coordinates `(r, θ)` with `r >= 0` and `θ ∈ [0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarPoint {
    r: f64,
    theta: f64,
}

/// Wraps an angle into `[0, 2π)`.
pub fn wrap_angle(theta: f64) -> f64 {
    let w = theta.rem_euclid(TAU);
    if w >= TAU {
        0.0
    } else {
        w
    }
}

impl PolarPoint {
    /// Any finite angle is accepted and wrapped; `r = 0` forces `θ = 0`.
    pub fn new(r: f64, theta: f64) -> Result<Self> {
        if !(r >= 0.0 && r.is_finite() && theta.is_finite()) {
            return Err(Error::BadParameters(format!(
                "polar point needs r >= 0 and finite angle (got r={r}, theta={theta})"
            )));
        }
        let theta = if r == 0.0 { 0.0 } else { wrap_angle(theta) };
        Ok(PolarPoint { r, theta })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

/// `cosh r - cos θ sinh r`, written without the cancellation for large `r`.
fn denominator(r: f64, theta: f64) -> f64 {
    let half = (theta / 2.0).sin();
    (-r).exp() + 2.0 * half * half * r.sinh()
}

pub fn to_cartesian(p: &PolarPoint) -> HPoint {
    let den = denominator(p.r, p.theta);
    HPoint::from_parts(1.0 / den, p.theta.sin() * p.r.sinh() / den)
}

pub fn from_cartesian(p: &HPoint) -> PolarPoint {
    let (l, t) = (p.lambda(), p.t());
    // λ² + t² - 1, factored to keep precision near the unit circle.
    let x = (l - 1.0) * (l + 1.0) + t * t;
    if x.abs() < 1e-14 && t.abs() < 1e-14 {
        return PolarPoint { r: 0.0, theta: 0.0 };
    }
    // cosh r - 1 = |z - 1|² / (2λ), i.e. sinh(r/2) = |z - 1| / (2 sqrt λ).
    let r = 2.0 * ((l - 1.0).hypot(t) / (2.0 * l.sqrt())).asinh();
    let theta = wrap_angle((2.0 * t).atan2(x));
    PolarPoint { r, theta }
}

/// Determinant of the derivative of [`to_cartesian`]: `λ² sinh r`.
pub fn jacobian(p: &PolarPoint) -> f64 {
    let l = to_cartesian(p).lambda();
    l * l * p.r.sinh()
}

/// Partial derivatives of [`to_cartesian`] as `(∂/∂r, ∂/∂θ)`, each a
/// `(dλ, dt)` pair.
pub fn tangent_frame(p: &PolarPoint) -> ([f64; 2], [f64; 2]) {
    let (r, theta) = (p.r, p.theta);
    let (st, ct) = theta.sin_cos();
    let (sh, ch) = (r.sinh(), r.cosh());
    let den = denominator(r, theta);
    let den2 = den * den;
    let d_den_dr = sh - ct * ch;
    let d_r = [-d_den_dr / den2, st / den2];
    let d_theta = [-st * sh / den2, sh * (ct * ch - sh) / den2];
    (d_r, d_theta)
}

/// The isometry `z ↦ λ₀ z + i t₀` carrying `(1, 0)` to `center`.
pub fn centering_map(center: &HPoint) -> MobiusIsometry {
    MobiusIsometry::affine(center)
}

/// Polar coordinates of `p` about `center`.
pub fn polar_about(center: &HPoint, p: &HPoint) -> PolarPoint {
    from_cartesian(&centering_map(center).inverse().apply(p))
}

/// Inverse of [`polar_about`].
pub fn cartesian_about(center: &HPoint, p: &PolarPoint) -> HPoint {
    let q = to_cartesian(p);
    // The affine map acts as (λ, t) ↦ (λ₀ λ, t₀ + λ₀ t); written out to
    // avoid the complex division.
    HPoint::from_parts(center.lambda() * q.lambda(), center.t() + center.lambda() * q.t())
}
