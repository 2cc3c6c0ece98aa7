//! Half-plane model of the hyperbolic plane.
//!
//! Points are written `z = λ + it` with `λ > 0`; the metric is
//! `(dλ² + dt²) / λ²`. Orientation-preserving isometries are the maps
//! `z ↦ (az + ib) / (icz + d)` with real coefficients and `ad + bc = 1`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A point of the right half-plane `λ > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HPoint {
    lambda: f64,
    t: f64,
}

impl HPoint {
    pub fn new(lambda: f64, t: f64) -> Result<Self> {
        if lambda > 0.0 && lambda.is_finite() && t.is_finite() {
            Ok(HPoint { lambda, t })
        } else {
            Err(Error::InvalidPoint { lambda, t })
        }
    }

    /// Caller guarantees `lambda > 0`; used where the value comes out of a
    /// map that preserves the half-plane.
    pub(crate) fn from_parts(lambda: f64, t: f64) -> Self {
        debug_assert!(lambda > 0.0, "lambda={lambda}");
        HPoint { lambda, t }
    }

    /// The base point `(1, 0)`.
    pub fn base() -> Self {
        HPoint { lambda: 1.0, t: 0.0 }
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.lambda, self.t)
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        HPoint::new(z.re, z.im)
    }
}

/// Hyperbolic distance.
///
/// Evaluated as `2 asinh(|p - q| / (2 sqrt(λ_p λ_q)))`, which is the same
/// quantity as `arccosh(1 + |p - q|² / (2 λ_p λ_q))` without the loss of
/// precision near zero.
pub fn dist(p: &HPoint, q: &HPoint) -> f64 {
    let euclid = (p.lambda - q.lambda).hypot(p.t - q.t);
    if euclid == 0.0 {
        return 0.0;
    }
    2.0 * (euclid / (2.0 * (p.lambda * q.lambda).sqrt())).asinh()
}

/// An orientation-preserving isometry `z ↦ (az + ib) / (icz + d)`,
/// normalized so that `ad + bc = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusIsometry {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl MobiusIsometry {
    /// Accepts any real quadruple with `ad + bc > 0` and rescales it.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d + b * c;
        if !(det > 0.0 && det.is_finite()) || ![a, b, c, d].iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidIsometry(det));
        }
        let s = det.sqrt();
        Ok(MobiusIsometry {
            a: a / s,
            b: b / s,
            c: c / s,
            d: d / s,
        })
    }

    pub fn identity() -> Self {
        MobiusIsometry {
            a: 1.0,
            b: 0.0,
            c: 0.0,
            d: 1.0,
        }
    }

    /// Rotation by angle `theta` about the base point `(1, 0)`.
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = (theta / 2.0).sin_cos();
        MobiusIsometry {
            a: c,
            b: -s,
            c: -s,
            d: c,
        }
    }

    /// `z ↦ λ₀ z + i t₀`, which sends `(1, 0)` to `(λ₀, t₀)`.
    pub fn affine(center: &HPoint) -> Self {
        let s = center.lambda.sqrt();
        MobiusIsometry {
            a: s,
            b: center.t / s,
            c: 0.0,
            d: 1.0 / s,
        }
    }

    /// `z ↦ 1/z`.
    pub fn inversion() -> Self {
        MobiusIsometry {
            a: 0.0,
            b: 1.0,
            c: 1.0,
            d: 0.0,
        }
    }

    pub fn coefficients(&self) -> (f64, f64, f64, f64) {
        (self.a, self.b, self.c, self.d)
    }

    pub fn inverse(&self) -> Self {
        MobiusIsometry {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MobiusIsometry) -> Self {
        // Product of the matrices [[a, ib], [ic, d]].
        let a = self.a * other.a - self.b * other.c;
        let b = self.a * other.b + self.b * other.d;
        let c = self.c * other.a + self.d * other.c;
        let d = self.d * other.d - self.c * other.b;
        MobiusIsometry::new(a, b, c, d).expect("product of isometries has positive determinant")
    }

    pub fn apply(&self, p: &HPoint) -> HPoint {
        let w = self.apply_complex(p.to_complex());
        HPoint::from_parts(w.re, w.im)
    }

    /// The same fractional-linear map on an arbitrary finite complex number.
    pub fn apply_complex(&self, z: Complex64) -> Complex64 {
        let i = Complex64::i();
        (z * self.a + i * self.b) / (i * self.c * z + self.d)
    }

    pub fn apply_ext(&self, p: &ExtPoint) -> ExtPoint {
        let i = Complex64::i();
        match p {
            ExtPoint::Infinity => {
                if self.c == 0.0 {
                    ExtPoint::Infinity
                } else {
                    ExtPoint::Finite(Complex64::new(self.a, 0.0) / (i * self.c))
                }
            }
            ExtPoint::Finite(z) => {
                let den = i * self.c * z + self.d;
                if den.norm() == 0.0 {
                    ExtPoint::Infinity
                } else {
                    ExtPoint::Finite((z * self.a + i * self.b) / den)
                }
            }
        }
    }

    /// Equality as maps: the coefficient quadruple is defined up to sign.
    pub fn approx_eq(&self, other: &MobiusIsometry, tol: f64) -> bool {
        let same = |s: f64| {
            (self.a - s * other.a).abs() <= tol
                && (self.b - s * other.b).abs() <= tol
                && (self.c - s * other.c).abs() <= tol
                && (self.d - s * other.d).abs() <= tol
        };
        same(1.0) || same(-1.0)
    }
}

/// A point of the closed half-plane `λ >= 0` or the point at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtPoint {
    Finite(Complex64),
    Infinity,
}

impl ExtPoint {
    pub fn new(lambda: f64, t: f64) -> Result<Self> {
        if lambda >= 0.0 && lambda.is_finite() && t.is_finite() {
            Ok(ExtPoint::Finite(Complex64::new(lambda, t)))
        } else {
            Err(Error::InvalidPoint { lambda, t })
        }
    }
}

impl From<HPoint> for ExtPoint {
    fn from(p: HPoint) -> Self {
        ExtPoint::Finite(p.to_complex())
    }
}

fn coincide(p: &ExtPoint, q: &ExtPoint) -> bool {
    match (p, q) {
        (ExtPoint::Infinity, ExtPoint::Infinity) => true,
        (ExtPoint::Finite(z), ExtPoint::Finite(w)) => {
            (z - w).norm() <= f64::EPSILON * z.norm().max(w.norm()).max(1.0)
        }
        _ => false,
    }
}

/// `[z1, z2, z3, z4] = (z4 - z2)(z3 - z1) / ((z4 - z1)(z3 - z2))`.
///
/// A point at infinity drops the two factors it appears in.
pub fn cross_ratio(z1: ExtPoint, z2: ExtPoint, z3: ExtPoint, z4: ExtPoint) -> Result<Complex64> {
    let pts = [z1, z2, z3, z4];
    for i in 0..4 {
        for j in i + 1..4 {
            if coincide(&pts[i], &pts[j]) {
                return Err(Error::DuplicatePoints);
            }
        }
    }
    let one = Complex64::new(1.0, 0.0);
    let diff = |p: &ExtPoint, q: &ExtPoint| match (p, q) {
        (ExtPoint::Finite(z), ExtPoint::Finite(w)) => Some(z - w),
        _ => None,
    };
    // Factors containing infinity cancel pairwise between numerator and denominator.
    let num = diff(&z4, &z2).unwrap_or(one) * diff(&z3, &z1).unwrap_or(one);
    let den = diff(&z4, &z1).unwrap_or(one) * diff(&z3, &z2).unwrap_or(one);
    Ok(num / den)
}

/// Hyperbolic circle with center `z₀` and radius `R > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperbolicCircle {
    pub center: HPoint,
    radius: f64,
}

impl HyperbolicCircle {
    pub fn new(center: HPoint, radius: f64) -> Result<Self> {
        if radius > 0.0 && radius.is_finite() {
            Ok(HyperbolicCircle { center, radius })
        } else {
            Err(Error::BadParameters(format!("circle radius must be positive, got {radius}")))
        }
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn to_euclidean(&self) -> EuclideanCircle {
        hyp_circle_to_euclidean(self)
    }
}

/// Euclidean circle in the `(λ, t)` plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EuclideanCircle {
    pub center: (f64, f64),
    radius: f64,
}

impl EuclideanCircle {
    pub fn new(center: (f64, f64), radius: f64) -> Result<Self> {
        if radius > 0.0 && radius.is_finite() && center.0.is_finite() && center.1.is_finite() {
            Ok(EuclideanCircle { center, radius })
        } else {
            Err(Error::BadParameters(format!("circle radius must be positive, got {radius}")))
        }
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }
}

/// The hyperbolic circle `C_h(z₀, R)` is the Euclidean circle with center
/// `(λ₀ cosh R, t₀)` and radius `λ₀ sinh R`.
pub fn hyp_circle_to_euclidean(c: &HyperbolicCircle) -> EuclideanCircle {
    let l0 = c.center.lambda();
    EuclideanCircle {
        center: (l0 * c.radius.cosh(), c.center.t()),
        radius: l0 * c.radius.sinh(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn pt(l: f64, t: f64) -> HPoint {
        HPoint::new(l, t).unwrap()
    }

    #[test]
    fn rejects_non_positive_lambda() {
        assert!(matches!(HPoint::new(0.0, 1.0), Err(Error::InvalidPoint { .. })));
        assert!(HPoint::new(-1.0, 0.0).is_err());
        assert!(HPoint::new(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn distance_examples() {
        assert_eq!(dist(&pt(1.0, 0.0), &pt(1.0, 0.0)), 0.0);
        let e2 = 2f64.exp();
        assert!((dist(&pt(1.0, 0.0), &pt(e2, 0.0)) - 2.0).abs() < 1e-14);
        assert!((dist(&pt(1.0, 1.0), &pt(1.0, -1.0)) - 3f64.acosh()).abs() < 1e-14);
    }

    #[test]
    fn distance_matches_arc_length_of_geodesic() {
        // (1, 1) and (1, -1) lie on the geodesic λ² + t² = 2. Integrate
        // ds_h = sqrt(2) dφ / (sqrt(2) cos φ) over φ in [-π/4, π/4].
        let n = 200_000;
        let h = (PI / 2.0) / n as f64;
        let len: f64 = (0..n)
            .map(|k| {
                let phi = -PI / 4.0 + (k as f64 + 0.5) * h;
                h / phi.cos()
            })
            .sum();
        assert!((len - dist(&pt(1.0, 1.0), &pt(1.0, -1.0))).abs() < 1e-9);
        assert!((len - 1.762747174039086).abs() < 1e-9);
    }

    #[test]
    fn identity_and_inversion() {
        let p = pt(3.7, -2.0);
        assert_eq!(MobiusIsometry::identity().apply(&p), p);
        let e = std::f64::consts::E;
        let q = MobiusIsometry::rotation(PI).apply(&pt(e, 0.0));
        assert!((q.lambda() - 1.0 / e).abs() < 1e-15);
        assert!(q.t().abs() < 1e-15);
        // Direct complex arithmetic.
        let w = Complex64::new(1.0, 0.0) / Complex64::new(e, 0.0);
        assert!((q.to_complex() - w).norm() < 1e-15);
    }

    #[test]
    fn compose_examples() {
        let m = MobiusIsometry::new(2.0, 1.0, 0.5, 3.0).unwrap();
        let id = MobiusIsometry::identity();
        assert!(id.compose(&m).approx_eq(&m, 1e-15));
        assert!(m.compose(&m.inverse()).approx_eq(&id, 1e-14));
        let inv = MobiusIsometry::inversion();
        assert!(inv.compose(&inv).approx_eq(&id, 0.0));
    }

    #[test]
    fn normalization_rescales() {
        let m = MobiusIsometry::new(2.0, 0.0, 0.0, 2.0).unwrap();
        let (a, b, c, d) = m.coefficients();
        assert!((a * d + b * c - 1.0).abs() < 1e-15);
        assert!(MobiusIsometry::new(1.0, 1.0, -1.0, 1.0).is_err());
        assert!(MobiusIsometry::new(0.0, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn cross_ratio_examples() {
        let c = |l, t| ExtPoint::new(l, t).unwrap();
        let x = cross_ratio(c(1.0, -1.0), c(2.0, -1.0), c(2.0, 1.0), c(1.0, 1.0)).unwrap();
        assert!((x - Complex64::new(1.25, 0.0)).norm() < 1e-15);
        let y = cross_ratio(c(1.0, -2.0), c(3.0, -2.0), c(3.0, 2.0), c(1.0, 2.0)).unwrap();
        assert!((y - Complex64::new(1.25, 0.0)).norm() < 1e-15);
        assert_eq!(
            cross_ratio(c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)),
            Err(Error::DuplicatePoints)
        );
    }

    #[test]
    fn cross_ratio_with_infinity_is_the_limit() {
        let c = |l, t| ExtPoint::new(l, t).unwrap();
        let big = ExtPoint::new(0.0, 1e9).unwrap();
        let fill = [c(0.5, 0.5), c(1.0, 0.0), c(2.0, 1.0), c(0.0, -3.0)];
        for pos in 0..4 {
            let (mut a, mut b) = (fill, fill);
            a[pos] = ExtPoint::Infinity;
            b[pos] = big;
            let exact = cross_ratio(a[0], a[1], a[2], a[3]).unwrap();
            let approx = cross_ratio(b[0], b[1], b[2], b[3]).unwrap();
            assert!((exact - approx).norm() < 1e-7, "pos {pos}: {exact} vs {approx}");
        }
    }

    #[test]
    fn circle_examples() {
        let c = HyperbolicCircle::new(pt(1.0, 0.0), 1.0).unwrap().to_euclidean();
        assert!((c.center.0 - 1.5430806348152437).abs() < 1e-15);
        assert_eq!(c.center.1, 0.0);
        assert!((c.radius() - 1.1752011936438014).abs() < 1e-15);
        let c = HyperbolicCircle::new(pt(2.0, 3.0), 0.5).unwrap().to_euclidean();
        assert!((c.center.0 - 2.2552519304127616).abs() < 1e-14);
        assert_eq!(c.center.1, 3.0);
        assert!((c.radius() - 1.0421906109874948).abs() < 1e-14);
        assert!(HyperbolicCircle::new(pt(1.0, 0.0), 0.0).is_err());
    }
}
