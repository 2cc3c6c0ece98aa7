//! The normal quadrilateral `Q(a, b)`, the hyperbolic annulus, and the
//! foliating curve subfamilies used to bound their moduli.

use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyp_core::{HPoint, HyperbolicCircle, MobiusIsometry};
use crate::polar::{cartesian_about, centering_map, tangent_frame, PolarPoint};

/// Relative slack used by the membership tests so that points computed on
/// a boundary curve are not rejected by rounding.
pub const BOUNDARY_SLACK: f64 = 1e-12;

/// Default number of stored samples per curve.
pub const DEFAULT_CURVE_SAMPLES: usize = 2049;

/// Region bounded by the circles `λ² + t² = 1 + b²`, `λ² + t² = a² + b²`
/// and the lines `t = ±b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalQuad {
    a: f64,
    b: f64,
}

impl NormalQuad {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a >= 1.0 && a.is_finite() && b > 0.0 && b.is_finite()) {
            return Err(Error::BadParameters(format!(
                "normal quadrilateral needs a >= 1 and b > 0 (got a={a}, b={b})"
            )));
        }
        Ok(NormalQuad { a, b })
    }

    /// `Q_a = Q(a, 1)`.
    pub fn unit_height(a: f64) -> Result<Self> {
        NormalQuad::new(a, 1.0)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Zero width.
    pub fn is_degenerate(&self) -> bool {
        self.a == 1.0
    }

    /// The conformally equivalent quadrilateral of height one,
    /// `Q(1 + (a - 1)/b, 1)`.
    pub fn normalized(&self) -> NormalQuad {
        NormalQuad {
            a: 1.0 + (self.a - 1.0) / self.b,
            b: 1.0,
        }
    }

    /// Corners `1 - ib, a - ib, a + ib, 1 + ib`.
    pub fn corners(&self) -> [HPoint; 4] {
        let (a, b) = (self.a, self.b);
        [
            HPoint::from_parts(1.0, -b),
            HPoint::from_parts(a, -b),
            HPoint::from_parts(a, b),
            HPoint::from_parts(1.0, b),
        ]
    }

    pub fn euclidean_area(&self) -> f64 {
        area_formula(self.a, self.b)
    }

    pub fn contains(&self, p: &HPoint) -> bool {
        let (a, b) = (self.a, self.b);
        let (l, t) = (p.lambda(), p.t());
        let r2 = l * l + t * t;
        let slack = BOUNDARY_SLACK;
        t.abs() <= b * (1.0 + slack)
            && r2 >= (1.0 + b * b) * (1.0 - slack)
            && r2 <= (a * a + b * b) * (1.0 + slack)
    }
}

fn area_formula(a: f64, b: f64) -> f64 {
    (a * a + b * b) * (b / a).atan() - (1.0 + b * b) * b.atan() + b * (a - 1.0)
}

/// Euclidean area of `Q(a, b)`:
/// `(a² + b²) arctan(b/a) - (1 + b²) arctan b + b(a - 1)`.
pub fn quad_area_euclidean(a: f64, b: f64) -> Result<f64> {
    let q = NormalQuad::new(a, b)?;
    Ok(q.euclidean_area().max(0.0))
}

/// The `Q_a` area expression `(π/2)(a² + 2) - (a² + 1) arctan a + (a - 1)`.
///
/// This exceeds `quad_area_euclidean(a, 1)` by exactly `π` and is kept only
/// so reports can show both numbers; no modulus uses it.
pub fn quad_area_paper_variant(a: f64) -> f64 {
    FRAC_PI_2 * (a * a + 2.0) - (a * a + 1.0) * a.atan() + (a - 1.0)
}

/// `Q(a, b)` and `Q(a', b')` are isometric iff `(a - 1)/b = (a' - 1)/b'`.
pub fn quad_equivalent(q1: &NormalQuad, q2: &NormalQuad) -> bool {
    let k1 = (q1.a - 1.0) / q1.b;
    let k2 = (q2.a - 1.0) / q2.b;
    (k1 - k2).abs() <= 1e-12 * k1.abs().max(k2.abs()).max(1.0)
}

/// Region between two concentric hyperbolic circles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Annulus {
    center: HPoint,
    r_inner: f64,
    r_outer: f64,
}

impl Annulus {
    pub fn new(center: HPoint, r_inner: f64, r_outer: f64) -> Result<Self> {
        if !(r_inner > 0.0 && r_inner < r_outer && r_outer.is_finite()) {
            return Err(Error::BadParameters(format!(
                "annulus needs 0 < r_inner < r_outer (got {r_inner}, {r_outer})"
            )));
        }
        Ok(Annulus {
            center,
            r_inner,
            r_outer,
        })
    }

    /// Annulus about the base point `(1, 0)`.
    pub fn centered(r_inner: f64, r_outer: f64) -> Result<Self> {
        Annulus::new(HPoint::base(), r_inner, r_outer)
    }

    pub fn center(&self) -> HPoint {
        self.center
    }

    pub fn r_inner(&self) -> f64 {
        self.r_inner
    }

    pub fn r_outer(&self) -> f64 {
        self.r_outer
    }

    pub fn inner_circle(&self) -> HyperbolicCircle {
        HyperbolicCircle::new(self.center, self.r_inner).expect("validated radius")
    }

    pub fn outer_circle(&self) -> HyperbolicCircle {
        HyperbolicCircle::new(self.center, self.r_outer).expect("validated radius")
    }

    /// Image under an isometry: same radii, moved center.
    pub fn transformed(&self, m: &MobiusIsometry) -> Annulus {
        Annulus {
            center: m.apply(&self.center),
            ..*self
        }
    }

    /// `cosh R₁ <= 1 + |z - z₀|² / (2 λ λ₀) <= cosh R₂`, compared as
    /// `2 sinh²(R/2)` to avoid cancellation.
    pub fn contains(&self, p: &HPoint) -> bool {
        let z0 = self.center;
        let d2 = (p.lambda() - z0.lambda()).powi(2) + (p.t() - z0.t()).powi(2);
        let excess = d2 / (2.0 * p.lambda() * z0.lambda());
        let lo = 2.0 * (self.r_inner / 2.0).sinh().powi(2);
        let hi = 2.0 * (self.r_outer / 2.0).sinh().powi(2);
        excess >= lo * (1.0 - BOUNDARY_SLACK) && excess <= hi * (1.0 + BOUNDARY_SLACK)
    }
}

/// Moves the center of an annulus to `(1, 0)` with `z ↦ (z - it₀)/λ₀`.
/// Radii are unchanged because the map is an isometry.
pub fn normalize_annulus(annulus: &Annulus) -> (MobiusIsometry, Annulus) {
    let m = centering_map(&annulus.center).inverse();
    (m, annulus.transformed(&m))
}

/// Either of the two supported domains.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    Quad(NormalQuad),
    Annulus(Annulus),
}

impl Domain {
    pub fn contains(&self, p: &HPoint) -> bool {
        match self {
            Domain::Quad(q) => q.contains(p),
            Domain::Annulus(a) => a.contains(p),
        }
    }
}

impl From<NormalQuad> for Domain {
    fn from(q: NormalQuad) -> Self {
        Domain::Quad(q)
    }
}

impl From<Annulus> for Domain {
    fn from(a: Annulus) -> Self {
        Domain::Annulus(a)
    }
}

pub fn contains(domain: &Domain, p: &HPoint) -> bool {
    domain.contains(p)
}

/// The four curve families whose moduli are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    /// Curves joining the two circular sides of `Q_a`.
    QuadArcs,
    /// Curves joining the two straight sides of `Q_a`.
    QuadSegments,
    /// Curves joining the boundary circles of an annulus.
    AnnulusJoining,
    /// Closed curves separating the boundary circles of an annulus.
    AnnulusSeparating,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 4] = [
        FamilyKind::QuadArcs,
        FamilyKind::QuadSegments,
        FamilyKind::AnnulusJoining,
        FamilyKind::AnnulusSeparating,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::QuadArcs => "quad_arcs",
            FamilyKind::QuadSegments => "quad_segments",
            FamilyKind::AnnulusJoining => "annulus_joining",
            FamilyKind::AnnulusSeparating => "annulus_separating",
        }
    }

    pub fn is_quad(&self) -> bool {
        matches!(self, FamilyKind::QuadArcs | FamilyKind::QuadSegments)
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::BadParameters(format!("unknown family {s:?}")))
    }
}

/// Parametrization of a curve.
#[derive(Clone)]
pub enum CurvePath {
    /// `u ↦ (u, t)`.
    Horizontal { t: f64 },
    /// `u ↦ radius (cos u, sin u)`, a Euclidean circle about the origin.
    OriginArc { radius: f64 },
    /// `u ↦ polar point (u, θ)` about `center`.
    Radial { center: HPoint, theta: f64 },
    /// `u ↦ polar point (r, u)` about `center`.
    Circle { center: HPoint, r: f64 },
    /// Image of another curve under an isometry.
    Pushed { base: Arc<Curve>, map: MobiusIsometry },
    /// Arbitrary map; tangents by central differences.
    Custom(Arc<dyn Fn(f64) -> HPoint + Send + Sync>),
}

impl fmt::Debug for CurvePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePath::Horizontal { t } => f.debug_struct("Horizontal").field("t", t).finish(),
            CurvePath::OriginArc { radius } => f.debug_struct("OriginArc").field("radius", radius).finish(),
            CurvePath::Radial { center, theta } => {
                f.debug_struct("Radial").field("center", center).field("theta", theta).finish()
            }
            CurvePath::Circle { center, r } => f.debug_struct("Circle").field("center", center).field("r", r).finish(),
            CurvePath::Pushed { base, map } => f.debug_struct("Pushed").field("base", base.path()).field("map", map).finish(),
            CurvePath::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

/// A parametric curve on `[u0, u1]` with equispaced stored samples.
#[derive(Debug, Clone)]
pub struct Curve {
    path: CurvePath,
    u0: f64,
    u1: f64,
    /// Value of the family parameter that selects this curve.
    parameter: f64,
    samples: Vec<HPoint>,
}

impl Curve {
    pub fn new(path: CurvePath, u0: f64, u1: f64, parameter: f64, n_samples: usize) -> Result<Self> {
        if n_samples < 2 || !(u0.is_finite() && u1.is_finite()) || u0 >= u1 {
            return Err(Error::BadParameters(format!(
                "curve needs u0 < u1 and at least two samples (got [{u0}, {u1}], n={n_samples})"
            )));
        }
        let mut curve = Curve {
            path,
            u0,
            u1,
            parameter,
            samples: Vec::new(),
        };
        let step = (u1 - u0) / (n_samples - 1) as f64;
        let mut samples = Vec::with_capacity(n_samples);
        for i in 0..n_samples {
            let u = if i + 1 == n_samples { u1 } else { u0 + i as f64 * step };
            samples.push(curve.try_point(u)?);
        }
        curve.samples = samples;
        Ok(curve)
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.u0, self.u1)
    }

    pub fn parameter(&self) -> f64 {
        self.parameter
    }

    pub fn samples(&self) -> &[HPoint] {
        &self.samples
    }

    pub fn path(&self) -> &CurvePath {
        &self.path
    }

    fn try_point(&self, u: f64) -> Result<HPoint> {
        let p = match &self.path {
            CurvePath::Horizontal { t } => HPoint::new(u, *t)?,
            CurvePath::OriginArc { radius } => HPoint::new(radius * u.cos(), radius * u.sin())?,
            CurvePath::Radial { center, theta } => cartesian_about(center, &PolarPoint::new(u, *theta)?),
            CurvePath::Circle { center, r } => cartesian_about(center, &PolarPoint::new(*r, u)?),
            CurvePath::Pushed { base, map } => map.apply(&base.point(u)),
            CurvePath::Custom(f) => f(u),
        };
        Ok(p)
    }

    /// Point at parameter `u`.
    pub fn point(&self, u: f64) -> HPoint {
        self.try_point(u).expect("curve parameter inside its interval")
    }

    /// `(dλ/du, dt/du)`.
    pub fn velocity(&self, u: f64) -> [f64; 2] {
        match &self.path {
            CurvePath::Horizontal { .. } => [1.0, 0.0],
            CurvePath::OriginArc { radius } => {
                let (s, c) = u.sin_cos();
                [-radius * s, radius * c]
            }
            CurvePath::Radial { center, theta } => {
                let (d_r, _) = tangent_frame(&PolarPoint::new(u, *theta).expect("valid polar point"));
                [center.lambda() * d_r[0], center.lambda() * d_r[1]]
            }
            CurvePath::Circle { center, r } => {
                let (_, d_theta) = tangent_frame(&PolarPoint::new(*r, u).expect("valid polar point"));
                [center.lambda() * d_theta[0], center.lambda() * d_theta[1]]
            }
            CurvePath::Pushed { base, map } => {
                // f'(z) = 1 / (icz + d)² when ad + bc = 1.
                let (_, _, c, d) = map.coefficients();
                let z = base.point(u).to_complex();
                let w = Complex64::new(d, 0.0) + Complex64::new(0.0, c) * z;
                let v = base.velocity(u);
                let out = Complex64::new(v[0], v[1]) / (w * w);
                [out.re, out.im]
            }
            CurvePath::Custom(f) => {
                let h = (self.u1 - self.u0) * 1e-6;
                let (p, q) = (f(u + h), f(u - h));
                [(p.lambda() - q.lambda()) / (2.0 * h), (p.t() - q.t()) / (2.0 * h)]
            }
        }
    }

    /// Hyperbolic speed `|γ'(u)| / λ(u)`.
    pub fn hyperbolic_speed(&self, u: f64) -> f64 {
        let v = self.velocity(u);
        v[0].hypot(v[1]) / self.point(u).lambda()
    }
}

/// Range of the family parameter and the curve it selects.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Foliation {
    kind: FamilyKind,
    domain: Domain,
}

impl Foliation {
    pub(crate) fn new(kind: FamilyKind, domain: &Domain) -> Result<Self> {
        match (kind.is_quad(), domain) {
            (true, Domain::Quad(q)) => {
                if q.is_degenerate() {
                    return Err(Error::DegenerateDomain(format!(
                        "Q(a, b) with a = 1 has zero width (b={})",
                        q.b()
                    )));
                }
            }
            (false, Domain::Annulus(_)) => {}
            _ => {
                return Err(Error::BadParameters(format!(
                    "family {kind} does not live on the given domain"
                )))
            }
        }
        Ok(Foliation { kind, domain: *domain })
    }

    /// Transverse parameter range `[p0, p1]`.
    pub(crate) fn parameter_range(&self) -> (f64, f64) {
        match (self.kind, self.domain) {
            (FamilyKind::QuadArcs, Domain::Quad(q)) => (-q.b(), q.b()),
            (FamilyKind::QuadSegments, Domain::Quad(q)) => (1.0, q.a()),
            (FamilyKind::AnnulusJoining, Domain::Annulus(_)) => (0.0, TAU),
            (FamilyKind::AnnulusSeparating, Domain::Annulus(an)) => (an.r_inner(), an.r_outer()),
            _ => unreachable!("checked in Foliation::new"),
        }
    }

    /// The leaf through parameter value `p`, with its curve interval.
    pub(crate) fn leaf(&self, p: f64) -> (CurvePath, f64, f64) {
        match (self.kind, self.domain) {
            (FamilyKind::QuadArcs, Domain::Quad(q)) => {
                let (a, b) = (q.a(), q.b());
                let lo = (1.0 + b * b - p * p).sqrt();
                let hi = (a * a + b * b - p * p).sqrt();
                (CurvePath::Horizontal { t: p }, lo, hi)
            }
            (FamilyKind::QuadSegments, Domain::Quad(q)) => {
                let b = q.b();
                let half = (b / p).atan();
                (CurvePath::OriginArc { radius: p.hypot(b) }, -half, half)
            }
            (FamilyKind::AnnulusJoining, Domain::Annulus(an)) => (
                CurvePath::Radial {
                    center: an.center(),
                    theta: p,
                },
                an.r_inner(),
                an.r_outer(),
            ),
            (FamilyKind::AnnulusSeparating, Domain::Annulus(an)) => {
                (CurvePath::Circle { center: an.center(), r: p }, 0.0, TAU)
            }
            _ => unreachable!("checked in Foliation::new"),
        }
    }

    /// `(dλ/dp, dt/dp)` at the point with leaf parameter `p` and curve
    /// parameter `u`.
    pub(crate) fn transverse_velocity(&self, p: f64, u: f64) -> [f64; 2] {
        match (self.kind, self.domain) {
            (FamilyKind::QuadArcs, _) => [0.0, 1.0],
            (FamilyKind::QuadSegments, Domain::Quad(q)) => {
                let radius = p.hypot(q.b());
                let (s, c) = u.sin_cos();
                [p / radius * c, p / radius * s]
            }
            (FamilyKind::AnnulusJoining, Domain::Annulus(an)) => {
                let (_, d_theta) = tangent_frame(&PolarPoint::new(u, p).expect("valid polar point"));
                let l0 = an.center().lambda();
                [l0 * d_theta[0], l0 * d_theta[1]]
            }
            (FamilyKind::AnnulusSeparating, Domain::Annulus(an)) => {
                let (d_r, _) = tangent_frame(&PolarPoint::new(p, u).expect("valid polar point"));
                let l0 = an.center().lambda();
                [l0 * d_r[0], l0 * d_r[1]]
            }
            _ => unreachable!("checked in Foliation::new"),
        }
    }

    /// Equispaced parameter values. Ranges are closed except the angular
    /// range of the joining family, which is `[0, 2π)`. A single curve is
    /// the symmetric leaf `t = 0` for the arc family and the first leaf
    /// otherwise.
    pub(crate) fn parameters(&self, n: usize) -> Vec<f64> {
        let (p0, p1) = self.parameter_range();
        match (self.kind, n) {
            (_, 0) => Vec::new(),
            (FamilyKind::QuadArcs, 1) => vec![0.5 * (p0 + p1)],
            (_, 1) => vec![p0],
            (FamilyKind::AnnulusJoining, _) => (0..n).map(|i| p0 + (p1 - p0) * i as f64 / n as f64).collect(),
            _ => (0..n)
                .map(|i| {
                    if i + 1 == n {
                        p1
                    } else {
                        p0 + (p1 - p0) * i as f64 / (n - 1) as f64
                    }
                })
                .collect(),
        }
    }
}

/// `n` curves of the distinguished foliating subfamily of `kind`, each with
/// [`DEFAULT_CURVE_SAMPLES`] stored samples.
pub fn sample_subfamily(kind: FamilyKind, domain: &Domain, n: usize) -> Result<Vec<Curve>> {
    sample_subfamily_with_resolution(kind, domain, n, DEFAULT_CURVE_SAMPLES)
}

pub fn sample_subfamily_with_resolution(
    kind: FamilyKind,
    domain: &Domain,
    n: usize,
    n_samples: usize,
) -> Result<Vec<Curve>> {
    let foliation = Foliation::new(kind, domain)?;
    if n == 0 {
        return Err(Error::EmptyFamily { requested: 0, minimum: 1 });
    }
    foliation
        .parameters(n)
        .into_iter()
        .map(|p| {
            let (path, u0, u1) = foliation.leaf(p);
            Curve::new(path, u0, u1, p, n_samples)
        })
        .collect()
}
