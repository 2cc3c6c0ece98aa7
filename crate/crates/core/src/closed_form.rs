//! Closed-form moduli of the four curve families and the candidate
//! extremal densities that accompany them.
//!
//! The quadrilateral formulas are stated for `Q_a = Q(a, 1)` and use the
//! Euclidean area from [`quad_area_euclidean`]. The annulus formulas take
//! general radii `r1 < r2`.

use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt;
use std::sync::Arc;

use crate::domains::{quad_area_euclidean, Domain, FamilyKind, NormalQuad};
use crate::error::{Error, Result};
use crate::hyp_core::{dist, HPoint};
use crate::specfun::{catalan, ti2};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulusValue {
    pub value: f64,
    pub family: FamilyKind,
}

fn check_quad(a: f64) -> Result<()> {
    if a > 1.0 && a.is_finite() {
        Ok(())
    } else {
        Err(Error::DegenerateQuad(a))
    }
}

/// `Mod = 4 / A_e(Q_a)` for curves joining the circular sides.
pub fn mod_quad_arcs(a: f64) -> Result<ModulusValue> {
    check_quad(a)?;
    Ok(ModulusValue {
        value: 4.0 / quad_area_euclidean(a, 1.0)?,
        family: FamilyKind::QuadArcs,
    })
}

/// The two parts of `I = ∫₁ᵃ ∫ (λ² + 1)/λ ds dλ`:
/// `I₁ = A_e(Q_a)` and `I₂ = 2(G + (π/2) ln a - Ti₂(a))`.
pub fn segment_integrals(a: f64) -> Result<(f64, f64)> {
    check_quad(a)?;
    let i1 = quad_area_euclidean(a, 1.0)?;
    let i2 = 2.0 * (catalan() + FRAC_PI_2 * a.ln() - ti2(a)?.value);
    Ok((i1, i2))
}

/// `Mod = (a - 1)² / (I₁ + I₂)` for curves joining the straight sides.
pub fn mod_quad_segments(a: f64) -> Result<ModulusValue> {
    let (i1, i2) = segment_integrals(a)?;
    Ok(ModulusValue {
        value: (a - 1.0).powi(2) / (i1 + i2),
        family: FamilyKind::QuadSegments,
    })
}

/// `ln(tanh(r2/2) / tanh(r1/2)) = ∫_{r1}^{r2} dr / sinh r`.
pub fn annulus_log_ratio(r1: f64, r2: f64) -> Result<f64> {
    if !(r1 > 0.0 && r2.is_finite()) {
        return Err(Error::BadParameters(format!("annulus radii must be positive (got {r1}, {r2})")));
    }
    if r1 >= r2 {
        return Err(Error::DegenerateAnnulus { r1, r2 });
    }
    Ok((r2 / 2.0).tanh().ln() - (r1 / 2.0).tanh().ln())
}

/// `Mod = 2π / ln(tanh(r2/2) / tanh(r1/2))` for curves joining the circles.
pub fn mod_annulus_joining(r1: f64, r2: f64) -> Result<ModulusValue> {
    Ok(ModulusValue {
        value: TAU / annulus_log_ratio(r1, r2)?,
        family: FamilyKind::AnnulusJoining,
    })
}

/// `Mod = ln(tanh(r2/2) / tanh(r1/2)) / 2π` for curves separating the circles.
pub fn mod_annulus_separating(r1: f64, r2: f64) -> Result<ModulusValue> {
    Ok(ModulusValue {
        value: annulus_log_ratio(r1, r2)? / TAU,
        family: FamilyKind::AnnulusSeparating,
    })
}

/// Unit-height quadrilateral conformally equivalent to `q`.
fn quad_parameter(q: &NormalQuad) -> f64 {
    q.normalized().a()
}

/// Closed-form modulus of `kind` on `domain`. Quadrilaterals of any height
/// are first replaced by their unit-height equivalent.
pub fn closed_form(kind: FamilyKind, domain: &Domain) -> Result<ModulusValue> {
    match (kind, domain) {
        (FamilyKind::QuadArcs, Domain::Quad(q)) => mod_quad_arcs(quad_parameter(q)),
        (FamilyKind::QuadSegments, Domain::Quad(q)) => mod_quad_segments(quad_parameter(q)),
        (FamilyKind::AnnulusJoining, Domain::Annulus(an)) => mod_annulus_joining(an.r_inner(), an.r_outer()),
        (FamilyKind::AnnulusSeparating, Domain::Annulus(an)) => {
            mod_annulus_separating(an.r_inner(), an.r_outer())
        }
        _ => Err(Error::BadParameters(format!("family {kind} does not live on the given domain"))),
    }
}

#[derive(Clone)]
enum Profile {
    Constant(f64),
    /// `scale · λ`.
    QuadArcs { scale: f64 },
    /// `scale · (λ² + 1)/λ` in the arc chart, `λ = sqrt(λ_e² + t_e² - 1)`.
    QuadSegments { scale: f64 },
    /// `c0 / sinh r` about the annulus center.
    AnnulusJoining { c0: f64, center: HPoint },
    /// `1 / (2π sinh r)` about the annulus center.
    AnnulusSeparating { center: HPoint },
    Custom(Arc<dyn Fn(&HPoint) -> f64 + Send + Sync>),
}

/// A nonnegative density, zero outside its support domain.
#[derive(Clone)]
pub struct DensityField {
    kind: Option<FamilyKind>,
    support: Option<Domain>,
    profile: Profile,
}

impl fmt::Debug for DensityField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DensityField")
            .field("kind", &self.kind)
            .field("support", &self.support)
            .finish_non_exhaustive()
    }
}

impl DensityField {
    /// `ρ ≡ 0`.
    pub fn zero() -> Self {
        DensityField::constant(0.0)
    }

    /// Constant density on the whole half-plane.
    pub fn constant(value: f64) -> Self {
        DensityField {
            kind: None,
            support: None,
            profile: Profile::Constant(value.max(0.0)),
        }
    }

    /// Arbitrary density; negative or NaN values read as zero.
    pub fn custom<F>(support: Option<Domain>, f: F) -> Self
    where
        F: Fn(&HPoint) -> f64 + Send + Sync + 'static,
    {
        DensityField {
            kind: None,
            support,
            profile: Profile::Custom(Arc::new(f)),
        }
    }

    /// Same values, cut off outside `domain`.
    pub fn restricted_to(mut self, domain: Domain) -> Self {
        self.support = Some(domain);
        self
    }

    /// True for the constant zero density.
    pub fn is_identically_zero(&self) -> bool {
        matches!(self.profile, Profile::Constant(c) if c == 0.0)
    }

    pub fn kind(&self) -> Option<FamilyKind> {
        self.kind
    }

    /// `None` means the whole half-plane.
    pub fn support(&self) -> Option<&Domain> {
        self.support.as_ref()
    }

    pub fn evaluate(&self, p: &HPoint) -> f64 {
        if let Some(domain) = &self.support {
            if !domain.contains(p) {
                return 0.0;
            }
        }
        let v = match &self.profile {
            Profile::Constant(c) => *c,
            Profile::QuadArcs { scale } => scale * p.lambda(),
            Profile::QuadSegments { scale } => {
                let r2 = p.lambda() * p.lambda() + p.t() * p.t();
                let leaf = (r2 - 1.0).max(0.0).sqrt();
                scale * r2 / leaf
            }
            Profile::AnnulusJoining { c0, center } => c0 / dist(center, p).sinh(),
            Profile::AnnulusSeparating { center } => 1.0 / (TAU * dist(center, p).sinh()),
            Profile::Custom(f) => f(p),
        };
        if v > 0.0 {
            v
        } else {
            0.0
        }
    }
}

fn unit_height(q: &NormalQuad) -> Result<f64> {
    if q.b() != 1.0 {
        return Err(Error::BadParameters(format!(
            "densities are defined on Q(a, 1); normalize Q({}, {}) first",
            q.a(),
            q.b()
        )));
    }
    if q.is_degenerate() {
        return Err(Error::DegenerateDomain("Q(1, 1) has zero width".into()));
    }
    Ok(q.a())
}

/// The candidate extremal density for `kind`:
///
/// * arcs: `2λ / A_e(Q_a)`;
/// * segments: `((a - 1)/I) (λ² + 1)/λ` in the arc chart;
/// * joining: `c₀ / sinh r` with `c₀ = 1 / ln(tanh(r2/2) / tanh(r1/2))`;
/// * separating: `1 / (2π sinh r)`.
pub fn extremal_density(kind: FamilyKind, domain: &Domain) -> Result<DensityField> {
    let profile = match (kind, domain) {
        (FamilyKind::QuadArcs, Domain::Quad(q)) => {
            let a = unit_height(q)?;
            Profile::QuadArcs {
                scale: 2.0 / quad_area_euclidean(a, 1.0)?,
            }
        }
        (FamilyKind::QuadSegments, Domain::Quad(q)) => {
            let a = unit_height(q)?;
            let (i1, i2) = segment_integrals(a)?;
            Profile::QuadSegments {
                scale: (a - 1.0) / (i1 + i2),
            }
        }
        (FamilyKind::AnnulusJoining, Domain::Annulus(an)) => Profile::AnnulusJoining {
            c0: 1.0 / annulus_log_ratio(an.r_inner(), an.r_outer())?,
            center: an.center(),
        },
        (FamilyKind::AnnulusSeparating, Domain::Annulus(an)) => Profile::AnnulusSeparating { center: an.center() },
        _ => {
            return Err(Error::BadParameters(format!(
                "family {kind} does not live on the given domain"
            )))
        }
    };
    Ok(DensityField {
        kind: Some(kind),
        support: Some(*domain),
        profile,
    })
}
