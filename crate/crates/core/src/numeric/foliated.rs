//! Lower bound for a family modulus from its foliating subfamily.
//!
//! The parameter range is cut into strips. On the strip through leaf `p`,
//! the best density for the leaves it contains has energy
//! `Δp / ∫ ℓ² / w du`, where `ℓ` is the hyperbolic speed of the leaf and
//! `w` is the hyperbolic area density of the `(p, u)` chart. Both carry a
//! factor `1/λ` per length, so the ratio is `|γ_u|² / |γ_p × γ_u|` in
//! Euclidean terms.

use rayon::prelude::*;

use crate::domains::{Curve, Domain, FamilyKind, Foliation};
use crate::error::{Error, Result};
use crate::numeric::quadrature::{self, QuadratureSpec};

/// Smallest strip count the solver accepts.
pub const MIN_STRIPS: usize = 8;

/// Contribution of each of `n_strips` equal strips, in parameter order.
pub fn foliated_strip_contributions(
    kind: FamilyKind,
    domain: &Domain,
    n_strips: usize,
    spec: &QuadratureSpec,
) -> Result<Vec<f64>> {
    if n_strips < MIN_STRIPS {
        return Err(Error::EmptyFamily {
            requested: n_strips,
            minimum: MIN_STRIPS,
        });
    }
    let foliation = Foliation::new(kind, domain)?;
    let (p0, p1) = foliation.parameter_range();
    let width = (p1 - p0) / n_strips as f64;
    (0..n_strips)
        .into_par_iter()
        .map(|i| {
            let p = p0 + (i as f64 + 0.5) * width;
            let (path, u0, u1) = foliation.leaf(p);
            let leaf = Curve::new(path, u0, u1, p, 2)?;
            let cost = quadrature::integrate(
                |u| {
                    let g_u = leaf.velocity(u);
                    let g_p = foliation.transverse_velocity(p, u);
                    let cross = (g_p[0] * g_u[1] - g_p[1] * g_u[0]).abs();
                    (g_u[0] * g_u[0] + g_u[1] * g_u[1]) / cross
                },
                u0,
                u1,
                spec,
            )?;
            Ok(width / cost)
        })
        .collect()
}

/// Sum of all strip contributions with `n_strips` strips.
pub fn foliated_modulus(kind: FamilyKind, domain: &Domain, n_strips: usize, spec: &QuadratureSpec) -> Result<f64> {
    Ok(foliated_strip_contributions(kind, domain, n_strips, spec)?.iter().sum())
}

/// Lower bound from the strips listed in `selected` only.
pub fn foliated_modulus_subset(
    kind: FamilyKind,
    domain: &Domain,
    n_strips: usize,
    selected: &[usize],
    spec: &QuadratureSpec,
) -> Result<f64> {
    let parts = foliated_strip_contributions(kind, domain, n_strips, spec)?;
    selected
        .iter()
        .map(|&i| {
            parts.get(i).copied().ok_or_else(|| {
                Error::BadParameters(format!("strip index {i} out of range for {n_strips} strips"))
            })
        })
        .sum()
}
