use rayon::prelude::*;
use serde::Serialize;

use crate::closed_form::DensityField;
use crate::domains::{sample_subfamily, Domain, FamilyKind};
use crate::error::{Error, Result};
use crate::numeric::{curve_integral, QuadratureSpec};

/// Smallest subfamily size the audit accepts.
pub const MIN_AUDIT_CURVES: usize = 3;

/// Line integrals of a density over sampled curves of a subfamily.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub min_integral: f64,
    /// Family parameter of the curve attaining the minimum.
    pub argmin_parameter: f64,
    pub n_curves: usize,
    pub parameters: Vec<f64>,
    pub per_curve_integrals: Vec<f64>,
}

impl AuditReport {
    /// True when every sampled curve has integral at least `1 - tol`.
    pub fn is_admissible(&self, tol: f64) -> bool {
        self.min_integral >= 1.0 - tol
    }
}

/// Integrates `rho` over `n_curves` curves of the foliating subfamily of
/// `kind`.
pub fn admissibility_audit(
    rho: &DensityField,
    kind: FamilyKind,
    domain: &Domain,
    n_curves: usize,
    spec: &QuadratureSpec,
) -> Result<AuditReport> {
    if n_curves < MIN_AUDIT_CURVES {
        return Err(Error::EmptyFamily {
            requested: n_curves,
            minimum: MIN_AUDIT_CURVES,
        });
    }
    let curves = sample_subfamily(kind, domain, n_curves)?;
    let per_curve_integrals = curves
        .par_iter()
        .map(|c| curve_integral(rho, c, spec))
        .collect::<Result<Vec<f64>>>()?;
    let parameters: Vec<f64> = curves.iter().map(|c| c.parameter()).collect();
    // First index wins ties so the result does not depend on scheduling.
    let (argmin, min_integral) = per_curve_integrals
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::INFINITY), |best, (i, v)| if v < best.1 { (i, v) } else { best });
    Ok(AuditReport {
        min_integral,
        argmin_parameter: parameters[argmin],
        n_curves,
        parameters,
        per_curve_integrals,
    })
}
