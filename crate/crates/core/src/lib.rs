//! Moduli of curve families in hyperbolic quadrilaterals and annuli of the
//! upper half-plane, with closed forms and numerical cross-checks.

pub mod cli;
pub mod closed_form;
pub mod domains;
pub mod error;
pub mod hyp_core;
pub mod numeric;
pub mod polar;
pub mod specfun;

pub use closed_form::{closed_form, extremal_density, DensityField, ModulusValue};
pub use domains::{Annulus, Curve, CurvePath, Domain, FamilyKind, NormalQuad};
pub use error::{Error, Result};
pub use hyp_core::{dist, EuclideanCircle, ExtPoint, HPoint, HyperbolicCircle, MobiusIsometry};
pub use polar::PolarPoint;
