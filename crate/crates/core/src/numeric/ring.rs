use crate::error::{Error, Result};
use crate::hyp_core::EuclideanCircle;

/// Modulus `2π / ln(R)` of the ring between two nested Euclidean circles,
/// for the family of curves joining the two boundary circles.
///
/// The ring is mapped to a concentric one through the common limit points
/// of the coaxial pencil spanned by the circles. Argument order does not
/// matter.
pub fn euclidean_ring_modulus(c1: &EuclideanCircle, c2: &EuclideanCircle) -> Result<f64> {
    let (inner, outer) = if c1.radius() <= c2.radius() { (c1, c2) } else { (c2, c1) };
    let (r1, r2) = (inner.radius(), outer.radius());
    let (dx, dy) = (outer.center.0 - inner.center.0, outer.center.1 - inner.center.1);
    let d = dx.hypot(dy);
    if !(d + r1 < r2) {
        return Err(Error::NotNested);
    }
    let log_ratio = if d <= f64::EPSILON * r2 {
        (r2 / r1).ln()
    } else {
        // Inner center at 0, outer center at d on the real axis. The limit
        // points p, q solve x² - S x + r1² = 0.
        let s = (r1 * r1 + d * d - r2 * r2) / d;
        let disc = (s * s - 4.0 * r1 * r1).sqrt();
        // Stable root pair.
        let big = 0.5 * (s - s.signum() * disc);
        let small = r1 * r1 / big;
        let (p, q) = if small.abs() < r1 { (small, big) } else { (big, small) };
        // |z - p| / |z - q| is constant on each circle; sample at the
        // rightmost point of each.
        let ratio = |x: f64| (x - p).abs() / (x - q).abs();
        let k1 = ratio(r1);
        let k2 = ratio(d + r2);
        (k1 / k2).ln().abs()
    };
    Ok(std::f64::consts::TAU / log_ratio)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(x: f64, y: f64, r: f64) -> EuclideanCircle {
        EuclideanCircle::new((x, y), r).unwrap()
    }

    #[test]
    fn concentric_ring() {
        let m = euclidean_ring_modulus(&circle(1.0, 2.0, 1.0), &circle(1.0, 2.0, 3.0)).unwrap();
        assert!((m - std::f64::consts::TAU / 3f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn offset_ring_matches_disc_automorphism() {
        // z ↦ (z - c)/(1 - c z) sends the unit disc to itself and the circle
        // |z| = ρ to a circle; the image ring has modulus 2π / ln(1/ρ).
        let (c, rho) = (0.3f64, 0.4f64);
        let m = |z: f64| (z - c) / (1.0 - c * z);
        let (x0, x1) = (m(-rho), m(rho));
        let inner = circle(0.5 * (x0 + x1), 0.0, 0.5 * (x1 - x0));
        let v = euclidean_ring_modulus(&inner, &circle(0.0, 0.0, 1.0)).unwrap();
        assert!((v - std::f64::consts::TAU / (1.0 / rho).ln()).abs() < 1e-12);
    }

    #[test]
    fn rejects_overlapping_circles() {
        assert_eq!(
            euclidean_ring_modulus(&circle(0.0, 0.0, 1.0), &circle(1.5, 0.0, 2.0)),
            Err(Error::NotNested)
        );
    }
}
