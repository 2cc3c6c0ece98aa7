//! Inverse tangent integral `Ti₂(x) = ∫₀ˣ arctan(t)/t dt` and Catalan's
//! constant `G = Ti₂(1)`.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

/// Catalan's constant, `Σ (-1)ᵏ / (2k + 1)²`.
pub const CATALAN: f64 = 0.915_965_594_177_219_015_054_603_514_932_384_110_774;

/// Series terms below this size are dropped.
const TRUNCATION: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecFunResult {
    pub value: f64,
    pub est_abs_error: f64,
}

pub fn catalan() -> f64 {
    CATALAN
}

/// Alternating series `Σ (-1)ᵏ x^{2k+1} / (2k+1)²` for `0 <= x <= 1`.
///
/// The error bound is the first omitted term plus a rounding allowance for
/// the compensated sum.
fn ti2_series(x: f64) -> SpecFunResult {
    debug_assert!((0.0..=1.0).contains(&x));
    let x2 = x * x;
    let mut pow = x;
    let mut k = 0u64;
    // Neumaier-compensated running sum.
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    let mut abs_sum = 0.0;
    loop {
        let denom = (2 * k + 1) as f64;
        let term = pow / (denom * denom);
        if term <= TRUNCATION {
            let rounding = 2.0 * f64::EPSILON * abs_sum;
            return SpecFunResult {
                value: sum + comp,
                est_abs_error: term + rounding,
            };
        }
        let signed = if k.is_multiple_of(2) { term } else { -term };
        let t = sum + signed;
        if sum.abs() >= signed.abs() {
            comp += (sum - t) + signed;
        } else {
            comp += (signed - t) + sum;
        }
        sum = t;
        abs_sum += term;
        pow *= x2;
        k += 1;
    }
}

/// `Ti₂(x)` for `x >= 0`.
///
/// Arguments above one are reduced with `Ti₂(x) = Ti₂(1/x) + (π/2) ln x`.
pub fn ti2(x: f64) -> Result<SpecFunResult> {
    if x < 0.0 {
        return Err(Error::NegativeArgument(x));
    }
    if !x.is_finite() {
        return Err(Error::BadParameters(format!("Ti2 needs a finite argument, got {x}")));
    }
    if x <= 1.0 {
        return Ok(ti2_series(x));
    }
    let inner = ti2_series(1.0 / x);
    let log_part = FRAC_PI_2 * x.ln();
    Ok(SpecFunResult {
        value: inner.value + log_part,
        est_abs_error: inner.est_abs_error + 2.0 * f64::EPSILON * (log_part.abs() + inner.value),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::quadrature::integrate_adaptive;

    fn oracle(x: f64) -> f64 {
        // arctan(t)/t extended by 1 at t = 0.
        integrate_adaptive(|t: f64| if t == 0.0 { 1.0 } else { t.atan() / t }, 0.0, x, 1e-13).unwrap()
    }

    /// Ti₂(1/2) from its own alternating series, summed far past double precision.
    fn ti2_half() -> f64 {
        (0..60)
            .map(|k| {
                let n = (2 * k + 1) as f64;
                let s = if k % 2 == 0 { 1.0 } else { -1.0 };
                s * 0.5f64.powi(2 * k + 1) / (n * n)
            })
            .sum()
    }

    #[test]
    fn zero_and_one() {
        let z = ti2(0.0).unwrap();
        assert_eq!(z.value, 0.0);
        let one = ti2(1.0).unwrap();
        assert!((one.value - 0.9159655942).abs() < 1e-10);
        assert!((one.value - catalan()).abs() <= 1e-12);
        assert!(one.est_abs_error <= 1e-12);
    }

    #[test]
    fn value_at_two() {
        let v = ti2(2.0).unwrap();
        let by_quadrature = oracle(2.0);
        let by_identity = ti2_half() + FRAC_PI_2 * 2f64.ln();
        assert!((by_quadrature - by_identity).abs() < 1e-12);
        assert!((v.value - by_quadrature).abs() < 1e-12);
        assert!((v.value - 1.576015).abs() < 1e-6);
        assert!(v.est_abs_error <= 1e-12);
    }

    #[test]
    fn catalan_bounds() {
        assert!((catalan() - 0.915965594177219).abs() < 1e-15);
        assert!(catalan() < std::f64::consts::PI.powi(2) / 8.0);
    }

    #[test]
    fn negative_argument_is_rejected() {
        assert_eq!(ti2(-0.1), Err(Error::NegativeArgument(-0.1)));
        assert!(ti2(f64::INFINITY).is_err());
    }

    #[test]
    fn series_matches_quadrature_on_unit_interval() {
        for k in 1..=20 {
            let x = k as f64 / 20.0;
            let v = ti2(x).unwrap();
            assert!((v.value - oracle(x)).abs() < 1e-12, "x={x}");
        }
    }
}
