#![allow(dead_code)]

use hypmod::domains::NormalQuad;
use hypmod::polar::{to_cartesian, PolarPoint};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Hit-or-miss area of `q` over its bounding box, with standard error.
pub fn monte_carlo_area(q: &NormalQuad, n: usize, seed: u64) -> (f64, f64) {
    let (a, b) = (q.a(), q.b());
    let (x0, x1) = (1.0, a.hypot(b));
    let box_area = (x1 - x0) * 2.0 * b;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0usize;
    for _ in 0..n {
        let l = rng.random_range(x0..x1);
        let t = rng.random_range(-b..b);
        let r2 = l * l + t * t;
        if r2 >= 1.0 + b * b && r2 <= a * a + b * b {
            hits += 1;
        }
    }
    let p = hits as f64 / n as f64;
    (box_area * p, box_area * (p * (1.0 - p) / n as f64).sqrt())
}

/// Central-difference partials `(∂/∂r, ∂/∂θ)` of the polar map.
pub fn fd_partials(r: f64, theta: f64, h: f64) -> ([f64; 2], [f64; 2]) {
    let at = |r: f64, th: f64| {
        let p = to_cartesian(&PolarPoint::new(r, th).unwrap());
        [p.lambda(), p.t()]
    };
    let (rp, rm) = (at(r + h, theta), at(r - h, theta));
    let (tp, tm) = (at(r, theta + h), at(r, theta - h));
    (
        [(rp[0] - rm[0]) / (2.0 * h), (rp[1] - rm[1]) / (2.0 * h)],
        [(tp[0] - tm[0]) / (2.0 * h), (tp[1] - tm[1]) / (2.0 * h)],
    )
}

/// Distance between two angles on the circle.
pub fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(std::f64::consts::TAU);
    d.min(std::f64::consts::TAU - d)
}
