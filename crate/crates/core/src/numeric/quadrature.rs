//! Composite Gauss–Legendre quadrature.
//!
//! Nodes and weights are computed once per order by Newton iteration on the
//! Legendre polynomial and cached for the life of the process.

use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 64;
/// Panel-doubling ceiling for one-dimensional rules.
pub const MAX_PANELS: usize = 1 << 20;
/// Per-axis panel ceiling for tensor-product rules.
pub const MAX_PANELS_2D: usize = 1 << 9;

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

fn build_rule(n: usize) -> GaussRule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Three-term recurrence for P_n(x) and its derivative.
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    GaussRule { nodes, weights }
}

/// Cached rule of order `n` (`2 <= n <= 64`).
pub fn gauss_legendre(n: usize) -> &'static GaussRule {
    static RULES: [OnceLock<GaussRule>; MAX_ORDER + 1] = [const { OnceLock::new() }; MAX_ORDER + 1];
    assert!((2..=MAX_ORDER).contains(&n), "Gauss-Legendre order {n} out of range");
    RULES[n].get_or_init(|| build_rule(n))
}

/// Panel count, rule order, and absolute tolerance for composite rules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    panels: usize,
    nodes_per_panel: usize,
    abs_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            panels: 64,
            nodes_per_panel: 16,
            abs_tol: 1e-9,
        }
    }
}

impl QuadratureSpec {
    pub fn new(panels: usize, nodes_per_panel: usize, abs_tol: f64) -> Result<Self> {
        if panels == 0 || !(2..=MAX_ORDER).contains(&nodes_per_panel) || !(abs_tol > 0.0) {
            return Err(Error::BadParameters(format!(
                "quadrature needs panels >= 1, 2 <= nodes <= {MAX_ORDER}, tol > 0 \
                 (got {panels}, {nodes_per_panel}, {abs_tol})"
            )));
        }
        Ok(QuadratureSpec {
            panels,
            nodes_per_panel,
            abs_tol,
        })
    }

    pub fn with_tol(self, abs_tol: f64) -> Result<Self> {
        QuadratureSpec::new(self.panels, self.nodes_per_panel, abs_tol)
    }

    pub fn panels(&self) -> usize {
        self.panels
    }

    pub fn nodes_per_panel(&self) -> usize {
        self.nodes_per_panel
    }

    pub fn abs_tol(&self) -> f64 {
        self.abs_tol
    }

    fn rule(&self) -> &'static GaussRule {
        gauss_legendre(self.nodes_per_panel)
    }
}

/// Nodes and weights of the composite rule on `[a, b]` with `panels` panels.
pub fn composite_nodes(a: f64, b: f64, panels: usize, rule: &GaussRule) -> Vec<(f64, f64)> {
    let h = (b - a) / panels as f64;
    let mut out = Vec::with_capacity(panels * rule.nodes.len());
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            out.push((mid + 0.5 * h * x, 0.5 * h * w));
        }
    }
    out
}

fn fixed_1d<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: usize, rule: &GaussRule) -> f64 {
    composite_nodes(a, b, panels, rule)
        .into_iter()
        .map(|(x, w)| w * f(x))
        .sum()
}

/// `∫_a^b f`, doubling the panel count until two successive composite
/// values agree within `spec.abs_tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let rule = spec.rule();
    let mut panels = spec.panels;
    let mut coarse = fixed_1d(&f, a, b, panels, rule);
    loop {
        let fine = fixed_1d(&f, a, b, 2 * panels, rule);
        let estimate = (fine - coarse).abs();
        if estimate <= spec.abs_tol {
            return Ok(fine);
        }
        if !estimate.is_finite() || 2 * panels >= MAX_PANELS {
            return Err(Error::QuadratureFailure {
                estimate,
                tol: spec.abs_tol,
                panels: 2 * panels,
            });
        }
        panels *= 2;
        coarse = fine;
    }
}

fn fixed_2d<F, G>(f: &F, x_range: (f64, f64), y_range: &G, panels: usize, rule: &GaussRule) -> f64
where
    F: Fn(f64, f64) -> f64 + Sync,
    G: Fn(f64) -> (f64, f64) + Sync,
{
    let outer = composite_nodes(x_range.0, x_range.1, panels, rule);
    // Rows are evaluated in parallel and reduced in index order.
    let rows: Vec<f64> = outer
        .par_iter()
        .map(|&(x, wx)| {
            let (y0, y1) = y_range(x);
            wx * fixed_1d(&|y| f(x, y), y0, y1, panels, rule)
        })
        .collect();
    rows.iter().sum()
}

/// `∫_{x0}^{x1} ∫_{y0(x)}^{y1(x)} f(x, y) dy dx` with a tensor-product
/// composite rule. The panel count per axis starts at `spec.panels` and is
/// doubled until the value agrees with the half-resolution value.
pub fn integrate_2d<F, G>(f: F, x_range: (f64, f64), y_range: G, spec: &QuadratureSpec) -> Result<f64>
where
    F: Fn(f64, f64) -> f64 + Sync,
    G: Fn(f64) -> (f64, f64) + Sync,
{
    let rule = spec.rule();
    let mut panels = spec.panels.max(2);
    let mut coarse = fixed_2d(&f, x_range, &y_range, panels / 2, rule);
    loop {
        let fine = fixed_2d(&f, x_range, &y_range, panels, rule);
        let estimate = (fine - coarse).abs();
        if estimate <= spec.abs_tol {
            return Ok(fine);
        }
        if !estimate.is_finite() || 2 * panels > MAX_PANELS_2D {
            return Err(Error::QuadratureFailure {
                estimate,
                tol: spec.abs_tol,
                panels,
            });
        }
        panels *= 2;
        coarse = fine;
    }
}

/// Adaptive bisection: a panel is accepted when one 16-point rule and
/// the sum over its two halves agree within the panel's share of the
/// tolerance.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> Result<f64> {
    const ORDER: usize = 16;
    const MAX_DEPTH: u32 = 50;
    if a == b {
        return Ok(0.0);
    }
    let rule = gauss_legendre(ORDER);
    let panel = |lo: f64, hi: f64| fixed_1d(&f, lo, hi, 1, rule);

    let mut total = 0.0;
    let mut stack = vec![(a, b, panel(a, b), 0u32)];
    let width = (b - a).abs();
    while let Some((lo, hi, whole, depth)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let (left, right) = (panel(lo, mid), panel(mid, hi));
        let estimate = (left + right - whole).abs();
        let share = abs_tol * ((hi - lo).abs() / width).max(f64::EPSILON);
        if estimate <= share || estimate <= 1e-15 * (left + right).abs() {
            total += left + right;
        } else if depth >= MAX_DEPTH || !estimate.is_finite() {
            return Err(Error::QuadratureFailure {
                estimate,
                tol: abs_tol,
                panels: 1 << depth.min(62),
            });
        } else {
            stack.push((mid, hi, right, depth + 1));
            stack.push((lo, mid, left, depth + 1));
        }
    }
    Ok(total)
}
