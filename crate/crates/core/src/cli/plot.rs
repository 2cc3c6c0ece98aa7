//! Self-contained SVG pictures of a domain, its foliating subfamily, and
//! optionally a density heatmap.
//!
//! All geometry is written in half-plane coordinates (`λ` to the right,
//! `t` up) inside one group whose transform maps them to pixels.

use std::fmt::Write as _;
use std::path::Path;

use crate::closed_form::extremal_density;
use crate::cli::output::fmt9;
use crate::domains::{sample_subfamily_with_resolution, Domain, FamilyKind};
use crate::error::{Error, Result};
use crate::hyp_core::HPoint;

pub const DEFAULT_RASTER: usize = 256;
const WIDTH_PX: f64 = 800.0;
const MARGIN_PX: f64 = 24.0;
const PLOT_CURVES: usize = 9;
const CURVE_SAMPLES: usize = 129;

/// Colors for the log-scaled density, low to high.
pub const RAMP: [&str; 8] = [
    "#440154", "#46327e", "#365c8d", "#277f8e", "#1fa187", "#4ac16d", "#a0da39", "#fde725",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlotRequest {
    pub domain: Domain,
    pub family: FamilyKind,
    pub density: bool,
    pub raster: usize,
}

/// Data-space bounding box `(x0, x1, y0, y1)` with a 5% margin.
fn bounds(domain: &Domain) -> (f64, f64, f64, f64) {
    let (x0, x1, y0, y1) = match domain {
        Domain::Quad(q) => (1.0, q.a().hypot(q.b()), -q.b(), q.b()),
        Domain::Annulus(an) => {
            let c = an.outer_circle().to_euclidean();
            let r = c.radius();
            (c.center.0 - r, c.center.0 + r, c.center.1 - r, c.center.1 + r)
        }
    };
    let pad = 0.05 * (x1 - x0).max(y1 - y0);
    (x0 - pad, x1 + pad, y0 - pad, y1 + pad)
}

fn heatmap(svg: &mut String, req: &PlotRequest, bbox: (f64, f64, f64, f64)) -> Result<()> {
    let rho = extremal_density(req.family, &req.domain)?;
    let n = req.raster;
    let (x0, x1, y0, y1) = bbox;
    let (dx, dy) = ((x1 - x0) / n as f64, (y1 - y0) / n as f64);
    let mut logs = vec![None; n * n];
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for j in 0..n {
        for i in 0..n {
            let Ok(p) = HPoint::new(x0 + (i as f64 + 0.5) * dx, y0 + (j as f64 + 0.5) * dy) else {
                continue;
            };
            let v = rho.evaluate(&p);
            if v > 0.0 {
                let l = v.ln();
                lo = lo.min(l);
                hi = hi.max(l);
                logs[j * n + i] = Some(l);
            }
        }
    }
    let bin = |l: f64| -> usize {
        if hi > lo {
            (((l - lo) / (hi - lo)) * RAMP.len() as f64).floor().min(RAMP.len() as f64 - 1.0) as usize
        } else {
            RAMP.len() - 1
        }
    };
    svg.push_str("<g class=\"density\" shape-rendering=\"crispEdges\">\n");
    for j in 0..n {
        let mut i = 0;
        while i < n {
            let Some(l) = logs[j * n + i] else {
                i += 1;
                continue;
            };
            let color = bin(l);
            let start = i;
            while i < n && logs[j * n + i].map(bin) == Some(color) {
                i += 1;
            }
            writeln!(
                svg,
                "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>",
                fmt9(x0 + start as f64 * dx),
                fmt9(y0 + j as f64 * dy),
                fmt9((i - start) as f64 * dx),
                fmt9(dy),
                RAMP[color]
            )
            .expect("write to string");
        }
    }
    svg.push_str("</g>\n");
    Ok(())
}

fn outline(svg: &mut String, domain: &Domain) {
    svg.push_str("<g class=\"outline\" fill=\"none\" stroke=\"#000000\" stroke-width=\"2\">\n");
    match domain {
        Domain::Quad(q) => {
            let (a, b) = (q.a(), q.b());
            for (x, r) in [(1.0, 1f64.hypot(b)), (a, a.hypot(b))] {
                writeln!(
                    svg,
                    "<path d=\"M {x} {nb} A {r} {r} 0 0 1 {x} {b}\" vector-effect=\"non-scaling-stroke\"/>",
                    x = fmt9(x),
                    nb = fmt9(-b),
                    b = fmt9(b),
                    r = fmt9(r)
                )
                .expect("write to string");
            }
            for y in [-b, b] {
                writeln!(
                    svg,
                    "<line x1=\"1\" y1=\"{y}\" x2=\"{a}\" y2=\"{y}\" vector-effect=\"non-scaling-stroke\"/>",
                    y = fmt9(y),
                    a = fmt9(a)
                )
                .expect("write to string");
            }
        }
        Domain::Annulus(an) => {
            for c in [an.inner_circle(), an.outer_circle()] {
                let e = c.to_euclidean();
                writeln!(
                    svg,
                    "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" vector-effect=\"non-scaling-stroke\"/>",
                    fmt9(e.center.0),
                    fmt9(e.center.1),
                    fmt9(e.radius())
                )
                .expect("write to string");
            }
        }
    }
    svg.push_str("</g>\n");
}

fn curves(svg: &mut String, req: &PlotRequest) -> Result<()> {
    let family = sample_subfamily_with_resolution(req.family, &req.domain, PLOT_CURVES, CURVE_SAMPLES)?;
    svg.push_str("<g class=\"curves\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"1\">\n");
    for c in &family {
        let pts: Vec<String> = c
            .samples()
            .iter()
            .map(|p| format!("{},{}", fmt9(p.lambda()), fmt9(p.t())))
            .collect();
        writeln!(
            svg,
            "<polyline points=\"{}\" vector-effect=\"non-scaling-stroke\"/>",
            pts.join(" ")
        )
        .expect("write to string");
    }
    svg.push_str("</g>\n");
    Ok(())
}

/// SVG text for `req`. The output depends only on `req`.
pub fn render_svg(req: &PlotRequest) -> Result<String> {
    if req.family.is_quad() != matches!(req.domain, Domain::Quad(_)) {
        return Err(Error::BadParameters(format!(
            "family {} does not live on the given domain",
            req.family
        )));
    }
    let bbox = bounds(&req.domain);
    let (x0, x1, y0, y1) = bbox;
    let scale = (WIDTH_PX - 2.0 * MARGIN_PX) / (x1 - x0);
    let height = (y1 - y0) * scale + 2.0 * MARGIN_PX;
    let mut svg = String::new();
    writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">",
        w = fmt9(WIDTH_PX),
        h = fmt9(height)
    )
    .expect("write to string");
    writeln!(svg, "<title>{}</title>", req.family.name()).expect("write to string");
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n");
    writeln!(
        svg,
        "<g transform=\"matrix({s} 0 0 {ns} {tx} {ty})\">",
        s = fmt9(scale),
        ns = fmt9(-scale),
        tx = fmt9(MARGIN_PX - x0 * scale),
        ty = fmt9(MARGIN_PX + y1 * scale)
    )
    .expect("write to string");
    if req.density {
        heatmap(&mut svg, req, bbox)?;
    }
    outline(&mut svg, &req.domain);
    curves(&mut svg, req)?;
    svg.push_str("</g>\n</svg>\n");
    Ok(svg)
}

/// Renders `req` and writes it to `path`.
pub fn emit_plot(req: &PlotRequest, path: &Path) -> Result<()> {
    let svg = render_svg(req)?;
    std::fs::write(path, svg).map_err(|e| Error::IoFailure(format!("{}: {e}", path.display())))
}
