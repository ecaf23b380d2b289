//! Plot of the Gieseker wall and a few potential walls nested inside it.

use std::fmt::Write as _;

use num_traits::ToPrimitive;
use p2walls_core::{ChernChar, GiesekerReport};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 30.0;

/// Pure-string SVG. The horizontal range is `[center − 1.5ρ, μ + 0.5]`.
pub fn wall_svg(xi: &ChernChar, report: &GiesekerReport, nested: usize) -> String {
    let mu = xi.slope().and_then(|m| m.to_f64()).unwrap_or(0.0);
    let disc = xi.discriminant().and_then(|d| d.to_f64()).unwrap_or(0.0);
    let center = report.center().to_f64().unwrap_or(0.0);
    let rho = report.radius_sq().to_f64().unwrap_or(0.0).sqrt();
    let s_min = center - 1.5 * rho;
    let s_max = mu + 0.5;
    let scale = (WIDTH - 2.0 * MARGIN) / (s_max - s_min);
    let t_max = (HEIGHT - 2.0 * MARGIN) / scale;
    let x = |s: f64| MARGIN + (s - s_min) * scale;
    let baseline = HEIGHT - MARGIN;
    let y = |t: f64| baseline - t * scale;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, r#"  <title>walls for {}</title>"#, xi.to_invariant_string());
    let _ = writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"  <line class="axis" x1="{:.2}" y1="{baseline:.2}" x2="{:.2}" y2="{baseline:.2}" stroke="black"/>"#,
        x(s_min),
        x(s_max)
    );
    let _ = writeln!(
        out,
        r#"  <line class="vertical" x1="{:.2}" y1="{baseline:.2}" x2="{:.2}" y2="{:.2}" stroke="gray" stroke-dasharray="4 3"/>"#,
        x(mu),
        x(mu),
        y(t_max)
    );
    let arc = |c: f64, r: f64, class: &str, stroke: &str, out: &mut String| {
        let _ = writeln!(
            out,
            r#"  <path class="{class}" d="M {:.2} {baseline:.2} A {:.2} {:.2} 0 0 1 {:.2} {baseline:.2}" fill="none" stroke="{stroke}"/>"#,
            x(c - r),
            r * scale,
            r * scale,
            x(c + r)
        );
    };
    // Walls left of μ are (s − μ)² − 2Δ = ρ², nonempty for s < μ − √(2Δ).
    let inner_limit = mu - (2.0 * disc).sqrt();
    for k in 1..=nested {
        let c = center + (inner_limit - center) * k as f64 / (nested + 1) as f64;
        let r_sq = (c - mu).powi(2) - 2.0 * disc;
        if r_sq > 0.0 {
            arc(c, r_sq.sqrt(), "potential", "steelblue", &mut out);
        }
    }
    arc(center, rho, "gieseker", "crimson", &mut out);
    let _ = writeln!(
        out,
        r#"  <text x="{:.2}" y="{:.2}" font-size="12">s = {}</text>"#,
        x(mu) + 4.0,
        y(t_max) + 12.0,
        xi.slope().map(|m| p2walls_core::exactmath::fmt_rat(&m)).unwrap_or_default()
    );
    let _ = writeln!(
        out,
        r#"  <text x="{:.2}" y="{:.2}" font-size="12">center {}, radius^2 {}</text>"#,
        x(center),
        (y(rho) - 6.0).max(12.0),
        p2walls_core::exactmath::fmt_rat(report.center()),
        p2walls_core::exactmath::fmt_rat(report.radius_sq())
    );
    out.push_str("</svg>\n");
    out
}
