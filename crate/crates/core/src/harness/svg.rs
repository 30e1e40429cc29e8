//! Minimal self-contained SVG line plots of sweep summaries.

use std::fmt::Write as _;

use super::sweep::PointSummary;
use crate::config::Algorithm;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 70.0;
const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

fn color(algo: Algorithm) -> &'static str {
    COLORS[Algorithm::ALL.iter().position(|a| *a == algo).unwrap_or(0)]
}

fn span(lo: f64, hi: f64) -> (f64, f64) {
    if hi > lo {
        (lo, hi)
    } else {
        let pad = lo.abs().max(1.0) * 0.05;
        (lo - pad, hi + pad)
    }
}

/// Plots `metric` (mean ± std) against the axis value, one line per algorithm.
pub fn plot_metric(summaries: &[PointSummary], axis: &str, metric: &str) -> String {
    let pts: Vec<(Algorithm, f64, f64, f64)> = summaries
        .iter()
        .filter_map(|s| Some((s.algo, s.value, s.mean.get(metric)?, s.std.get(metric)?)))
        .collect();
    let (x0, x1) = span(
        pts.iter().map(|p| p.1).fold(f64::INFINITY, f64::min),
        pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max),
    );
    let (y0, y1) = span(
        pts.iter().map(|p| p.2 - p.3).fold(f64::INFINITY, f64::min),
        pts.iter().map(|p| p.2 + p.3).fold(f64::NEG_INFINITY, f64::max),
    );
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let (left, right, top, bottom) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(svg, r#"<path d="M{left} {top} L{left} {bottom} L{right} {bottom}" stroke="black" fill="none"/>"#);
    let _ = writeln!(svg, r#"<text x="{}" y="{}" text-anchor="middle">{axis}</text>"#, WIDTH / 2.0, HEIGHT - 20.0);
    let _ = writeln!(svg, r#"<text x="20" y="{}" transform="rotate(-90 20 {})" text-anchor="middle">{metric}</text>"#, HEIGHT / 2.0, HEIGHT / 2.0);
    for (k, (v, anchor_y)) in [(y0, bottom), (y1, top)].into_iter().enumerate() {
        let _ = writeln!(svg, r#"<text x="{}" y="{}" text-anchor="end" data-tick="y{k}">{v:.4e}</text>"#, left - 6.0, anchor_y + 4.0);
    }
    for (k, (v, anchor_x)) in [(x0, left), (x1, right)].into_iter().enumerate() {
        let _ = writeln!(svg, r#"<text x="{anchor_x}" y="{}" text-anchor="middle" data-tick="x{k}">{v:.4e}</text>"#, bottom + 16.0);
    }

    let mut algos: Vec<Algorithm> = pts.iter().map(|p| p.0).collect();
    algos.dedup();
    for (row, algo) in algos.iter().enumerate() {
        let mut line: Vec<&(Algorithm, f64, f64, f64)> = pts.iter().filter(|p| p.0 == *algo).collect();
        line.sort_by(|a, b| a.1.total_cmp(&b.1));
        let c = color(*algo);
        let path: Vec<String> = line.iter().map(|p| format!("{:.2},{:.2}", sx(p.1), sy(p.2))).collect();
        let _ = writeln!(svg, r#"<polyline points="{}" stroke="{c}" stroke-width="2" fill="none"/>"#, path.join(" "));
        for p in &line {
            let (x, y) = (sx(p.1), sy(p.2));
            let _ = writeln!(svg, r#"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="{c}"/>"#, sy(p.2 - p.3), sy(p.2 + p.3));
            let _ = writeln!(svg, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="{c}"/>"#);
        }
        let ly = top + 16.0 * row as f64;
        let _ = writeln!(svg, r#"<text x="{}" y="{ly}" fill="{c}">{}</text>"#, right - 80.0, algo.name());
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::sweep::Metrics;

    #[test]
    fn one_polyline_per_algorithm() {
        let s = |algo, value, u| PointSummary {
            algo,
            value,
            seeds: 3,
            mean: Metrics { utility: u, ..Metrics::default() },
            std: Metrics::default(),
        };
        let sums = [s(Algorithm::Jcorm, 1.0, 2.0), s(Algorithm::Jcorm, 2.0, 3.0), s(Algorithm::Atsm, 1.0, 1.0), s(Algorithm::Atsm, 2.0, 1.0)];
        let svg = plot_metric(&sums, "omega", "utility");
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains(">jcorm<") && svg.contains(">atsm<"));
    }
}
