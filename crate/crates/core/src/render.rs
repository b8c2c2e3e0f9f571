//! SVG drawings of a polygon with every vertex pair connected; unit-length
//! pairs are red and drawn on top.

use std::fmt::Write;

use crate::io::fixed10;
use crate::model::PolygonConfig;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderOptions {
    pub canvas_px: u32,
    /// Pixels per unit length.
    pub unit_scale_px: f64,
    /// Pairs whose length is within this of 1 are drawn red.
    pub unit_tolerance: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self { canvas_px: 800, unit_scale_px: 700.0, unit_tolerance: 1e-6 }
    }
}

pub const UNIT_STROKE: &str = "#d62728";
pub const OTHER_STROKE: &str = "#000000";

/// Vertex pairs `(i, j)`, `i < j`, whose distance is within `tol` of 1.
pub fn unit_pairs(config: &PolygonConfig, tol: f64) -> Vec<(usize, usize)> {
    let pts = config.cartesian();
    let mut out = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if (dist(pts[i], pts[j]) - 1.0).abs() <= tol {
                out.push((i, j));
            }
        }
    }
    out
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// SVG 1.1 document. The fixed vertex sits at the bottom centre and the
/// mirror axis is vertical. Each segment carries `data-i`/`data-j` vertex
/// indices; `n` and the area are in the `<desc>` element.
pub fn render_svg(config: &PolygonConfig, opts: &RenderOptions) -> String {
    let size = opts.canvas_px as f64;
    let scale = opts.unit_scale_px;
    let to_px = |p: [f64; 2]| [size / 2.0 + p[0] * scale, size / 2.0 + (0.5 - p[1]) * scale];
    let pts = config.cartesian();
    let px: Vec<[f64; 2]> = pts.iter().map(|&p| to_px(p)).collect();

    let mut black = Vec::new();
    let mut red = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if (dist(pts[i], pts[j]) - 1.0).abs() <= opts.unit_tolerance {
                red.push((i, j));
            } else {
                black.push((i, j));
            }
        }
    }

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
        opts.canvas_px
    );
    let _ = writeln!(svg, "  <title>n = {}</title>", config.n());
    let _ = writeln!(svg, "  <desc>n={} objective={}</desc>", config.n(), fixed10(config.area()));
    let _ = writeln!(svg, r#"  <rect width="100%" height="100%" fill="white"/>"#);
    for (pairs, stroke, width, class) in [(&black, OTHER_STROKE, 0.6, "other"), (&red, UNIT_STROKE, 1.5, "unit")] {
        for &(i, j) in pairs {
            let _ = writeln!(
                svg,
                r#"  <line class="{class}" data-i="{i}" data-j="{j}" x1="{:.4}" y1="{:.4}" x2="{:.4}" y2="{:.4}" stroke="{stroke}" stroke-width="{width}"/>"#,
                px[i][0], px[i][1], px[j][0], px[j][1]
            );
        }
    }
    for p in &px {
        let _ = writeln!(svg, r#"  <circle cx="{:.4}" cy="{:.4}" r="3" fill="black"/>"#, p[0], p[1]);
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn degenerate_config_has_no_unit_segments() {
        let c = PolygonConfig::from_free(vec![0.0; 4], vec![0.5, 1.0, 1.5, 2.0]).unwrap();
        let svg = render_svg(&c, &RenderOptions::default());
        assert_eq!(svg.matches("<line").count(), 10);
        assert_eq!(svg.matches(r#"class="unit""#).count(), 0);
    }

    #[test]
    fn equilateral_triangle_is_all_red() {
        let c = PolygonConfig::from_free(vec![1.0, 1.0], vec![PI / 3.0, 2.0 * PI / 3.0]).unwrap();
        assert_eq!(unit_pairs(&c, 1e-9).len(), 3);
        let svg = render_svg(&c, &RenderOptions::default());
        assert_eq!(svg.matches(r#"class="unit""#).count(), 3);
        assert!(svg.contains("<desc>n=3 objective=0.4330127019</desc>"));
    }

    #[test]
    fn red_segments_follow_black_ones() {
        let c = PolygonConfig::from_free(
            vec![0.5f64.sqrt(), 1.0, 0.5f64.sqrt()],
            vec![PI / 4.0, PI / 2.0, 3.0 * PI / 4.0],
        )
        .unwrap();
        let svg = render_svg(&c, &RenderOptions::default());
        let last_black = svg.rfind(r#"class="other""#).unwrap();
        let first_red = svg.find(r#"class="unit""#).unwrap();
        assert!(last_black < first_red);
        assert_eq!(svg.matches(r#"class="unit""#).count(), 2);
    }
}
