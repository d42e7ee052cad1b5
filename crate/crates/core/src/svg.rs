//! Self-contained SVG renderings of a barcode.
//!
//! The barcode style draws one `<line class="bar">` per interval copy,
//! stacked in canonical order. The diagram style draws one
//! `<circle class="point">` per distinct entry at `(birth, death)` and
//! annotates multiplicities above 1.

use std::fmt::Write;

use crate::zigzag::Barcode;

const MARGIN: f64 = 40.0;
const STEP: f64 = 48.0;
const ROW: f64 = 14.0;
const PALETTE: [&str; 4] = ["#1f4e9c", "#b8431c", "#2d7d32", "#6a3d9a"];

fn colour(dim: Option<usize>) -> &'static str {
    PALETTE[dim.unwrap_or(0) % PALETTE.len()]
}

fn header(out: &mut String, width: f64, height: f64) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, r#"<rect width="{width}" height="{height}" fill="white"/>"#);
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn render_barcode(bc: &Barcode) -> String {
    let grid = bc.grid();
    let n = grid.len().max(1);
    let bars = bc.total();
    let width = 2.0 * MARGIN + STEP * n as f64;
    let height = 2.0 * MARGIN + ROW * bars.max(1) as f64;
    let x = |i: f64| MARGIN + STEP * (i - 0.5);
    let axis_y = height - MARGIN + 8.0;
    let mut out = String::new();
    header(&mut out, width, height);
    let _ = writeln!(
        out,
        r#"<line class="axis" x1="{}" y1="{axis_y}" x2="{}" y2="{axis_y}" stroke="black"/>"#,
        MARGIN,
        width - MARGIN
    );
    for i in 1..=grid.len() {
        let xi = x(i as f64);
        let _ = writeln!(
            out,
            r#"<line class="tick" x1="{xi}" y1="{axis_y}" x2="{xi}" y2="{}" stroke="black"/>"#,
            axis_y + 4.0
        );
        let _ = writeln!(
            out,
            r#"<text class="label" x="{xi}" y="{}" font-size="11" text-anchor="middle">{}</text>"#,
            axis_y + 16.0,
            escape(&grid.label(i))
        );
    }
    let mut row = 0;
    for (iv, dim, mult) in bc.iter() {
        for _ in 0..mult {
            let y = MARGIN + ROW * (row as f64 + 0.5);
            let _ = writeln!(
                out,
                r#"<line class="bar" x1="{}" y1="{y}" x2="{}" y2="{y}" stroke="{}" stroke-width="6" stroke-linecap="round"/>"#,
                x(iv.birth as f64 - 0.3),
                x(iv.death as f64 + 0.3),
                colour(dim)
            );
            row += 1;
        }
    }
    out.push_str("</svg>\n");
    out
}

pub fn render_diagram(bc: &Barcode) -> String {
    let grid = bc.grid();
    let n = grid.len().max(1) as f64;
    let size = 2.0 * MARGIN + STEP * n;
    // birth on the horizontal axis, death on the vertical axis (upwards)
    let px = |i: f64| MARGIN + STEP * (i - 0.5);
    let py = |i: f64| size - px(i);
    let mut out = String::new();
    header(&mut out, size, size);
    let (lo, hi) = (px(0.5), px(n + 0.5));
    let _ = writeln!(
        out,
        r#"<line class="axis" x1="{lo}" y1="{}" x2="{hi}" y2="{}" stroke="black"/>"#,
        py(0.5),
        py(0.5)
    );
    let _ = writeln!(
        out,
        r#"<line class="axis" x1="{lo}" y1="{}" x2="{lo}" y2="{}" stroke="black"/>"#,
        py(0.5),
        py(n + 0.5)
    );
    let _ = writeln!(
        out,
        r#"<line class="diagonal" x1="{lo}" y1="{}" x2="{hi}" y2="{}" stroke="gray" stroke-dasharray="4 3"/>"#,
        py(0.5),
        py(n + 0.5)
    );
    for i in 1..=grid.len() {
        let label = escape(&grid.label(i));
        let _ = writeln!(
            out,
            r#"<text class="label" x="{}" y="{}" font-size="11" text-anchor="middle">{label}</text>"#,
            px(i as f64),
            py(0.5) + 16.0
        );
        let _ = writeln!(
            out,
            r#"<text class="label" x="{}" y="{}" font-size="11" text-anchor="end">{label}</text>"#,
            lo - 6.0,
            py(i as f64) + 4.0
        );
    }
    for (iv, dim, mult) in bc.iter() {
        let (cx, cy) = (px(iv.birth as f64), py(iv.death as f64));
        let _ = writeln!(
            out,
            r#"<circle class="point" cx="{cx}" cy="{cy}" r="5" fill="{}"/>"#,
            colour(dim)
        );
        if mult > 1 {
            let _ = writeln!(
                out,
                r#"<text class="multiplicity" x="{}" y="{}" font-size="11">{mult}</text>"#,
                cx + 7.0,
                cy - 7.0
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zigzag::Grid;

    fn sample() -> Barcode {
        Barcode::from_intervals(4, [(1, 2), (1, 3), (3, 3), (3, 4), (3, 4)])
    }

    #[test]
    fn one_bar_per_copy() {
        let svg = render_barcode(&sample());
        assert_eq!(svg.matches(r#"class="bar""#).count(), 5);
        assert!(svg.starts_with("<svg"));
    }

    #[test]
    fn one_point_per_distinct_entry() {
        let svg = render_diagram(&sample());
        assert_eq!(svg.matches(r#"class="point""#).count(), 4);
        assert_eq!(svg.matches(r#"class="multiplicity""#).count(), 1);
        assert!(svg.contains(">2</text>"));
    }

    #[test]
    fn empty_barcode_draws_axes_only() {
        let empty = Barcode::new(Grid::Integer { len: 3 });
        for svg in [render_barcode(&empty), render_diagram(&empty)] {
            assert!(svg.contains(r#"class="axis""#));
            assert!(!svg.contains(r#"class="bar""#));
            assert!(!svg.contains(r#"class="point""#));
        }
    }
}
