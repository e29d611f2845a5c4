//! Staircase drawing of a cylinder diagram with its default metric.

use std::fmt::Write as _;

use crate::diagram::CylinderDiagram;
use crate::error::Result;
use crate::origami::default_metric;

const UNIT: f64 = 40.0;
const MARGIN: f64 = 20.0;

/// One rectangle per cylinder, stacked bottom to top in diagram order.
/// Bottom labels are written under each rectangle and top labels above
/// it; dots mark the cone points.
pub fn render_svg(d: &CylinderDiagram) -> Result<String> {
    let m = default_metric(d)?;
    let n = d.num_cylinders();
    let widths: Vec<f64> = (0..n).map(|i| m.width(d, i) as f64).collect();
    let total_w = widths.iter().cloned().fold(0.0, f64::max);
    let height = n as f64 * 1.6 * UNIT + 2.0 * MARGIN;
    let width = total_w * UNIT + 2.0 * MARGIN;
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    for (i, c) in d.cylinders().iter().enumerate() {
        let y0 = height - MARGIN - (i as f64 * 1.6 + 1.0) * UNIT - 0.3 * UNIT;
        let x0 = MARGIN;
        let w = widths[i] * UNIT;
        writeln!(
            s,
            r##"  <rect x="{x0}" y="{y0}" width="{w}" height="{UNIT}" fill="#dde8f4" stroke="black"/>"##
        )
        .unwrap();
        writeln!(
            s,
            r#"  <text x="{}" y="{}" font-size="12" text-anchor="middle">C{}</text>"#,
            x0 + w / 2.0,
            y0 + UNIT / 2.0 + 4.0,
            i + 1
        )
        .unwrap();
        let mut x = 0.0;
        for l in &c.bottom {
            let len = m.lengths[l] as f64;
            let cx = x0 + (x + len / 2.0) * UNIT;
            writeln!(s, r#"  <text x="{cx}" y="{}" font-size="10" text-anchor="middle">{l}</text>"#, y0 + UNIT + 11.0).unwrap();
            writeln!(s, r#"  <circle cx="{}" cy="{}" r="2"/>"#, x0 + x * UNIT, y0 + UNIT).unwrap();
            x += len;
        }
        let mut x = m.twists[i] as f64;
        for l in &c.top {
            let len = m.lengths[l] as f64;
            let cx = x0 + ((x + len / 2.0) % widths[i]) * UNIT;
            writeln!(s, r#"  <text x="{cx}" y="{}" font-size="10" text-anchor="middle">{l}</text>"#, y0 - 3.0).unwrap();
            writeln!(s, r#"  <circle cx="{}" cy="{y0}" r="2"/>"#, x0 + (x % widths[i]) * UNIT).unwrap();
            x += len;
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_single_rectangle() {
        let svg = render_svg(&"(1)-(1)".parse().unwrap()).unwrap();
        assert_eq!(svg.matches("<rect").count(), 1);
        assert!(svg.starts_with("<svg"));
    }
}
