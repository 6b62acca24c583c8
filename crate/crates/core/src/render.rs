//! SVG drawing of a layered graph: layer one solid, layer two dashed,
//! edges in both layers solid and thick.

use std::fmt::Write;

use crate::graph::{Layer, LayeredGraph};

pub const CANVAS: f64 = 1000.0;
pub const MARGIN: f64 = 0.05 * CANVAS;

pub fn render_svg(g: &LayeredGraph) -> String {
    let pts = g.points().points();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for p in pts {
        x0 = x0.min(p.x as f64);
        x1 = x1.max(p.x as f64);
        y0 = y0.min(p.y as f64);
        y1 = y1.max(p.y as f64);
    }
    let span = (x1 - x0).max(y1 - y0);
    let inner = CANVAS - 2.0 * MARGIN;
    let scale = if span > 0.0 { inner / span } else { 0.0 };
    // centre the drawing on the shorter axis; y grows upward in the input
    let ox = MARGIN + (inner - (x1 - x0) * scale) / 2.0;
    let oy = MARGIN + (inner - (y1 - y0) * scale) / 2.0;
    let at = |v: usize| {
        let p = pts[v];
        (ox + (p.x as f64 - x0) * scale, CANVAS - oy - (p.y as f64 - y0) * scale)
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {CANVAS} {CANVAS}" width="{CANVAS}" height="{CANVAS}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (e, layer) in g.edges() {
        let ((ax, ay), (bx, by)) = (at(e.u()), at(e.v()));
        let style = match layer {
            Layer::First => r##"stroke="#1f4e9c" stroke-width="1.5""##,
            Layer::Second => r##"stroke="#c0392b" stroke-width="1.5" stroke-dasharray="8 5""##,
            Layer::Both => r##"stroke="#222222" stroke-width="4""##,
        };
        let _ = writeln!(
            s,
            r#"<line x1="{ax:.2}" y1="{ay:.2}" x2="{bx:.2}" y2="{by:.2}" {style} data-layer="{}"/>"#,
            layer.code()
        );
    }
    for v in 0..pts.len() {
        let (x, y) = at(v);
        let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="5" fill="black"><title>{v}</title></circle>"#);
    }
    s.push_str("</svg>\n");
    s
}
