//! Deterministic SVG rendering. Model y points up; SVG y points down, so
//! rows are flipped on output.

use std::fmt::Write as _;

use crate::geometry::FloorplanDrawing;

pub const STROKE_WIDTH: u32 = 2;

/// One `<rect>` per block, sorted by `(y1, x1)`, coordinates multiplied by
/// `scale` (clamped to at least 1).
pub fn render_svg(f: &FloorplanDrawing, scale: u32) -> String {
    let s = i64::from(scale.max(1));
    let pad = i64::from(STROKE_WIDTH);
    let (w, h) = (f.width() * s, f.height() * s);
    let mut order: Vec<usize> = (0..f.len()).collect();
    order.sort_by_key(|&i| {
        let b = f.blocks()[i];
        (b.y1, b.x1, i)
    });
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="{} {} {} {}">"#,
        w + 2 * pad,
        h + 2 * pad,
        -pad,
        -pad,
        w + 2 * pad,
        h + 2 * pad
    );
    for i in order {
        let b = f.blocks()[i];
        let _ = writeln!(
            out,
            r##"  <rect data-block="{i}" x="{}" y="{}" width="{}" height="{}" fill="#f4f1e8" stroke="#222" stroke-width="{STROKE_WIDTH}"/>"##,
            b.x1 * s,
            (f.height() - b.y2) * s,
            b.width() * s,
            b.height() * s
        );
    }
    out.push_str("</svg>\n");
    out
}
