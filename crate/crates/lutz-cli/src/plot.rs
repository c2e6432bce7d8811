//! SVG heat map and CSV dump of a sampled slice.

use std::fmt::Write as _;

use lutz_core::slice::{Slice, LOCUS_MARK_TOL};

pub const CANVAS: usize = 800;
const MARGIN: f64 = 60.0;
const POSITIVE: &str = "#9ecae1";
const NEGATIVE: &str = "#fc9272";
const ZERO: &str = "#bdbdbd";
const LOCUS: &str = "#d7301f";

fn sign_color(v: f64, scale: f64) -> &'static str {
    if v.abs() <= LOCUS_MARK_TOL * scale {
        ZERO
    } else if v > 0.0 {
        POSITIVE
    } else {
        NEGATIVE
    }
}

/// Pixel box of sample k along an axis: halfway to each neighbour.
fn cell_edges(coords: &[f64], lo: f64, hi: f64, k: usize) -> (f64, f64) {
    let a = if k == 0 { lo } else { 0.5 * (coords[k - 1] + coords[k]) };
    let b = if k + 1 == coords.len() { hi } else { 0.5 * (coords[k] + coords[k + 1]) };
    (a, b)
}

pub fn render_svg(slice: &Slice, title: &str) -> String {
    let size = CANVAS as f64;
    let span = size - 2.0 * MARGIN;
    let (xa, ya) = (&slice.x_axis, &slice.y_axis);
    let px = |x: f64| MARGIN + span * (x - xa.lo) / (xa.hi - xa.lo);
    let py = |y: f64| size - MARGIN - span * (y - ya.lo) / (ya.hi - ya.lo);
    let m = slice.points;
    let xs: Vec<f64> = slice.samples[..m].iter().map(|s| s.x).collect();
    let ys: Vec<f64> = slice.samples.iter().step_by(m).map(|s| s.y).collect();
    let scale = slice.min.zip(slice.max).map_or(1.0, |(a, b)| a.abs().max(b.abs()).max(1.0));

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">"#
    );
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{CANVAS}" height="{CANVAS}" fill="white"/>"#);
    let _ = writeln!(out, r#"<g shape-rendering="crispEdges">"#);
    for (j, row) in slice.samples.chunks(m).enumerate() {
        let (y0, y1) = cell_edges(&ys, ya.lo, ya.hi, j);
        for (i, s) in row.iter().enumerate() {
            let Some(v) = s.value else { continue };
            let (x0, x1) = cell_edges(&xs, xa.lo, xa.hi, i);
            let _ = writeln!(
                out,
                r#"<rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="{}"/>"#,
                px(x0),
                py(y1),
                px(x1) - px(x0),
                py(y0) - py(y1),
                sign_color(v, scale)
            );
        }
    }
    let _ = writeln!(out, "</g>");
    for &(x, y) in &slice.locus {
        let _ = writeln!(out, r#"<circle cx="{:.3}" cy="{:.3}" r="4" fill="{LOCUS}"/>"#, px(x), py(y));
    }
    let _ = writeln!(
        out,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{span}" height="{span}" fill="none" stroke="black"/>"#
    );
    let label = |out: &mut String, x: f64, y: f64, anchor: &str, text: &str| {
        let _ = writeln!(
            out,
            r#"<text x="{x:.3}" y="{y:.3}" font-family="monospace" font-size="14" text-anchor="{anchor}">{}</text>"#,
            escape(text)
        );
    };
    label(&mut out, size / 2.0, MARGIN / 2.0, "middle", title);
    label(&mut out, size / 2.0, size - MARGIN / 4.0, "middle", &xa.name);
    label(&mut out, MARGIN / 4.0, size / 2.0, "start", &ya.name);
    label(&mut out, MARGIN, size - MARGIN / 2.0, "start", &format!("{:.4}", xa.lo));
    label(&mut out, size - MARGIN, size - MARGIN / 2.0, "end", &format!("{:.4}", xa.hi));
    label(&mut out, MARGIN - 4.0, size - MARGIN, "end", &format!("{:.4}", ya.lo));
    label(&mut out, MARGIN - 4.0, MARGIN + 10.0, "end", &format!("{:.4}", ya.hi));
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Columns x, y, value; samples outside the domain are omitted.
pub fn render_csv(slice: &Slice) -> String {
    let mut out = String::from("x,y,value\n");
    for s in &slice.samples {
        if let Some(v) = s.value {
            let _ = writeln!(out, "{},{},{}", s.x, s.y, v);
        }
    }
    out
}
