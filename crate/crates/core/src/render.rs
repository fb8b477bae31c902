//! SVG schematic of a genus-1 diagram.
//!
//! Each copy of the torus is a 100x100 square with opposite sides identified.
//! A curve of slope `p/q` runs in direction `(p, q)`: `0/1` is vertical and
//! `1/0` horizontal. Copies are joined by tubes carrying the bridges.

use std::fmt::Write as _;

use crate::construct::{CurveKind, Location};
use crate::error::{Error, Result};
use crate::schema::DiagramDocument;

const SIDE: f64 = 100.0;
const PITCH: f64 = 140.0;
const MARGIN: f64 = 20.0;
const LABEL_BAND: f64 = 24.0;

pub const RED: &str = "#CC0000";
pub const GREEN: &str = "#008800";
pub const BLUE: &str = "#0000CC";
const FRAME: &str = "#444444";

/// Segments drawn per curve are bounded by `|p| + |q|`.
pub const MAX_WRAPS: i128 = 4096;

fn fmt_num(x: f64) -> String {
    let r = (x * 100.0).round() / 100.0;
    let s = format!("{r:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

/// Pieces of the closed curve through `(x0, y0)` in direction `(p, q)` on the
/// unit torus, each inside `[0,1]^2`. Requires that the line avoids lattice
/// points, i.e. `x0 q - y0 p` is not an integer.
fn torus_segments(p: i128, q: i128, x0: f64, y0: f64) -> Vec<[(f64, f64); 2]> {
    let (pf, qf) = (p as f64, q as f64);
    let mut cuts = vec![0.0, 1.0];
    for (d, start) in [(pf, x0), (qf, y0)] {
        if d != 0.0 {
            let n = d.abs() as i64;
            for k in 0..=n {
                let target = if d > 0.0 { start.floor() + k as f64 + 1.0 } else { start.ceil() - k as f64 - 1.0 };
                let t = (target - start) / d;
                if t > 0.0 && t < 1.0 {
                    cuts.push(t);
                }
            }
        }
    }
    cuts.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    let at = |t: f64| (x0 + pf * t, y0 + qf * t);
    cuts.windows(2)
        .map(|w| {
            let (mx, my) = at((w[0] + w[1]) / 2.0);
            let (cx, cy) = (mx.floor(), my.floor());
            let (ax, ay) = at(w[0]);
            let (bx, by) = at(w[1]);
            [(ax - cx, ay - cy), (bx - cx, by - cy)]
        })
        .collect()
}

struct Canvas {
    body: String,
}

impl Canvas {
    fn square_origin(copy: usize) -> (f64, f64) {
        (MARGIN + (copy - 1) as f64 * PITCH, MARGIN)
    }

    /// Unit-square coordinates to page coordinates; `y` points up.
    fn page(copy: usize, (x, y): (f64, f64)) -> (f64, f64) {
        let (ox, oy) = Self::square_origin(copy);
        (ox + x * SIDE, oy + (1.0 - y) * SIDE)
    }

    fn frame(&mut self, copy: usize) {
        let (ox, oy) = Self::square_origin(copy);
        let _ = writeln!(
            self.body,
            r#"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="{FRAME}" stroke-width="1"/>"#,
            fmt_num(ox),
            fmt_num(oy),
            fmt_num(SIDE),
            fmt_num(SIDE)
        );
        // single chevrons pair left/right, double chevrons pair top/bottom
        let chevron = |cx: f64, cy: f64, dx: f64, dy: f64| {
            let (px, py) = (-dy * 4.0, dx * 4.0);
            format!(
                r#"<polyline points="{},{} {},{} {},{}" fill="none" stroke="{FRAME}" stroke-width="1"/>"#,
                fmt_num(cx - dx * 4.0 + px),
                fmt_num(cy - dy * 4.0 + py),
                fmt_num(cx),
                fmt_num(cy),
                fmt_num(cx - dx * 4.0 - px),
                fmt_num(cy - dy * 4.0 - py)
            )
        };
        let mid_y = oy + SIDE / 2.0;
        let mid_x = ox + SIDE / 2.0;
        for x in [ox, ox + SIDE] {
            let _ = writeln!(self.body, "{}", chevron(x, mid_y, 0.0, -1.0));
        }
        for y in [oy, oy + SIDE] {
            let _ = writeln!(self.body, "{}", chevron(mid_x - 3.0, y, 1.0, 0.0));
            let _ = writeln!(self.body, "{}", chevron(mid_x + 3.0, y, 1.0, 0.0));
        }
    }

    fn curve(&mut self, copy: usize, p: i128, q: i128, colour: &str, x0: f64, y0: f64) {
        let mut d = String::new();
        for [a, b] in torus_segments(p, q, x0, y0) {
            let (ax, ay) = Self::page(copy, a);
            let (bx, by) = Self::page(copy, b);
            let _ = write!(
                d,
                "{}M{} {} L{} {}",
                if d.is_empty() { "" } else { " " },
                fmt_num(ax),
                fmt_num(ay),
                fmt_num(bx),
                fmt_num(by)
            );
        }
        let _ = writeln!(
            self.body,
            r#"<path d="{d}" fill="none" stroke="{colour}" stroke-width="1.5"/>"#
        );
    }

    fn tube(&mut self, gap: usize) {
        let (ox, oy) = Self::square_origin(gap);
        let (x1, x2) = (ox + SIDE, ox + PITCH);
        for y in [oy + SIDE * 0.42, oy + SIDE * 0.58] {
            let _ = writeln!(
                self.body,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{FRAME}" stroke-width="1"/>"#,
                fmt_num(x1),
                fmt_num(y),
                fmt_num(x2),
                fmt_num(y)
            );
        }
    }

    fn bridge(&mut self, gap: usize, colour: &str, offset: f64) {
        let (ox, oy) = Self::square_origin(gap);
        let cx = ox + SIDE + (PITCH - SIDE) / 2.0 + offset;
        let _ = writeln!(
            self.body,
            r#"<ellipse cx="{}" cy="{}" rx="3" ry="10" fill="none" stroke="{colour}" stroke-width="1.5"/>"#,
            fmt_num(cx),
            fmt_num(oy + SIDE / 2.0)
        );
    }

    fn label(&mut self, copy: usize, text: &str) {
        let (ox, oy) = Self::square_origin(copy);
        let _ = writeln!(
            self.body,
            r#"<text x="{}" y="{}" font-family="monospace" font-size="11" text-anchor="middle">{text}</text>"#,
            fmt_num(ox + SIDE / 2.0),
            fmt_num(oy + SIDE + 16.0)
        );
    }
}

/// Deterministic SVG 1.1 document for a genus-1 diagram.
pub fn render_svg(doc: &DiagramDocument) -> Result<String> {
    if doc.genus_per_copy != 1 {
        return Err(Error::Unsupported(format!(
            "rendering genus {} diagrams; JSON only",
            doc.genus_per_copy
        )));
    }
    let n = doc.num_copies;
    if n == 0 || doc.blue.len() != n {
        return Err(Error::Malformed(format!("{} blue curves on {n} copies", doc.blue.len())));
    }
    let mut c = Canvas { body: String::new() };
    for copy in 1..=n {
        c.frame(copy);
    }
    for gap in 1..n {
        c.tube(gap);
    }
    for (curves, colour, x0, y0, offset) in [(&doc.red, RED, 0.0, 0.6, -6.0), (&doc.green, GREEN, 0.4, 0.0, 6.0)] {
        for s in curves {
            match (s.kind, s.location) {
                (CurveKind::Bridge, Location::Gap(g)) if (1..n).contains(&g) => c.bridge(g, colour, offset),
                (CurveKind::Longitude, Location::Copy(k)) if (1..=n).contains(&k) => {
                    c.curve(k, 1, 0, colour, x0, y0)
                }
                (CurveKind::Meridian, Location::Copy(k)) if (1..=n).contains(&k) => {
                    c.curve(k, 0, 1, colour, x0, y0)
                }
                _ => return Err(Error::Malformed(format!("misplaced scaffold curve {s:?}"))),
            }
        }
    }
    for b in &doc.blue {
        if !(1..=n).contains(&b.copy) {
            return Err(Error::Malformed(format!("blue curve on copy {}", b.copy)));
        }
        let (p, q) = (b.slope.p.0, b.slope.q.0);
        let p = if b.reflected { -p } else { p };
        if p.abs() + q.abs() > MAX_WRAPS {
            return Err(Error::Unsupported(format!("drawing slope {p}/{q}")));
        }
        let x0 = 0.5 / q.abs().max(1) as f64;
        let y0 = 0.25 / p.abs().max(1) as f64;
        c.curve(b.copy, p, q, BLUE, x0, y0);
        c.label(b.copy, &format!("D{}: {p}/{q}", b.system));
    }
    let width = 2.0 * MARGIN + (n - 1) as f64 * PITCH + SIDE;
    let height = 2.0 * MARGIN + SIDE + LABEL_BAND;
    Ok(format!(
        concat!(
            r#"<?xml version="1.0" encoding="UTF-8"?>"#,
            "\n",
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
            "\n",
            r##"<rect x="0" y="0" width="{w}" height="{h}" fill="#FFFFFF"/>"##,
            "\n{body}</svg>\n"
        ),
        w = fmt_num(width),
        h = fmt_num(height),
        body = c.body
    ))
}
