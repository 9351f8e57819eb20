//! Deterministic SVG drawings of point sets and packings.

use std::fmt::Write;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::geom::{convex_hull, Point};
use crate::matching::Packing;

pub const PALETTE: [&str; 8] = ["#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4", "#f032e6", "#9a6324"];

const WIDTH: f64 = 800.0;

fn fmt(v: f64) -> String {
    // Avoid "-0.0000" so output does not depend on the sign of zero.
    let s = format!("{v:.4}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0.0000".to_string()
    } else {
        s
    }
}

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

struct Frame {
    min_x: f64,
    max_y: f64,
    width: f64,
    height: f64,
    margin: f64,
}

impl Frame {
    fn new(pts: &[Point]) -> Frame {
        let zero = BigRational::zero();
        let (mut lo_x, mut hi_x, mut lo_y, mut hi_y) = match pts.first() {
            Some(p) => (p.x(), p.x(), p.y(), p.y()),
            None => (&zero, &zero, &zero, &zero),
        };
        for p in pts {
            if p.x() < lo_x {
                lo_x = p.x();
            }
            if p.x() > hi_x {
                hi_x = p.x();
            }
            if p.y() < lo_y {
                lo_y = p.y();
            }
            if p.y() > hi_y {
                hi_y = p.y();
            }
        }
        let width = to_f64(&(hi_x - lo_x));
        let height = to_f64(&(hi_y - lo_y));
        let span = width.max(height);
        let span = if span > 0.0 { span } else { 1.0 };
        Frame { min_x: to_f64(lo_x), max_y: to_f64(hi_y), width, height, margin: 0.05 * span }
    }

    fn map(&self, p: &Point) -> (String, String) {
        let (x, y) = p.to_f64();
        (fmt(x - self.min_x + self.margin), fmt(self.max_y - y + self.margin))
    }

    fn view_w(&self) -> f64 {
        self.width + 2.0 * self.margin
    }

    fn view_h(&self) -> f64 {
        self.height + 2.0 * self.margin
    }

    /// Drawing unit: 1/200 of the larger side.
    fn unit(&self) -> f64 {
        self.view_w().max(self.view_h()) / 200.0
    }
}

/// Renders points as circles, the convex hull dashed and each matching of
/// `packing` in its own palette color (cycling after eight).
pub fn render_svg(pts: &[Point], packing: Option<&Packing>) -> String {
    let f = Frame::new(pts);
    let u = f.unit();
    let pixel_h = (WIDTH * f.view_h() / f.view_w()).round();
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        WIDTH,
        pixel_h,
        fmt(f.view_w()),
        fmt(f.view_h())
    )
    .unwrap();
    writeln!(out, "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>", fmt(f.view_w()), fmt(f.view_h())).unwrap();

    if let Ok(hull) = convex_hull(pts) {
        let coords: Vec<String> = hull
            .iter()
            .map(|&i| {
                let (x, y) = f.map(&pts[i]);
                format!("{x},{y}")
            })
            .collect();
        writeln!(
            out,
            "<polygon id=\"hull\" points=\"{}\" fill=\"none\" stroke=\"#808080\" stroke-width=\"{}\" stroke-dasharray=\"{} {}\"/>",
            coords.join(" "),
            fmt(0.4 * u),
            fmt(2.0 * u),
            fmt(1.5 * u)
        )
        .unwrap();
    }

    if let Some(packing) = packing {
        for (k, m) in packing.matchings().iter().enumerate() {
            let color = PALETTE[k % PALETTE.len()];
            writeln!(out, "<g id=\"matching-{k}\" stroke=\"{color}\" stroke-width=\"{}\" stroke-linecap=\"round\">", fmt(0.8 * u)).unwrap();
            for e in m.edges() {
                if e.b() >= pts.len() {
                    continue;
                }
                let (x1, y1) = f.map(&pts[e.a()]);
                let (x2, y2) = f.map(&pts[e.b()]);
                writeln!(out, "<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\"/>").unwrap();
            }
            out.push_str("</g>\n");
        }
    }

    writeln!(out, "<g id=\"points\" fill=\"#000000\">").unwrap();
    for p in pts {
        let (x, y) = f.map(p);
        writeln!(out, "<circle cx=\"{x}\" cy=\"{y}\" r=\"{}\"/>", fmt(1.5 * u)).unwrap();
    }
    out.push_str("</g>\n</svg>\n");
    out
}
