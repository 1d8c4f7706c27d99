//! Deterministic SVG output for tilings, coverings, windows and censuses.
//!
//! Lattice points are converted to the plane once, at emission, with
//! `x = a + b/2` and `y = −b·√3/2` (SVG's y axis points down), scaled and
//! rounded to 6 decimals. Elements are emitted in a fixed order so the same
//! input always gives the same bytes.

use std::fmt::Write as _;

use thiserror::Error;

use crate::curves::{Curve, TileCovering};
use crate::lattice::EisensteinInt;
use crate::plane::WindowCovering;
use crate::tiling::{hexagon_corners, Ambient, TileRef, TilingError, W_CLASS};
use crate::verify::Census;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("scale must be positive, got {0}/{1}")]
    BadScale(i64, i64),
    #[error("palette is empty")]
    EmptyPalette,
    #[error(transparent)]
    Tiling(#[from] TilingError),
}

pub const DEFAULT_PALETTE: [&str; 6] = ["#e8c07d", "#9fc5e8", "#b6d7a8", "#d5a6bd", "#f9cb9c", "#cfe2f3"];

#[derive(Debug, Clone)]
pub enum RenderTarget {
    /// All hexagons of `top`, with the outlines of its level-`outline` subtiles.
    Tiling { ambient: Ambient, top: TileRef, outline: usize },
    Covering(TileCovering),
    Window(WindowCovering),
    Census(Census),
}

#[derive(Debug, Clone)]
pub struct RenderSpec {
    pub target: RenderTarget,
    /// Pixels per unit length, as `num / den`.
    pub scale: (i64, i64),
    pub palette: Vec<String>,
    pub show_regions: bool,
    pub show_orientation: bool,
}

impl RenderSpec {
    pub fn new(target: RenderTarget) -> Self {
        RenderSpec {
            target,
            scale: (20, 1),
            palette: DEFAULT_PALETTE.iter().map(|s| s.to_string()).collect(),
            show_regions: true,
            show_orientation: true,
        }
    }
}

// Six-decimal fixed point without a negative zero.
fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

struct Canvas {
    scale: f64,
    min: (f64, f64),
    max: (f64, f64),
    body: String,
}

impl Canvas {
    fn new(scale: f64) -> Self {
        Canvas { scale, min: (f64::INFINITY, f64::INFINITY), max: (f64::NEG_INFINITY, f64::NEG_INFINITY), body: String::new() }
    }

    fn xy(&mut self, p: EisensteinInt, shift: (f64, f64)) -> (f64, f64) {
        let (x, y) = p.to_xy();
        let q = ((x + shift.0) * self.scale, (-y + shift.1) * self.scale);
        self.min = (self.min.0.min(q.0), self.min.1.min(q.1));
        self.max = (self.max.0.max(q.0), self.max.1.max(q.1));
        q
    }

    fn points(&mut self, pts: &[EisensteinInt], shift: (f64, f64)) -> String {
        let mut s = String::new();
        for (i, p) in pts.iter().enumerate() {
            let (x, y) = self.xy(*p, shift);
            if i > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{},{}", num(x), num(y));
        }
        s
    }

    fn hexagon(&mut self, h: EisensteinInt, fill: &str, shift: (f64, f64)) {
        let pts = self.points(&hexagon_corners(h), shift);
        let _ = writeln!(self.body, r##"<polygon points="{pts}" fill="{fill}" stroke="#bbbbbb" stroke-width="0.5"/>"##);
    }

    fn curve(&mut self, c: &Curve, color: &str, oriented: bool, shift: (f64, f64)) {
        let pts = self.points(&c.points(), shift);
        let marker = if oriented { r#" marker-end="url(#arrow)""# } else { "" };
        let _ = writeln!(
            self.body,
            r#"<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="2" stroke-linejoin="round"{marker}/>"#
        );
        if oriented {
            let (x, y) = self.xy(c.start(), shift);
            let _ = writeln!(self.body, r#"<circle cx="{}" cy="{}" r="3" fill="{color}"/>"#, num(x), num(y));
        }
    }

    fn outline(&mut self, edges: &[(EisensteinInt, EisensteinInt)], shift: (f64, f64)) {
        let mut pts: Vec<EisensteinInt> = edges.iter().map(|e| e.0).collect();
        if let Some(first) = pts.first().copied() {
            pts.push(first);
        }
        let d = self.points(&pts, shift);
        let _ = writeln!(self.body, r##"<polyline points="{d}" fill="none" stroke="#333333" stroke-width="1.5"/>"##);
    }

    fn finish(self) -> String {
        let pad = 10.0;
        let (x0, y0) = if self.min.0.is_finite() { (self.min.0 - pad, self.min.1 - pad) } else { (0.0, 0.0) };
        let (w, h) = if self.min.0.is_finite() {
            (self.max.0 - self.min.0 + 2.0 * pad, self.max.1 - self.min.1 + 2.0 * pad)
        } else {
            (2.0 * pad, 2.0 * pad)
        };
        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}" width="{}" height="{}">"#,
            num(x0),
            num(y0),
            num(w),
            num(h),
            num(w),
            num(h)
        );
        out.push_str(concat!(
            r#"<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" orient="auto">"#,
            r#"<path d="M0,0 L10,5 L0,10 z"/></marker></defs>"#,
            "\n"
        ));
        out.push_str(&self.body);
        out.push_str("</svg>\n");
        out
    }
}

fn curve_color(i: usize) -> &'static str {
    const INK: [&str; 4] = ["#1c4587", "#990000", "#274e13", "#7f6000"];
    INK[i % INK.len()]
}

/// The SVG document for `spec`.
pub fn render_svg(spec: &RenderSpec) -> Result<String, RenderError> {
    let (n, d) = spec.scale;
    if n <= 0 || d <= 0 {
        return Err(RenderError::BadScale(n, d));
    }
    if spec.palette.is_empty() {
        return Err(RenderError::EmptyPalette);
    }
    let mut cv = Canvas::new(n as f64 / d as f64);
    let none = (0.0, 0.0);
    match &spec.target {
        RenderTarget::Tiling { ambient, top, outline } => {
            let mut hexes = ambient.tile_hexagons(*top)?;
            hexes.sort();
            let subs = ambient.subtiles(*top, (*outline).min(top.level))?;
            for h in &hexes {
                let t = ambient.ancestor_at(*h, (*outline).min(top.level))?;
                let i = subs.iter().position(|s| *s == t).unwrap_or(0);
                cv.hexagon(*h, &spec.palette[i % spec.palette.len()], none);
            }
            for s in subs {
                let f = ambient.tile_frontier(s)?;
                let edges: Vec<_> = f.sides.concat();
                cv.outline(&edges, none);
            }
        }
        RenderTarget::Covering(c) => {
            let mut hexes = c.ambient.tile_hexagons(c.tile)?;
            hexes.sort();
            for h in hexes {
                cv.hexagon(h, &spec.palette[0], none);
            }
            cv.curve(&c.curve, curve_color(0), spec.show_orientation && c.oriented, none);
        }
        RenderTarget::Window(w) => {
            for (h, r) in &w.region_of {
                let fill = if spec.show_regions { spec.palette[(*r as usize - 1) % spec.palette.len()].as_str() } else { "#ffffff" };
                cv.hexagon(*h, fill, none);
            }
            for (i, c) in w.curves.iter().enumerate() {
                cv.curve(&c.segments, curve_color(i), spec.show_orientation && c.oriented, none);
            }
        }
        RenderTarget::Census(census) => {
            // one cell per orbit, laid out in a row of fours
            for (i, o) in census.orbits.iter().enumerate() {
                let shift = ((i % 4) as f64 * 6.0, (i / 4) as f64 * 6.0);
                // representatives are relative to their anchor; put the anchor
                // back on a corner of the origin hexagon of the same class
                let anchor = hexagon_corners(EisensteinInt::ZERO)
                    .into_iter()
                    .find(|c| (c.color_class() == W_CLASS) == o.anchor_in_w)
                    .expect("hexagon corners alternate classes");
                let segs: Vec<_> = o.representative.iter().map(|s| s.translated(anchor)).collect();
                let mut hexes = Vec::new();
                for s in &segs {
                    hexes.push(s.hexagon());
                }
                hexes.sort();
                let fill = &spec.palette[usize::from(!o.anchor_in_w) % spec.palette.len()];
                for h in hexes {
                    cv.hexagon(h, fill, shift);
                }
                for s in &segs {
                    let c = Curve::new(vec![*s]).expect("one segment is a curve");
                    cv.curve(&c, curve_color(0), spec.show_orientation, shift);
                }
            }
        }
    }
    Ok(cv.finish())
}
