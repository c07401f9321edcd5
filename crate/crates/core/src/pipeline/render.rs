//! Deterministic SVG pictures of disk instances and grid drawings.
//!
//! Coordinates are mapped to a fixed-width canvas and printed with a fixed
//! number of decimals, so equal inputs give byte-identical output.

use std::fmt::Write;

use crate::gadgets::DiskInstance;
use crate::geometry::{Point2, Provenance};
use crate::graphs::PlanarEmbeddedGraph;
use crate::scalar::Scalar;

const WIDTH: f64 = 800.0;
const MARGIN: f64 = 20.0;

/// Drawing options.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RenderOptions {
    /// Unit grid lines behind the picture.
    pub grid: bool,
}

/// Stroke colour per gadget kind.
pub fn provenance_color(p: &Provenance) -> &'static str {
    match p {
        Provenance::Edge { .. } => "#1f77b4",
        Provenance::Vertex { .. } | Provenance::Ring { .. } => "#d62728",
        Provenance::FvsCenter { .. } => "#9467bd",
        Provenance::FvsPath { .. } => "#8c564b",
        Provenance::Lane { .. } => "#2ca02c",
        Provenance::EndCopy { .. } => "#ff7f0e",
        Provenance::Spoke { .. } => "#e377c2",
        Provenance::Centroid { .. } => "#17becf",
        Provenance::Free => "#7f7f7f",
    }
}

fn kind_name(p: &Provenance) -> &'static str {
    match p {
        Provenance::Edge { .. } => "edge",
        Provenance::Vertex { .. } => "vertex",
        Provenance::FvsCenter { .. } => "fvs-center",
        Provenance::FvsPath { .. } => "fvs-path",
        Provenance::Lane { .. } => "lane",
        Provenance::EndCopy { .. } => "end-copy",
        Provenance::Ring { .. } => "ring",
        Provenance::Spoke { .. } => "spoke",
        Provenance::Centroid { .. } => "centroid",
        Provenance::Free => "free",
    }
}

/// Affine map from world to canvas, flipping y.
struct View {
    x0: f64,
    y1: f64,
    scale: f64,
    height: f64,
}

impl View {
    fn fit(boxes: impl Iterator<Item = (f64, f64, f64)>) -> Self {
        let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for (x, y, pad) in boxes {
            x0 = x0.min(x - pad);
            y0 = y0.min(y - pad);
            x1 = x1.max(x + pad);
            y1 = y1.max(y + pad);
        }
        if !x0.is_finite() {
            (x0, y0, x1, y1) = (0.0, 0.0, 1.0, 1.0);
        }
        let span = (x1 - x0).max(y1 - y0).max(1e-12);
        let scale = (WIDTH - 2.0 * MARGIN) / span;
        let height = (y1 - y0) * scale + 2.0 * MARGIN;
        View { x0, y1, scale, height }
    }

    fn x(&self, x: f64) -> f64 {
        MARGIN + (x - self.x0) * self.scale
    }

    fn y(&self, y: f64) -> f64 {
        MARGIN + (self.y1 - y) * self.scale
    }

    fn header(&self, out: &mut String) {
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0}" height="{:.0}" viewBox="0 0 {WIDTH:.0} {:.0}">"#,
            self.height.ceil(),
            self.height.ceil()
        );
        let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    }

    fn grid(&self, out: &mut String, lo: (f64, f64), hi: (f64, f64)) {
        let _ = writeln!(out, r##"<g stroke="#dddddd" stroke-width="0.5">"##);
        for k in lo.0.floor() as i64..=hi.0.ceil() as i64 {
            let x = self.x(k as f64);
            let _ = writeln!(out, r#"<line x1="{x:.3}" y1="{:.3}" x2="{x:.3}" y2="{:.3}"/>"#, self.y(lo.1.floor()), self.y(hi.1.ceil()));
        }
        for k in lo.1.floor() as i64..=hi.1.ceil() as i64 {
            let y = self.y(k as f64);
            let _ = writeln!(out, r#"<line x1="{:.3}" y1="{y:.3}" x2="{:.3}" y2="{y:.3}"/>"#, self.x(lo.0.floor()), self.x(hi.0.ceil()));
        }
        let _ = writeln!(out, "</g>");
    }
}

fn f<T: Scalar>(p: &Point2<T>) -> (f64, f64) {
    (p.x.to_f64_lossy(), p.y.to_f64_lossy())
}

/// Disks as circles coloured by provenance, points as crosses, terminal
/// disks filled.
pub fn render_instance(inst: &DiskInstance, opts: RenderOptions) -> String {
    let r = inst.radius.to_f64_lossy();
    let disks: Vec<(f64, f64)> = inst.disks.iter().map(|d| f(&d.center)).collect();
    let points: Vec<(f64, f64)> = inst.points.iter().map(f).collect();
    let view = View::fit(
        disks
            .iter()
            .map(|&(x, y)| (x, y, r))
            .chain(points.iter().map(|&(x, y)| (x, y, r))),
    );
    let mut out = String::new();
    view.header(&mut out);
    if opts.grid && !(disks.is_empty() && points.is_empty()) {
        let all = disks.iter().chain(&points);
        let lo = all.clone().fold((f64::INFINITY, f64::INFINITY), |a, p| (a.0.min(p.0), a.1.min(p.1)));
        let hi = all.fold((f64::NEG_INFINITY, f64::NEG_INFINITY), |a, p| (a.0.max(p.0), a.1.max(p.1)));
        view.grid(&mut out, lo, hi);
    }
    let rad = r * view.scale;
    let _ = writeln!(out, r#"<g fill-opacity="0.25" stroke-width="1">"#);
    for (k, (d, &(x, y))) in inst.disks.iter().zip(&disks).enumerate() {
        let c = provenance_color(&d.prov);
        let fill = if inst.terminals.contains(&k) { "#000000" } else { c };
        let _ = writeln!(
            out,
            r#"<circle class="{}" cx="{:.3}" cy="{:.3}" r="{rad:.3}" stroke="{c}" fill="{fill}"/>"#,
            kind_name(&d.prov),
            view.x(x),
            view.y(y)
        );
    }
    let _ = writeln!(out, "</g>");
    let arm = rad.max(3.0);
    for &(x, y) in &points {
        let (cx, cy) = (view.x(x), view.y(y));
        let _ = writeln!(
            out,
            r#"<path class="point" d="M{:.3} {:.3}L{:.3} {:.3}M{:.3} {:.3}L{:.3} {:.3}" stroke="black" stroke-width="1.5"/>"#,
            cx - arm,
            cy - arm,
            cx + arm,
            cy + arm,
            cx - arm,
            cy + arm,
            cx + arm,
            cy - arm
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Straight-line drawing of a graph at integer coordinates, with terminal
/// vertices filled.
pub fn render_drawing(g: &PlanarEmbeddedGraph, coords: &[Point2<i64>], terminals: &[usize], opts: RenderOptions) -> String {
    let pts: Vec<(f64, f64)> = coords.iter().map(f).collect();
    let view = View::fit(pts.iter().map(|&(x, y)| (x, y, 0.5)));
    let mut out = String::new();
    view.header(&mut out);
    if opts.grid && !pts.is_empty() {
        let lo = pts.iter().fold((f64::INFINITY, f64::INFINITY), |a, p| (a.0.min(p.0), a.1.min(p.1)));
        let hi = pts.iter().fold((f64::NEG_INFINITY, f64::NEG_INFINITY), |a, p| (a.0.max(p.0), a.1.max(p.1)));
        view.grid(&mut out, lo, hi);
    }
    let _ = writeln!(out, r#"<g stroke="black" stroke-width="2">"#);
    for &(a, b) in g.edges() {
        let _ = writeln!(
            out,
            r#"<line class="edge" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#,
            view.x(pts[a].0),
            view.y(pts[a].1),
            view.x(pts[b].0),
            view.y(pts[b].1)
        );
    }
    let _ = writeln!(out, "</g>");
    for (v, &(x, y)) in pts.iter().enumerate() {
        let fill = if terminals.contains(&v) { "black" } else { "white" };
        let _ = writeln!(
            out,
            r#"<circle class="vertex" cx="{:.3}" cy="{:.3}" r="5" stroke="black" fill="{fill}"/>"#,
            view.x(x),
            view.y(y)
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn empty_instance_is_valid_svg() {
        let s = render_instance(&DiskInstance::new(int(1), vec![], vec![]), RenderOptions { grid: true });
        assert!(s.starts_with("<svg") && s.ends_with("</svg>\n"));
        assert!(!s.contains("<circle"));
    }

    #[test]
    fn rendering_is_deterministic() {
        let d = vec![crate::geometry::Disk::new(Point2::new(int(0), int(0)), Provenance::Free)];
        let i = DiskInstance::new(int(1), d, vec![Point2::new(int(3), int(0))]);
        let a = render_instance(&i, RenderOptions::default());
        assert_eq!(a, render_instance(&i, RenderOptions::default()));
        assert_eq!(a.matches("<circle").count(), 1);
        assert_eq!(a.matches("class=\"point\"").count(), 1);
    }
}
