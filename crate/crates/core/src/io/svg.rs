use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use super::IoError;
use crate::delaunay::Point2;
use crate::geometry::Facet;

/// Fraction of the bounding box added on every side.
pub const SVG_MARGIN: f64 = 0.02;

/// Renders every distinct edge once as a two-point polyline. The y axis
/// points up, as in the data.
pub fn write_svg(facets: &[Facet], points: &[Point2]) -> String {
    let edges: BTreeSet<(u32, u32)> = facets
        .iter()
        .flat_map(|f| [(f.a, f.b), (f.a, f.c), (f.b, f.c)])
        .filter(|&(u, v)| (u as usize) < points.len() && (v as usize) < points.len())
        .map(|(u, v)| (u.min(v), u.max(v)))
        .collect();

    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in points {
        let (x, y) = (p.x as f64, p.y as f64);
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if points.is_empty() {
        (x0, y0, x1, y1) = (0.0, 0.0, 1.0, 1.0);
    }
    let span = |lo: f64, hi: f64| if hi > lo { hi - lo } else { 1.0 };
    let (w, h) = (span(x0, x1), span(y0, y1));
    let (mx, my) = (w * SVG_MARGIN, h * SVG_MARGIN);
    let stroke = w.max(h) * 0.001;

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\">",
        x0 - mx,
        -(y1 + my),
        w + 2.0 * mx,
        h + 2.0 * my
    );
    let _ = writeln!(s, "<g fill=\"none\" stroke=\"black\" stroke-width=\"{stroke}\">");
    for (u, v) in edges {
        let (p, q) = (&points[u as usize], &points[v as usize]);
        let _ = writeln!(
            s,
            "<polyline points=\"{},{} {},{}\"/>",
            p.x as f64, -(p.y as f64), q.x as f64, -(q.y as f64)
        );
    }
    s.push_str("</g>\n</svg>\n");
    s
}

pub fn emit_svg(facets: &[Facet], points: &[Point2], path: impl AsRef<Path>) -> Result<(), IoError> {
    let mut f = std::fs::File::create(path.as_ref())?;
    f.write_all(write_svg(facets, points).as_bytes())?;
    Ok(())
}
