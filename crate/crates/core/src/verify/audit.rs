use std::collections::BTreeSet;
use std::fmt;

use rand::{RngExt, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use super::brute::{hull2d_boundary_count, hull2d_vertices};
use super::exact::{incircle, orient2d_sign, orient3d};
use super::xy;
use crate::delaunay::Point2;
use crate::geometry::{EdgeSlot, Facet, Point3, UNSET};

#[derive(Debug, Clone)]
pub struct AuditConfig {
    /// Containment slack is this times the squared coordinate scale.
    pub contain_factor: f64,
    /// Circumcircle slack is this times the fourth power of the scale.
    pub circumcircle_factor: f64,
    /// Up to this many points every (facet, point) pair is checked.
    pub full_check_cap: usize,
    /// Random (facet, point) pairs drawn above the cap.
    pub samples: usize,
    pub seed: u64,
    /// Violations kept in the report; the rest are only counted.
    pub max_listed: usize,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            contain_factor: 1e-9,
            circumcircle_factor: 1e-9,
            full_check_cap: 2000,
            samples: 1_000_000,
            seed: 0x5eed,
            max_listed: 1000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    /// A vertex id past the end of the point array.
    BadVertex,
    /// Zero-area facet.
    Degenerate,
    /// Clockwise triangle in a Delaunay output.
    Winding,
    Adjacency,
    /// Point above a facet plane by more than the slack.
    Containment,
    /// Point inside a triangle's circumcircle by more than the slack.
    Circumcircle,
    /// Facet count disagrees with the vertex count.
    Euler,
    /// Boundary edge count disagrees with the 2D hull.
    BoundaryCount,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub facet: Option<usize>,
    pub point: Option<usize>,
    pub magnitude: f64,
}

#[derive(Debug, Clone)]
pub struct AuditReport {
    pub violations: Vec<Violation>,
    /// Violations found beyond `max_listed`.
    pub suppressed: usize,
    pub worst_excess: f64,
    pub euler_ok: bool,
    pub adjacency_ok: bool,
    pub epsilon: f64,
    max_listed: usize,
}

impl AuditReport {
    fn new(epsilon: f64, max_listed: usize) -> Self {
        AuditReport {
            violations: Vec::new(),
            suppressed: 0,
            worst_excess: 0.0,
            euler_ok: true,
            adjacency_ok: true,
            epsilon,
            max_listed,
        }
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn total_violations(&self) -> usize {
        self.violations.len() + self.suppressed
    }

    pub fn count(&self, kind: ViolationKind) -> usize {
        self.violations.iter().filter(|v| v.kind == kind).count()
    }

    fn push(&mut self, kind: ViolationKind, facet: Option<usize>, point: Option<usize>, magnitude: f64) {
        match kind {
            ViolationKind::Adjacency | ViolationKind::BoundaryCount => self.adjacency_ok = false,
            ViolationKind::Euler => self.euler_ok = false,
            _ => {}
        }
        if self.violations.len() < self.max_listed {
            self.violations.push(Violation { kind, facet, point, magnitude });
        } else {
            self.suppressed += 1;
        }
    }

    fn excess(&mut self, facet: usize, point: usize, value: f64, kind: ViolationKind) {
        if value > self.worst_excess {
            self.worst_excess = value;
        }
        if value > self.epsilon {
            self.push(kind, Some(facet), Some(point), value);
        }
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "violations: {}", self.total_violations())?;
        writeln!(f, "worst_excess: {:e} (epsilon {:e})", self.worst_excess, self.epsilon)?;
        writeln!(f, "euler_ok: {}", self.euler_ok)?;
        write!(f, "adjacency_ok: {}", self.adjacency_ok)?;
        for v in self.violations.iter().take(20) {
            write!(f, "\n  {:?}", v.kind)?;
            if let Some(t) = v.facet {
                write!(f, " facet {t}")?;
            }
            if let Some(p) = v.point {
                write!(f, " point {p}")?;
            }
            if v.magnitude != 0.0 {
                write!(f, " by {:e}", v.magnitude)?;
            }
        }
        if self.total_violations() > 20 {
            write!(f, "\n  ... {} more", self.total_violations() - 20)?;
        }
        Ok(())
    }
}

const SLOTS: [EdgeSlot; 3] = [EdgeSlot::Ab, EdgeSlot::Ac, EdgeSlot::Bc];

fn valid_vertices(report: &mut AuditReport, facets: &[Facet], n: usize) -> Vec<bool> {
    facets
        .iter()
        .enumerate()
        .map(|(t, f)| {
            let ok = f.vertices().iter().all(|&v| (v as usize) < n);
            if !ok {
                report.push(ViolationKind::BadVertex, Some(t), None, 0.0);
            }
            ok
        })
        .collect()
}

/// Mutual adjacency. Returns the number of `UNSET` edges, which are
/// violations unless `open` is set.
fn check_adjacency(report: &mut AuditReport, facets: &[Facet], open: bool) -> usize {
    let mut boundary = 0;
    for (t, f) in facets.iter().enumerate() {
        for slot in SLOTS {
            let (u, v) = f.edge(slot);
            let raw = f.neighbor_raw(slot);
            if raw == UNSET {
                if open {
                    boundary += 1;
                } else {
                    report.push(ViolationKind::Adjacency, Some(t), None, 0.0);
                }
                continue;
            }
            let mutual = facets.get(raw as usize).is_some_and(|g| {
                raw as usize != t
                    && g.edge_slot(u, v).is_some_and(|s| g.neighbor_raw(s) as usize == t)
            });
            if !mutual {
                report.push(ViolationKind::Adjacency, Some(t), Some(raw as usize), 0.0);
            }
        }
    }
    boundary
}

/// Vertex of `g` not on the edge `u, v`.
fn opposite(g: &Facet, u: u32, v: u32) -> u32 {
    g.vertices().into_iter().find(|&w| w != u && w != v).unwrap_or(u)
}

/// Pairs to test: all of them at small sizes, otherwise every neighbor's
/// far vertex plus a random sample.
fn pairs_to_check(
    facets: &[Facet],
    ok: &[bool],
    n: usize,
    cfg: &AuditConfig,
    mut visit: impl FnMut(usize, usize),
) {
    if n <= cfg.full_check_cap {
        for t in (0..facets.len()).filter(|&t| ok[t]) {
            for q in 0..n {
                visit(t, q);
            }
        }
        return;
    }
    for (t, f) in facets.iter().enumerate().filter(|&(t, _)| ok[t]) {
        for slot in SLOTS {
            let (u, v) = f.edge(slot);
            if let Some(g) = f.neighbor(slot).and_then(|g| facets.get(g)) {
                let w = opposite(g, u, v) as usize;
                if w < n {
                    visit(t, w);
                }
            }
        }
    }
    let live: Vec<usize> = (0..facets.len()).filter(|&t| ok[t]).collect();
    if live.is_empty() {
        return;
    }
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(cfg.seed);
    for _ in 0..cfg.samples {
        let t = live[rng.random_range(0..live.len())];
        visit(t, rng.random_range(0..n));
    }
}

fn xyz(p: &Point3) -> [f64; 3] {
    [p.x as f64, p.y as f64, p.z as f64]
}

/// Containment, mutual adjacency and Euler's relation for a closed hull.
///
/// Facet planes are recomputed from the vertex coordinates and oriented
/// away from the centroid of the hull vertices, so stored normals and
/// winding are not trusted.
pub fn audit_hull(facets: &[Facet], points: &[Point3], cfg: &AuditConfig) -> AuditReport {
    let n = points.len();
    let scale = points
        .iter()
        .flat_map(|p| [p.x as f64, p.y as f64, p.z as f64])
        .fold(0.0f64, |m, c| m.max(c.abs()));
    let mut report = AuditReport::new(cfg.contain_factor * scale * scale, cfg.max_listed);
    let ok = valid_vertices(&mut report, facets, n);

    let verts: BTreeSet<u32> = facets
        .iter()
        .zip(&ok)
        .filter(|(_, &ok)| ok)
        .flat_map(|(f, _)| f.vertices())
        .collect();
    let mut centre = [0.0f64; 3];
    for &v in &verts {
        let c = xyz(&points[v as usize]);
        for k in 0..3 {
            centre[k] += c[k] / verts.len() as f64;
        }
    }

    // orientation per facet: +1 keeps (a, b, c), -1 flips, 0 is flat
    let mut sides = vec![0i8; facets.len()];
    for (t, f) in facets.iter().enumerate().filter(|&(t, _)| ok[t]) {
        let [a, b, c] = f.vertices().map(|v| xyz(&points[v as usize]));
        let s = orient3d(a, b, c, centre);
        sides[t] = if s > 0.0 { 1 } else if s < 0.0 { -1 } else { 0 };
        if sides[t] == 0 {
            report.push(ViolationKind::Degenerate, Some(t), None, 0.0);
        }
    }
    let usable: Vec<bool> = sides.iter().map(|&s| s != 0).collect();

    let mut found = Vec::new();
    pairs_to_check(facets, &usable, n, cfg, |t, q| {
        let [a, b, c] = facets[t].vertices().map(|v| xyz(&points[v as usize]));
        // the centre is on the positive side, so outside is negative
        let d = -(sides[t] as f64) * orient3d(a, b, c, xyz(&points[q]));
        if d > 0.0 {
            found.push((t, q, d));
        }
    });
    for (t, q, d) in found {
        report.excess(t, q, d, ViolationKind::Containment);
    }

    check_adjacency(&mut report, facets, false);

    if facets.len() + 4 != 2 * verts.len() {
        let gap = facets.len() as f64 - (2.0 * verts.len() as f64 - 4.0);
        report.push(ViolationKind::Euler, None, None, gap);
    }
    report
}

/// Empty circumcircles, counter-clockwise winding, adjacency with `UNSET`
/// as boundary, and the counts `T = 2u − 2 − b` and `boundary edges = b`,
/// where `b` counts every point on the 2D hull boundary.
///
/// `points` must be the de-duplicated array the triangle ids refer to.
pub fn audit_delaunay(facets: &[Facet], points: &[Point2], cfg: &AuditConfig) -> AuditReport {
    let n = points.len();
    let scale = points
        .iter()
        .flat_map(|p| [p.x as f64, p.y as f64])
        .fold(0.0f64, |m, c| m.max(c.abs()));
    let eps = cfg.circumcircle_factor * scale.powi(4);
    let mut report = AuditReport::new(eps, cfg.max_listed);
    let ok = valid_vertices(&mut report, facets, n);

    let mut signs = vec![0i8; facets.len()];
    for (t, f) in facets.iter().enumerate().filter(|&(t, _)| ok[t]) {
        let [a, b, c] = f.vertices().map(|v| xy(&points[v as usize]));
        signs[t] = orient2d_sign(a, b, c);
        match signs[t] {
            0 => report.push(ViolationKind::Degenerate, Some(t), None, 0.0),
            -1 => report.push(ViolationKind::Winding, Some(t), None, 0.0),
            _ => {}
        }
    }
    let usable: Vec<bool> = signs.iter().map(|&s| s != 0).collect();

    let mut found = Vec::new();
    pairs_to_check(facets, &usable, n, cfg, |t, q| {
        let f = &facets[t];
        if f.has_vertex(q as u32) {
            return;
        }
        let [a, b, c] = f.vertices().map(|v| xy(&points[v as usize]));
        let v = signs[t] as f64 * incircle(a, b, c, xy(&points[q]));
        if v > 0.0 {
            found.push((t, q, v));
        }
    });
    for (t, q, v) in found {
        report.excess(t, q, v, ViolationKind::Circumcircle);
    }

    let open_edges = check_adjacency(&mut report, facets, true);

    if hull2d_vertices(points).len() >= 3 {
        let b = hull2d_boundary_count(points);
        let expected = 2 * n as i64 - 2 - b as i64;
        if facets.len() as i64 != expected {
            report.push(ViolationKind::Euler, None, None, (facets.len() as i64 - expected) as f64);
        }
        if open_edges != b {
            report.push(ViolationKind::BoundaryCount, None, None, open_edges as f64 - b as f64);
        }
    }
    report
}
