//! 2D Delaunay triangulation as the lower hull of points lifted onto the
//! paraboloid `z = x² + y²`.

use thiserror::Error;

use crate::geometry::{compare_points, norm, Facet, Point3, Real};
use crate::hull::{Dangling, HullConfig, HullError, HullState, InsertionStats, Triangulation};

/// An id-tagged planar point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2 {
    pub id: i64,
    pub x: Real,
    pub y: Real,
}

impl Point2 {
    pub fn new(id: i64, x: Real, y: Real) -> Self {
        Self { id, x, y }
    }
}

impl From<&Point3> for Point2 {
    fn from(p: &Point3) -> Self {
        Point2::new(p.id, p.x, p.y)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DelaunayError {
    #[error("x² + y² overflows for point {id}")]
    Overflow { id: i64 },
    #[error(transparent)]
    Hull(#[from] HullError),
}

/// Maps `(x, y)` to `(x, y, x² + y²)`, keeping ids.
pub fn lift(points: &[Point2]) -> Result<Vec<Point3>, DelaunayError> {
    points
        .iter()
        .map(|p| {
            let z = p.x * p.x + p.y * p.y;
            if z.is_finite() {
                Ok(Point3::new(p.id, p.x, p.y, z))
            } else {
                Err(DelaunayError::Overflow { id: p.id })
            }
        })
        .collect()
}

/// Result of [`dedup`].
#[derive(Debug, Clone, PartialEq)]
pub struct Deduplicated {
    /// Unique points in sweep order, re-id'd `0..n`.
    pub points: Vec<Point3>,
    /// Original ids of the discarded duplicates.
    pub removed: Vec<i64>,
    /// Original id of each entry of `points`.
    pub source_ids: Vec<i64>,
}

/// Sorts into sweep order and removes exact-coordinate duplicates. Among
/// equal points the one that came first in the input survives.
pub fn dedup(points: &[Point3]) -> Deduplicated {
    let mut sorted = points.to_vec();
    // stable, so equal points stay in input order
    sorted.sort_by(compare_points);

    let mut unique: Vec<Point3> = Vec::with_capacity(sorted.len());
    let mut removed = Vec::new();
    let mut source_ids = Vec::with_capacity(sorted.len());
    for p in sorted {
        if unique.last().is_some_and(|q| q.same_position(&p)) {
            removed.push(p.id);
            continue;
        }
        source_ids.push(p.id);
        unique.push(Point3 { id: unique.len() as i64, ..p });
    }
    Deduplicated { points: unique, removed, source_ids }
}

impl Deduplicated {
    /// The unique points carrying their original ids instead of `0..n`.
    pub fn with_source_ids(self) -> Vec<Point3> {
        let mut points = self.points;
        for (p, &id) in points.iter_mut().zip(&self.source_ids) {
            p.id = id;
        }
        points
    }
}

/// Delaunay triangulation of `points` with the default configuration.
pub fn delaunay_triangulate(points: &[Point2]) -> Result<Triangulation, DelaunayError> {
    delaunay_triangulate_with(points, HullConfig::default(), |_| {})
}

/// Lifts, de-duplicates and triangulates.
pub fn delaunay_triangulate_with(
    points: &[Point2],
    config: HullConfig,
    observer: impl FnMut(&InsertionStats),
) -> Result<Triangulation, DelaunayError> {
    let lifted = lift(points)?;
    triangulate_unique(dedup(&lifted).with_source_ids(), config, observer)
}

/// Triangulates already-lifted, duplicate-free points. Each point's `id`
/// is carried into [`Triangulation::source_ids`].
///
/// Keeps the hull facets whose outward normal points strictly downward;
/// references to discarded facets become boundary edges. Triangles are
/// wound counter-clockwise in the xy-plane. Three points give their single
/// triangle.
pub fn triangulate_unique(
    mut points: Vec<Point3>,
    config: HullConfig,
    observer: impl FnMut(&InsertionStats),
) -> Result<Triangulation, DelaunayError> {
    points.sort_by(compare_points);
    let min = if config.strict_compat { config.min_points() } else { 3 };
    if points.len() < min {
        return Err(HullError::TooFewPoints { found: points.len(), required: min }.into());
    }

    if points.len() == 3 {
        let mut f = Facet::new(0, 1, 2);
        if orient_xy(&points, &f) == 0.0 {
            return Err(HullError::DegenerateCoplanarSet { boundary: vec![[0, 1], [0, 2], [1, 2]] }.into());
        }
        canonicalize_ccw(&points, &mut f);
        f.normal = crate::geometry::triangle_normal(&points[0], &points[1], &points[2]);
        if f.normal[2] > 0.0 {
            f.normal = crate::geometry::neg(f.normal);
        }
        return Ok(Triangulation::new(points, vec![f]));
    }

    let state = HullState::build(points, config, observer)?;
    if !state.is_solid() {
        // Cocircular input lifts to a plane; its downward twins still form
        // a valid triangulation unless the plane is vertical (collinear
        // input).
        let n = state.facets()[0].normal;
        let tol = config.coplanar_tolerance as Real * norm(n);
        if n[2].abs() <= tol {
            return Err(HullError::DegenerateCoplanarSet { boundary: state.planar_boundary() }.into());
        }
    }

    let mut facets = state.compact(|f| f.normal[2] < 0.0, Dangling::Boundary)?;
    let (points, _) = state.into_parts();
    if facets.is_empty() {
        return Err(HullError::DegenerateCoplanarSet { boundary: Vec::new() }.into());
    }
    for f in &mut facets {
        canonicalize_ccw(&points, f);
    }
    Ok(Triangulation::new(points, facets))
}

fn orient_xy(points: &[Point3], f: &Facet) -> Real {
    let (a, b, c) = (&points[f.a as usize], &points[f.b as usize], &points[f.c as usize]);
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// Swaps `b` and `c` (and the `ab`/`ac` neighbors with them) when the
/// triangle is clockwise in the xy-plane.
fn canonicalize_ccw(points: &[Point3], f: &mut Facet) {
    if orient_xy(points, f) < 0.0 {
        std::mem::swap(&mut f.b, &mut f.c);
        std::mem::swap(&mut f.nab, &mut f.nac);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{EdgeSlot, UNSET};
    use std::collections::HashSet;

    fn p2(coords: &[[Real; 2]]) -> Vec<Point2> {
        coords
            .iter()
            .enumerate()
            .map(|(i, c)| Point2::new(i as i64, c[0], c[1]))
            .collect()
    }

    fn edge_set(t: &Triangulation) -> HashSet<[(u64, u64); 2]> {
        let key = |v: u32| {
            let p = &t.points[v as usize];
            (p.x.to_bits() as u64, p.y.to_bits() as u64)
        };
        let mut out = HashSet::new();
        for f in &t.facets {
            for slot in [EdgeSlot::Ab, EdgeSlot::Bc, EdgeSlot::Ac] {
                let (u, v) = f.edge(slot);
                let mut e = [key(u), key(v)];
                e.sort();
                out.insert(e);
            }
        }
        out
    }

    #[test]
    fn lift_values() {
        let l = lift(&p2(&[[3., 4.], [0., 0.], [-1., 2.]])).unwrap();
        let z: Vec<Real> = l.iter().map(|p| p.z).collect();
        assert_eq!(z, [25., 0., 5.]);
        assert_eq!(l[2].id, 2);
        assert_eq!(
            lift(&[Point2::new(7, Real::MAX, 0.)]).unwrap_err(),
            DelaunayError::Overflow { id: 7 }
        );
    }

    #[test]
    fn dedup_keeps_first_and_reports_removed() {
        let pts = vec![
            Point3::new(0, 1., 1., 2.),
            Point3::new(1, 1., 1., 2.),
            Point3::new(2, 0., 0., 0.),
        ];
        let d = dedup(&pts);
        assert_eq!(d.points.len(), 2);
        assert_eq!(d.removed, [1]);
        assert_eq!(d.source_ids, [2, 0]);
        assert_eq!(d.points[1].id, 1);
    }

    #[test]
    fn dedup_of_distinct_points_is_a_sorted_permutation() {
        let pts: Vec<Point3> = (0..20)
            .map(|i| Point3::new(i, ((i * 7) % 5) as Real, (i % 3) as Real, ((i * 11) % 13) as Real))
            .collect();
        let d = dedup(&pts);
        assert!(d.removed.is_empty());
        assert_eq!(d.points.len(), 20);
        assert!(d.points.windows(2).all(|w| compare_points(&w[0], &w[1]).is_lt()));
        let mut ids = d.source_ids.clone();
        ids.sort();
        assert_eq!(ids, (0..20).collect::<Vec<_>>());
    }

    #[test]
    fn triangle_plus_far_point() {
        let t = delaunay_triangulate(&p2(&[[0., 0.], [1., 0.], [0., 1.], [5., 5.]])).unwrap();
        assert_eq!(t.facets.len(), 2);
        let interior = t
            .facets
            .iter()
            .flat_map(|f| [f.nab, f.nbc, f.nac])
            .filter(|&n| n != UNSET)
            .count();
        assert_eq!(interior, 2);
    }

    #[test]
    fn unit_square_diagonal_is_pinned() {
        let t = delaunay_triangulate(&p2(&[[0., 0.], [1., 0.], [0., 1.], [1., 1.]])).unwrap();
        assert_eq!(t.facets.len(), 2);
        // the shared edge is the only one appearing in both triangles
        let verts = |f: &Facet| {
            let mut v = f.vertices();
            v.sort();
            v
        };
        let a = verts(&t.facets[0]);
        let b = verts(&t.facets[1]);
        let shared: Vec<u32> = a.iter().copied().filter(|v| b.contains(v)).collect();
        let ends: Vec<(Real, Real)> = shared
            .iter()
            .map(|&v| (t.points[v as usize].x, t.points[v as usize].y))
            .collect();
        // sweep order is (0,0) (0,1) (1,0) (1,1): the seed triangle takes
        // the first three, so the (0,1)-(1,0) diagonal is emitted
        assert_eq!(ends, [(0., 1.), (1., 0.)]);
    }

    #[test]
    fn three_points_extension() {
        let t = delaunay_triangulate(&p2(&[[0., 0.], [0., 1.], [1., 0.]])).unwrap();
        assert_eq!(t.facets.len(), 1);
        assert_eq!(orient_xy(&t.points, &t.facets[0]).signum(), 1.0);
        assert!(t.facets[0].normal[2] < 0.0);
        assert!(matches!(
            delaunay_triangulate(&p2(&[[0., 0.], [1., 1.], [2., 2.]])),
            Err(DelaunayError::Hull(HullError::DegenerateCoplanarSet { .. }))
        ));
    }

    #[test]
    fn collinear_input_is_degenerate() {
        let line: Vec<[Real; 2]> = (0..8).map(|i| [i as Real, 2. * i as Real]).collect();
        assert!(matches!(
            delaunay_triangulate(&p2(&line)),
            Err(DelaunayError::Hull(HullError::DegenerateCoplanarSet { .. }))
        ));
    }

    #[test]
    fn too_few_unique_points() {
        let same = p2(&[[1., 1.]; 6]);
        assert!(matches!(
            delaunay_triangulate(&same),
            Err(DelaunayError::Hull(HullError::TooFewPoints { found: 1, .. }))
        ));
    }

    #[test]
    fn triangles_are_counter_clockwise() {
        let pts: Vec<[Real; 2]> = (0..40)
            .map(|i| {
                let t = i as Real * 0.7;
                [t.cos() * (1. + i as Real), t.sin() * (3. + i as Real * 0.5)]
            })
            .collect();
        let t = delaunay_triangulate(&p2(&pts)).unwrap();
        assert!(t.facets.iter().all(|f| orient_xy(&t.points, f) > 0.0));
    }

    #[test]
    fn shuffled_input_gives_the_same_edges() {
        let pts: Vec<[Real; 2]> = (0..60)
            .map(|i| {
                let h = (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
                [(h % 1000) as Real * 0.37, ((h >> 20) % 1000) as Real * 0.53]
            })
            .collect();
        let mut shuffled = pts.clone();
        shuffled.reverse();
        shuffled.rotate_left(17);
        let a = delaunay_triangulate(&p2(&pts)).unwrap();
        let b = delaunay_triangulate(&p2(&shuffled)).unwrap();
        assert_eq!(edge_set(&a), edge_set(&b));
    }
}
