use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};

use super::exact::{orient2d_sign, orient3d_sign};
use super::{xy, VerifyError};
use crate::delaunay::Point2;
use crate::geometry::{compare_points, Point3};

pub const DEFAULT_BRUTE_CAP: usize = 60;

/// One face of the brute-force hull: a maximal set of points on a
/// supporting plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleFace {
    /// Every input index lying on the plane, ascending.
    pub support: Vec<usize>,
    /// Corners of the face, counter-clockwise seen from outside, starting
    /// at the smallest corner in sweep order.
    pub polygon: Vec<usize>,
}

#[derive(Debug, Clone, Default)]
pub struct BruteHull {
    pub faces: Vec<OracleFace>,
    /// Fan triangulation of every face, outward-oriented.
    pub facets: Vec<[usize; 3]>,
}

impl BruteHull {
    /// Extreme points: corners of some face.
    pub fn vertex_set(&self) -> BTreeSet<usize> {
        self.faces.iter().flat_map(|f| f.polygon.iter().copied()).collect()
    }

    /// Every point on the hull surface, including points inside faces and
    /// edges.
    pub fn boundary_set(&self) -> BTreeSet<usize> {
        self.faces.iter().flat_map(|f| f.support.iter().copied()).collect()
    }

    pub fn supports(&self) -> BTreeSet<Vec<usize>> {
        self.faces.iter().map(|f| f.support.clone()).collect()
    }
}

fn xyz(p: &Point3) -> [f64; 3] {
    [p.x as f64, p.y as f64, p.z as f64]
}

/// Projections that drop one axis, as index pairs.
const PROJECTIONS: [[usize; 2]; 3] = [[0, 1], [1, 2], [2, 0]];

fn project(p: [f64; 3], axes: [usize; 2]) -> [f64; 2] {
    [p[axes[0]], p[axes[1]]]
}

fn collinear3(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> bool {
    PROJECTIONS
        .iter()
        .all(|&ax| orient2d_sign(project(a, ax), project(b, ax), project(c, ax)) == 0)
}

/// Indices of all points on the plane through `a, b, c`.
pub fn plane_support(points: &[Point3], a: usize, b: usize, c: usize) -> Vec<usize> {
    let (pa, pb, pc) = (xyz(&points[a]), xyz(&points[b]), xyz(&points[c]));
    (0..points.len())
        .filter(|&l| orient3d_sign(pa, pb, pc, xyz(&points[l])) == 0)
        .collect()
}

/// Strictly convex hull of 2D coordinates, counter-clockwise, as positions
/// into `coords`.
fn convex_polygon(coords: &[[f64; 2]]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..coords.len()).collect();
    order.sort_by(|&i, &j| {
        let (p, q) = (coords[i], coords[j]);
        p[0].partial_cmp(&q[0])
            .unwrap_or(Ordering::Equal)
            .then(p[1].partial_cmp(&q[1]).unwrap_or(Ordering::Equal))
    });
    if order.len() < 3 {
        return order;
    }
    let mut hull: Vec<usize> = Vec::with_capacity(2 * order.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &usize>> = if pass == 0 {
            Box::new(order.iter())
        } else {
            Box::new(order.iter().rev())
        };
        for &i in iter {
            while hull.len() >= start + 2 {
                let (p, q) = (hull[hull.len() - 2], hull[hull.len() - 1]);
                if orient2d_sign(coords[p], coords[q], coords[i]) > 0 {
                    break;
                }
                hull.pop();
            }
            hull.push(i);
        }
        hull.pop();
    }
    hull
}

/// O(n⁴) hull: every non-collinear triple whose plane has all points on one
/// side defines a face.
pub fn brute_hull(points: &[Point3], cap: usize) -> Result<BruteHull, VerifyError> {
    let n = points.len();
    if n > cap {
        return Err(VerifyError::CapExceeded { found: n, cap });
    }
    let pts: Vec<[f64; 3]> = points.iter().map(xyz).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out = BruteHull::default();
    let mut solid = false;

    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if collinear3(pts[i], pts[j], pts[k]) {
                    continue;
                }
                let mut support = Vec::new();
                let (mut above, mut below, mut inner) = (0usize, 0usize, None);
                for (l, &q) in pts.iter().enumerate() {
                    match orient3d_sign(pts[i], pts[j], pts[k], q) {
                        0 => support.push(l),
                        1 => {
                            above += 1;
                            inner = Some(l);
                        }
                        _ => {
                            below += 1;
                            inner = Some(l);
                        }
                    }
                }
                if above > 0 && below > 0 {
                    continue;
                }
                let Some(inner) = inner else {
                    return Err(VerifyError::Flat);
                };
                solid = true;
                if !seen.insert(support.clone()) {
                    continue;
                }
                out.faces.push(face(points, &pts, support, inner, [i, j, k]));
            }
        }
    }
    if !solid {
        return Err(VerifyError::Flat);
    }

    out.faces.sort_by(|a, b| a.support.cmp(&b.support));
    for f in &out.faces {
        let p = &f.polygon;
        for w in 1..p.len() - 1 {
            out.facets.push([p[0], p[w], p[w + 1]]);
        }
    }
    Ok(out)
}

fn face(
    points: &[Point3],
    pts: &[[f64; 3]],
    support: Vec<usize>,
    inner: usize,
    [i, j, k]: [usize; 3],
) -> OracleFace {
    let axes = *PROJECTIONS
        .iter()
        .find(|&&ax| {
            orient2d_sign(project(pts[i], ax), project(pts[j], ax), project(pts[k], ax)) != 0
        })
        .expect("triple is not collinear");
    let coords: Vec<[f64; 2]> = support.iter().map(|&l| project(pts[l], axes)).collect();
    let mut polygon: Vec<usize> = convex_polygon(&coords).into_iter().map(|m| support[m]).collect();

    // outward: the inner point sits on the positive orient3d side
    if orient3d_sign(pts[polygon[0]], pts[polygon[1]], pts[polygon[2]], pts[inner]) < 0 {
        polygon.reverse();
    }
    let first = (0..polygon.len())
        .min_by(|&a, &b| compare_points(&points[polygon[a]], &points[polygon[b]]))
        .unwrap();
    polygon.rotate_left(first);
    OracleFace { support, polygon }
}

/// Corners of the 2D convex hull, counter-clockwise, collinear boundary
/// points excluded.
pub fn hull2d_vertices(points: &[Point2]) -> Vec<usize> {
    let coords: Vec<[f64; 2]> = points.iter().map(xy).collect();
    convex_polygon(&coords)
}

/// Number of points on the 2D hull boundary, counting points in the
/// interior of hull edges.
pub fn hull2d_boundary_count(points: &[Point2]) -> usize {
    let corners = hull2d_vertices(points);
    if corners.len() < 3 {
        return points.len();
    }
    let coords: Vec<[f64; 2]> = points.iter().map(xy).collect();
    let on_edge = |q: [f64; 2], a: [f64; 2], b: [f64; 2]| {
        orient2d_sign(a, b, q) == 0
            && q[0] >= a[0].min(b[0])
            && q[0] <= a[0].max(b[0])
            && q[1] >= a[1].min(b[1])
            && q[1] <= a[1].max(b[1])
    };
    coords
        .iter()
        .filter(|&&q| {
            (0..corners.len()).any(|e| {
                let a = coords[corners[e]];
                let b = coords[corners[(e + 1) % corners.len()]];
                on_edge(q, a, b)
            })
        })
        .count()
}
