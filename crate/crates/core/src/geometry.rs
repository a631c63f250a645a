//! Value types and the floating-point predicates the hull builder runs on.
//!
//! Everything here is plain data and pure functions. Coordinates are
//! [`Real`], which is `f64` unless the crate is built with the `f32`
//! feature.

use std::cmp::Ordering;

/// Coordinate scalar.
#[cfg(not(feature = "f32"))]
pub type Real = f64;
/// Coordinate scalar.
#[cfg(feature = "f32")]
pub type Real = f32;

pub type Vec3 = [Real; 3];

/// Neighbor id of a slot that has not been assigned (or a boundary edge
/// in a Delaunay triangulation).
pub const UNSET: u32 = u32::MAX;

/// Default relative tolerance used by [`Collinearity::Tolerance`].
pub const DEFAULT_COLLINEAR_TOLERANCE: f64 = 1e-12;

/// An id-tagged point in R³.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point3 {
    /// Original input index; `-1` while unassigned.
    pub id: i64,
    pub x: Real,
    pub y: Real,
    pub z: Real,
}

impl Point3 {
    pub fn new(id: i64, x: Real, y: Real, z: Real) -> Self {
        Self { id, x, y, z }
    }

    /// A point that has not been given an id yet.
    pub fn unassigned(x: Real, y: Real, z: Real) -> Self {
        Self::new(-1, x, y, z)
    }

    #[inline]
    pub fn coords(&self) -> Vec3 {
        [self.x, self.y, self.z]
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Exact coordinate equality, ignoring the id.
    #[inline]
    pub fn same_position(&self, other: &Point3) -> bool {
        self.x == other.x && self.y == other.y && self.z == other.z
    }
}

/// Sweep order: ascending `z`, ties broken by `x`, then by `y`.
///
/// `-0.0` and `0.0` compare equal, matching the `==` used by
/// de-duplication.
pub fn compare_points(p: &Point3, q: &Point3) -> Ordering {
    let cmp = |a: Real, b: Real| a.partial_cmp(&b).unwrap_or(Ordering::Equal);
    cmp(p.z, q.z)
        .then_with(|| cmp(p.x, q.x))
        .then_with(|| cmp(p.y, q.y))
}

#[inline]
pub fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
pub fn dot(a: Vec3, b: Vec3) -> Real {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn cross(u: Vec3, v: Vec3) -> Vec3 {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

#[inline]
pub fn neg(a: Vec3) -> Vec3 {
    [-a[0], -a[1], -a[2]]
}

pub fn norm(a: Vec3) -> Real {
    dot(a, a).sqrt()
}

/// `(B − A) × (C − A)`; the zero vector iff the three points are collinear.
#[inline]
pub fn triangle_normal(a: &Point3, b: &Point3, c: &Point3) -> Vec3 {
    let (a, b, c) = (a.coords(), b.coords(), c.coords());
    cross(sub(b, a), sub(c, a))
}

/// Lifecycle of a facet inside the hull's append-only facet array.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FacetState {
    /// Struck out by a later insertion; kept in place until compaction.
    Dead,
    /// Part of the current hull.
    Live,
    /// Spawned by the insertion in progress, adjacency not yet patched.
    Fresh,
}

/// Names one of a facet's three edges (and the neighbor slot across it).
///
/// The declaration order `Ac < Ab` is the order edge records sort in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeSlot {
    Ac,
    Ab,
    Bc,
}

/// A triangle of the hull.
///
/// A facet's id is its index in the facet array. Neighbor ids are [`UNSET`]
/// until assigned. Vertex order is whatever the builder produced; the edge
/// across a slot is identified by its unordered vertex pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Facet {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    /// Neighbor across edge `ab`.
    pub nab: u32,
    /// Neighbor across edge `bc`.
    pub nbc: u32,
    /// Neighbor across edge `ac`.
    pub nac: u32,
    /// Outward normal, unnormalized.
    pub normal: Vec3,
    pub state: FacetState,
}

impl Facet {
    /// A live facet with no neighbors and a zero normal.
    pub fn new(a: u32, b: u32, c: u32) -> Self {
        Self {
            a,
            b,
            c,
            nab: UNSET,
            nbc: UNSET,
            nac: UNSET,
            normal: [0.0; 3],
            state: FacetState::Live,
        }
    }

    #[inline]
    pub fn vertices(&self) -> [u32; 3] {
        [self.a, self.b, self.c]
    }

    #[inline]
    pub fn has_vertex(&self, v: u32) -> bool {
        self.a == v || self.b == v || self.c == v
    }

    /// The two endpoints of the edge behind `slot`.
    #[inline]
    pub fn edge(&self, slot: EdgeSlot) -> (u32, u32) {
        match slot {
            EdgeSlot::Ab => (self.a, self.b),
            EdgeSlot::Bc => (self.b, self.c),
            EdgeSlot::Ac => (self.a, self.c),
        }
    }

    /// Raw neighbor id (possibly [`UNSET`]).
    #[inline]
    pub fn neighbor_raw(&self, slot: EdgeSlot) -> u32 {
        match slot {
            EdgeSlot::Ab => self.nab,
            EdgeSlot::Bc => self.nbc,
            EdgeSlot::Ac => self.nac,
        }
    }

    #[inline]
    pub fn neighbor(&self, slot: EdgeSlot) -> Option<usize> {
        match self.neighbor_raw(slot) {
            UNSET => None,
            id => Some(id as usize),
        }
    }

    #[inline]
    pub fn set_neighbor(&mut self, slot: EdgeSlot, id: u32) {
        match slot {
            EdgeSlot::Ab => self.nab = id,
            EdgeSlot::Bc => self.nbc = id,
            EdgeSlot::Ac => self.nac = id,
        }
    }

    /// The slot whose edge is `{u, v}` (in either order).
    #[inline]
    pub fn edge_slot(&self, u: u32, v: u32) -> Option<EdgeSlot> {
        let is = |p: u32, q: u32| (p == u && q == v) || (p == v && q == u);
        if is(self.a, self.b) {
            Some(EdgeSlot::Ab)
        } else if is(self.a, self.c) {
            Some(EdgeSlot::Ac)
        } else if is(self.b, self.c) {
            Some(EdgeSlot::Bc)
        } else {
            None
        }
    }

    /// True if both facets span the same three vertices.
    pub fn same_vertex_set(&self, other: &Facet) -> bool {
        let mut p = self.vertices();
        let mut q = other.vertices();
        p.sort_unstable();
        q.sort_unstable();
        p == q
    }
}

/// One unassigned `ab`/`ac` slot of a freshly spawned facet, keyed by the
/// vertex the slot's edge shares with the apex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct EdgeRecord {
    // Field order gives the derived sort: vertex, then slot, then facet.
    pub vertex: u32,
    pub slot: EdgeSlot,
    pub facet: u32,
}

/// `d = (p − points[f.a]) · n`. The facet is visible from `p` iff `d > 0`.
#[inline]
pub fn facet_visibility(f: &Facet, p: &Point3, points: &[Point3]) -> Real {
    let anchor = points[f.a as usize].coords();
    dot(sub(p.coords(), anchor), f.normal)
}

/// Relative sign test within a plane.
///
/// Returns the sign of `((B−A)×(C−A)) · ((B−A)×(X−A))` together with
/// `(B−A)×(X−A)`. `+1`: `X` is on the same side of line `AB` as `C`;
/// `-1`: the opposite side (edge `AB` is visible from `X`); `0`: degenerate.
pub fn cross_test(points: &[Point3], a: usize, b: usize, c: usize, x: usize) -> (i8, Vec3) {
    let pa = points[a].coords();
    let ab = sub(points[b].coords(), pa);
    let ac = sub(points[c].coords(), pa);
    let ax = sub(points[x].coords(), pa);

    let e = cross(ab, ax);
    let k = cross(ab, ac);
    let s = dot(k, e);
    let sign = if s > 0.0 {
        1
    } else if s == 0.0 {
        0
    } else {
        -1
    };
    (sign, e)
}

/// How [`collinearity_test`] decides that a cross product is zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Collinearity {
    /// Every component must be exactly `0`.
    Exact,
    /// Every component must be within `factor × s²`, where `s` is the
    /// largest coordinate magnitude of `B − A` and `C − A`.
    Tolerance(f64),
}

impl Default for Collinearity {
    fn default() -> Self {
        Collinearity::Tolerance(DEFAULT_COLLINEAR_TOLERANCE)
    }
}

pub fn collinearity_test(a: &Point3, b: &Point3, c: &Point3, mode: Collinearity) -> bool {
    let n = triangle_normal(a, b, c);
    match mode {
        Collinearity::Exact => n == [0.0; 3],
        Collinearity::Tolerance(factor) => {
            let ab = sub(b.coords(), a.coords());
            let ac = sub(c.coords(), a.coords());
            let scale = ab
                .iter()
                .chain(ac.iter())
                .fold(0.0 as Real, |m, v| m.max(v.abs()));
            let tol = factor as Real * scale * scale;
            n.iter().all(|v| v.abs() <= tol)
        }
    }
}
