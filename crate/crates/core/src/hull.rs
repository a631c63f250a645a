//! Incremental sweep-hull construction.
//!
//! Points are consumed in [`compare_points`] order. Because every new point
//! is lexicographically largest so far, it is always a vertex of the grown
//! hull, so each insertion only has to find one visible facet, flood the
//! visible region across adjacencies, and fan new facets from the point to
//! the horizon.
//!
//! Until four non-coplanar points have arrived the "hull" is a flat polygon
//! stored as pairs of twin facets with opposite normals; [`HullState::add_coplanar`]
//! grows it in-plane.

use std::ops::Range;

use thiserror::Error;

use crate::delaunay::dedup;
use crate::geometry::{
    collinearity_test, compare_points, cross_test, dot, facet_visibility, neg, norm, sub,
    triangle_normal, Collinearity, EdgeRecord, EdgeSlot, Facet, FacetState, Point3, Real,
    DEFAULT_COLLINEAR_TOLERANCE, UNSET,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HullError {
    #[error("too few points: {found} (need at least {required})")]
    TooFewPoints { found: usize, required: usize },
    #[error("the first three sorted points are collinear")]
    FirstTripleCollinear,
    #[error("all points are collinear")]
    AllCollinear,
    #[error("point {index} has a non-finite coordinate")]
    NonFinite { index: usize },
    #[error("facet {neighbor} shares no edge with struck facet {facet}")]
    NeighborSlotMismatch { facet: usize, neighbor: usize },
    #[error("unmatched edge at vertex {vertex} while patching new facets")]
    UnmatchedEdge { vertex: u32 },
    #[error("no facet is visible from point {point} of a solid hull")]
    NoVisibleFacet { point: usize },
    #[error("broken hull: facet {facet} references dropped facet {neighbor}")]
    BrokenHull { facet: usize, neighbor: usize },
    #[error("all points are coplanar ({} boundary edges)", boundary.len())]
    DegenerateCoplanarSet {
        /// Boundary edges of the planar hull, as indices into the sorted
        /// point array.
        boundary: Vec<[u32; 2]>,
    },
}

/// Behavior switches for the builder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HullConfig {
    /// Reproduce the reference implementation's aborts: exact seed test on
    /// the first triple, no coplanar tolerance, at least five points.
    pub strict_compat: bool,
    /// While the hull is flat, a point whose signed distance to every facet
    /// plane is within `coplanar_tolerance × |n| × |p − anchor|` is treated
    /// as coplanar. Ignored in strict mode.
    pub coplanar_tolerance: f64,
    /// Collinearity test used to pick the seed triangle in robust mode.
    pub collinearity: Collinearity,
}

impl Default for HullConfig {
    fn default() -> Self {
        Self {
            strict_compat: false,
            coplanar_tolerance: DEFAULT_COLLINEAR_TOLERANCE,
            collinearity: Collinearity::default(),
        }
    }
}

impl HullConfig {
    pub fn strict() -> Self {
        Self {
            strict_compat: true,
            collinearity: Collinearity::Exact,
            ..Self::default()
        }
    }

    /// Smallest accepted point count.
    pub fn min_points(&self) -> usize {
        if self.strict_compat {
            5
        } else {
            4
        }
    }
}

/// What one call to [`HullState::insert_point`] did.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InsertionStats {
    /// Index of the inserted point in the sorted array.
    pub point: usize,
    /// Facets struck out. Zero for coplanar or duplicate insertions.
    pub visible: usize,
    /// Live facets tested before the first visible one was found.
    pub scan_len: usize,
    /// The point was added in-plane while the hull was still flat.
    pub coplanar: bool,
}

/// A hull under construction.
#[derive(Debug, Clone)]
pub struct HullState {
    points: Vec<Point3>,
    facets: Vec<Facet>,
    sum: [Real; 3],
    inserted: usize,
    solid: bool,
    config: HullConfig,
    struck: Vec<u32>,
    records: Vec<EdgeRecord>,
}

/// The compacted output of a build: facets renumbered densely, with vertex
/// ids indexing `points`.
#[derive(Debug, Clone, PartialEq)]
pub struct Triangulation {
    /// The de-duplicated input in sweep order; `points[i].id == i`.
    pub points: Vec<Point3>,
    pub facets: Vec<Facet>,
    /// Original input id of each entry of `points`.
    pub source_ids: Vec<i64>,
}

impl Triangulation {
    /// Takes the ids of `points` as provenance and re-ids them `0..n`.
    pub fn new(mut points: Vec<Point3>, facets: Vec<Facet>) -> Self {
        let source_ids = points.iter().map(|p| p.id).collect();
        for (i, p) in points.iter_mut().enumerate() {
            p.id = i as i64;
        }
        Self { points, facets, source_ids }
    }

    /// Number of distinct vertices referenced by facets.
    pub fn vertex_count(&self) -> usize {
        let mut seen = vec![false; self.points.len()];
        for f in &self.facets {
            for v in f.vertices() {
                seen[v as usize] = true;
            }
        }
        seen.into_iter().filter(|&s| s).count()
    }
}

impl HullState {
    /// Builds the flat seed: two twin facets over the first non-collinear
    /// triple, each naming the other across all three edges.
    ///
    /// `points` must be sorted by [`compare_points`] and free of duplicates.
    /// In robust mode, if points 0, 1, 2 are collinear the first point `k`
    /// that is not is rotated into position 2.
    pub fn init_seed(mut points: Vec<Point3>, config: HullConfig) -> Result<Self, HullError> {
        let required = config.min_points();
        if points.len() < required {
            return Err(HullError::TooFewPoints { found: points.len(), required });
        }
        if let Some(index) = points.iter().position(|p| !p.is_finite()) {
            return Err(HullError::NonFinite { index });
        }

        if config.strict_compat {
            if collinearity_test(&points[0], &points[1], &points[2], Collinearity::Exact) {
                return Err(HullError::FirstTripleCollinear);
            }
        } else {
            let k = (2..points.len())
                .find(|&k| !collinearity_test(&points[0], &points[1], &points[k], config.collinearity))
                .ok_or(HullError::AllCollinear)?;
            points[2..=k].rotate_right(1);
        }

        let n = triangle_normal(&points[0], &points[1], &points[2]);
        let mut up = Facet::new(0, 1, 2);
        up.normal = n;
        up.nab = 1;
        up.nbc = 1;
        up.nac = 1;
        let mut down = up;
        down.normal = neg(n);
        down.nab = 0;
        down.nbc = 0;
        down.nac = 0;

        let mut sum = [0.0; 3];
        for p in &points[..3] {
            sum[0] += p.x;
            sum[1] += p.y;
            sum[2] += p.z;
        }

        Ok(Self {
            points,
            facets: vec![up, down],
            sum,
            inserted: 3,
            solid: false,
            config,
            struck: Vec::new(),
            records: Vec::new(),
        })
    }

    /// Seeds and inserts every point. `observer` sees the stats of each
    /// insertion in order.
    pub fn build(
        points: Vec<Point3>,
        config: HullConfig,
        mut observer: impl FnMut(&InsertionStats),
    ) -> Result<Self, HullError> {
        let mut state = Self::init_seed(points, config)?;
        for p in 3..state.points.len() {
            let stats = state.insert_point(p)?;
            observer(&stats);
        }
        Ok(state)
    }

    pub fn points(&self) -> &[Point3] {
        &self.points
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn config(&self) -> &HullConfig {
        &self.config
    }

    /// Number of points consumed so far.
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// True once the hull has nonzero volume.
    pub fn is_solid(&self) -> bool {
        self.solid
    }

    /// Facets struck out by the most recent non-coplanar insertion.
    pub fn last_struck(&self) -> &[u32] {
        &self.struck
    }

    /// Mean of the points consumed so far.
    pub fn mean_point(&self) -> [Real; 3] {
        let n = self.inserted as Real;
        [self.sum[0] / n, self.sum[1] / n, self.sum[2] / n]
    }

    pub fn live_facets(&self) -> impl Iterator<Item = (usize, &Facet)> {
        self.facets
            .iter()
            .enumerate()
            .filter(|(_, f)| f.state == FacetState::Live)
    }

    fn is_visible(&self, f: &Facet, p: &Point3) -> bool {
        let d = facet_visibility(f, p, &self.points);
        if self.solid || self.config.strict_compat {
            return d > 0.0;
        }
        let offset = sub(p.coords(), self.points[f.a as usize].coords());
        let slack = self.config.coplanar_tolerance as Real * norm(f.normal) * norm(offset);
        d > slack
    }

    /// Adds point `p` (the next one in sweep order) to the hull.
    pub fn insert_point(&mut self, p: usize) -> Result<InsertionStats, HullError> {
        let pt = self.points[p];
        self.sum[0] += pt.x;
        self.sum[1] += pt.y;
        self.sum[2] += pt.z;
        self.inserted += 1;
        let mean = self.mean_point();

        let mut scan_len = 0;
        let mut first = None;
        for h in (0..self.facets.len()).rev() {
            let f = &self.facets[h];
            if f.state != FacetState::Live {
                continue;
            }
            scan_len += 1;
            if self.is_visible(f, &pt) {
                first = Some(h);
                break;
            }
        }

        let Some(first) = first else {
            self.struck.clear();
            if !self.solid {
                self.add_coplanar(p)?;
                return Ok(InsertionStats { point: p, visible: 0, scan_len, coplanar: true });
            }
            if p > 0 && pt.same_position(&self.points[p - 1]) {
                return Ok(InsertionStats { point: p, visible: 0, scan_len, coplanar: false });
            }
            return Err(HullError::NoVisibleFacet { point: p });
        };

        let numh = self.facets.len();
        self.struck.clear();
        self.struck.push(first as u32);
        self.facets[first].state = FacetState::Dead;

        let apex = p as u32;
        let mut i = 0;
        while i < self.struck.len() {
            let xid = self.struck[i] as usize;
            i += 1;
            let x = self.facets[xid];
            for slot in [EdgeSlot::Ab, EdgeSlot::Ac, EdgeSlot::Bc] {
                let nid = x.neighbor_raw(slot) as usize;
                let neighbor = &self.facets[nid];
                if facet_visibility(neighbor, &pt, &self.points) > 0.0 {
                    if neighbor.state == FacetState::Live {
                        self.facets[nid].state = FacetState::Dead;
                        self.struck.push(nid as u32);
                    }
                    continue;
                }

                let (u, v) = x.edge(slot);
                let new_id = self.facets.len() as u32;
                let mut normal = triangle_normal(&pt, &self.points[u as usize], &self.points[v as usize]);
                if dot(sub(mean, pt.coords()), normal) > 0.0 {
                    normal = neg(normal);
                }
                let mut fresh = Facet::new(apex, u, v);
                fresh.nbc = nid as u32;
                fresh.normal = normal;
                fresh.state = FacetState::Fresh;

                let neighbor = &mut self.facets[nid];
                match neighbor.edge_slot(u, v) {
                    Some(s) => neighbor.set_neighbor(s, new_id),
                    None => return Err(HullError::NeighborSlotMismatch { facet: xid, neighbor: nid }),
                }
                self.facets.push(fresh);
            }
        }

        let fresh = numh..self.facets.len();
        patch_records(&mut self.facets, fresh, &mut self.records, false)?;
        self.solid = true;

        Ok(InsertionStats { point: p, visible: self.struck.len(), scan_len, coplanar: false })
    }

    /// Grows the flat hull by a point lying in its plane.
    ///
    /// Each boundary edge (an edge whose neighbor is the facet's own twin)
    /// that is strictly visible from `p` gets a new pair of twin facets
    /// `{p, A, B}`. Edges seen edge-on (sign 0) are skipped, so an interior
    /// or on-boundary point leaves the hull unchanged.
    pub fn add_coplanar(&mut self, p: usize) -> Result<(), HullError> {
        let numh = self.facets.len();
        let apex = p as u32;
        for k in 0..numh {
            for slot in [EdgeSlot::Ab, EdgeSlot::Bc, EdgeSlot::Ac] {
                let f = self.facets[k];
                let twin = f.neighbor_raw(slot) as usize;
                if !f.same_vertex_set(&self.facets[twin]) {
                    continue;
                }
                let (a, b, c) = match slot {
                    EdgeSlot::Ab => (f.a, f.b, f.c),
                    EdgeSlot::Bc => (f.b, f.c, f.a),
                    EdgeSlot::Ac => (f.a, f.c, f.b),
                };
                let (sign, e) = cross_test(&self.points, a as usize, b as usize, c as usize, p);
                if sign >= 0 {
                    continue;
                }

                let up_id = self.facets.len() as u32;
                let down_id = up_id + 1;
                let mut up = Facet::new(apex, a, b);
                up.normal = e;
                up.state = FacetState::Fresh;
                let mut down = up;
                down.normal = neg(e);

                let twin_slot = self.facets[twin]
                    .edge_slot(a, b)
                    .ok_or(HullError::NeighborSlotMismatch { facet: k, neighbor: twin })?;
                let (same_side, other_side) = if dot(f.normal, e) > 0.0 {
                    (up_id, down_id)
                } else {
                    (down_id, up_id)
                };
                if same_side == up_id {
                    up.nbc = k as u32;
                    down.nbc = twin as u32;
                } else {
                    down.nbc = k as u32;
                    up.nbc = twin as u32;
                }
                self.facets[k].set_neighbor(slot, same_side);
                self.facets[twin].set_neighbor(twin_slot, other_side);
                self.facets.push(up);
                self.facets.push(down);
            }
        }

        let fresh = numh..self.facets.len();
        patch_records(&mut self.facets, fresh, &mut self.records, true)
    }

    /// Boundary edges of a flat hull.
    pub fn planar_boundary(&self) -> Vec<[u32; 2]> {
        let mut edges = Vec::new();
        for (_, f) in self.live_facets() {
            for slot in [EdgeSlot::Ab, EdgeSlot::Bc, EdgeSlot::Ac] {
                if let Some(n) = f.neighbor(slot) {
                    if f.same_vertex_set(&self.facets[n]) {
                        let (u, v) = f.edge(slot);
                        edges.push([u.min(v), u.max(v)]);
                    }
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        edges
    }

    /// Compacts the final facet array; see [`compact`].
    pub fn compact(&self, keep: impl Fn(&Facet) -> bool, dangling: Dangling) -> Result<Vec<Facet>, HullError> {
        compact(&self.facets, keep, dangling)
    }

    pub fn into_parts(self) -> (Vec<Point3>, Vec<Facet>) {
        (self.points, self.facets)
    }
}

/// Links the unassigned `ab`/`ac` slots of the fresh facets in `fresh`.
///
/// Each fresh facet `{apex, b, c}` contributes a record for vertex `b`
/// (slot `ab`) and vertex `c` (slot `ac`). After sorting, the two records
/// naming the same vertex share the edge `{apex, vertex}` and are linked to
/// each other. Fresh facets are then marked live.
pub fn patch_new_adjacencies(facets: &mut [Facet], fresh: Range<usize>) -> Result<(), HullError> {
    let mut records = Vec::new();
    patch_records(facets, fresh, &mut records, false)
}

fn link(facets: &mut [Facet], r: &EdgeRecord, s: &EdgeRecord) {
    facets[r.facet as usize].set_neighbor(r.slot, s.facet);
    facets[s.facet as usize].set_neighbor(s.slot, r.facet);
}

/// With `junctions`, a vertex may carry four records (two twin pairs meeting
/// where consecutive visible boundary edges join); records are then paired
/// by matching normal direction.
fn patch_records(
    facets: &mut [Facet],
    fresh: Range<usize>,
    records: &mut Vec<EdgeRecord>,
    junctions: bool,
) -> Result<(), HullError> {
    records.clear();
    for q in fresh.clone() {
        let f = &facets[q];
        if f.state != FacetState::Fresh {
            continue;
        }
        records.push(EdgeRecord { vertex: f.b, slot: EdgeSlot::Ab, facet: q as u32 });
        records.push(EdgeRecord { vertex: f.c, slot: EdgeSlot::Ac, facet: q as u32 });
    }
    records.sort_unstable();

    let mut s = 0;
    while s < records.len() {
        let vertex = records[s].vertex;
        let end = s + records[s..].iter().take_while(|r| r.vertex == vertex).count();
        match end - s {
            2 => link(facets, &records[s], &records[s + 1]),
            4 if junctions => {
                let group = &records[s..end];
                let n0 = facets[group[0].facet as usize].normal;
                let partner = (1..4)
                    .find(|&j| dot(n0, facets[group[j].facet as usize].normal) > 0.0)
                    .unwrap_or(1);
                let rest: Vec<usize> = (1..4).filter(|&j| j != partner).collect();
                link(facets, &group[0], &group[partner]);
                link(facets, &group[rest[0]], &group[rest[1]]);
            }
            _ => return Err(HullError::UnmatchedEdge { vertex }),
        }
        s = end;
    }

    for f in &mut facets[fresh] {
        if f.state == FacetState::Fresh {
            f.state = FacetState::Live;
        }
    }
    Ok(())
}

/// What [`compact`] does with a kept facet whose neighbor was dropped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dangling {
    /// Fail with [`HullError::BrokenHull`].
    Error,
    /// Replace the reference with [`UNSET`] (a boundary edge).
    Boundary,
}

/// Keeps the live facets accepted by `keep`, renumbers them densely in
/// their original order and remaps neighbor ids.
pub fn compact(facets: &[Facet], keep: impl Fn(&Facet) -> bool, dangling: Dangling) -> Result<Vec<Facet>, HullError> {
    let mut taken = vec![UNSET; facets.len()];
    let mut count = 0u32;
    for (t, f) in facets.iter().enumerate() {
        if f.state == FacetState::Live && keep(f) {
            taken[t] = count;
            count += 1;
        }
    }

    let mut out = Vec::with_capacity(count as usize);
    for (t, f) in facets.iter().enumerate() {
        if taken[t] == UNSET {
            continue;
        }
        let mut g = *f;
        for slot in [EdgeSlot::Ab, EdgeSlot::Bc, EdgeSlot::Ac] {
            let old = f.neighbor_raw(slot);
            let new = if old == UNSET { UNSET } else { taken[old as usize] };
            if new == UNSET && dangling == Dangling::Error {
                return Err(HullError::BrokenHull { facet: t, neighbor: old as usize });
            }
            g.set_neighbor(slot, new);
        }
        out.push(g);
    }
    Ok(out)
}

/// Convex hull of `points` with the default configuration.
pub fn build_hull(points: &[Point3]) -> Result<Triangulation, HullError> {
    build_hull_with(points, HullConfig::default(), |_| {})
}

/// Convex hull of `points`: de-duplicates, sorts, builds and returns every
/// live facet of the closed hull.
pub fn build_hull_with(
    points: &[Point3],
    config: HullConfig,
    observer: impl FnMut(&InsertionStats),
) -> Result<Triangulation, HullError> {
    hull_of_unique(dedup(points).with_source_ids(), config, observer)
}

/// Like [`build_hull_with`] for points already free of duplicates, in any
/// order. Each point's `id` is carried into [`Triangulation::source_ids`].
pub fn hull_of_unique(
    mut points: Vec<Point3>,
    config: HullConfig,
    observer: impl FnMut(&InsertionStats),
) -> Result<Triangulation, HullError> {
    points.sort_by(compare_points);
    let state = HullState::build(points, config, observer)?;
    if !state.is_solid() {
        return Err(HullError::DegenerateCoplanarSet { boundary: state.planar_boundary() });
    }
    let facets = state.compact(|_| true, Dangling::Error)?;
    let (points, _) = state.into_parts();
    Ok(Triangulation::new(points, facets))
}
