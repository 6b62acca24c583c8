//! Growing a 5-connected biplane graph one point (or one hull layer) at a time.
//!
//! The working state keeps two full triangulations of the current vertex
//! set. Edges of their union that are not "real" are dummies: they only
//! exist so that both layers stay triangulations and are dropped from the
//! reported graph.

mod hull;
mod pipeline;

use std::collections::{BTreeSet, VecDeque};

use crate::connectivity::{is_k_connected, vertex_connectivity};
use crate::error::{Error, Result};
use crate::geom::{ConvexPolygon, PointSet};
use crate::graph::{Edge, Layer, LayeredGraph, SimpleGraph};
use crate::triangulation::{Triangulation, TriangulationClass};

pub use hull::{check_property_maxi, edge_visibility_hall_holds, insert_hull_points, HullRoute, HullStep};
pub use pipeline::{
    build_5conn_general, build_5conn_general_traced, Checkpoint, GeneralBuild, Phase, Step, MIN_CONVEX_CORE,
};

/// Two triangulations of the current vertex set plus the set of edges that
/// belong to the graph being built.
#[derive(Clone, Debug)]
pub struct InsertionState {
    first: Triangulation,
    second: Triangulation,
    real: BTreeSet<Edge>,
}

impl InsertionState {
    /// Completes each layer of `g` (restricted to `vertices`) to a triangulation.
    pub fn new(g: &LayeredGraph, vertices: &[usize]) -> Result<Self> {
        let ps = g.points();
        let keep: BTreeSet<usize> = vertices.iter().copied().collect();
        let inside = |e: &Edge| keep.contains(&e.u()) && keep.contains(&e.v());
        let l1: BTreeSet<Edge> = g.layer_edges(1).into_iter().filter(inside).collect();
        let l2: BTreeSet<Edge> = g.layer_edges(2).into_iter().filter(inside).collect();
        let first = Triangulation::complete(ps, vertices, &l1)?;
        let second = Triangulation::complete_avoiding(ps, vertices, &l2, first.edges())?;
        let real = l1.union(&l2).copied().collect();
        Ok(InsertionState { first, second, real })
    }

    pub fn from_parts(first: Triangulation, second: Triangulation, real: BTreeSet<Edge>) -> Result<Self> {
        if first.vertices() != second.vertices() || first.points() != second.points() {
            return Err(Error::pre("layers span different vertex sets"));
        }
        if let Some(e) = real.iter().find(|e| !first.edges().contains(e) && !second.edges().contains(e)) {
            return Err(Error::pre(format!("edge {e} is in neither layer")));
        }
        Ok(InsertionState { first, second, real })
    }

    pub fn points(&self) -> &PointSet {
        self.first.points()
    }

    pub fn vertices(&self) -> &[usize] {
        self.first.vertices()
    }

    pub fn first(&self) -> &Triangulation {
        &self.first
    }

    pub fn second(&self) -> &Triangulation {
        &self.second
    }

    pub fn real_edges(&self) -> &BTreeSet<Edge> {
        &self.real
    }

    pub fn dummy_edges(&self) -> BTreeSet<Edge> {
        self.union().difference(&self.real).copied().collect()
    }

    fn union(&self) -> BTreeSet<Edge> {
        self.first.edges().union(self.second.edges()).copied().collect()
    }

    /// The real edges, tagged by the layers that contain them.
    pub fn graph(&self) -> LayeredGraph {
        let mut g = LayeredGraph::new(self.points().clone());
        for &e in &self.real {
            if self.first.edges().contains(&e) {
                g.insert(e, Layer::First);
            }
            if self.second.edges().contains(&e) {
                g.insert(e, Layer::Second);
            }
        }
        g
    }

    fn real_graph(&self) -> SimpleGraph {
        SimpleGraph::induced(self.vertices(), self.real.iter().copied())
    }

    pub fn kappa(&self) -> usize {
        vertex_connectivity(&self.real_graph())
    }
}

/// How an interior insertion was completed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InteriorRoute {
    /// The two containing triangles have five or six distinct corners.
    Disjoint,
    /// The containing triangles share an edge.
    SharedEdge,
    /// Both layers have the same containing triangle.
    SameTriangle,
    /// The case rules did not yield a valid result; a bounded search over
    /// flips of edges around the new vertex did.
    FlipSearch,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteriorStep {
    pub vertex: usize,
    pub route: InteriorRoute,
    pub degree: usize,
    pub removed: Vec<Edge>,
}

/// Neighbours of interior vertex `s` in counterclockwise order; consecutive
/// entries span the triangles around `s`.
fn link(t: &Triangulation, s: usize) -> Vec<usize> {
    t.rotation(s)
}

/// The vertex that becomes adjacent to `s` when `e` (opposite `s`) is flipped.
fn far_apex(t: &Triangulation, e: Edge, s: usize) -> Option<usize> {
    let q = t.quad_of_edge(e).ok()?;
    let [_, r, _, l] = q.corners;
    if r == s {
        Some(l)
    } else if l == s {
        Some(r)
    } else {
        None
    }
}

/// A triangle at `s` whose edge opposite `s` is flippable, found by walking
/// the link of `s` from a hull neighbour.
pub fn find_flippable_opposite(t: &Triangulation, s: usize) -> Result<([usize; 3], Edge)> {
    if !t.contains_vertex(s) || t.is_hull_vertex(s) {
        return Err(Error::pre(format!("vertex {s} is not an interior vertex")));
    }
    if t.classify() == TriangulationClass::Wheel {
        return Err(Error::pre("the triangulation is a wheel"));
    }
    let ring = link(t, s);
    let k = ring.len();
    if (0..k).any(|i| !t.has_edge(ring[i], ring[(i + 1) % k])) {
        return Err(Error::pre(format!("neighbours of {s} do not form a cycle")));
    }
    if !ring.iter().any(|&v| t.is_hull_vertex(v)) {
        return Err(Error::pre(format!("vertex {s} has no hull neighbour")));
    }
    let found = |i: usize, j: usize| {
        let (a, b) = (ring[i], ring[j]);
        ([s, a, b], Edge::new(a, b))
    };
    for start in (0..k).filter(|&i| t.is_hull_vertex(ring[i])) {
        for step in [1, k - 1] {
            let mut i = start;
            for _ in 0..k - 1 {
                let j = (i + step) % k;
                let e = Edge::new(ring[i], ring[j]);
                if t.is_hull_edge(e) {
                    break;
                }
                if t.is_flippable(e) {
                    return Ok(found(i, j));
                }
                i = j;
            }
        }
    }
    Err(Error::pre(format!("no edge opposite {s} is flippable")))
}

impl InsertionState {
    /// Real edges after replacing the layers, or `None` if the result breaks
    /// the insertion contract for `s`.
    fn evaluate(&self, t1: &Triangulation, t2: &Triangulation, s: usize) -> Option<(BTreeSet<Edge>, Vec<Edge>)> {
        let union: BTreeSet<Edge> = t1.edges().union(t2.edges()).copied().collect();
        let removed: Vec<Edge> = self.real.iter().copied().filter(|e| !union.contains(e)).collect();
        if removed.len() > 1 {
            return None;
        }
        let mut real: BTreeSet<Edge> = self.real.intersection(&union).copied().collect();
        real.extend(union.iter().copied().filter(|e| e.contains(s)));
        if real.iter().filter(|e| e.contains(s)).count() < 5 {
            return None;
        }
        let g = SimpleGraph::induced(t1.vertices(), real.iter().copied());
        is_k_connected(&g, 5).then_some((real, removed))
    }
}

fn union_neighbors(t1: &Triangulation, t2: &Triangulation, s: usize) -> BTreeSet<usize> {
    t1.neighbors(s).union(t2.neighbors(s)).copied().collect()
}

/// Flips a link edge of `s` in `t` that gives `s` a new neighbour, preferring
/// edges that survive in `other`.
fn grow_by_link_flip(t: &mut Triangulation, other: &Triangulation, s: usize) -> bool {
    let known = union_neighbors(t, other, s);
    let ring = link(t, s);
    let k = ring.len();
    let cands: Vec<Edge> = (0..k)
        .map(|i| Edge::new(ring[i], ring[(i + 1) % k]))
        .filter(|&e| t.is_flippable(e) && far_apex(t, e, s).is_some_and(|w| !known.contains(&w)))
        .collect();
    let pick = cands.iter().find(|e| other.edges().contains(e)).or(cands.first()).copied();
    match pick {
        Some(e) => t.flip_in_place(e).is_ok(),
        None => false,
    }
}

fn shared_edge_case(t1: &mut Triangulation, t2: &mut Triangulation, s: usize) -> Result<()> {
    let (_, e1) = find_flippable_opposite(t1, s)?;
    let (_, e2) = find_flippable_opposite(t2, s)?;
    let known = union_neighbors(t1, t2, s);
    if far_apex(t1, e1, s).is_some_and(|w| !known.contains(&w)) {
        t1.flip_in_place(e1)?;
        return Ok(());
    }
    if far_apex(t2, e2, s).is_some_and(|w| !known.contains(&w)) {
        t2.flip_in_place(e2)?;
        return Ok(());
    }
    t1.flip_in_place(e1)?;
    if grow_by_link_flip(t1, t2, s) {
        Ok(())
    } else {
        Err(Error::internal("no flippable edge on the shared 4-cycle"))
    }
}

fn same_triangle_case(t1: &mut Triangulation, t2: &mut Triangulation, s: usize, tri: [usize; 3]) -> Result<()> {
    let (_, e1) = find_flippable_opposite(t1, s)?;
    let (_, e2) = find_flippable_opposite(t2, s)?;
    let w1 = far_apex(t1, e1, s);
    let w2 = far_apex(t2, e2, s);
    if e1 != e2 || w1 != w2 {
        t1.flip_in_place(e1)?;
        t2.flip_in_place(e2)?;
        if union_neighbors(t1, t2, s).len() >= 5 || grow_by_link_flip(t1, t2, s) || grow_by_link_flip(t2, t1, s) {
            return Ok(());
        }
        return Err(Error::internal("both flips reach the same vertex"));
    }
    // same edge, same far apex: use the layer where the opposite corner and
    // the far apex are not adjacent
    let corner = tri.iter().copied().find(|&v| !e1.contains(v)).unwrap();
    let w = w1.unwrap();
    let (main, other) = if !t1.has_edge(corner, w) { (t1, t2) } else { (t2, t1) };
    if main.has_edge(corner, w) {
        return Err(Error::internal("both layers contain the external chord"));
    }
    main.flip_in_place(e1)?;
    if grow_by_link_flip(main, other, s) {
        Ok(())
    } else {
        Err(Error::internal("no flippable edge on the 4-cycle after the first flip"))
    }
}

/// Breadth-first search over up to three flips of link edges of `s`.
fn flip_search(
    st: &InsertionState,
    t1: &Triangulation,
    t2: &Triangulation,
    s: usize,
) -> Option<(Triangulation, Triangulation, BTreeSet<Edge>, Vec<Edge>)> {
    let mut queue = VecDeque::from([(t1.clone(), t2.clone(), 0usize)]);
    let mut seen = BTreeSet::new();
    seen.insert((t1.edges().clone(), t2.edges().clone()));
    while let Some((a, b, depth)) = queue.pop_front() {
        if let Some((real, removed)) = st.evaluate(&a, &b, s) {
            return Some((a, b, real, removed));
        }
        if depth == 3 {
            continue;
        }
        for which in 0..2 {
            let t = if which == 0 { &a } else { &b };
            let ring = link(t, s);
            let k = ring.len();
            for i in 0..k {
                let e = Edge::new(ring[i], ring[(i + 1) % k]);
                let Ok(f) = t.flip(e) else { continue };
                let (na, nb) = if which == 0 { (f, b.clone()) } else { (a.clone(), f) };
                if seen.insert((na.edges().clone(), nb.edges().clone())) {
                    queue.push_back((na, nb, depth + 1));
                }
            }
        }
    }
    None
}

/// Inserts `s`, which must lie inside the hull of the current vertices but
/// outside the hull of the current interior vertices.
pub fn insert_interior_point(st: &mut InsertionState, s: usize) -> Result<InteriorStep> {
    let ps = st.points().clone();
    if s >= ps.len() || st.first.contains_vertex(s) {
        return Err(Error::pre(format!("vertex {s} is unknown or already present")));
    }
    let p = ps.point(s);
    if !st.first.hull().strictly_inside(p) {
        return Err(Error::pre(format!("point {s} is not inside the current hull")));
    }
    let interior: Vec<usize> = st.vertices().iter().copied().filter(|&v| !st.first.is_hull_vertex(v)).collect();
    if interior.len() >= 3 && !ConvexPolygon::hull_of(&ps, &interior).strictly_outside(p) {
        return Err(Error::pre(format!("point {s} lies inside the hull of the interior vertices")));
    }
    insert_interior_unchecked(st, s)
}

/// Like [`insert_interior_point`] without the requirement that `s` lies
/// outside the hull of the interior vertices. Relies on the search fallback
/// when the case analysis does not apply.
pub(crate) fn insert_interior_unchecked(st: &mut InsertionState, s: usize) -> Result<InteriorStep> {
    if s >= st.points().len() || st.first.contains_vertex(s) {
        return Err(Error::pre(format!("vertex {s} is unknown or already present")));
    }
    if !st.first.hull().strictly_inside(st.points().point(s)) {
        return Err(Error::pre(format!("point {s} is not inside the current hull")));
    }
    let mut t1 = st.first.clone();
    let mut t2 = st.second.clone();
    let d1 = t1.insert_in_face(s)?;
    let d2 = t2.insert_in_face(s)?;
    let distinct: BTreeSet<usize> = d1.iter().chain(&d2).copied().collect();
    let (route, ruled) = match distinct.len() {
        3 => (InteriorRoute::SameTriangle, same_triangle_case(&mut t1, &mut t2, s, d1)),
        4 => (InteriorRoute::SharedEdge, shared_edge_case(&mut t1, &mut t2, s)),
        _ => (InteriorRoute::Disjoint, Ok(())),
    };
    let outcome = match ruled {
        Ok(()) => st.evaluate(&t1, &t2, s).map(|(real, removed)| (t1.clone(), t2.clone(), real, removed, route)),
        Err(_) => None,
    };
    let (t1, t2, real, removed, route) = match outcome {
        Some(o) => o,
        None => {
            let mut b1 = st.first.clone();
            let mut b2 = st.second.clone();
            b1.insert_in_face(s)?;
            b2.insert_in_face(s)?;
            let (a, b, real, removed) = flip_search(st, &b1, &b2, s)
                .ok_or_else(|| Error::internal(format!("no valid insertion found for point {s}")))?;
            (a, b, real, removed, InteriorRoute::FlipSearch)
        }
    };
    let degree = real.iter().filter(|e| e.contains(s)).count();
    *st = InsertionState { first: t1, second: t2, real };
    Ok(InteriorStep { vertex: s, route, degree, removed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::build_5conn_convex;
    use crate::geom::Point;

    fn fourteen_gon_plus(extra: &[(i64, i64)]) -> (PointSet, InsertionState) {
        let base = crate::gen::regular_polygon(14).unwrap();
        let mut pts = base.points().to_vec();
        pts.extend(extra.iter().map(|&(x, y)| Point::new(x, y)));
        let ps = PointSet::new(pts).unwrap();
        let core: Vec<usize> = (0..14).collect();
        let g0 = build_5conn_convex(&base).unwrap();
        let g = LayeredGraph::from_layers(ps.clone(), g0.layer_edges(1), g0.layer_edges(2));
        let st = InsertionState::new(&g, &core).unwrap();
        (ps, st)
    }

    #[test]
    fn initial_state_is_five_connected() {
        let (_, st) = fourteen_gon_plus(&[]);
        assert_eq!(st.kappa(), 5);
        assert_eq!(st.first().edges().len(), 2 * 14 - 3);
        assert!(st.real_edges().iter().all(|e| st.first().edges().contains(e) || st.second().edges().contains(e)));
    }

    #[test]
    fn single_interior_insertion_keeps_kappa() {
        let (_, mut st) = fourteen_gon_plus(&[(850_000, 130_000)]);
        let step = insert_interior_point(&mut st, 14).unwrap();
        assert!(step.degree >= 5);
        assert!(step.removed.len() <= 1);
        assert_eq!(st.kappa(), 5);
        assert!(crate::connectivity::verify_layering(&st.graph()));
    }

    #[test]
    fn flippable_opposite_matches_exhaustive_scan() {
        let ps = PointSet::from_coords(&[(0, 0), (100, 0), (100, 100), (0, 100), (37, 52), (80, 17)]).unwrap();
        let mut t = Triangulation::sweep(&ps, &[0, 1, 2, 3, 4]).unwrap();
        t.insert_in_face(5).unwrap();
        let (tri, e) = find_flippable_opposite(&t, 5).unwrap();
        assert!(t.is_flippable(e));
        assert_eq!(tri[0], 5);
        assert!(t.has_edge(5, e.u()) && t.has_edge(5, e.v()));
        let ring = t.rotation(5);
        let any = (0..ring.len()).any(|i| t.is_flippable(Edge::new(ring[i], ring[(i + 1) % ring.len()])));
        assert!(any);
    }

    #[test]
    fn wheel_is_rejected() {
        let ps = PointSet::from_coords(&[(0, 0), (8, 0), (8, 8), (0, 8), (3, 4)]).unwrap();
        let edges = [(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (4, 1), (4, 2), (4, 3)]
            .iter()
            .map(|&(a, b)| Edge::new(a, b))
            .collect();
        let t = Triangulation::build(&ps, &[0, 1, 2, 3, 4], edges).unwrap();
        assert!(find_flippable_opposite(&t, 4).is_err());
    }
}
