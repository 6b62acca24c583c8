//! Triangulations with face adjacency and edge flips.
//!
//! A [`Triangulation`] lives on a subset of the vertices of a [`PointSet`]
//! and keeps global vertex ids, so triangulations of nested subsets can be
//! compared and combined without re-indexing.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::geom::{cross, in_triangle, ConvexPolygon, Point, PointSet};
use crate::graph::{Edge, Layer, LayeredGraph, SimpleGraph};

/// The quadrilateral formed by the two triangles next to a non-hull edge,
/// listed counterclockwise as `[u, right apex, v, left apex]` for edge `u-v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Quad {
    pub corners: [usize; 4],
}

impl Quad {
    pub fn is_convex(&self, ps: &PointSet) -> bool {
        let c = self.corners;
        (0..4).all(|i| ps.cross(c[i], c[(i + 1) % 4], c[(i + 2) % 4]) > 0)
    }

    /// The diagonal that would replace the shared edge.
    pub fn opposite_diagonal(&self) -> Edge {
        Edge::new(self.corners[1], self.corners[3])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriangulationClass {
    Wheel,
    Fan,
    Other,
}

#[derive(Clone, Debug)]
pub struct Triangulation {
    points: PointSet,
    vertices: Vec<usize>,
    hull: ConvexPolygon,
    adj: Vec<BTreeSet<usize>>,
    edges: BTreeSet<Edge>,
    // apex left of u->v and apex right of u->v, for u < v
    faces: BTreeMap<Edge, [Option<usize>; 2]>,
}

impl PartialEq for Triangulation {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points && self.vertices == other.vertices && self.edges == other.edges
    }
}

/// Deterministic triangulation of the whole point set.
pub fn triangulate(ps: &PointSet) -> Result<Triangulation> {
    let all: Vec<usize> = (0..ps.len()).collect();
    Triangulation::sweep(ps, &all)
}

impl Triangulation {
    /// Lexicographic sweep: each new point is joined to every hull vertex it sees.
    pub fn sweep(ps: &PointSet, ids: &[usize]) -> Result<Self> {
        if ids.len() < 3 {
            return Err(Error::TooFewPoints { needed: 3, got: ids.len() });
        }
        let mut order = ids.to_vec();
        order.sort_by_key(|&i| (ps.point(i).x, ps.point(i).y));
        let mut edges = BTreeSet::new();
        let (a, b, c) = (order[0], order[1], order[2]);
        edges.insert(Edge::new(a, b));
        edges.insert(Edge::new(b, c));
        edges.insert(Edge::new(a, c));
        let mut hull: Vec<usize> = if ps.cross(a, b, c) > 0 { vec![a, b, c] } else { vec![a, c, b] };
        for &p in &order[3..] {
            let pt = ps.point(p);
            let k = hull.len();
            let vis: Vec<bool> =
                (0..k).map(|i| cross(ps.point(hull[i]), ps.point(hull[(i + 1) % k]), pt) < 0).collect();
            let first = (0..k)
                .find(|&i| vis[i] && !vis[(i + k - 1) % k])
                .ok_or_else(|| Error::internal("sweep point sees no hull edge"))?;
            let mut run = vec![hull[first]];
            let mut i = first;
            while vis[i] {
                i = (i + 1) % k;
                run.push(hull[i]);
            }
            for &h in &run {
                edges.insert(Edge::new(h, p));
            }
            // replace the interior of the visible chain by p
            let mut next = Vec::with_capacity(k + 1);
            let last = i;
            let mut j = last;
            loop {
                next.push(hull[j]);
                if j == first {
                    break;
                }
                j = (j + 1) % k;
            }
            next.push(p);
            hull = next;
        }
        Triangulation::build(ps, ids, edges)
    }

    /// Validates `edges` as a triangulation of `ids` and computes faces.
    pub fn build(ps: &PointSet, ids: &[usize], edges: BTreeSet<Edge>) -> Result<Self> {
        let mut vertices = ids.to_vec();
        vertices.sort_unstable();
        vertices.dedup();
        let n = vertices.len();
        if n < 3 {
            return Err(Error::TooFewPoints { needed: 3, got: n });
        }
        let mut active = vec![false; ps.len()];
        for &v in &vertices {
            active[v] = true;
        }
        let hull = ConvexPolygon::hull_of(ps, &vertices);
        let h = hull.len();
        if edges.len() != 3 * n - 3 - h {
            return Err(Error::InvalidTriangulation(format!(
                "{} edges, expected 3n-3-h = {}",
                edges.len(),
                3 * n - 3 - h
            )));
        }
        let mut adj = vec![BTreeSet::new(); ps.len()];
        for e in &edges {
            if !active[e.u()] || !active[e.v()] {
                return Err(Error::InvalidTriangulation(format!("edge {e} uses an inactive vertex")));
            }
            adj[e.u()].insert(e.v());
            adj[e.v()].insert(e.u());
        }
        let list: Vec<Edge> = edges.iter().copied().collect();
        for (i, &e) in list.iter().enumerate() {
            for &f in &list[i + 1..] {
                if e.crosses(f, ps) {
                    return Err(Error::InvalidTriangulation(format!("edges {e} and {f} cross")));
                }
            }
        }
        for i in 0..h {
            let (a, b) = hull.edge(i);
            if !edges.contains(&Edge::new(a, b)) {
                return Err(Error::InvalidTriangulation(format!("hull edge {a}-{b} missing")));
            }
        }
        let mut t = Triangulation { points: ps.clone(), vertices, hull, adj, edges, faces: BTreeMap::new() };
        let all: Vec<Edge> = t.edges.iter().copied().collect();
        t.refresh_faces(&all);
        for e in &all {
            let [l, r] = t.faces[e];
            let hull_edge = t.is_hull_edge(*e);
            let ok = if hull_edge { l.is_some() != r.is_some() } else { l.is_some() && r.is_some() };
            if !ok {
                return Err(Error::InvalidTriangulation(format!("edge {e} has a non-triangular face")));
            }
        }
        for [a, b, c] in t.triangles() {
            let (pa, pb, pc) = (ps.point(a), ps.point(b), ps.point(c));
            if let Some(&v) = t.vertices.iter().find(|&&v| in_triangle(pa, pb, pc, ps.point(v))) {
                return Err(Error::InvalidTriangulation(format!("vertex {v} inside face {a} {b} {c}")));
            }
        }
        Ok(t)
    }

    /// Greedy completion of a plane edge set to a triangulation of `ids`.
    /// Candidates are tried shortest first.
    pub fn complete(ps: &PointSet, ids: &[usize], required: &BTreeSet<Edge>) -> Result<Self> {
        Self::complete_avoiding(ps, ids, required, &BTreeSet::new())
    }

    /// Like [`Triangulation::complete`] but tries edges outside `avoid` first.
    pub fn complete_avoiding(
        ps: &PointSet,
        ids: &[usize],
        required: &BTreeSet<Edge>,
        avoid: &BTreeSet<Edge>,
    ) -> Result<Self> {
        let mut chosen: Vec<Edge> = required.iter().copied().collect();
        for (i, &e) in chosen.iter().enumerate() {
            if let Some(&f) = chosen[i + 1..].iter().find(|f| e.crosses(**f, ps)) {
                return Err(Error::pre(format!("required edges {e} and {f} cross")));
            }
        }
        let mut cands = Vec::new();
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                let e = Edge::new(a, b);
                if !required.contains(&e) {
                    cands.push(e);
                }
            }
        }
        cands.sort_by_key(|&e| (avoid.contains(&e), ps.point(e.u()).dist2(ps.point(e.v())), e));
        for e in cands {
            if !chosen.iter().any(|f| e.crosses(*f, ps)) {
                chosen.push(e);
            }
        }
        Triangulation::build(ps, ids, chosen.into_iter().collect())
    }

    fn apex(&self, u: usize, v: usize, left: bool) -> Option<usize> {
        let ps = &self.points;
        let cands: Vec<usize> =
            self.adj[u].intersection(&self.adj[v]).copied().filter(|&w| (ps.cross(u, v, w) > 0) == left).collect();
        cands.iter().copied().find(|&w| {
            let (pu, pv, pw) = (ps.point(u), ps.point(v), ps.point(w));
            !cands.iter().any(|&x| x != w && in_triangle(pu, pv, pw, ps.point(x)))
        })
    }

    fn refresh_faces(&mut self, edges: &[Edge]) {
        for &e in edges {
            if self.edges.contains(&e) {
                let l = self.apex(e.u(), e.v(), true);
                let r = self.apex(e.u(), e.v(), false);
                self.faces.insert(e, [l, r]);
            } else {
                self.faces.remove(&e);
            }
        }
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn point(&self, v: usize) -> Point {
        self.points.point(v)
    }

    /// Active vertex ids, sorted.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn hull(&self) -> &ConvexPolygon {
        &self.hull
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.edges.contains(&Edge::new(a, b))
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_hull_vertex(&self, v: usize) -> bool {
        self.hull.position(v).is_some()
    }

    pub fn is_hull_edge(&self, e: Edge) -> bool {
        self.hull.edge_index(e.u(), e.v()).is_some()
    }

    /// Apexes `[left of u->v, right of u->v]` of the faces next to `e`.
    pub fn face_apexes(&self, e: Edge) -> Option<[Option<usize>; 2]> {
        self.faces.get(&e).copied()
    }

    /// Third vertex of the face on the given side of the directed edge `a -> b`.
    pub fn apex_left_of(&self, a: usize, b: usize) -> Option<usize> {
        let [l, r] = self.faces.get(&Edge::new(a, b))?;
        if a < b {
            *l
        } else {
            *r
        }
    }

    /// All triangular faces as counterclockwise triples, each listed once.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = BTreeSet::new();
        for (e, [l, r]) in &self.faces {
            for w in [*l, *r].into_iter().flatten() {
                let mut t = [e.u(), e.v(), w];
                if self.points.cross(t[0], t[1], t[2]) < 0 {
                    t.swap(1, 2);
                }
                let k = (0..3).min_by_key(|&i| t[i]).unwrap();
                t.rotate_left(k);
                out.insert(t);
            }
        }
        out.into_iter().collect()
    }

    /// Neighbours of `v` in counterclockwise angular order.
    pub fn rotation(&self, v: usize) -> Vec<usize> {
        let o = self.point(v);
        let mut nb: Vec<usize> = self.adj[v].iter().copied().collect();
        let half = |p: Point| -> u8 {
            let (dx, dy) = (p.x - o.x, p.y - o.y);
            if dy > 0 || (dy == 0 && dx > 0) {
                0
            } else {
                1
            }
        };
        nb.sort_by(|&a, &b| {
            let (pa, pb) = (self.point(a), self.point(b));
            half(pa).cmp(&half(pb)).then_with(|| 0.cmp(&cross(o, pa, pb)))
        });
        nb
    }

    pub fn quad_of_edge(&self, e: Edge) -> Result<Quad> {
        let [l, r] = self.faces.get(&e).ok_or_else(|| Error::pre(format!("{e} is not an edge")))?;
        match (l, r) {
            (Some(l), Some(r)) => Ok(Quad { corners: [e.u(), *r, e.v(), *l] }),
            _ => Err(Error::pre(format!("{e} is a hull edge; its quadrilateral is undefined"))),
        }
    }

    pub fn is_flippable(&self, e: Edge) -> bool {
        self.quad_of_edge(e).map(|q| q.is_convex(&self.points)).unwrap_or(false)
    }

    /// Replaces `e` by the other diagonal of its quadrilateral; returns the new edge.
    pub fn flip_in_place(&mut self, e: Edge) -> Result<Edge> {
        let q = self.quad_of_edge(e)?;
        if !q.is_convex(&self.points) {
            return Err(Error::pre(format!("edge {e} is not flippable")));
        }
        let [u, r, v, l] = q.corners;
        let ne = Edge::new(r, l);
        self.edges.remove(&e);
        self.adj[u].remove(&v);
        self.adj[v].remove(&u);
        self.edges.insert(ne);
        self.adj[r].insert(l);
        self.adj[l].insert(r);
        self.faces.remove(&e);
        let touched = [ne, Edge::new(u, r), Edge::new(r, v), Edge::new(v, l), Edge::new(l, u)];
        self.refresh_faces(&touched);
        Ok(ne)
    }

    pub fn flip(&self, e: Edge) -> Result<Triangulation> {
        let mut t = self.clone();
        t.flip_in_place(e)?;
        Ok(t)
    }

    /// The face containing `p` strictly in its interior.
    pub fn locate(&self, p: Point) -> Option<[usize; 3]> {
        self.triangles().into_iter().find(|&[a, b, c]| in_triangle(self.point(a), self.point(b), self.point(c), p))
    }

    /// Adds inactive vertex `v`, which must lie strictly inside a face,
    /// joined to the three corners of that face.
    pub fn insert_in_face(&mut self, v: usize) -> Result<[usize; 3]> {
        if self.contains_vertex(v) {
            return Err(Error::pre(format!("vertex {v} already present")));
        }
        let tri = self
            .locate(self.point(v))
            .ok_or_else(|| Error::pre(format!("vertex {v} is not strictly inside a face")))?;
        let pos = self.vertices.binary_search(&v).unwrap_err();
        self.vertices.insert(pos, v);
        for &c in &tri {
            self.edges.insert(Edge::new(v, c));
            self.adj[v].insert(c);
            self.adj[c].insert(v);
        }
        let [a, b, c] = tri;
        let touched =
            [Edge::new(a, b), Edge::new(b, c), Edge::new(c, a), Edge::new(v, a), Edge::new(v, b), Edge::new(v, c)];
        self.refresh_faces(&touched);
        Ok(tri)
    }

    /// Subgraph induced on `ids`, validated as a triangulation.
    pub fn restrict(&self, ids: &[usize]) -> Result<Triangulation> {
        let keep: BTreeSet<usize> = ids.iter().copied().collect();
        let edges = self.edges.iter().copied().filter(|e| keep.contains(&e.u()) && keep.contains(&e.v())).collect();
        Triangulation::build(&self.points, ids, edges)
    }

    /// Forces segment `a-b` into the triangulation: every crossing edge is
    /// removed and the two pockets are re-triangulated greedily. Returns the
    /// removed edges.
    pub fn insert_segment(&mut self, a: usize, b: usize) -> Result<Vec<Edge>> {
        let seg = Edge::new(a, b);
        if self.edges.contains(&seg) {
            return Ok(Vec::new());
        }
        let removed: Vec<Edge> = self.edges.iter().copied().filter(|f| seg.crosses(*f, &self.points)).collect();
        let mut keep: BTreeSet<Edge> = self.edges.iter().copied().filter(|f| !removed.contains(f)).collect();
        keep.insert(seg);
        let avoid: BTreeSet<Edge> = removed.iter().copied().collect();
        *self = Triangulation::complete_avoiding(&self.points, &self.vertices.clone(), &keep, &avoid)?;
        Ok(removed)
    }

    /// Abstract graph on `0..n()`, vertex `i` standing for `vertices()[i]`.
    pub fn abstract_graph(&self) -> SimpleGraph {
        SimpleGraph::induced(&self.vertices, self.edges.iter().copied())
    }

    pub fn chords(&self) -> Vec<Edge> {
        self.edges
            .iter()
            .copied()
            .filter(|e| self.is_hull_vertex(e.u()) && self.is_hull_vertex(e.v()) && !self.is_hull_edge(*e))
            .collect()
    }

    pub fn classify(&self) -> TriangulationClass {
        let n = self.n();
        let h = self.hull.len();
        if n < 4 {
            return TriangulationClass::Other;
        }
        if h == n - 1 {
            let center = self.vertices.iter().copied().find(|&v| !self.is_hull_vertex(v));
            if let Some(c) = center {
                if self.degree(c) == n - 1 {
                    return TriangulationClass::Wheel;
                }
            }
        }
        if h == n && self.vertices.iter().any(|&v| self.degree(v) == n - 1) {
            return TriangulationClass::Fan;
        }
        TriangulationClass::Other
    }

    /// Both layers as one layered graph on the full point set.
    pub fn to_layered(&self, layer: Layer) -> LayeredGraph {
        let mut g = LayeredGraph::new(self.points.clone());
        for &e in &self.edges {
            g.insert(e, layer);
        }
        g
    }
}

/// Second triangulation built greedily: edges absent from `first` first,
/// then shorter edges, then id order.
pub fn greedy_second_triangulation(first: &Triangulation) -> Result<Triangulation> {
    Triangulation::complete_avoiding(first.points(), first.vertices(), &BTreeSet::new(), first.edges())
}

/// Union of `seed` (or the sweep triangulation) with a greedily built
/// second triangulation.
pub fn saturate_to_maximal_biplane(ps: &PointSet, seed: Option<&Triangulation>) -> Result<LayeredGraph> {
    let first = match seed {
        Some(t) => t.clone(),
        None => triangulate(ps)?,
    };
    let second = greedy_second_triangulation(&first)?;
    let mut g = first.to_layered(Layer::First);
    for &e in second.edges() {
        g.insert(e, Layer::Second);
    }
    Ok(g)
}
