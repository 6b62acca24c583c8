//! Constructions on point sets in convex position.
//!
//! Vertices are addressed by their position along the counterclockwise
//! hull; position `i` is the point `ps.hull()[i]`.

use std::collections::BTreeSet;

use crate::connectivity::{compute_layering, Layering};
use crate::error::{Error, Result};
use crate::geom::{is_convex_position, PointSet};
use crate::graph::{Edge, Layer, LayeredGraph, SimpleGraph};

fn require_convex(ps: &PointSet) -> Result<()> {
    if ps.len() < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: ps.len() });
    }
    if !is_convex_position(ps) {
        return Err(Error::pre("points are not in convex position"));
    }
    Ok(())
}

/// The two spanning trees of the 5-connected construction, on hull positions.
///
/// With `m = n/2` (even) or `m = (n+1)/2` (odd), the first tree is a star at
/// 0 on leaves 1..=3 (1..=4 when n is odd), a star at m on m+1..=m+3, and a
/// zig-zag path from 0 to m alternating between positions ascending from
/// just past the first star and positions descending from n-1. The second
/// tree is the image of the first under `x -> (m + 1 - x) mod n`.
pub fn five_conn_trees(n: usize) -> Result<(Vec<Edge>, Vec<Edge>)> {
    if n < 12 || n == 13 {
        return Err(Error::Impossible(format!(
            "no 5-connected biplane graph exists on {n} points in convex position (needs n = 12 or n >= 14)"
        )));
    }
    let (m, first_leaves) = if n.is_multiple_of(2) { (n / 2, 3) } else { (n.div_ceil(2), 4) };
    let mut t1 = BTreeSet::new();
    for l in 1..=first_leaves {
        t1.insert(Edge::new(0, l));
    }
    for l in 1..=3 {
        t1.insert(Edge::new(m, (m + l) % n));
    }
    let asc: Vec<usize> = (first_leaves + 1..m).collect();
    let desc: Vec<usize> = (m + 4..n).rev().collect();
    let mut path = vec![0];
    for i in 0..asc.len().max(desc.len()) {
        path.extend(asc.get(i));
        path.extend(desc.get(i));
    }
    path.push(m);
    for w in path.windows(2) {
        t1.insert(Edge::new(w[0], w[1]));
    }
    let f = |x: usize| (m + 1 + n - x) % n;
    let t2: BTreeSet<Edge> = t1.iter().map(|e| Edge::new(f(e.u()), f(e.v()))).collect();
    Ok((t1.into_iter().collect(), t2.into_iter().collect()))
}

/// 5-connected biplane graph on a convex point set: layer one holds the
/// first tree and the hull cycle, layer two the second tree.
pub fn build_5conn_convex(ps: &PointSet) -> Result<LayeredGraph> {
    require_convex(ps)?;
    let n = ps.len();
    let (t1, t2) = five_conn_trees(n)?;
    let hull = ps.hull();
    let map = |e: &Edge| Edge::new(hull[e.u()], hull[e.v()]);
    let cycle = (0..n).map(|i| Edge::new(hull[i], hull[(i + 1) % n]));
    Ok(LayeredGraph::from_layers(ps.clone(), t1.iter().map(map).chain(cycle), t2.iter().map(map)))
}

/// A combinatorial embedding: counterclockwise neighbour order per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarEmbedding {
    rot: Vec<Vec<usize>>,
}

impl PlanarEmbedding {
    pub fn octahedron() -> Self {
        // 0 top, 5 bottom, 1..=4 around the equator
        let mut rot = vec![vec![1, 2, 3, 4]];
        for i in 1..=4 {
            let next = i % 4 + 1;
            let prev = (i + 2) % 4 + 1;
            rot.push(vec![next, 0, prev, 5]);
        }
        rot.push(vec![4, 3, 2, 1]);
        PlanarEmbedding { rot }
    }

    pub fn n(&self) -> usize {
        self.rot.len()
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rot[v]
    }

    pub fn graph(&self) -> SimpleGraph {
        let mut g = SimpleGraph::new(self.n());
        for (v, r) in self.rot.iter().enumerate() {
            for &w in r {
                g.add_edge(v, w);
            }
        }
        g
    }

    fn pred(&self, v: usize, u: usize) -> usize {
        let r = &self.rot[v];
        let i = r.iter().position(|&x| x == u).expect("dart endpoints adjacent");
        r[(i + r.len() - 1) % r.len()]
    }

    /// Face boundaries traced by `next(u -> v) = (v, pred_v(u))`.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut seen = BTreeSet::new();
        let mut faces = Vec::new();
        for u in 0..self.n() {
            for &v in &self.rot[u] {
                if seen.contains(&(u, v)) {
                    continue;
                }
                let mut face = Vec::new();
                let (mut a, mut b) = (u, v);
                while seen.insert((a, b)) {
                    face.push(a);
                    let c = self.pred(b, a);
                    a = b;
                    b = c;
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Removes edge `u-v` and adds a new vertex joined to `u`, `v` and the
    /// apexes of the two triangles on either side. Returns the new vertex.
    pub fn vertex_split(&mut self, e: Edge) -> Result<usize> {
        let (u, v) = e.ends();
        if !self.rot[u].contains(&v) {
            return Err(Error::pre(format!("{e} is not an edge")));
        }
        let a = self.pred(v, u);
        let b = self.pred(u, v);
        if a == b || self.pred(a, v) != u || self.pred(b, u) != v {
            return Err(Error::pre(format!("faces next to {e} are not triangles")));
        }
        let x = self.n();
        let replace = |r: &mut Vec<usize>, old: usize, new: usize| {
            let i = r.iter().position(|&y| y == old).unwrap();
            r[i] = new;
        };
        replace(&mut self.rot[u], v, x);
        replace(&mut self.rot[v], u, x);
        // x goes right after `first` in the rotation of `at`
        let insert_after = |r: &mut Vec<usize>, first: usize| {
            let i = r.iter().position(|&y| y == first).unwrap();
            r.insert(i + 1, x);
        };
        insert_after(&mut self.rot[a], u);
        insert_after(&mut self.rot[b], v);
        self.rot.push(vec![v, a, u, b]);
        Ok(x)
    }
}

/// Octahedron grown by vertex splits to `n` vertices. Each split takes the
/// lowest edge at the newest vertex.
pub fn split_chain(n: usize) -> Result<PlanarEmbedding> {
    if n < 6 {
        return Err(Error::Impossible(format!("every 4-connected planar graph has at least 6 vertices, got {n}")));
    }
    let mut emb = PlanarEmbedding::octahedron();
    let mut newest = 5;
    while emb.n() < n {
        let w = *emb.rotation(newest).iter().min().unwrap();
        newest = emb.vertex_split(Edge::new(newest, w))?;
    }
    Ok(emb)
}

/// Backtracking Hamiltonian cycle search for small graphs.
pub fn find_hamiltonian_cycle(g: &SimpleGraph) -> Option<Vec<usize>> {
    let n = g.n();
    if n < 3 {
        return None;
    }
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut nb: Vec<usize> = g.neighbors(v).collect();
            nb.sort_by_key(|&w| (g.degree(w), w));
            nb
        })
        .collect();
    let mut path = vec![0];
    let mut used = vec![false; n];
    used[0] = true;

    fn viable(adj: &[Vec<usize>], used: &[bool], end: usize) -> bool {
        // every unused vertex still needs two usable neighbours
        (0..used.len())
            .filter(|&v| !used[v])
            .all(|v| adj[v].iter().filter(|&&w| !used[w] || w == end || w == 0).count() >= 2)
    }

    fn go(adj: &[Vec<usize>], path: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let n = used.len();
        let last = *path.last().unwrap();
        if path.len() == n {
            return adj[last].contains(&0);
        }
        for &w in &adj[last] {
            if used[w] {
                continue;
            }
            used[w] = true;
            path.push(w);
            if viable(adj, used, w) && go(adj, path, used) {
                return true;
            }
            path.pop();
            used[w] = false;
        }
        false
    }

    if go(&adj, &mut path, &mut used) {
        Some(path)
    } else {
        None
    }
}

/// Places the cycle `ham` on the hull of `ps` in order and splits the
/// remaining edges into two crossing-free layers.
pub fn realize_hamiltonian_on_convex(g: &SimpleGraph, ham: &[usize], ps: &PointSet) -> Result<LayeredGraph> {
    require_convex(ps)?;
    let n = g.n();
    if ps.len() != n || ham.len() != n {
        return Err(Error::pre(format!("graph has {n} vertices, cycle {}, points {}", ham.len(), ps.len())));
    }
    let mut at = vec![usize::MAX; n];
    for (i, &v) in ham.iter().enumerate() {
        if v >= n || at[v] != usize::MAX {
            return Err(Error::pre("cycle does not visit every vertex once"));
        }
        at[v] = ps.hull()[i];
    }
    for i in 0..n {
        if !g.has_edge(ham[i], ham[(i + 1) % n]) {
            return Err(Error::pre(format!("cycle step {}-{} is not an edge", ham[i], ham[(i + 1) % n])));
        }
    }
    let mapped: Vec<Edge> = g.edges().iter().map(|e| Edge::new(at[e.u()], at[e.v()])).collect();
    match compute_layering(ps, &mapped) {
        Layering::Layers(map) => {
            let mut out = LayeredGraph::new(ps.clone());
            for (e, l) in map {
                out.insert(e, l);
            }
            Ok(out)
        }
        Layering::OddCycle(cyc) => Err(Error::pre(format!(
            "chords cannot be split into two layers (odd crossing cycle of length {}); the graph is not planar",
            cyc.len()
        ))),
    }
}

/// 4-connected biplane graph on a convex point set, n >= 6.
pub fn build_4conn_convex(ps: &PointSet) -> Result<LayeredGraph> {
    require_convex(ps)?;
    let n = ps.len();
    if n == 12 || n >= 14 {
        return build_5conn_convex(ps);
    }
    let g = split_chain(n)?.graph();
    let ham = find_hamiltonian_cycle(&g).ok_or_else(|| Error::internal("split graph has no Hamiltonian cycle"))?;
    realize_hamiltonian_on_convex(&g, &ham, ps)
}

/// Number of edges both layers share; the hull edges count for layer one.
pub fn shared_edge_count(g: &LayeredGraph) -> usize {
    g.edges().filter(|(_, l)| *l == Layer::Both).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::{verify_layering, vertex_connectivity};
    use crate::gen::regular_polygon;

    fn is_spanning_tree(n: usize, t: &[Edge]) -> bool {
        t.len() == n - 1 && SimpleGraph::from_edges(n, t.iter().copied()).is_connected()
    }

    fn convex_cross(n: usize, e: Edge, f: Edge) -> bool {
        let between =
            |x: usize, p: usize, q: usize| !(x + n - p).is_multiple_of(n) && (x + n - p) % n < (q + n - p) % n;
        !e.shares_endpoint(f) && between(f.u(), e.u(), e.v()) != between(f.v(), e.u(), e.v())
    }

    #[test]
    fn trees_are_spanning_plane_and_share_two_edges() {
        for n in (12..=30).filter(|&n| n != 13) {
            let (t1, t2) = five_conn_trees(n).unwrap();
            assert!(is_spanning_tree(n, &t1) && is_spanning_tree(n, &t2), "n={n}");
            for t in [&t1, &t2] {
                for (i, &e) in t.iter().enumerate() {
                    assert!(t[i + 1..].iter().all(|&f| !convex_cross(n, e, f)), "n={n}");
                }
            }
            let shared = t1.iter().filter(|e| t2.contains(e)).count();
            assert_eq!(shared, 2, "n={n}");
        }
        assert!(matches!(five_conn_trees(13), Err(Error::Impossible(_))));
        assert!(five_conn_trees(11).is_err());
    }

    #[test]
    fn five_connected_on_regular_polygons() {
        for n in [12, 14, 15, 16, 17] {
            let g = build_5conn_convex(&regular_polygon(n).unwrap()).unwrap();
            assert!(verify_layering(&g));
            assert_eq!(vertex_connectivity(&g.abstract_graph()), 5, "n={n}");
        }
    }

    #[test]
    fn octahedron_embedding_is_consistent() {
        let o = PlanarEmbedding::octahedron();
        assert_eq!(o.faces().len(), 8);
        assert!(o.faces().iter().all(|f| f.len() == 3));
        assert_eq!(vertex_connectivity(&o.graph()), 4);
    }

    #[test]
    fn splits_keep_a_4_connected_triangulation() {
        let mut emb = PlanarEmbedding::octahedron();
        for e in [Edge::new(0, 1), Edge::new(2, 6), Edge::new(5, 3)] {
            let before = emb.graph();
            let x = emb.vertex_split(e).unwrap();
            let g = emb.graph();
            assert_eq!(g.degree(x), 4);
            assert!(!g.has_edge(e.u(), e.v()));
            assert_eq!(g.edge_count(), before.edge_count() + 3);
            let faces = emb.faces();
            // Euler: V - E + F = 2 with every face a triangle
            assert_eq!(g.n() + faces.len(), g.edge_count() + 2);
            assert!(faces.iter().all(|f| f.len() == 3));
            assert_eq!(vertex_connectivity(&g), 4);
        }
    }

    #[test]
    fn hamiltonian_cycles() {
        let o = PlanarEmbedding::octahedron().graph();
        let c = find_hamiltonian_cycle(&o).unwrap();
        assert_eq!(c.len(), 6);
        for i in 0..6 {
            assert!(o.has_edge(c[i], c[(i + 1) % 6]));
        }
        let c7 = SimpleGraph::from_edges(7, (0..7).map(|i| Edge::new(i, (i + 1) % 7)));
        assert_eq!(find_hamiltonian_cycle(&c7).unwrap().len(), 7);
        for n in 7..=14 {
            let g = split_chain(n).unwrap().graph();
            assert!(find_hamiltonian_cycle(&g).is_some(), "n={n}");
        }
    }

    #[test]
    fn realization_cases() {
        let hex = regular_polygon(6).unwrap();
        let o = PlanarEmbedding::octahedron().graph();
        let ham = find_hamiltonian_cycle(&o).unwrap();
        let g = realize_hamiltonian_on_convex(&o, &ham, &hex).unwrap();
        assert!(verify_layering(&g));
        assert_eq!(vertex_connectivity(&g.abstract_graph()), 4);

        let c6 = SimpleGraph::from_edges(6, (0..6).map(|i| Edge::new(i, (i + 1) % 6)));
        let g = realize_hamiltonian_on_convex(&c6, &[0, 1, 2, 3, 4, 5], &hex).unwrap();
        assert!(g.edges().all(|(_, l)| l == Layer::First));

        let pent = regular_polygon(5).unwrap();
        let mut k5 = SimpleGraph::new(5);
        for a in 0..5 {
            for b in a + 1..5 {
                k5.add_edge(a, b);
            }
        }
        assert!(realize_hamiltonian_on_convex(&k5, &[0, 1, 2, 3, 4], &pent).is_err());
    }

    #[test]
    fn four_connected_small_n() {
        for n in 6..=13 {
            let g = build_4conn_convex(&regular_polygon(n).unwrap()).unwrap();
            assert!(verify_layering(&g));
            let k = vertex_connectivity(&g.abstract_graph());
            if n < 12 {
                assert_eq!(k, 4, "n={n}");
            } else {
                assert!(k >= 4);
            }
        }
        assert!(matches!(build_4conn_convex(&regular_polygon(5).unwrap()), Err(Error::Impossible(_))));
    }
}
