//! Connectivity verifiers: vertex connectivity by max flow, bridges,
//! crossing-conflict layering, and 2-/3-cut structures of triangulations.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::geom::{in_triangle, point_in_polygon, Point, PointSet};
use crate::graph::{Edge, Layer, LayeredGraph, SimpleGraph};
use crate::triangulation::Triangulation;

struct FlowNet {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i32>,
    base: Vec<i32>,
}

impl FlowNet {
    // vertex v becomes in = 2v, out = 2v + 1 joined by a unit arc
    fn split(g: &SimpleGraph) -> Self {
        let n = g.n();
        let mut net = FlowNet { head: vec![Vec::new(); 2 * n], to: Vec::new(), cap: Vec::new(), base: Vec::new() };
        let big = n as i32 + 1;
        for v in 0..n {
            net.arc(2 * v, 2 * v + 1, 1);
        }
        for e in g.edges() {
            net.arc(2 * e.u() + 1, 2 * e.v(), big);
            net.arc(2 * e.v() + 1, 2 * e.u(), big);
        }
        net.base = net.cap.clone();
        net
    }

    fn arc(&mut self, a: usize, b: usize, c: i32) {
        self.head[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(c);
        self.head[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(0);
    }

    fn reachable(&self, src: usize) -> (Vec<bool>, Vec<usize>) {
        let mut seen = vec![false; self.head.len()];
        let mut via = vec![usize::MAX; self.head.len()];
        let mut q = VecDeque::from([src]);
        seen[src] = true;
        while let Some(x) = q.pop_front() {
            for &a in &self.head[x] {
                let y = self.to[a];
                if self.cap[a] > 0 && !seen[y] {
                    seen[y] = true;
                    via[y] = a;
                    q.push_back(y);
                }
            }
        }
        (seen, via)
    }

    /// Number of internally disjoint s-t paths, stopping once `limit` is reached.
    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        self.cap.copy_from_slice(&self.base);
        let (src, dst) = (2 * s + 1, 2 * t);
        let mut flow = 0;
        while flow < limit {
            let (seen, via) = self.reachable(src);
            if !seen[dst] {
                break;
            }
            let mut x = dst;
            while x != src {
                let a = via[x];
                self.cap[a] -= 1;
                self.cap[a ^ 1] += 1;
                x = self.to[a ^ 1];
            }
            flow += 1;
        }
        flow
    }

    /// Vertices separating s from t after a completed max flow.
    fn cut_after_flow(&self, s: usize) -> Vec<usize> {
        let (seen, _) = self.reachable(2 * s + 1);
        (0..self.head.len() / 2).filter(|&v| seen[2 * v] && !seen[2 * v + 1]).collect()
    }
}

fn pair_schedule(g: &SimpleGraph) -> Option<Vec<(usize, usize)>> {
    let n = g.n();
    let v = (0..n).min_by_key(|&v| (g.degree(v), v))?;
    let nb: Vec<usize> = g.neighbors(v).collect();
    let mut pairs: Vec<(usize, usize)> = (0..n).filter(|&u| u != v && !g.has_edge(u, v)).map(|u| (v, u)).collect();
    for (i, &a) in nb.iter().enumerate() {
        for &b in &nb[i + 1..] {
            if !g.has_edge(a, b) {
                pairs.push((a, b));
            }
        }
    }
    Some(pairs)
}

/// Exact vertex connectivity. Complete graphs give `n - 1`, disconnected
/// graphs give 0.
pub fn vertex_connectivity(g: &SimpleGraph) -> usize {
    let n = g.n();
    if n <= 1 {
        return 0;
    }
    let pairs = pair_schedule(g).unwrap_or_default();
    if pairs.is_empty() {
        return n - 1;
    }
    let mut net = FlowNet::split(g);
    let mut best = n - 1;
    for (a, b) in pairs {
        best = best.min(net.max_flow(a, b, best));
        if best == 0 {
            break;
        }
    }
    best
}

/// True iff `vertex_connectivity(g) >= k`, with early exit.
pub fn is_k_connected(g: &SimpleGraph, k: usize) -> bool {
    if g.n() <= k {
        return false;
    }
    let pairs = pair_schedule(g).unwrap_or_default();
    let mut net = FlowNet::split(g);
    pairs.into_iter().all(|(a, b)| net.max_flow(a, b, k) >= k)
}

/// A minimum vertex separator, or `None` for complete graphs.
pub fn min_vertex_cut(g: &SimpleGraph) -> Option<Vec<usize>> {
    let pairs = pair_schedule(g)?;
    let mut net = FlowNet::split(g);
    let mut best: Option<(usize, usize, usize)> = None;
    for (a, b) in pairs {
        let limit = best.map_or(g.n(), |(f, _, _)| f);
        let f = net.max_flow(a, b, limit);
        if best.is_none_or(|(bf, _, _)| f < bf) {
            best = Some((f, a, b));
        }
    }
    let (_, a, b) = best?;
    net.max_flow(a, b, usize::MAX);
    Some(net.cut_after_flow(a))
}

/// Edges whose removal disconnects their component.
pub fn bridges(g: &SimpleGraph) -> Vec<Edge> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut out = Vec::new();
    let mut time = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // (vertex, parent, neighbour list, next index)
        let mut stack: Vec<(usize, usize, Vec<usize>, usize)> = Vec::new();
        disc[root] = time;
        low[root] = time;
        time += 1;
        stack.push((root, usize::MAX, g.neighbors(root).collect(), 0));
        while let Some(top) = stack.last_mut() {
            let (v, p) = (top.0, top.1);
            if top.3 < top.2.len() {
                let w = top.2[top.3];
                top.3 += 1;
                if w == p {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, v, g.neighbors(w).collect(), 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if p != usize::MAX {
                    low[p] = low[p].min(low[v]);
                    if low[v] > disc[p] {
                        out.push(Edge::new(p, v));
                    }
                }
            }
        }
    }
    out.sort();
    out
}

pub fn is_two_edge_connected(g: &SimpleGraph) -> bool {
    g.n() >= 1 && g.is_connected() && bridges(g).is_empty()
}

/// One node per edge of `edges`; nodes adjacent iff the segments properly cross.
pub fn crossing_conflict_graph(ps: &PointSet, edges: &[Edge]) -> SimpleGraph {
    let mut c = SimpleGraph::new(edges.len());
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if edges[i].crosses(edges[j], ps) {
                c.add_edge(i, j);
            }
        }
    }
    c
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Layering {
    /// Every edge assigned to layer one or two.
    Layers(BTreeMap<Edge, Layer>),
    /// A closed walk of odd length in the conflict graph; consecutive edges cross.
    OddCycle(Vec<Edge>),
}

/// Two-colours the crossing-conflict graph. Uncrossed edges go to layer one.
pub fn compute_layering(ps: &PointSet, edges: &[Edge]) -> Layering {
    let edges: Vec<Edge> = edges.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let c = crossing_conflict_graph(ps, &edges);
    let m = edges.len();
    let mut color = vec![u8::MAX; m];
    let mut parent = vec![usize::MAX; m];
    let mut depth = vec![0usize; m];
    for root in 0..m {
        if color[root] != u8::MAX {
            continue;
        }
        color[root] = 0;
        let mut q = VecDeque::from([root]);
        while let Some(x) = q.pop_front() {
            for y in c.neighbors(x) {
                if color[y] == u8::MAX {
                    color[y] = 1 - color[x];
                    parent[y] = x;
                    depth[y] = depth[x] + 1;
                    q.push_back(y);
                } else if color[y] == color[x] {
                    // climb to the common ancestor of x and y
                    let (mut a, mut b) = (x, y);
                    let (mut pa, mut pb) = (vec![a], vec![b]);
                    while depth[a] > depth[b] {
                        a = parent[a];
                        pa.push(a);
                    }
                    while depth[b] > depth[a] {
                        b = parent[b];
                        pb.push(b);
                    }
                    while a != b {
                        a = parent[a];
                        b = parent[b];
                        pa.push(a);
                        pb.push(b);
                    }
                    pb.pop();
                    pb.reverse();
                    pa.extend(pb);
                    return Layering::OddCycle(pa.into_iter().map(|i| edges[i]).collect());
                }
            }
        }
    }
    Layering::Layers(
        edges.iter().zip(color).map(|(&e, k)| (e, if k == 0 { Layer::First } else { Layer::Second })).collect(),
    )
}

/// Pairs of edges in a common layer that properly cross.
pub fn layering_violations(g: &LayeredGraph) -> Vec<(Edge, Edge)> {
    let ps = g.points();
    let mut out = Vec::new();
    for layer in [1u8, 2] {
        let es = g.layer_edges(layer);
        for i in 0..es.len() {
            for j in i + 1..es.len() {
                if es[i].crosses(es[j], ps) {
                    out.push((es[i], es[j]));
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn verify_layering(g: &LayeredGraph) -> bool {
    layering_violations(g).is_empty()
}

/// Vertex connectivity of the union graph on all points.
pub fn layered_connectivity(g: &LayeredGraph) -> usize {
    vertex_connectivity(&g.abstract_graph())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bichord {
    pub ends: (usize, usize),
    pub middle: usize,
    /// One vertex from each part the path cuts off: two parts when the
    /// middle vertex is interior, three when it lies on the hull.
    pub witnesses: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatingTriangle {
    pub corners: [usize; 3],
    pub inside: usize,
    pub outside: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CutReport {
    pub chords: Vec<Edge>,
    pub bichords: Vec<Bichord>,
    pub separating_triangles: Vec<SeparatingTriangle>,
}

impl CutReport {
    pub fn is_empty(&self) -> bool {
        self.chords.is_empty() && self.bichords.is_empty() && self.separating_triangles.is_empty()
    }
}

/// Hull vertices strictly between `p` and `q` walking counterclockwise.
fn arc(t: &Triangulation, p: usize, q: usize) -> Vec<usize> {
    let h = t.hull();
    let k = h.len();
    let (mut i, j) = (h.position(p).unwrap(), h.position(q).unwrap());
    let mut out = Vec::new();
    loop {
        i = (i + 1) % k;
        if i == j {
            return out;
        }
        out.push(h.ids[i]);
    }
}

/// The closed regions into which the path `u - m - w` cuts the hull,
/// as polygons in vertex-id form.
pub(crate) fn path_regions(t: &Triangulation, u: usize, m: usize, w: usize) -> Vec<Vec<usize>> {
    let region = |p: usize, q: usize, close: &[usize]| {
        let mut poly = vec![p];
        poly.extend(arc(t, p, q));
        poly.push(q);
        poly.extend_from_slice(close);
        poly
    };
    if !t.is_hull_vertex(m) {
        return vec![region(u, w, &[m]), region(w, u, &[m])];
    }
    // orient so that the counterclockwise order is u, m, w
    let (u, w) = if arc(t, u, m).contains(&w) { (w, u) } else { (u, w) };
    vec![region(u, m, &[]), region(m, w, &[]), region(w, u, &[m])]
}

fn region_members(t: &Triangulation, poly: &[usize], skip: &[usize]) -> Vec<usize> {
    let pts: Vec<Point> = poly.iter().map(|&v| t.point(v)).collect();
    let on_boundary: BTreeSet<usize> = poly.iter().copied().collect();
    t.vertices()
        .iter()
        .copied()
        .filter(|v| !skip.contains(v))
        .filter(|&v| if t.is_hull_vertex(v) { on_boundary.contains(&v) } else { point_in_polygon(&pts, t.point(v)) })
        .collect()
}

/// Chords, bichords and separating triangles of `t`, with witnesses.
pub fn cut_structures(t: &Triangulation) -> Result<CutReport> {
    if t.n() < 5 {
        return Err(Error::TooFewPoints { needed: 5, got: t.n() });
    }
    let mut report = CutReport { chords: t.chords(), ..Default::default() };
    for &m in t.vertices() {
        let ends: Vec<usize> = t
            .neighbors(m)
            .iter()
            .copied()
            .filter(|&x| t.is_hull_vertex(x) && !t.is_hull_edge(Edge::new(x, m)))
            .collect();
        for (i, &u) in ends.iter().enumerate() {
            for &w in &ends[i + 1..] {
                let mut witnesses = Vec::new();
                for poly in path_regions(t, u, m, w) {
                    match region_members(t, &poly, &[u, m, w]).first() {
                        Some(&x) => witnesses.push(x),
                        None => break,
                    }
                }
                let parts = if t.is_hull_vertex(m) { 3 } else { 2 };
                if witnesses.len() == parts {
                    report.bichords.push(Bichord { ends: (u, w), middle: m, witnesses });
                }
            }
        }
    }
    for e in t.edges() {
        let (a, b) = e.ends();
        for &c in t.neighbors(a).intersection(t.neighbors(b)) {
            if c <= b {
                continue;
            }
            let (pa, pb, pc) = (t.point(a), t.point(b), t.point(c));
            let inside = t.vertices().iter().copied().find(|&x| in_triangle(pa, pb, pc, t.point(x)));
            let outside = t
                .vertices()
                .iter()
                .copied()
                .find(|&x| x != a && x != b && x != c && !in_triangle(pa, pb, pc, t.point(x)));
            if let (Some(inside), Some(outside)) = (inside, outside) {
                report.separating_triangles.push(SeparatingTriangle { corners: [a, b, c], inside, outside });
            }
        }
    }
    Ok(report)
}

/// `e` meets the path through `corners` in a single proper crossing.
fn crosses_path_once(ps: &PointSet, e: Edge, corners: &[usize], closed: bool) -> bool {
    if corners.iter().any(|&c| e.contains(c)) {
        return false;
    }
    let k = corners.len();
    let segs = if closed { k } else { k - 1 };
    (0..segs).filter(|&i| e.crosses(Edge::new(corners[i], corners[(i + 1) % k]), ps)).count() == 1
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub violations: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the crossing conditions under which `t` plus `added` is 4-connected:
/// every separating triangle and bichord properly crossed once, every chord
/// crossed twice, and by two vertex-disjoint edges when both sides hold at
/// least two points.
pub fn check_4conn_augmentation(t: &Triangulation, added: &[Edge]) -> Result<CheckReport> {
    let ps = t.points();
    let report = cut_structures(t)?;
    let mut violations = Vec::new();
    for st in &report.separating_triangles {
        if !added.iter().any(|&e| crosses_path_once(ps, e, &st.corners, true)) {
            let [a, b, c] = st.corners;
            violations.push(format!("separating triangle {a} {b} {c} not crossed"));
        }
    }
    for bc in &report.bichords {
        let path = [bc.ends.0, bc.middle, bc.ends.1];
        if !added.iter().any(|&e| crosses_path_once(ps, e, &path, false)) {
            violations.push(format!("bichord {} {} {} not crossed", path[0], path[1], path[2]));
        }
    }
    for &c in &report.chords {
        let crossing: Vec<Edge> = added.iter().copied().filter(|e| e.crosses(c, ps)).collect();
        if crossing.len() < 2 {
            violations.push(format!("chord {c} crossed {} times", crossing.len()));
            continue;
        }
        let left = t.vertices().iter().filter(|&&x| ps.cross(c.u(), c.v(), x) > 0).count();
        let right = t.vertices().iter().filter(|&&x| ps.cross(c.u(), c.v(), x) < 0).count();
        if left >= 2 && right >= 2 {
            let disjoint =
                crossing.iter().enumerate().any(|(i, e)| crossing[i + 1..].iter().any(|f| !e.shares_endpoint(*f)));
            if !disjoint {
                violations.push(format!("chord {c} not crossed by two disjoint edges"));
            }
        }
    }
    Ok(CheckReport { violations })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> SimpleGraph {
        let mut g = SimpleGraph::new(n);
        for a in 0..n {
            for b in a + 1..n {
                g.add_edge(a, b);
            }
        }
        g
    }

    fn cycle(n: usize) -> SimpleGraph {
        SimpleGraph::from_edges(n, (0..n).map(|i| Edge::new(i, (i + 1) % n)))
    }

    // removes every vertex subset in increasing size until the rest splits
    fn brute_kappa(g: &SimpleGraph) -> usize {
        let n = g.n();
        let mut best = n.saturating_sub(1);
        for mask in 0u32..(1 << n) {
            let k = mask.count_ones() as usize;
            if k >= best || n - k < 2 {
                continue;
            }
            let removed: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
            if g.components_without(&removed).len() > 1 {
                best = k;
            }
        }
        best
    }

    fn brute_two_edge(g: &SimpleGraph) -> bool {
        if !g.is_connected() {
            return false;
        }
        g.edges().into_iter().all(|e| {
            let mut h = g.clone();
            h.remove_edge(e.u(), e.v());
            h.is_connected()
        })
    }

    fn lcg_graphs(count: usize) -> Vec<SimpleGraph> {
        let mut s: u64 = 12345;
        let mut next = move || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (s >> 33) as u32
        };
        (0..count)
            .map(|_| {
                let n = 2 + (next() % 7) as usize;
                let p = next() % 100;
                let mut g = SimpleGraph::new(n);
                for a in 0..n {
                    for b in a + 1..n {
                        if next() % 100 < p {
                            g.add_edge(a, b);
                        }
                    }
                }
                g
            })
            .collect()
    }

    #[test]
    fn kappa_small_cases() {
        assert_eq!(vertex_connectivity(&complete(5)), 4);
        assert_eq!(vertex_connectivity(&cycle(6)), 2);
        assert_eq!(vertex_connectivity(&SimpleGraph::new(3)), 0);
        let path = SimpleGraph::from_edges(3, [Edge::new(0, 1), Edge::new(1, 2)]);
        assert_eq!(vertex_connectivity(&path), 1);
        assert_eq!(min_vertex_cut(&path), Some(vec![1]));
        assert!(min_vertex_cut(&complete(4)).is_none());
    }

    #[test]
    fn kappa_matches_brute_force() {
        for g in lcg_graphs(150) {
            let k = brute_kappa(&g);
            assert_eq!(vertex_connectivity(&g), k, "{:?}", g.edges());
            assert!(is_k_connected(&g, k) || g.n() <= k);
            assert!(!is_k_connected(&g, k + 1));
            if let Some(cut) = min_vertex_cut(&g) {
                assert_eq!(cut.len(), k);
                let mut removed = vec![false; g.n()];
                for v in cut {
                    removed[v] = true;
                }
                assert!(g.components_without(&removed).len() > 1);
            }
        }
    }

    #[test]
    fn two_edge_connectivity() {
        assert!(is_two_edge_connected(&cycle(5)));
        let star = SimpleGraph::from_edges(4, [Edge::new(0, 1), Edge::new(0, 2), Edge::new(0, 3)]);
        assert!(!is_two_edge_connected(&star));
        assert_eq!(bridges(&star).len(), 3);
        for g in lcg_graphs(150) {
            assert_eq!(is_two_edge_connected(&g), brute_two_edge(&g));
        }
    }

    #[test]
    fn conflict_graph_and_layering() {
        let sq = PointSet::from_coords(&[(0, 0), (2, 0), (2, 2), (0, 2)]).unwrap();
        let diag = [Edge::new(0, 2), Edge::new(1, 3)];
        assert_eq!(crossing_conflict_graph(&sq, &diag).edge_count(), 1);
        let k4: Vec<Edge> = (0..4).flat_map(|a| (a + 1..4).map(move |b| Edge::new(a, b))).collect();
        match compute_layering(&sq, &k4) {
            Layering::Layers(map) => assert_ne!(map[&diag[0]], map[&diag[1]]),
            Layering::OddCycle(_) => panic!("K4 is biplane"),
        }
        let pent = PointSet::from_coords(&[(0, 0), (10, 0), (13, 9), (5, 15), (-3, 9)]).unwrap();
        let k5: Vec<Edge> = (0..5).flat_map(|a| (a + 1..5).map(move |b| Edge::new(a, b))).collect();
        let chords: Vec<Edge> = k5.iter().copied().filter(|e| !matches!(e.v() - e.u(), 1 | 4)).collect();
        assert_eq!(chords.len(), 5);
        let c = crossing_conflict_graph(&pent, &chords);
        assert_eq!(c.edge_count(), 5);
        assert!((0..5).all(|i| c.degree(i) == 2));
        match compute_layering(&pent, &k5) {
            Layering::OddCycle(cyc) => {
                assert!(cyc.len() % 2 == 1);
                for i in 0..cyc.len() {
                    assert!(cyc[i].crosses(cyc[(i + 1) % cyc.len()], &pent));
                }
            }
            Layering::Layers(_) => panic!("K5 on convex points is not biplane"),
        }
    }

    #[test]
    fn verify_layering_cases() {
        let sq = PointSet::from_coords(&[(0, 0), (2, 0), (2, 2), (0, 2)]).unwrap();
        let same = LayeredGraph::from_layers(sq.clone(), [Edge::new(0, 2), Edge::new(1, 3)], []);
        assert!(!verify_layering(&same));
        let split = LayeredGraph::from_layers(sq.clone(), [Edge::new(0, 2)], [Edge::new(1, 3)]);
        assert!(verify_layering(&split));
        let plane = LayeredGraph::from_layers(sq, [Edge::new(0, 1), Edge::new(1, 2)], []);
        assert!(verify_layering(&plane));
    }
}
