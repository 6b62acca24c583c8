//! Geometric graphs whose edges carry a layer tag.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::PointSet;

/// An undirected edge, normalized so that `u() < v()`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge(usize, usize);

impl Edge {
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "loops are not edges");
        if a < b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn u(self) -> usize {
        self.0
    }

    pub fn v(self) -> usize {
        self.1
    }

    pub fn ends(self) -> (usize, usize) {
        (self.0, self.1)
    }

    pub fn contains(self, x: usize) -> bool {
        self.0 == x || self.1 == x
    }

    pub fn other(self, x: usize) -> usize {
        if self.0 == x {
            self.1
        } else {
            debug_assert_eq!(self.1, x);
            self.0
        }
    }

    pub fn shares_endpoint(self, e: Edge) -> bool {
        self.contains(e.0) || self.contains(e.1)
    }

    pub fn crosses(self, e: Edge, ps: &PointSet) -> bool {
        ps.segments_cross(self.0, self.1, e.0, e.1)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// Layer membership of an edge. `Both` marks an edge present in both
/// plane layers; it is stored once.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Layer {
    First,
    Second,
    Both,
}

impl Layer {
    pub fn code(self) -> u8 {
        match self {
            Layer::First => 1,
            Layer::Second => 2,
            Layer::Both => 3,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            1 => Some(Layer::First),
            2 => Some(Layer::Second),
            3 => Some(Layer::Both),
            _ => None,
        }
    }

    pub fn in_first(self) -> bool {
        matches!(self, Layer::First | Layer::Both)
    }

    pub fn in_second(self) -> bool {
        matches!(self, Layer::Second | Layer::Both)
    }

    fn merge(self, other: Layer) -> Layer {
        if self == other {
            self
        } else {
            Layer::Both
        }
    }
}

/// A geometric graph on a point set with a layer tag per edge.
#[derive(Clone, Debug, PartialEq)]
pub struct LayeredGraph {
    points: PointSet,
    edges: BTreeMap<Edge, Layer>,
}

impl LayeredGraph {
    pub fn new(points: PointSet) -> Self {
        LayeredGraph { points, edges: BTreeMap::new() }
    }

    pub fn from_layers<I, J>(points: PointSet, first: I, second: J) -> Self
    where
        I: IntoIterator<Item = Edge>,
        J: IntoIterator<Item = Edge>,
    {
        let mut g = LayeredGraph::new(points);
        for e in first {
            g.insert(e, Layer::First);
        }
        for e in second {
            g.insert(e, Layer::Second);
        }
        g
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// Adds `e` to `layer`; an edge already present in the other layer
    /// becomes a both-layer edge.
    pub fn insert(&mut self, e: Edge, layer: Layer) {
        assert!(e.v() < self.points.len(), "edge {e} out of range");
        self.edges.entry(e).and_modify(|l| *l = l.merge(layer)).or_insert(layer);
    }

    pub fn remove(&mut self, e: Edge) -> Option<Layer> {
        self.edges.remove(&e)
    }

    pub fn layer_of(&self, e: Edge) -> Option<Layer> {
        self.edges.get(&e).copied()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.contains_key(&e)
    }

    /// Number of distinct edges of the union graph.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Edge, Layer)> + '_ {
        self.edges.iter().map(|(&e, &l)| (e, l))
    }

    pub fn edge_set(&self) -> BTreeSet<Edge> {
        self.edges.keys().copied().collect()
    }

    /// Edges of layer 1 or 2 (both-layer edges appear in each).
    pub fn layer_edges(&self, layer: u8) -> Vec<Edge> {
        self.edges
            .iter()
            .filter(|(_, l)| if layer == 1 { l.in_first() } else { l.in_second() })
            .map(|(&e, _)| e)
            .collect()
    }

    pub fn abstract_graph(&self) -> SimpleGraph {
        SimpleGraph::from_edges(self.n(), self.edges.keys().copied())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.keys().filter(|e| e.contains(v)).count()
    }
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<BTreeSet<usize>>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph { adj: vec![BTreeSet::new(); n] }
    }

    pub fn from_edges<I: IntoIterator<Item = Edge>>(n: usize, edges: I) -> Self {
        let mut g = SimpleGraph::new(n);
        for e in edges {
            g.add_edge(e.u(), e.v());
        }
        g
    }

    /// Graph induced on `vertices`, relabelled to `0..vertices.len()` in the given order.
    pub fn induced<I: IntoIterator<Item = Edge>>(vertices: &[usize], edges: I) -> Self {
        let index: BTreeMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut g = SimpleGraph::new(vertices.len());
        for e in edges {
            if let (Some(&a), Some(&b)) = (index.get(&e.u()), index.get(&e.v())) {
                g.add_edge(a, b);
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        if a != b {
            self.adj[a].insert(b);
            self.adj[b].insert(a);
        }
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) {
        self.adj[a].remove(&b);
        self.adj[b].remove(&a);
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(&b)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for (a, nb) in self.adj.iter().enumerate() {
            for &b in nb {
                if a < b {
                    out.push(Edge::new(a, b));
                }
            }
        }
        out
    }

    /// Connected components, ignoring vertices in `removed`.
    pub fn components_without(&self, removed: &[bool]) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = removed.to_vec();
        let mut comps = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components_without(&vec![false; self.n()]).len() <= 1
    }
}

/// Reads the layered edge-list format: `n m` header, then `u v layer` lines.
pub fn parse_layered_edges(text: &str, points: PointSet) -> Result<LayeredGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing header".into() })?;
    let nums: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Parse { line: hline, msg: e.to_string() })?;
    if nums.len() != 2 {
        return Err(Error::Parse { line: hline, msg: "header must be `n m`".into() });
    }
    let (n, m) = (nums[0], nums[1]);
    if n != points.len() {
        return Err(Error::Parse {
            line: hline,
            msg: format!("header declares {n} vertices but the point set has {}", points.len()),
        });
    }
    let mut g = LayeredGraph::new(points);
    let mut count = 0;
    for (lineno, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let bad = |msg: String| Error::Parse { line: lineno, msg };
        if toks.len() != 3 {
            return Err(bad("expected `u v layer`".into()));
        }
        let u: usize = toks[0].parse().map_err(|e: std::num::ParseIntError| bad(e.to_string()))?;
        let v: usize = toks[1].parse().map_err(|e: std::num::ParseIntError| bad(e.to_string()))?;
        let code: u8 = toks[2].parse().map_err(|e: std::num::ParseIntError| bad(e.to_string()))?;
        let layer = Layer::from_code(code).ok_or_else(|| bad(format!("layer must be 1, 2 or 3, got {code}")))?;
        if u == v || u >= n || v >= n {
            return Err(bad(format!("invalid edge {u} {v}")));
        }
        g.insert(Edge::new(u, v), layer);
        count += 1;
    }
    if count != m {
        return Err(Error::Parse { line: hline, msg: format!("header declares {m} edges, found {count}") });
    }
    Ok(g)
}

pub fn format_layered_edges(g: &LayeredGraph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (e, l) in g.edges() {
        out.push_str(&format!("{} {} {}\n", e.u(), e.v(), l.code()));
    }
    out
}
