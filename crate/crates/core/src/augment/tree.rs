//! Leaf pairing that makes a plane tree 2-edge-connected.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::geom::{hull_indices, Point};
use crate::graph::{Edge, LayeredGraph, SimpleGraph};

/// Rooted tree with constant-time lowest common ancestor queries
/// (Euler tour plus sparse table of depth minima).
#[derive(Clone, Debug)]
pub struct RootedTreeIndex {
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
    first: Vec<usize>,
    euler: Vec<usize>,
    table: Vec<Vec<usize>>,
}

impl RootedTreeIndex {
    /// `adj` must describe a tree on `0..adj.len()`.
    pub fn new(adj: &[Vec<usize>], root: usize) -> Result<Self> {
        let n = adj.len();
        if root >= n {
            return Err(Error::pre(format!("root {root} out of range")));
        }
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut first = vec![usize::MAX; n];
        let mut euler = Vec::with_capacity(2 * n);
        // iterative DFS: (vertex, next child index)
        let mut stack = vec![(root, 0usize)];
        first[root] = 0;
        euler.push(root);
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if *i < adj[v].len() {
                let c = adj[v][*i];
                *i += 1;
                if Some(c) == parent[v] {
                    continue;
                }
                if first[c] != usize::MAX {
                    return Err(Error::pre("adjacency contains a cycle"));
                }
                parent[c] = Some(v);
                depth[c] = depth[v] + 1;
                first[c] = euler.len();
                euler.push(c);
                stack.push((c, 0));
            } else {
                stack.pop();
                if let Some(&(p, _)) = stack.last() {
                    euler.push(p);
                }
            }
        }
        if first.contains(&usize::MAX) {
            return Err(Error::pre("adjacency is not connected"));
        }
        let pick = |a: usize, b: usize| if depth[a] <= depth[b] { a } else { b };
        let mut table = vec![euler.clone()];
        let mut w = 1;
        while 2 * w <= euler.len() {
            let prev = table.last().unwrap();
            let row = (0..=euler.len() - 2 * w).map(|i| pick(prev[i], prev[i + w])).collect();
            table.push(row);
            w *= 2;
        }
        Ok(RootedTreeIndex { parent, depth, first, euler, table })
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn euler_tour(&self) -> &[usize] {
        &self.euler
    }

    pub fn lca(&self, u: usize, v: usize) -> usize {
        let (mut a, mut b) = (self.first[u], self.first[v]);
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        let k = usize::BITS as usize - 1 - (b - a + 1).leading_zeros() as usize;
        let (x, y) = (self.table[k][a], self.table[k][b + 1 - (1 << k)]);
        if self.depth[x] <= self.depth[y] {
            x
        } else {
            y
        }
    }

    /// `a` is `d` or one of its ancestors.
    pub fn is_ancestor(&self, a: usize, d: usize) -> bool {
        self.lca(a, d) == a
    }
}

/// Pairs up the leaves of a rooted tree with noncrossing segments between
/// their positions so that every tree edge lies on a cycle. Returns
/// `ceil(m/2)` pairs for `m` leaves.
pub(crate) fn pair_leaves(
    adj: &[Vec<usize>],
    root: usize,
    leaves: &[usize],
    pos: &dyn Fn(usize) -> Point,
) -> Result<Vec<(usize, usize)>> {
    if leaves.len() < 2 {
        return Err(Error::pre(format!("need at least two leaves, got {}", leaves.len())));
    }
    let idx = RootedTreeIndex::new(adj, root)?;
    let n = adj.len();
    // covered[c]: the edge from c to its parent already lies on a cycle
    let mut covered: Vec<bool> = (0..n).map(|c| idx.parent(c).is_none()).collect();
    let mut left: BTreeSet<usize> = leaves.iter().copied().collect();
    let mut out = Vec::new();
    while left.len() > 3 {
        let list: Vec<usize> = left.iter().copied().collect();
        let pts: Vec<Point> = list.iter().map(|&l| pos(l)).collect();
        let local: Vec<usize> = (0..list.len()).collect();
        let hull: Vec<usize> = hull_indices(&pts, &local).into_iter().map(|i| list[i]).collect();
        let h = hull.len();
        let mut order: Vec<usize> = (0..h).filter(|&i| hull[i] != root).collect();
        order.sort_by_key(|&i| hull[i]);
        let mut choice = None;
        'search: for i in order {
            let (u, v, w) = (hull[(i + h - 1) % h], hull[i], hull[(i + 1) % h]);
            let (a, b) = (idx.lca(u, v), idx.lca(v, w));
            // both lie on the path from v to the root
            if !idx.is_ancestor(a, b) && !idx.is_ancestor(b, a) {
                return Err(Error::internal("incomparable common ancestors"));
            }
            let options = if idx.is_ancestor(a, b) { [(u, v), (v, w)] } else { [(v, w), (u, v)] };
            for (x, y) in options {
                if keeps_coverable(&idx, &covered, &left, x, y) {
                    choice = Some((x, y));
                    break 'search;
                }
            }
        }
        let (x, y) = choice.ok_or_else(|| Error::internal("no hull pair keeps every tree edge coverable"))?;
        for (c, done) in covered.iter_mut().enumerate() {
            if idx.is_ancestor(c, x) != idx.is_ancestor(c, y) {
                *done = true;
            }
        }
        out.push((x, y));
        left.remove(&x);
        left.remove(&y);
    }
    let rest: Vec<usize> = left.into_iter().collect();
    for pair in rest.windows(2) {
        out.push((pair[0], pair[1]));
    }
    Ok(out)
}

/// Pairing `x` with `y` leaves, for every tree edge not yet on a cycle,
/// unpaired leaves on both of its sides.
fn keeps_coverable(idx: &RootedTreeIndex, covered: &[bool], left: &BTreeSet<usize>, x: usize, y: usize) -> bool {
    (0..covered.len()).all(|c| {
        if covered[c] || idx.is_ancestor(c, x) != idx.is_ancestor(c, y) {
            return true;
        }
        let below = left.iter().filter(|&&l| l != x && l != y && idx.is_ancestor(c, l)).count();
        below > 0 && below < left.len() - 2
    })
}

/// Noncrossing leaf-to-leaf edges, `ceil(m/2)` of them for `m` leaves,
/// whose addition makes the plane tree `h` 2-edge-connected.
pub fn augment_tree_2edge(h: &LayeredGraph) -> Result<Vec<Edge>> {
    let n = h.n();
    let edges: Vec<Edge> = h.edges().map(|(e, _)| e).collect();
    let g = SimpleGraph::from_edges(n, edges.iter().copied());
    if n < 3 || edges.len() != n - 1 || !g.is_connected() {
        return Err(Error::pre("input is not a tree on at least three vertices"));
    }
    for i in 0..edges.len() {
        if let Some(f) = edges[i + 1..].iter().find(|f| edges[i].crosses(**f, h.points())) {
            return Err(Error::pre(format!("tree edges {} and {f} cross", edges[i])));
        }
    }
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let leaves: Vec<usize> = (0..n).filter(|&v| adj[v].len() == 1).collect();
    let root = (0..n).find(|&v| adj[v].len() > 1).unwrap();
    let ps = h.points();
    let pairs = pair_leaves(&adj, root, &leaves, &|v| ps.point(v))?;
    Ok(pairs.into_iter().map(|(a, b)| Edge::new(a, b)).collect())
}
