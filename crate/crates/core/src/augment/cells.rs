//! Cells cut out of the hull by chords, and the minimum augmentation to
//! 3-connectivity built on them.

use std::collections::BTreeSet;

use super::tree::pair_leaves;
use crate::error::{Error, Result};
use crate::geom::point_in_polygon;
use crate::graph::Edge;
use crate::triangulation::Triangulation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    /// Hull vertices bounding the cell, counterclockwise.
    pub polygon: Vec<usize>,
    /// Every vertex inside or on the boundary of the cell, sorted.
    pub members: Vec<usize>,
}

/// The cells of a triangulation and their dual tree, whose arcs are the
/// chords shared by two cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellTree {
    pub cells: Vec<Cell>,
    pub arcs: Vec<(usize, usize, Edge)>,
}

impl CellTree {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.cells.len()];
        for &(a, b, _) in &self.arcs {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Cells bounded by exactly one chord. A single cell is not a leaf.
    pub fn leaves(&self) -> Vec<usize> {
        let adj = self.adjacency();
        (0..self.cells.len()).filter(|&c| adj[c].len() == 1).collect()
    }

    /// The chord bounding leaf `l`.
    pub fn leaf_chord(&self, l: usize) -> Option<Edge> {
        let mut it = self.arcs.iter().filter(|a| a.0 == l || a.1 == l);
        match (it.next(), it.next()) {
            (Some(a), None) => Some(a.2),
            _ => None,
        }
    }

    /// Vertices of leaf `l` other than the ends of its chord.
    pub fn leaf_private(&self, l: usize) -> Vec<usize> {
        let c = self.leaf_chord(l);
        self.cells[l].members.iter().copied().filter(|v| !c.is_some_and(|c| c.contains(*v))).collect()
    }
}

pub fn build_cell_tree(t: &Triangulation) -> CellTree {
    let mut polys = vec![t.hull().ids.clone()];
    let chords = t.chords();
    for c in &chords {
        let (k, i, j) = polys
            .iter()
            .enumerate()
            .find_map(|(k, p)| {
                let i = p.iter().position(|&x| x == c.u())?;
                let j = p.iter().position(|&x| x == c.v())?;
                Some((k, i.min(j), i.max(j)))
            })
            .expect("chord ends lie on a common cell");
        let p = polys.swap_remove(k);
        let first = p[i..=j].to_vec();
        let second: Vec<usize> = p[j..].iter().chain(&p[..=i]).copied().collect();
        polys.push(first);
        polys.push(second);
    }
    polys.sort();
    let inner: Vec<usize> = t.vertices().iter().copied().filter(|&v| !t.is_hull_vertex(v)).collect();
    let cells: Vec<Cell> = polys
        .into_iter()
        .map(|polygon| {
            let pts: Vec<_> = polygon.iter().map(|&v| t.point(v)).collect();
            let mut members: Vec<usize> = polygon.clone();
            members.extend(inner.iter().copied().filter(|&v| point_in_polygon(&pts, t.point(v))));
            members.sort_unstable();
            Cell { polygon, members }
        })
        .collect();
    let has_side = |cell: &Cell, e: Edge| {
        let p = &cell.polygon;
        (0..p.len()).any(|i| Edge::new(p[i], p[(i + 1) % p.len()]) == e)
    };
    let mut arcs = Vec::new();
    for &c in &chords {
        let sides: Vec<usize> = (0..cells.len()).filter(|&k| has_side(&cells[k], c)).collect();
        arcs.push((sides[0], sides[1], c));
    }
    arcs.sort();
    CellTree { cells, arcs }
}

/// Fewest edges whose addition, as a second plane layer, makes `t`
/// 3-connected: one edge per two leaf cells.
pub fn min_augment_3conn(t: &Triangulation) -> Result<Vec<Edge>> {
    if t.n() < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: t.n() });
    }
    if t.chords().is_empty() {
        return Ok(Vec::new());
    }
    let tree = build_cell_tree(t);
    let leaves = tree.leaves();
    let mut rep = vec![usize::MAX; tree.len()];
    for &l in &leaves {
        let private: BTreeSet<usize> = tree.leaf_private(l).into_iter().collect();
        rep[l] = tree.cells[l]
            .polygon
            .iter()
            .copied()
            .find(|v| private.contains(v))
            .ok_or_else(|| Error::internal(format!("leaf cell {l} has no private hull vertex")))?;
    }
    let adj = tree.adjacency();
    let root = (0..tree.len()).find(|&c| adj[c].len() > 1).unwrap_or(leaves[0]);
    let pairs = pair_leaves(&adj, root, &leaves, &|c| t.point(rep[c]))?;
    Ok(pairs.into_iter().map(|(a, b)| Edge::new(rep[a], rep[b])).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::vertex_connectivity;
    use crate::gen::regular_polygon;
    use crate::graph::SimpleGraph;

    fn fan(n: usize) -> Triangulation {
        let ps = regular_polygon(n).unwrap();
        let edges = (0..n).map(|i| Edge::new(i, (i + 1) % n)).chain((2..n - 1).map(|i| Edge::new(0, i))).collect();
        Triangulation::build(&ps, &(0..n).collect::<Vec<_>>(), edges).unwrap()
    }

    #[test]
    fn no_chords_gives_one_cell() {
        let ps = regular_polygon(3).unwrap();
        let t = Triangulation::sweep(&ps, &[0, 1, 2]).unwrap();
        let tree = build_cell_tree(&t);
        assert_eq!(tree.len(), 1);
        assert!(tree.leaves().is_empty());
        assert!(min_augment_3conn(&t).unwrap().is_empty());
    }

    #[test]
    fn fan_leaves_are_the_two_ears() {
        let t = fan(8);
        let tree = build_cell_tree(&t);
        assert_eq!(tree.len(), 6);
        let ears: BTreeSet<Vec<usize>> = tree.leaves().iter().map(|&l| tree.cells[l].members.clone()).collect();
        assert_eq!(ears, [vec![0, 1, 2], vec![0, 6, 7]].into_iter().collect());
        let added = min_augment_3conn(&t).unwrap();
        assert_eq!(added, vec![Edge::new(1, 7)]);
        let union = SimpleGraph::from_edges(8, t.edges().iter().copied().chain(added));
        assert_eq!(vertex_connectivity(&union), 3);
    }
}
