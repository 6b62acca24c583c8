//! Machine-readable summary of a graph, recomputed from the graph itself.

use serde::Serialize;

use crate::connectivity::{compute_layering, cut_structures, layering_violations, vertex_connectivity, Layering};
use crate::graph::{Edge, LayeredGraph};
use crate::triangulation::Triangulation;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CutCounts {
    pub chords: usize,
    pub bichords: usize,
    pub separating_triangles: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    /// Vertex connectivity of the union of both layers on all points.
    pub kappa: usize,
    /// The edge set splits into two crossing-free layers.
    pub biplane: bool,
    pub edge_count: usize,
    pub phase_checkpoints: Vec<String>,
    /// Crossings inside a layer as assigned, plus any caller-supplied problems.
    pub violations: Vec<String>,
    /// Cut structures of layer one, when layer one triangulates the points.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cuts: Option<CutCounts>,
}

impl RunReport {
    pub fn of(g: &LayeredGraph) -> Self {
        let edges: Vec<Edge> = g.edges().map(|(e, _)| e).collect();
        let biplane = matches!(compute_layering(g.points(), &edges), Layering::Layers(_));
        let violations =
            layering_violations(g).into_iter().map(|(a, b)| format!("{a} crosses {b} in one layer")).collect();
        let ids: Vec<usize> = (0..g.n()).collect();
        let cuts = Triangulation::build(g.points(), &ids, g.layer_edges(1).into_iter().collect())
            .ok()
            .and_then(|t| cut_structures(&t).ok())
            .map(|r| CutCounts {
                chords: r.chords.len(),
                bichords: r.bichords.len(),
                separating_triangles: r.separating_triangles.len(),
            });
        RunReport {
            kappa: vertex_connectivity(&g.abstract_graph()),
            biplane,
            edge_count: g.edge_count(),
            phase_checkpoints: Vec::new(),
            violations,
            cuts,
        }
    }

    /// `key value` lines, each prefixed with `prefix`.
    pub fn to_text(&self, prefix: &str) -> String {
        let mut s = format!(
            "{prefix}kappa {}\n{prefix}biplane {}\n{prefix}edges {}\n",
            self.kappa, self.biplane, self.edge_count
        );
        if let Some(c) = &self.cuts {
            s += &format!(
                "{prefix}chords {}\n{prefix}bichords {}\n{prefix}separating_triangles {}\n",
                c.chords, c.bichords, c.separating_triangles
            );
        }
        for p in &self.phase_checkpoints {
            s += &format!("{prefix}checkpoint {p}\n");
        }
        for v in &self.violations {
            s += &format!("{prefix}violation {v}\n");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::build_5conn_convex;
    use crate::gen::regular_polygon;
    use crate::graph::Layer;

    #[test]
    fn convex_k5_is_not_biplane() {
        let ps = regular_polygon(5).unwrap();
        let all = (0..5).flat_map(|a| (a + 1..5).map(move |b| Edge::new(a, b)));
        let g = LayeredGraph::from_layers(ps, all, []);
        let r = RunReport::of(&g);
        assert!(!r.biplane);
        assert_eq!(r.kappa, 4);
        assert_eq!(r.violations.len(), 5);
    }

    #[test]
    fn fourteen_gon_build() {
        let g = build_5conn_convex(&regular_polygon(14).unwrap()).unwrap();
        let r = RunReport::of(&g);
        assert_eq!((r.kappa, r.biplane, r.edge_count), (5, true, g.edge_count()));
        assert!(r.violations.is_empty());
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["kappa"], 5);
    }

    #[test]
    fn triangulated_square_reports_cuts() {
        let ps = crate::PointSet::from_coords(&[(0, 0), (10, 0), (14, 8), (5, 14), (-4, 8)]).unwrap();
        let es = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2), (0, 3)].map(|(a, b)| Edge::new(a, b));
        let mut g = LayeredGraph::from_layers(ps, es, []);
        assert_eq!(RunReport::of(&g).cuts, Some(CutCounts { chords: 2, bichords: 0, separating_triangles: 0 }));
        g.insert(Edge::new(1, 3), Layer::First);
        g.remove(Edge::new(0, 3));
        let r = RunReport::of(&g);
        assert!(r.biplane);
        assert_eq!(r.violations.len(), 1);
        assert!(r.to_text("# ").contains("# violation"));
    }
}
