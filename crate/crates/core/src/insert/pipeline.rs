//! Full construction for point sets with a large convex subset.

use std::collections::BTreeSet;

use super::{insert_hull_points, insert_interior_unchecked, HullStep, InsertionState, InteriorStep};
use crate::convex::build_5conn_convex;
use crate::error::{Error, Result};
use crate::geom::{max_convex_subset, ConvexPolygon, PointSet};
use crate::graph::{Edge, LayeredGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Phase {
    Core,
    Interior,
    Boundary,
    Exterior,
}

impl Phase {
    pub fn name(self) -> &'static str {
        match self {
            Phase::Core => "core",
            Phase::Interior => "interior",
            Phase::Boundary => "boundary",
            Phase::Exterior => "exterior",
        }
    }
}

/// Graph after one step of the construction.
#[derive(Clone, Debug)]
pub struct Checkpoint {
    pub phase: Phase,
    /// Points added by this step.
    pub inserted: Vec<usize>,
    pub graph: LayeredGraph,
}

#[derive(Clone, Debug)]
pub enum Step {
    Interior(InteriorStep),
    Hull(HullStep),
}

#[derive(Clone, Debug)]
pub struct GeneralBuild {
    pub graph: LayeredGraph,
    pub core: Vec<usize>,
    pub interior: Vec<usize>,
    pub boundary: Vec<usize>,
    /// Exterior points in insertion order.
    pub exterior: Vec<usize>,
    pub steps: Vec<(Phase, Step)>,
}

pub const MIN_CONVEX_CORE: usize = 14;

pub fn build_5conn_general(ps: &PointSet) -> Result<GeneralBuild> {
    build_5conn_general_traced(ps, &mut |_| {})
}

/// Order in which exterior points are inserted: each point is a hull vertex
/// of the interior vertices present when it is inserted, whenever possible.
fn exterior_order(ps: &PointSet, inner: &[usize], ext: &[usize]) -> Vec<usize> {
    let mut left: BTreeSet<usize> = ext.iter().copied().collect();
    let mut peeled = Vec::new();
    while !left.is_empty() {
        let pool: Vec<usize> = inner.iter().chain(&left).copied().collect();
        let hull = ConvexPolygon::hull_of(ps, &pool);
        let pick = left.iter().copied().find(|v| hull.position(*v).is_some()).unwrap_or(*left.iter().next().unwrap());
        left.remove(&pick);
        peeled.push(pick);
    }
    peeled.reverse();
    peeled
}

/// Builds a 5-connected biplane graph on `ps`, reporting the graph after
/// the core construction and after every insertion.
pub fn build_5conn_general_traced(ps: &PointSet, on_step: &mut dyn FnMut(&Checkpoint)) -> Result<GeneralBuild> {
    let core = max_convex_subset(ps).ids;
    if core.len() < MIN_CONVEX_CORE {
        return Err(Error::pre(format!(
            "largest convex subset has {} points, need at least {MIN_CONVEX_CORE}",
            core.len()
        )));
    }
    let core_poly = ConvexPolygon::hull_of(ps, &core);
    let in_core: BTreeSet<usize> = core.iter().copied().collect();
    let mut interior = Vec::new();
    let mut boundary = Vec::new();
    let mut exterior = Vec::new();
    for v in (0..ps.len()).filter(|v| !in_core.contains(v)) {
        if core_poly.strictly_inside(ps.point(v)) {
            interior.push(v);
        } else if ps.on_hull(v) {
            boundary.push(v);
        } else {
            exterior.push(v);
        }
    }
    interior.sort_by_key(|&v| (ps.point(v).x, ps.point(v).y));

    // The core graph is built on the convex subset alone, then relabelled.
    let sub = ps.subset(&core);
    let g_sub = build_5conn_convex(&sub)?;
    let mut g0 = LayeredGraph::new(ps.clone());
    for (e, layer) in g_sub.edges() {
        g0.insert(Edge::new(core[e.u()], core[e.v()]), layer);
    }
    let mut sorted_core = core.clone();
    sorted_core.sort_unstable();
    let mut st = InsertionState::new(&g0, &sorted_core)?;
    on_step(&Checkpoint { phase: Phase::Core, inserted: sorted_core.clone(), graph: st.graph() });

    let mut steps = Vec::new();
    for &s in &interior {
        let step = super::insert_interior_point(&mut st, s)?;
        on_step(&Checkpoint { phase: Phase::Interior, inserted: vec![s], graph: st.graph() });
        steps.push((Phase::Interior, Step::Interior(step)));
    }
    if !boundary.is_empty() {
        let step = insert_hull_points(&mut st, &boundary)?;
        on_step(&Checkpoint { phase: Phase::Boundary, inserted: boundary.clone(), graph: st.graph() });
        steps.push((Phase::Boundary, Step::Hull(step)));
    }
    let inner: Vec<usize> = st.vertices().iter().copied().filter(|&v| !st.first().is_hull_vertex(v)).collect();
    let order = exterior_order(ps, &inner, &exterior);
    for &s in &order {
        let step = insert_interior_unchecked(&mut st, s)?;
        on_step(&Checkpoint { phase: Phase::Exterior, inserted: vec![s], graph: st.graph() });
        steps.push((Phase::Exterior, Step::Interior(step)));
    }
    Ok(GeneralBuild { graph: st.graph(), core, interior, boundary, exterior: order, steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::{is_k_connected, verify_layering};
    use crate::gen::{core_with_extras, regular_polygon};

    #[test]
    fn thirteen_gon_is_rejected() {
        let ps = regular_polygon(13).unwrap();
        assert!(matches!(build_5conn_general(&ps), Err(Error::Precondition(_))));
    }

    #[test]
    fn pure_convex_core() {
        let ps = regular_polygon(14).unwrap();
        let b = build_5conn_general(&ps).unwrap();
        assert!(is_k_connected(&b.graph.abstract_graph(), 5));
        assert!(b.steps.is_empty());
    }

    #[test]
    fn every_checkpoint_is_five_connected() {
        for seed in 0..4 {
            let ps = core_with_extras(14, 6, seed).unwrap();
            let mut seen = 0;
            let b = build_5conn_general_traced(&ps, &mut |c| {
                seen += 1;
                let vs: Vec<usize> =
                    c.graph.edges().flat_map(|(e, _)| [e.u(), e.v()]).collect::<BTreeSet<_>>().into_iter().collect();
                let g = crate::graph::SimpleGraph::induced(&vs, c.graph.edges().map(|(e, _)| e));
                assert!(is_k_connected(&g, 5), "seed {seed} phase {:?}", c.phase);
                assert!(verify_layering(&c.graph));
            })
            .unwrap();
            assert_eq!(seen, 1 + b.steps.len());
            assert_eq!(b.graph.abstract_graph().n(), 20);
        }
    }
}
