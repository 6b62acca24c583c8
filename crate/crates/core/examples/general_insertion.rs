//! Point-by-point construction of a 5-connected biplane graph around a
//! 14-point convex core, checking connectivity after each step.
use biplane::connectivity::is_k_connected;
use biplane::gen::core_with_extras;
use biplane::insert::build_5conn_general_traced;
use biplane::SimpleGraph;

fn main() -> biplane::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let ps = core_with_extras(14, 8, seed)?;
    let b = build_5conn_general_traced(&ps, &mut |c| {
        let vs: Vec<usize> = c
            .graph
            .edges()
            .flat_map(|(e, _)| [e.u(), e.v()])
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let g = SimpleGraph::induced(&vs, c.graph.edges().map(|(e, _)| e));
        println!(
            "{:<9} +{:?}: {} vertices, 5-connected: {}",
            c.phase.name(),
            c.inserted.len(),
            vs.len(),
            is_k_connected(&g, 5)
        );
    })?;
    println!("interior {:?}, boundary {:?}, exterior {:?}", b.interior, b.boundary, b.exterior);
    Ok(())
}
