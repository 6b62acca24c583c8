//! Fewest edges that make a triangulation with chords 3-connected.
use biplane::augment::{build_cell_tree, generate_fan, min_augment_3conn};
use biplane::connectivity::vertex_connectivity;
use biplane::gen::random_triangulation;
use biplane::SimpleGraph;

fn main() -> biplane::Result<()> {
    let mut ts = vec![generate_fan(10)?];
    ts.extend((0..4).map(|s| random_triangulation(12, 1000, s)).collect::<biplane::Result<Vec<_>>>()?);
    for t in ts {
        let cells = build_cell_tree(&t);
        let added = min_augment_3conn(&t)?;
        let union = SimpleGraph::from_edges(t.n(), t.edges().iter().copied().chain(added.iter().copied()));
        println!(
            "{} chords, {} cells, {} leaves -> added {:?}, kappa {}",
            t.chords().len(),
            cells.len(),
            cells.leaves().len(),
            added,
            vertex_connectivity(&union)
        );
    }
    Ok(())
}
