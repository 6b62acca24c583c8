//! Pairing the leaves of a plane tree so that no tree edge is a bridge.
use biplane::augment::augment_tree_2edge;
use biplane::connectivity::is_two_edge_connected;
use biplane::gen::random_plane_tree;
use biplane::SimpleGraph;

fn main() -> biplane::Result<()> {
    for (n, seed) in [(8, 1), (20, 2), (40, 3)] {
        let tree = random_plane_tree(n, 10_000, seed)?;
        let leaves = (0..n).filter(|&v| tree.degree(v) == 1).count();
        let added = augment_tree_2edge(&tree)?;
        let union = SimpleGraph::from_edges(n, tree.edges().map(|(e, _)| e).chain(added.iter().copied()));
        println!(
            "n = {n}: {leaves} leaves, {} edges added, 2-edge-connected: {}",
            added.len(),
            is_two_edge_connected(&union)
        );
    }
    Ok(())
}
