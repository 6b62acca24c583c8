//! Two triangulations of one point set whose union is a biplane graph.
use biplane::connectivity::{layered_connectivity, verify_layering};
use biplane::gen::random_general_position;
use biplane::triangulation::saturate_to_maximal_biplane;

fn main() -> biplane::Result<()> {
    let ps = random_general_position(15, 1000, 9)?;
    let g = saturate_to_maximal_biplane(&ps, None)?;
    println!(
        "{} edges ({} in layer one, {} in layer two), valid: {}, kappa {}",
        g.edge_count(),
        g.layer_edges(1).len(),
        g.layer_edges(2).len(),
        verify_layering(&g),
        layered_connectivity(&g)
    );
    Ok(())
}
