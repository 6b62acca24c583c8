//! Chord-free 4-connected triangulations that no plane second layer lifts
//! to connectivity 5.
use biplane::augment::generate_no5conn;
use biplane::connectivity::{cut_structures, vertex_connectivity};

fn main() -> biplane::Result<()> {
    for k in 2..=5 {
        let (t, layout) = generate_no5conn(k)?;
        println!(
            "k = {k}: {} points, {} edges, kappa {}, cut structures empty: {}, chains {} / {}",
            t.n(),
            t.edges().len(),
            vertex_connectivity(&t.abstract_graph()),
            cut_structures(&t)?.is_empty(),
            layout.lower.len(),
            layout.upper.len()
        );
    }
    Ok(())
}
