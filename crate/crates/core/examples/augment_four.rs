//! Raising a triangulation to connectivity 4 with a crossing-free second layer.
use biplane::augment::{augment_to_4conn, generate_fan, generate_wheel};
use biplane::connectivity::{check_4conn_augmentation, vertex_connectivity};
use biplane::gen::random_triangulation;
use biplane::triangulation::TriangulationClass;
use biplane::SimpleGraph;

fn main() -> biplane::Result<()> {
    for seed in 0..6 {
        let t = random_triangulation(9, 1000, seed)?;
        if t.classify() != TriangulationClass::Other {
            continue;
        }
        let a = augment_to_4conn(&t)?;
        let added: Vec<_> = a.added.iter().copied().collect();
        let union = SimpleGraph::from_edges(t.n(), t.edges().iter().copied().chain(added.iter().copied()));
        println!(
            "seed {seed}: {} edges added, kappa {} -> {}, conditions met: {}",
            added.len(),
            vertex_connectivity(&t.abstract_graph()),
            vertex_connectivity(&union),
            check_4conn_augmentation(&t, &added)?.passed()
        );
    }
    for t in [generate_wheel(8)?, generate_fan(8)?] {
        println!("{:?}: {}", t.classify(), augment_to_4conn(&t).unwrap_err());
    }
    Ok(())
}
