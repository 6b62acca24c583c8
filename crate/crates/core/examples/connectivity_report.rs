//! Vertex connectivity, minimum cuts and cut structures of a triangulation.
use biplane::connectivity::{cut_structures, min_vertex_cut, vertex_connectivity};
use biplane::gen::random_triangulation;

fn main() -> biplane::Result<()> {
    let t = random_triangulation(12, 1000, 4)?;
    let g = t.abstract_graph();
    println!("kappa {}, a minimum cut {:?}", vertex_connectivity(&g), min_vertex_cut(&g));
    let r = cut_structures(&t)?;
    println!("chords {:?}", r.chords);
    for b in &r.bichords {
        println!("bichord {:?} through {}", b.ends, b.middle);
    }
    for s in &r.separating_triangles {
        println!("separating triangle {:?}", s.corners);
    }
    Ok(())
}
