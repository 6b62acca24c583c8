//! 4-connected biplane graphs on convex point sets of every size from 6 on,
//! via vertex splits of the octahedron and a Hamiltonian cycle on the hull.
use biplane::connectivity::layered_connectivity;
use biplane::convex::{build_4conn_convex, find_hamiltonian_cycle, split_chain};
use biplane::gen::random_convex_position;

fn main() -> biplane::Result<()> {
    let planar = split_chain(9)?.graph();
    println!(
        "split chain on 9 vertices: {} edges, Hamiltonian cycle {:?}",
        planar.edge_count(),
        find_hamiltonian_cycle(&planar)
    );
    for n in 6..=13 {
        let g = build_4conn_convex(&random_convex_position(n, n as u64)?)?;
        println!("n = {n:2}: kappa {}", layered_connectivity(&g));
    }
    Ok(())
}
