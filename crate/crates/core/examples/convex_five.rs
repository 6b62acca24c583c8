//! 5-connected biplane graphs on regular polygons, and the sizes where none exists.
use biplane::connectivity::{layered_connectivity, verify_layering};
use biplane::convex::build_5conn_convex;
use biplane::gen::regular_polygon;

fn main() -> biplane::Result<()> {
    for n in [11, 12, 13, 14, 15, 20] {
        let ps = regular_polygon(n)?;
        match build_5conn_convex(&ps) {
            Ok(g) => println!(
                "n = {n:2}: {} edges, kappa {}, layers valid: {}",
                g.edge_count(),
                layered_connectivity(&g),
                verify_layering(&g)
            ),
            Err(e) => println!("n = {n:2}: {e} (exit code {})", e.exit_code()),
        }
    }
    Ok(())
}
