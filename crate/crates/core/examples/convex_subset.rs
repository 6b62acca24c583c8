//! Largest subset in convex position, ties broken by area.
use biplane::gen::random_general_position;
use biplane::geom::max_convex_subset;

fn main() -> biplane::Result<()> {
    for n in [10, 30, 60] {
        let ps = random_general_position(n, 1000, n as u64)?;
        let c = max_convex_subset(&ps);
        println!("n = {n}: {} points {:?}, doubled area {}", c.ids.len(), c.ids, c.doubled_area);
    }
    Ok(())
}
