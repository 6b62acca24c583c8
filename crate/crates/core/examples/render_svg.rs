//! Writes an SVG drawing of the 5-connected graph on a regular 12-gon.
use biplane::convex::build_5conn_convex;
use biplane::gen::regular_polygon;
use biplane::render::render_svg;

fn main() -> biplane::Result<()> {
    let g = build_5conn_convex(&regular_polygon(12)?)?;
    let path = std::env::args().nth(1).unwrap_or_else(|| "twelve_gon.svg".into());
    std::fs::write(&path, render_svg(&g)).expect("write svg");
    println!("wrote {path}");
    Ok(())
}
