//! Point-set generators. All randomness is seeded.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::{Point, PointSet};
use crate::graph::{Edge, Layer, LayeredGraph};
use crate::triangulation::{triangulate, Triangulation};

pub const POLYGON_RADIUS: f64 = 1_000_000.0;

fn circle_point(angle: f64, radius: f64) -> Point {
    Point::new((radius * angle.cos()).round() as i64, (radius * angle.sin()).round() as i64)
}

/// Vertices of a regular n-gon of radius 10^6, counterclockwise from angle 0.
pub fn regular_polygon(n: usize) -> Result<PointSet> {
    if n < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: n });
    }
    let pts = (0..n).map(|i| circle_point(std::f64::consts::TAU * i as f64 / n as f64, POLYGON_RADIUS)).collect();
    PointSet::new(pts)
}

/// `n` points drawn uniformly from `[-range, range]^2`, resampling any point
/// that would repeat a point or create a collinear triple.
pub fn random_general_position(n: usize, range: i64, seed: u64) -> Result<PointSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    let mut attempts = 0usize;
    while pts.len() < n {
        attempts += 1;
        if attempts > 1000 * (n + 10) {
            return Err(Error::pre(format!("could not place {n} points in general position within range {range}")));
        }
        let p = Point::new(rng.gen_range(-range..=range), rng.gen_range(-range..=range));
        if fits(&pts, p) {
            pts.push(p);
        }
    }
    PointSet::new(pts)
}

/// `p` is new and not collinear with any two of `pts`.
pub(crate) fn fits(pts: &[Point], p: Point) -> bool {
    if pts.contains(&p) {
        return false;
    }
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if crate::geom::cross(pts[i], pts[j], p) == 0 {
                return false;
            }
        }
    }
    true
}

/// `n` points at random angles on a circle, in convex position.
pub fn random_convex_position(n: usize, seed: u64) -> Result<PointSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    let mut attempts = 0usize;
    while pts.len() < n {
        attempts += 1;
        if attempts > 1000 * (n + 10) {
            return Err(Error::pre(format!("could not place {n} convex points")));
        }
        let p = circle_point(rng.gen_range(0.0..std::f64::consts::TAU), POLYGON_RADIUS);
        if fits(&pts, p) {
            pts.push(p);
        }
    }
    pts.sort_by(|a, b| (a.y as f64).atan2(a.x as f64).total_cmp(&(b.y as f64).atan2(b.x as f64)));
    PointSet::new(pts)
}

/// A regular `core`-gon of radius 10^6 plus `extra` random points in the disc
/// of radius 1.6 * 10^6, in general position with the core.
pub fn core_with_extras(core: usize, extra: usize, seed: u64) -> Result<PointSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts: Vec<Point> = regular_polygon(core)?.points().to_vec();
    let mut attempts = 0usize;
    while pts.len() < core + extra {
        attempts += 1;
        if attempts > 100_000 {
            return Err(Error::pre("could not place extra points in general position"));
        }
        let r = 1.6 * POLYGON_RADIUS * rng.gen_range(0.0f64..1.0).sqrt();
        let p = circle_point(rng.gen_range(0.0..std::f64::consts::TAU), r);
        if fits(&pts, p) {
            pts.push(p);
        }
    }
    PointSet::new(pts)
}

/// Triangulation of random points in general position, scrambled by `3n`
/// random flips.
pub fn random_triangulation(n: usize, range: i64, seed: u64) -> Result<Triangulation> {
    let ps = random_general_position(n, range, seed)?;
    let mut t = triangulate(&ps)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    for _ in 0..3 * n {
        let edges: Vec<Edge> = t.edges().iter().copied().collect();
        let e = edges[rng.gen_range(0..edges.len())];
        if t.is_flippable(e) {
            t.flip_in_place(e)?;
        }
    }
    Ok(t)
}

/// Random spanning tree of a random triangulation, hence crossing-free.
pub fn random_plane_tree(n: usize, range: i64, seed: u64) -> Result<LayeredGraph> {
    let t = random_triangulation(n, range, seed)?;
    let mut edges: Vec<Edge> = t.edges().iter().copied().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    edges.shuffle(&mut rng);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut g = LayeredGraph::new(t.points().clone());
    for e in edges {
        let (a, b) = (find(&mut parent, e.u()), find(&mut parent, e.v()));
        if a != b {
            parent[a] = b;
            g.insert(e, Layer::First);
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::is_convex_position;

    #[test]
    fn regular_polygons_are_convex() {
        for n in [3, 6, 12, 13, 24, 60] {
            let ps = regular_polygon(n).unwrap();
            assert_eq!(ps.len(), n);
            assert!(is_convex_position(&ps));
            assert_eq!(
                ps.hull()[0],
                ps.hull().iter().copied().min_by_key(|&i| (ps.point(i).x, ps.point(i).y)).unwrap()
            );
        }
    }

    #[test]
    fn seeded_generation_is_reproducible() {
        let a = random_general_position(20, 1000, 7).unwrap();
        let b = random_general_position(20, 1000, 7).unwrap();
        assert_eq!(a.points(), b.points());
        let c = random_general_position(20, 1000, 8).unwrap();
        assert_ne!(a.points(), c.points());
        assert!(is_convex_position(&random_convex_position(15, 3).unwrap()));
        assert_eq!(core_with_extras(14, 6, 1).unwrap().len(), 20);
    }

    #[test]
    fn random_trees_span() {
        for seed in 0..5 {
            let g = random_plane_tree(15, 500, seed).unwrap();
            assert_eq!(g.edge_count(), 14);
            assert!(g.abstract_graph().is_connected());
            assert_eq!(
                random_triangulation(9, 500, seed).unwrap().edges().len(),
                3 * 9 - 3 - random_general_position(9, 500, seed).unwrap().hull().len()
            );
        }
    }
}
