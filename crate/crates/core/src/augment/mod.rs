//! Adding a second plane layer to a triangulation to raise its connectivity.

mod cells;
mod tree;

use std::collections::{BTreeMap, BTreeSet};

use crate::connectivity::{check_4conn_augmentation, cut_structures, vertex_connectivity};
use crate::error::{Error, Result};
use crate::geom::{doubled_area, segments_properly_cross, Point, PointSet};
use crate::graph::{Edge, SimpleGraph};
use crate::triangulation::{Triangulation, TriangulationClass};

pub use cells::{build_cell_tree, min_augment_3conn, Cell, CellTree};
pub use tree::{augment_tree_2edge, RootedTreeIndex};

const WHEEL_MSG: &str = "a wheel cannot reach connectivity 4 with a plane second layer: every new edge joins two rim \
                         vertices, and those two with the center form a 3-vertex cut";
const FAN_MSG: &str = "a fan cannot reach connectivity 4 in any biplane graph containing it: some degree-2 vertex \
                       keeps degree 3, or two consecutive fan edges in different layers leave a 3-vertex cut";

/// Wheel on `n` points: a regular `(n-1)`-gon and one point near its center.
pub fn generate_wheel(n: usize) -> Result<Triangulation> {
    if n < 4 {
        return Err(Error::TooFewPoints { needed: 4, got: n });
    }
    let mut pts = crate::gen::regular_polygon(n - 1)?.points().to_vec();
    // the exact center is collinear with opposite vertices of an even polygon
    let center = (0..)
        .flat_map(|r: i64| (0..=r).map(move |dx| Point::new(dx, r - dx)))
        .find(|&p| crate::gen::fits(&pts, p))
        .unwrap();
    pts.push(center);
    let ps = PointSet::new(pts)?;
    let c = n - 1;
    let edges = (0..c).flat_map(|i| [Edge::new(i, (i + 1) % c), Edge::new(i, c)]).collect();
    Triangulation::build(&ps, &(0..n).collect::<Vec<_>>(), edges)
}

/// Fan on a regular `n`-gon centered at vertex 0.
pub fn generate_fan(n: usize) -> Result<Triangulation> {
    if n < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: n });
    }
    let ps = crate::gen::regular_polygon(n)?;
    let edges = (0..n).map(|i| Edge::new(i, (i + 1) % n)).chain((2..n - 1).map(|i| Edge::new(0, i))).collect();
    Triangulation::build(&ps, &(0..n).collect::<Vec<_>>(), edges)
}

/// Vertex ids in a [`generate_no5conn`] instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct No5ConnLayout {
    /// Lower chain of the top cluster, left to right.
    pub lower: Vec<usize>,
    /// Upper chain of the top cluster without its two ends, left to right.
    pub upper: Vec<usize>,
    pub bottom: Vec<usize>,
}

/// A 4-connected triangulation with no chords, bichords or separating
/// triangles: a convex top cluster of `4k - 3` points above a 7-point
/// cluster placed far enough below that every segment from the `i`-th
/// upper point to the bottom cluster crosses lower-chain edge `i + 1`.
pub fn generate_no5conn(k: usize) -> Result<(Triangulation, No5ConnLayout)> {
    if k < 2 {
        return Err(Error::pre(format!("k must be at least 2, got {k}")));
    }
    let (s, a) = (1000i64, 20i64);
    let lower_x: Vec<i64> = (1..=2 * k as i64).map(|j| 2 * j - 2 * k as i64 - 1).collect();
    let upper_x: Vec<i64> = (1..=2 * k as i64 - 3).map(|i| 2 * i + 2 - 2 * k as i64).collect();
    let top = a * (2 * k as i64 - 1).pow(2) + 4000;
    let mut top_pts: Vec<Point> = lower_x.iter().map(|&x| Point::new(s * x, a * x * x)).collect();
    top_pts.extend(upper_x.iter().map(|&x| Point::new(s * x, top - a * x * x)));
    let cluster = [(-400, 0), (-150, 120), (150, 120), (400, 0), (0, -60), (-120, -10), (140, -20)];
    let nl = lower_x.len();
    let nu = upper_x.len();
    let mut depth = 1024i64;
    let pts = loop {
        if depth > crate::geom::COORD_LIMIT / 2 {
            return Err(Error::internal("no offset makes the bottom cluster far enough"));
        }
        let bottom: Vec<Point> = cluster.iter().map(|&(x, y)| Point::new(x, y - depth)).collect();
        let far = (0..nu).all(|i| {
            bottom.iter().all(|&b| segments_properly_cross(top_pts[nl + i], b, top_pts[i + 1], top_pts[i + 2]))
        });
        if far {
            break top_pts.iter().copied().chain(bottom).collect::<Vec<_>>();
        }
        depth *= 2;
    };
    let ps = PointSet::new(pts)?;
    let x = |j: usize| j - 1;
    let y = |i: usize| nl + i - 1;
    let [bl, c1, c2, br, bb, d1, d2] = std::array::from_fn(|i| nl + nu + i);
    let mut edges = BTreeSet::new();
    let mut add = |p: usize, q: usize| {
        edges.insert(Edge::new(p, q));
    };
    for j in 1..2 * k {
        add(x(j), x(j + 1));
    }
    add(x(1), y(1));
    for i in 1..nu {
        add(y(i), y(i + 1));
    }
    add(y(nu), x(2 * k));
    for i in 1..=nu {
        add(y(i), x(i + 1));
        add(y(i), x(i + 2));
    }
    add(bl, x(1));
    add(br, x(2 * k));
    for j in 1..=k {
        add(c1, x(j));
    }
    for j in k..=2 * k {
        add(c2, x(j));
    }
    for (p, q) in [
        (bl, c1),
        (c1, c2),
        (c2, br),
        (bl, bb),
        (bb, br),
        (bl, d1),
        (bb, d1),
        (bb, d2),
        (d1, d2),
        (br, d2),
        (c2, d2),
        (c2, d1),
        (c1, d1),
    ] {
        add(p, q);
    }
    let t = Triangulation::build(&ps, &(0..ps.len()).collect::<Vec<_>>(), edges)?;
    let layout = No5ConnLayout {
        lower: (0..nl).collect(),
        upper: (nl..nl + nu).collect(),
        bottom: (nl + nu..ps.len()).collect(),
    };
    Ok((t, layout))
}

/// Result of [`flip_pair_helper`].
#[derive(Clone, Debug)]
pub struct FlipPair {
    pub triangulation: Triangulation,
    /// Removed edges: `uw`, then `uv'` or `v'w`.
    pub flipped: [Edge; 2],
    /// Edges that replaced them, both incident to `v`.
    pub created: [Edge; 2],
}

/// For consecutive hull vertices `u, v, w` with triangles `uvw` and `uv'w`:
/// flips `uw`, then `uv'` if that is flippable, else `v'w`.
pub fn flip_pair_helper(t: &Triangulation, u: usize, v: usize, w: usize, vp: usize) -> Result<FlipPair> {
    if t.n() < 5 {
        return Err(Error::TooFewPoints { needed: 5, got: t.n() });
    }
    let hull = t.hull();
    let h = hull.len();
    let (pu, pv, pw) = match (hull.position(u), hull.position(v), hull.position(w)) {
        (Some(a), Some(b), Some(c)) => (a, b, c),
        _ => return Err(Error::pre("u, v, w must be hull vertices")),
    };
    let consecutive = ((pu + 1) % h == pv && (pv + 1) % h == pw) || ((pw + 1) % h == pv && (pv + 1) % h == pu);
    if !consecutive {
        return Err(Error::pre("u, v, w are not consecutive hull vertices"));
    }
    let uw = Edge::new(u, w);
    let apexes: Vec<usize> = t.face_apexes(uw).map(|a| a.iter().flatten().copied().collect()).unwrap_or_default();
    if !(apexes.contains(&v) && apexes.contains(&vp)) || v == vp {
        return Err(Error::pre("triangles u v w and u v' w are not both present"));
    }
    let mut tr = t.clone();
    let first = tr.flip_in_place(uw)?;
    let second = [Edge::new(u, vp), Edge::new(vp, w)]
        .into_iter()
        .find(|&e| tr.is_flippable(e))
        .ok_or_else(|| Error::internal("neither edge at v' is flippable after the first flip"))?;
    let made = tr.flip_in_place(second)?;
    Ok(FlipPair { triangulation: tr, flipped: [uw, second], created: [first, made] })
}

/// Added edges together with the number of repair edges the verifier had
/// to supply beyond the case construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Augmentation {
    pub added: BTreeSet<Edge>,
    pub repairs: usize,
}

/// Plane edge set that makes `t` 4-connected when added as a second layer.
pub fn augment_to_4conn(t: &Triangulation) -> Result<Augmentation> {
    solve(t)
}

fn union_kappa(t: &Triangulation, added: &BTreeSet<Edge>) -> usize {
    let g = SimpleGraph::induced(t.vertices(), t.edges().iter().chain(added).copied());
    vertex_connectivity(&g)
}

fn violations(t: &Triangulation, added: &BTreeSet<Edge>) -> Result<usize> {
    let list: Vec<Edge> = added.iter().copied().collect();
    let bad = check_4conn_augmentation(t, &list)?.violations.len();
    Ok(if bad == 0 && union_kappa(t, added) < 4 { 1 } else { bad })
}

fn solve(t: &Triangulation) -> Result<Augmentation> {
    match t.classify() {
        TriangulationClass::Wheel => return Err(Error::Impossible(WHEEL_MSG.into())),
        TriangulationClass::Fan => return Err(Error::Impossible(FAN_MSG.into())),
        TriangulationClass::Other => {}
    }
    if t.n() < 5 {
        return Err(Error::TooFewPoints { needed: 5, got: t.n() });
    }
    let raw = construct(t)?;
    finish(t, raw)
}

/// Drops edges of `t` and edges crossing earlier ones, then adds edges
/// greedily while any cut remains uncrossed.
fn finish(t: &Triangulation, raw: BTreeSet<Edge>) -> Result<Augmentation> {
    let ps = t.points();
    let mut added = BTreeSet::new();
    for e in raw {
        let inside = t.contains_vertex(e.u()) && t.contains_vertex(e.v());
        if inside && !t.edges().contains(&e) && added.iter().all(|f: &Edge| !f.crosses(e, ps)) {
            added.insert(e);
        }
    }
    let mut bad = violations(t, &added)?;
    let mut repairs = 0;
    while bad > 0 {
        let vs = t.vertices();
        let mut best: Option<(usize, Edge)> = None;
        for (i, &a) in vs.iter().enumerate() {
            for &b in &vs[i + 1..] {
                let e = Edge::new(a, b);
                if t.edges().contains(&e) || added.contains(&e) || added.iter().any(|f| f.crosses(e, ps)) {
                    continue;
                }
                added.insert(e);
                let score = violations(t, &added)?;
                added.remove(&e);
                if score < bad && best.is_none_or(|(s, _)| score < s) {
                    best = Some((score, e));
                }
            }
        }
        let (score, e) = best.ok_or_else(|| Error::internal("cannot complete the augmentation to connectivity 4"))?;
        added.insert(e);
        bad = score;
        repairs += 1;
    }
    Ok(Augmentation { added, repairs })
}

fn apexes(t: &Triangulation, e: Edge) -> Vec<usize> {
    t.face_apexes(e).map(|a| a.iter().flatten().copied().collect()).unwrap_or_default()
}

fn star(t: &Triangulation, v: usize) -> BTreeSet<Edge> {
    t.vertices().iter().filter(|&&x| x != v).map(|&x| Edge::new(v, x)).collect()
}

fn construct(t: &Triangulation) -> Result<BTreeSet<Edge>> {
    let n = t.n();
    let h = t.hull().len();
    if t.chords().is_empty() {
        return three_connected(t);
    }
    if n == 5 {
        return five_points(t);
    }
    if n == 6 && h == 6 {
        return six_convex(t);
    }
    let tree = build_cell_tree(t);
    let leaves = tree.leaves();
    let small: Vec<usize> = leaves.iter().copied().filter(|&l| tree.cells[l].members.len() == 3).collect();
    if !small.is_empty() {
        small_leaf(t, &tree, &small)
    } else {
        large_leaf(t, &tree, &leaves)
    }
}

/// No chords: a star from a vertex outside every 3-cut, or the sector
/// construction around the bichord centers.
fn three_connected(t: &Triangulation) -> Result<BTreeSet<Edge>> {
    let report = cut_structures(t)?;
    let mut in_cut = BTreeSet::new();
    for b in &report.bichords {
        in_cut.extend([b.ends.0, b.ends.1, b.middle]);
    }
    for s in &report.separating_triangles {
        in_cut.extend(s.corners);
    }
    if let Some(&v) = t.vertices().iter().find(|v| !in_cut.contains(v)) {
        return Ok(star(t, v));
    }
    if !report.separating_triangles.is_empty() {
        return Err(Error::internal("separating triangle while every vertex lies on a 3-cut"));
    }
    let hull = t.hull();
    let h = hull.len();
    let mut spokes: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for b in &report.bichords {
        spokes.entry(b.middle).or_default().extend([b.ends.0, b.ends.1]);
    }
    // (area, center, ccw-sorted spokes, index of the sector holding hull edge 0)
    let mut best: Option<(i128, usize, Vec<usize>, usize)> = None;
    for (&c, ends) in &spokes {
        let mut around: Vec<usize> = ends.iter().copied().collect();
        around.sort_by_key(|&a| hull.position(a).unwrap());
        let r = around.len();
        for i in 0..r {
            let (p, q) = (hull.position(around[i]).unwrap(), hull.position(around[(i + 1) % r]).unwrap());
            let span = if r == 1 { h } else { (q + h - p) % h };
            if (h - p) % h < span {
                let mut poly = vec![t.point(c)];
                poly.extend((0..=span).map(|k| hull.pts[(p + k) % h]));
                let area = doubled_area(&poly).abs();
                if best.as_ref().is_none_or(|b| area > b.0) {
                    best = Some((area, c, around.clone(), i));
                }
            }
        }
    }
    let (_, c, around, i) = best.ok_or_else(|| Error::internal("no bichord center found"))?;
    let r = around.len();
    // clockwise from the start of the big sector
    let vs: Vec<usize> = (0..r).map(|j| around[(i + r - j) % r]).collect();
    let k = vs.len();
    if k < 4 {
        return Err(Error::internal(format!("bichord center {c} has only {k} spokes")));
    }
    let other = t
        .vertices()
        .iter()
        .copied()
        .find(|&x| x != c && !t.is_hull_vertex(x))
        .ok_or_else(|| Error::internal("only one interior vertex"))?;
    let mut out: BTreeSet<Edge> = vs[1..k - 1].iter().map(|&x| Edge::new(x, other)).collect();
    let (a, b) = (vs[1], vs[k - 2]);
    let o = t.point(other);
    let ang = |p: Point| ((p.y - o.y) as f64).atan2((p.x - o.x) as f64);
    let tau = std::f64::consts::TAU;
    let ccw_from = |from: f64, to: f64| (to - from).rem_euclid(tau);
    let (ta, tb) = (ang(t.point(a)), ang(t.point(b)));
    let tk = ang(t.point(vs[k - 1]));
    // the sector from a to b (ccw or cw) that holds v_k
    let ccw = ccw_from(ta, tk) < ccw_from(ta, tb);
    let width = if ccw { ccw_from(ta, tb) } else { ccw_from(tb, ta) };
    for &hv in &hull.ids {
        if hv == a || hv == b {
            continue;
        }
        let th = ang(t.point(hv));
        let off = if ccw { ccw_from(ta, th) } else { ccw_from(th, ta) };
        if off > 0.0 && off < width {
            let near = if off <= width / 2.0 { a } else { b };
            out.insert(Edge::new(near, hv));
        }
    }
    Ok(out)
}

/// Four hull vertices, one interior point, one chord: join the lone vertex
/// on one side to both vertices on the other.
fn five_points(t: &Triangulation) -> Result<BTreeSet<Edge>> {
    let chord = t.chords()[0];
    let ps = t.points();
    let side = |x: usize| ps.cross(chord.u(), chord.v(), x) > 0;
    let (pos, neg): (Vec<usize>, Vec<usize>) =
        t.vertices().iter().copied().filter(|&x| !chord.contains(x)).partition(|&x| side(x));
    let (one, two) = if pos.len() == 1 { (pos, neg) } else { (neg, pos) };
    Ok(two.iter().map(|&x| Edge::new(one[0], x)).collect())
}

/// Three noncrossing edges chosen by exhaustive search over the nine
/// non-edges of a convex hexagon triangulation.
fn six_convex(t: &Triangulation) -> Result<BTreeSet<Edge>> {
    let vs = t.vertices();
    let ps = t.points();
    let free: Vec<Edge> = vs
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| vs[i + 1..].iter().map(move |&b| Edge::new(a, b)))
        .filter(|e| !t.edges().contains(e))
        .collect();
    for i in 0..free.len() {
        for j in i + 1..free.len() {
            for k in j + 1..free.len() {
                let set = [free[i], free[j], free[k]];
                let plane = (0..3).all(|x| (x + 1..3).all(|y| !set[x].crosses(set[y], ps)));
                let chosen: BTreeSet<Edge> = set.into_iter().collect();
                if plane && violations(t, &chosen)? == 0 {
                    return Ok(chosen);
                }
            }
        }
    }
    Err(Error::internal("no three edges make the hexagon 4-connected"))
}

/// Completes `sub`'s augmentation to a triangulation, adds the ear
/// triangle `u v w` back and performs the two flips.
fn reattach(t: &Triangulation, sub: &Triangulation, u: usize, v: usize, w: usize) -> Result<(FlipPair, usize)> {
    let e2 = solve(sub)?.added;
    let t2 = Triangulation::complete(t.points(), sub.vertices(), &e2)?;
    let vp = apexes(&t2, Edge::new(u, w))
        .first()
        .copied()
        .ok_or_else(|| Error::internal("chord has no face in the smaller triangulation"))?;
    let mut ids = sub.vertices().to_vec();
    ids.push(v);
    ids.sort_unstable();
    let mut edges = t2.edges().clone();
    edges.insert(Edge::new(u, v));
    edges.insert(Edge::new(v, w));
    let t2p = Triangulation::build(t.points(), &ids, edges)?;
    Ok((flip_pair_helper(&t2p, u, v, w, vp)?, vp))
}

/// A leaf cell that is a single triangle `u v w` with chord `uw`.
fn small_leaf(t: &Triangulation, tree: &CellTree, small: &[usize]) -> Result<BTreeSet<Edge>> {
    for &l in small {
        let chord = tree.leaf_chord(l).unwrap();
        let v = tree.leaf_private(l)[0];
        let rest: Vec<usize> = t.vertices().iter().copied().filter(|&x| x != v).collect();
        let t1 = t.restrict(&rest)?;
        match t1.classify() {
            TriangulationClass::Wheel => return Ok(star(t, v)),
            TriangulationClass::Fan => continue,
            TriangulationClass::Other => {
                let (fp, _) = reattach(t, &t1, chord.u(), v, chord.v())?;
                return Ok(fp.triangulation.edges().clone());
            }
        }
    }
    Err(Error::internal("every removal of a degree-2 vertex leaves a fan"))
}

/// Every leaf cell has at least four points.
fn large_leaf(t: &Triangulation, tree: &CellTree, leaves: &[usize]) -> Result<BTreeSet<Edge>> {
    let ps = t.points();
    if t.n() == 6 {
        let chord = t.chords()[0];
        let side = |x: usize| ps.cross(chord.u(), chord.v(), x) > 0;
        let (a, b): (Vec<usize>, Vec<usize>) =
            t.vertices().iter().copied().filter(|&x| !chord.contains(x)).partition(|&x| side(x));
        let pairs = [[Edge::new(a[0], b[0]), Edge::new(a[1], b[1])], [Edge::new(a[0], b[1]), Edge::new(a[1], b[0])]];
        let pick = pairs.iter().find(|p| !p[0].crosses(p[1], ps) && !p[0].shares_endpoint(p[1])).unwrap_or(&pairs[0]);
        return Ok(pick.iter().copied().collect());
    }
    let &l = leaves.iter().min_by_key(|&&l| (tree.cells[l].members.len(), l)).unwrap();
    let chord = tree.leaf_chord(l).unwrap();
    let private = tree.leaf_private(l);
    let rest: Vec<usize> = t.vertices().iter().copied().filter(|x| !private.contains(x)).collect();
    let t1 = t.restrict(&rest)?;
    match t1.classify() {
        TriangulationClass::Fan => Err(Error::internal("removing a smallest leaf cell left a fan")),
        TriangulationClass::Wheel => Ok(wheel_remainder(t, &t1, chord, &private)),
        TriangulationClass::Other => {
            let v = apexes(t, chord)
                .into_iter()
                .find(|x| private.contains(x))
                .ok_or_else(|| Error::internal("leaf cell has no triangle on its chord"))?;
            let (u, w) = chord.ends();
            let (fp, vp) = reattach(t, &t1, u, v, w)?;
            let x = fp.created[1].other(v);
            let mut out = fp.triangulation.edges().clone();
            let o = t.point(v);
            let dir = |p: Point| {
                let (dx, dy) = ((p.x - o.x) as f64, (p.y - o.y) as f64);
                let len = dx.hypot(dy);
                (dx / len, dy / len)
            };
            let (ax, ay) = dir(t.point(x));
            let (bx, by) = dir(t.point(vp));
            let (mx, my) = (ax + bx, ay + by);
            let side = |p: Point| mx * (p.y - o.y) as f64 - my * (p.x - o.x) as f64;
            let x_side = side(t.point(x));
            for &p in private.iter().filter(|&&p| p != v) {
                let sp = side(t.point(p));
                let target = if sp * x_side >= 0.0 { x } else { vp };
                out.insert(Edge::new(target, p));
            }
            Ok(out)
        }
    }
}

/// The rest of the triangulation is a wheel: join the first leaf point seen
/// from the wheel's rim to the rim, and the rim vertex next to the chord to
/// every leaf point.
fn wheel_remainder(t: &Triangulation, t1: &Triangulation, chord: Edge, private: &[usize]) -> BTreeSet<Edge> {
    let ps = t.points();
    let center = *t1.vertices().iter().find(|&&x| !t1.is_hull_vertex(x)).unwrap();
    let mut cw = t1.rotation(center);
    cw.reverse();
    let (mut u, mut w) = chord.ends();
    let at = |list: &[usize], x: usize| list.iter().position(|&y| y == x).unwrap();
    let r = cw.len();
    if cw[(at(&cw, w) + r - 1) % r] != u {
        std::mem::swap(&mut u, &mut w);
    }
    let start = at(&cw, w);
    cw.rotate_left(start);
    let rim = &cw[1..r - 1];
    let v1 = rim[0];
    let turn = ps.cross(v1, u, w).signum();
    let first = *private
        .iter()
        .min_by(|&&p, &&q| {
            if p == q {
                std::cmp::Ordering::Equal
            } else if ps.cross(v1, p, q).signum() == turn {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        })
        .unwrap();
    let mut out: BTreeSet<Edge> = rim.iter().map(|&x| Edge::new(first, x)).collect();
    out.extend(private.iter().map(|&x| Edge::new(v1, x)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::random_triangulation;
    use crate::geom::is_convex_position;

    fn union(t: &Triangulation, added: &BTreeSet<Edge>) -> SimpleGraph {
        SimpleGraph::induced(t.vertices(), t.edges().iter().chain(added).copied())
    }

    #[test]
    fn wheels_and_fans() {
        for n in [4, 8, 9] {
            let w = generate_wheel(n).unwrap();
            assert_eq!(w.classify(), TriangulationClass::Wheel);
            assert_eq!(w.vertices().iter().filter(|&&v| !w.is_hull_vertex(v)).count(), 1);
            assert!(matches!(augment_to_4conn(&w), Err(Error::Impossible(_))));
        }
        assert_eq!(vertex_connectivity(&generate_wheel(8).unwrap().abstract_graph()), 3);
        let f = generate_fan(7).unwrap();
        assert_eq!(f.classify(), TriangulationClass::Fan);
        assert_eq!(vertex_connectivity(&f.abstract_graph()), 2);
        assert!(matches!(augment_to_4conn(&f), Err(Error::Impossible(_))));
    }

    #[test]
    fn flip_pair_on_pentagon_with_apex() {
        // hull 0..4 convex, 5 inside near edge 0-2
        let ps = PointSet::from_coords(&[(0, 0), (50, -30), (100, 0), (90, 80), (10, 80), (45, 20)]).unwrap();
        let ids: Vec<usize> = (0..6).collect();
        let mut edges: BTreeSet<Edge> = (0..5).map(|i| Edge::new(i, (i + 1) % 5)).collect();
        for e in [(0, 2), (0, 5), (2, 5), (5, 3), (5, 4)] {
            edges.insert(Edge::new(e.0, e.1));
        }
        let t = Triangulation::build(&ps, &ids, edges).unwrap();
        let fp = flip_pair_helper(&t, 0, 1, 2, 5).unwrap();
        assert_eq!(fp.flipped[0], Edge::new(0, 2));
        assert_eq!(fp.created[0], Edge::new(1, 5));
        // the chosen second edge was flippable after the first flip
        let after = t.flip(Edge::new(0, 2)).unwrap();
        assert!(after.is_flippable(fp.flipped[1]));
        if after.is_flippable(Edge::new(0, 5)) {
            assert_eq!(fp.flipped[1], Edge::new(0, 5));
        }
        let small = Triangulation::sweep(&ps, &[0, 1, 2, 3]).unwrap();
        assert!(flip_pair_helper(&small, 0, 1, 2, 3).is_err());
    }

    #[test]
    fn square_plus_point_becomes_k5() {
        let ps = PointSet::from_coords(&[(0, 0), (10, 0), (10, 10), (0, 10), (3, 6)]).unwrap();
        let mut edges: BTreeSet<Edge> = (0..4).map(|i| Edge::new(i, (i + 1) % 4)).collect();
        for e in [(1, 3), (4, 0), (4, 1), (4, 3)] {
            edges.insert(Edge::new(e.0, e.1));
        }
        let t = Triangulation::build(&ps, &[0, 1, 2, 3, 4], edges).unwrap();
        let a = augment_to_4conn(&t).unwrap();
        assert_eq!(a.added.len(), 2);
        assert_eq!(a.repairs, 0);
        assert_eq!(union(&t, &a.added).edge_count(), 10);
    }

    #[test]
    fn hexagon_with_chord_path() {
        let ps = crate::gen::regular_polygon(6).unwrap();
        let mut edges: BTreeSet<Edge> = (0..6).map(|i| Edge::new(i, (i + 1) % 6)).collect();
        for e in [(0, 2), (2, 5), (5, 3)] {
            edges.insert(Edge::new(e.0, e.1));
        }
        let t = Triangulation::build(&ps, &(0..6).collect::<Vec<_>>(), edges).unwrap();
        let a = augment_to_4conn(&t).unwrap();
        assert_eq!(a.added.len(), 3);
        assert!(vertex_connectivity(&union(&t, &a.added)) >= 4);
    }

    #[test]
    fn random_triangulations_reach_four() {
        let mut repaired = 0;
        for seed in 0..60 {
            let n = 5 + seed as usize % 8;
            let t = random_triangulation(n, 200, seed).unwrap();
            if t.classify() != TriangulationClass::Other || (n == 5 && is_convex_position(t.points())) {
                continue;
            }
            let a = augment_to_4conn(&t).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
            let list: Vec<Edge> = a.added.iter().copied().collect();
            assert!(check_4conn_augmentation(&t, &list).unwrap().passed());
            assert!(vertex_connectivity(&union(&t, &a.added)) >= 4);
            repaired += a.repairs;
        }
        assert_eq!(repaired, 0);
    }

    #[test]
    fn no5conn_instances() {
        for k in [2, 3, 4] {
            let (t, layout) = generate_no5conn(k).unwrap();
            assert_eq!(t.n(), 4 * k - 3 + 7);
            let top: Vec<usize> = layout.lower.iter().chain(&layout.upper).copied().collect();
            assert!(is_convex_position(&t.points().subset(&top)));
            assert_eq!(vertex_connectivity(&t.abstract_graph()), 4, "k = {k}");
            assert!(cut_structures(&t).unwrap().is_empty());
        }
    }
}
