//! Inserting points that become hull vertices of the enlarged set.

use std::collections::BTreeSet;

use super::InsertionState;
use crate::connectivity::{is_k_connected, CheckReport};
use crate::error::{Error, Result};
use crate::geom::{ConvexPolygon, Point, PointSet};
use crate::graph::{Edge, SimpleGraph};
use crate::triangulation::Triangulation;

/// Edge indices of `poly` seen by `p`.
fn seen_edges(poly: &ConvexPolygon, p: Point) -> BTreeSet<usize> {
    (0..poly.len()).filter(|&i| poly.sees(p, i)).collect()
}

/// Longest run of cyclically consecutive indices of `0..m` in `set`.
fn longest_cyclic_run(set: &BTreeSet<usize>, m: usize) -> usize {
    if set.len() == m {
        return m;
    }
    let Some(gap) = (0..m).find(|i| !set.contains(i)) else { return m };
    let (mut best, mut cur) = (0, 0);
    for k in 1..=m {
        if set.contains(&((gap + k) % m)) {
            cur += 1;
            best = best.max(cur);
        } else {
            cur = 0;
        }
    }
    best
}

/// Runs of consecutive `sb` vertices along `hull`, in counterclockwise order.
/// A run covering the whole hull is returned once, starting at position 0.
fn runs(hull: &ConvexPolygon, sb: &BTreeSet<usize>) -> Vec<Vec<usize>> {
    let h = hull.len();
    let is_b = |i: usize| sb.contains(&hull.ids[i % h]);
    if (0..h).all(is_b) {
        return vec![hull.ids.clone()];
    }
    let start = (0..h).find(|&i| !is_b(i)).unwrap();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    for k in 1..=h {
        let i = (start + k) % h;
        if is_b(i) {
            cur.push(hull.ids[i]);
        } else if !cur.is_empty() {
            out.push(std::mem::take(&mut cur));
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

/// Checks the conditions under which a set of outer points can be attached
/// to a 5-connected graph on `sa`: the hull of `sa` has at least four
/// vertices, every point of `sb` is a hull vertex of the union, and any `k`
/// consecutive such hull vertices together see at least `k + 2`
/// consecutive edges of the hull of `sa`.
pub fn check_property_maxi(ps: &PointSet, sa: &[usize], sb: &[usize]) -> CheckReport {
    let mut violations = Vec::new();
    let inner = ConvexPolygon::hull_of(ps, sa);
    if inner.len() < 4 {
        violations.push(format!("hull of the inner set has {} vertices, need at least 4", inner.len()));
        return CheckReport { violations };
    }
    let all: Vec<usize> = sa.iter().chain(sb).copied().collect();
    let outer = ConvexPolygon::hull_of(ps, &all);
    let bset: BTreeSet<usize> = sb.iter().copied().collect();
    for &b in sb {
        if outer.position(b).is_none() {
            violations.push(format!("point {b} is not a hull vertex of the union"));
        }
    }
    let m = inner.len();
    for run in runs(&outer, &bset) {
        let cyclic = run.len() == outer.len();
        let r = run.len();
        for start in 0..r {
            let mut seen = BTreeSet::new();
            for k in 1..m.min(r + 1) {
                if !cyclic && start + k > r {
                    break;
                }
                seen.extend(seen_edges(&inner, ps.point(run[(start + k - 1) % r])));
                let got = longest_cyclic_run(&seen, m);
                if got < k + 2 {
                    violations.push(format!(
                        "{k} consecutive outer points from {} see {got} consecutive inner edges, need {}",
                        run[start],
                        k + 2
                    ));
                }
            }
        }
    }
    CheckReport { violations }
}

/// Inner-hull edges seen by both endpoints of each outer-hull edge.
fn edge_visibility(inner: &ConvexPolygon, outer: &ConvexPolygon) -> Vec<BTreeSet<usize>> {
    let q = outer.len();
    (0..q)
        .map(|i| {
            let a = seen_edges(inner, outer.pts[i]);
            let b = seen_edges(inner, outer.pts[(i + 1) % q]);
            a.intersection(&b).copied().collect()
        })
        .collect()
}

/// Every `k` consecutive edges of the hull of `sb` see at least `k` edges of
/// the hull of `sa` between them. Requires `sa` strictly inside the hull of
/// `sb` and every two consecutive hull vertices of `sb` to see a common edge.
pub fn edge_visibility_hall_holds(ps: &PointSet, sa: &[usize], sb: &[usize]) -> Result<bool> {
    let inner = ConvexPolygon::hull_of(ps, sa);
    let outer = ConvexPolygon::hull_of(ps, sb);
    if inner.len() < 3 || outer.len() < 3 {
        return Err(Error::pre("both sets need at least three hull vertices"));
    }
    if let Some(&a) = sa.iter().find(|&&a| !outer.strictly_inside(ps.point(a))) {
        return Err(Error::pre(format!("point {a} is not strictly inside the outer hull")));
    }
    let vis = edge_visibility(&inner, &outer);
    if let Some(i) = vis.iter().position(|v| v.is_empty()) {
        return Err(Error::pre(format!("outer hull edge {i} sees no inner edge")));
    }
    let q = outer.len();
    for start in 0..q {
        let mut seen = BTreeSet::new();
        for k in 1..=q {
            seen.extend(vis[(start + k - 1) % q].iter().copied());
            if seen.len() < k {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Augmenting-path bipartite matching; `cands[i]` lists the right vertices
/// left vertex `i` may take.
fn match_all(cands: &[BTreeSet<usize>], right: usize) -> Option<Vec<usize>> {
    fn augment(i: usize, cands: &[BTreeSet<usize>], owner: &mut [usize], seen: &mut [bool]) -> bool {
        for &j in &cands[i] {
            if !seen[j] {
                seen[j] = true;
                if owner[j] == usize::MAX || augment(owner[j], cands, owner, seen) {
                    owner[j] = i;
                    return true;
                }
            }
        }
        false
    }
    let mut owner = vec![usize::MAX; right];
    for i in 0..cands.len() {
        let mut seen = vec![false; right];
        if !augment(i, cands, &mut owner, &mut seen) {
            return None;
        }
    }
    let mut out = vec![0; cands.len()];
    for (j, &i) in owner.iter().enumerate() {
        if i != usize::MAX {
            out[i] = j;
        }
    }
    Some(out)
}

/// Interiors of two convex polygons (counterclockwise) intersect.
fn interiors_meet(a: &[Point], b: &[Point]) -> bool {
    let separates = |p: &[Point], q: &[Point]| {
        (0..p.len()).any(|i| {
            let (u, v) = (p[i], p[(i + 1) % p.len()]);
            q.iter().all(|&r| crate::geom::cross(u, v, r) <= 0)
        })
    };
    !separates(a, b) && !separates(b, a)
}

fn ccw(mut poly: Vec<Point>) -> Vec<Point> {
    if crate::geom::doubled_area(&poly) < 0 {
        poly.reverse();
    }
    poly
}

/// Exchanges assigned inner edges between pairs of outer edges whose
/// quadrilaterals overlap until no overlapping pair remains.
fn uncross(outer: &ConvexPolygon, inner: &ConvexPolygon, vis: &[BTreeSet<usize>], assign: &mut [usize]) -> Result<()> {
    let q = outer.len();
    let m = inner.len();
    let quad =
        |i: usize, j: usize| ccw(vec![outer.pts[i], outer.pts[(i + 1) % q], inner.pts[(j + 1) % m], inner.pts[j]]);
    let count = |assign: &[usize]| {
        let quads: Vec<Vec<Point>> = (0..q).map(|i| quad(i, assign[i])).collect();
        (0..q)
            .flat_map(|i| (i + 1..q).map(move |k| (i, k)))
            .filter(|&(i, k)| interiors_meet(&quads[i], &quads[k]))
            .count()
    };
    let mut current = count(assign);
    while current > 0 {
        let mut improved = false;
        'search: for i in 0..q {
            for k in i + 1..q {
                if vis[i].contains(&assign[k]) && vis[k].contains(&assign[i]) {
                    assign.swap(i, k);
                    let c = count(assign);
                    if c < current {
                        current = c;
                        improved = true;
                        break 'search;
                    }
                    assign.swap(i, k);
                }
            }
        }
        if !improved {
            return Err(Error::internal("overlapping quadrilaterals remain after exchanges"));
        }
    }
    Ok(())
}

/// Which construction attached the outer points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HullRoute {
    /// The inner set lies inside the outer hull and every outer hull edge
    /// is matched to a distinct visible inner edge.
    Matching,
    /// The outer points were handled as separate chains.
    Chains,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullStep {
    pub vertices: Vec<usize>,
    pub route: HullRoute,
    pub chains: Vec<Vec<usize>>,
    pub removed: Vec<Edge>,
}

#[derive(Default)]
struct Wiring {
    first: BTreeSet<Edge>,
    second: BTreeSet<Edge>,
    // (point, its four visible inner vertices) still needing a fifth neighbour
    pending: Vec<(usize, Vec<usize>)>,
}

fn wire_matching(outer: &ConvexPolygon, inner: &ConvexPolygon, assign: &[usize], w: &mut Wiring) {
    let q = outer.len();
    let m = inner.len();
    for (i, &k) in assign.iter().enumerate().take(q) {
        let (b, b_next) = (outer.ids[i], outer.ids[(i + 1) % q]);
        let (a, a_next) = (inner.ids[k], inner.ids[(k + 1) % m]);
        w.first.insert(Edge::new(b, b_next));
        w.first.insert(Edge::new(b, a));
        w.first.insert(Edge::new(b, a_next));
        w.second.insert(Edge::new(b_next, a));
    }
}

/// Splits runs of outer points wherever two consecutive points see no common
/// inner edge.
fn treatable_chains(
    ps: &PointSet,
    inner: &ConvexPolygon,
    outer: &ConvexPolygon,
    sb: &BTreeSet<usize>,
) -> Vec<Vec<usize>> {
    let share = |a: usize, b: usize| !seen_edges(inner, ps.point(a)).is_disjoint(&seen_edges(inner, ps.point(b)));
    let mut out = Vec::new();
    for mut run in runs(outer, sb) {
        if run.len() == outer.len() {
            // whole hull: rotate so that the run starts after a break
            let r = run.len();
            if let Some(cut) = (0..r).find(|&i| !share(run[i], run[(i + 1) % r])) {
                run.rotate_left((cut + 1) % r);
            }
        }
        let mut cur = vec![run[0]];
        for w in run.windows(2) {
            if share(w[0], w[1]) {
                cur.push(w[1]);
            } else {
                out.push(std::mem::replace(&mut cur, vec![w[1]]));
            }
        }
        out.push(cur);
    }
    out
}

fn wire_chain(ps: &PointSet, inner: &ConvexPolygon, chain: &[usize], w: &mut Wiring) -> Result<()> {
    let m = inner.len();
    let q = chain.len();
    let run = |b: usize| {
        inner.visible_run(ps.point(b)).ok_or_else(|| Error::internal(format!("point {b} sees no inner edge")))
    };
    let (start, _) = run(chain[0])?;
    let (last_start, last_count) = run(chain[q - 1])?;
    let edges = (last_start + last_count + m - start) % m;
    let edges = if edges == 0 { m } else { edges };
    // local vertex k is inner.ids[start + k]; local edge k joins vertices k, k+1
    let vert = |k: usize| inner.ids[(start + k) % m];
    let sees = |b: usize, k: usize| inner.sees(ps.point(b), (start + k) % m);
    let p = edges + 1;
    if q == 1 {
        let b = chain[0];
        for k in 0..p {
            w.first.insert(Edge::new(b, vert(k)));
        }
        if p == 4 {
            w.pending.push((b, (0..p).map(vert).collect()));
        } else if p < 4 {
            return Err(Error::internal(format!("point {b} sees only {} inner edges", p - 1)));
        }
        return Ok(());
    }
    let mut assigned: Vec<Vec<usize>> = vec![Vec::new(); q];
    if !(sees(chain[0], 0) && sees(chain[0], 1)) {
        return Err(Error::internal("first chain point does not see its first two edges"));
    }
    assigned[0] = vec![0, 1];
    let mut next = 2;
    while next < edges && !sees(chain[1], next) {
        assigned[0].push(next);
        next += 1;
    }
    for i in 1..q {
        let f = (next..edges)
            .find(|&k| sees(chain[i], k))
            .ok_or_else(|| Error::internal(format!("chain point {} has no free visible edge", chain[i])))?;
        if f != next {
            return Err(Error::internal("unassigned inner edge inside a chain"));
        }
        assigned[i].push(f);
        next = f + 1;
        while next < edges && (i == q - 1 || !(i + 1..q).any(|j| sees(chain[j], next))) {
            assigned[i].push(next);
            next += 1;
        }
    }
    for i in 0..q {
        if let Some(&k) = assigned[i].iter().find(|&&k| !sees(chain[i], k)) {
            return Err(Error::internal(format!("edge {k} assigned to {} is not visible", chain[i])));
        }
    }
    for pair in chain.windows(2) {
        w.first.insert(Edge::new(pair[0], pair[1]));
    }
    let join_all = |w: &mut Wiring, i: usize| {
        for &k in &assigned[i] {
            w.first.insert(Edge::new(chain[i], vert(k)));
            w.first.insert(Edge::new(chain[i], vert(k + 1)));
        }
    };
    if assigned[q - 1].len() == 2 {
        for i in 0..q - 2 {
            join_all(w, i);
        }
        // the second-to-last point stops short of the last point's edges
        for &k in &assigned[q - 2] {
            w.first.insert(Edge::new(chain[q - 2], vert(k)));
        }
        for k in edges - 3..=edges {
            w.first.insert(Edge::new(chain[q - 1], vert(k)));
        }
    } else {
        for i in 0..q {
            join_all(w, i);
        }
    }
    for i in 0..q - 1 {
        let f = assigned[i + 1][0];
        w.second.insert(Edge::new(chain[i], vert(f)));
        w.second.insert(Edge::new(chain[i], vert(f + 1)));
    }
    Ok(())
}

fn plane(ps: &PointSet, edges: &BTreeSet<Edge>) -> bool {
    let list: Vec<Edge> = edges.iter().copied().collect();
    (0..list.len()).all(|i| list[i + 1..].iter().all(|f| !list[i].crosses(*f, ps)))
}

/// Gives an outer point that sees exactly three inner edges its fifth
/// neighbour by forcing one more segment into one layer.
fn fifth_neighbour(
    t1: &mut Triangulation,
    t2: &mut Triangulation,
    real: &mut BTreeSet<Edge>,
    b: usize,
    visible: &[usize],
) -> Result<Vec<Edge>> {
    let ps = t1.points().clone();
    let mut cands: Vec<usize> = t1
        .vertices()
        .iter()
        .copied()
        .filter(|&v| v != b && !visible.contains(&v) && !real.contains(&Edge::new(b, v)))
        .collect();
    cands.sort_by_key(|&v| (ps.point(v).dist2(ps.point(b)), v));
    for v in cands {
        for layer in 0..2 {
            let mut t = if layer == 0 { t1.clone() } else { t2.clone() };
            if t.insert_segment(b, v).is_err() {
                continue;
            }
            let (n1, n2) = if layer == 0 { (&t, &*t2) } else { (&*t1, &t) };
            let removed: Vec<Edge> =
                real.iter().copied().filter(|e| !n1.edges().contains(e) && !n2.edges().contains(e)).collect();
            // a deleted edge must have both ends joined to b
            let ok = removed.len() <= 1
                && removed.iter().all(|e| {
                    let (x, y) = e.ends();
                    [x, y].iter().all(|&z| z == v || visible.contains(&z))
                });
            if ok {
                for e in &removed {
                    real.remove(e);
                }
                real.insert(Edge::new(b, v));
                if layer == 0 {
                    *t1 = t;
                } else {
                    *t2 = t;
                }
                return Ok(removed);
            }
        }
    }
    Err(Error::internal(format!("no fifth neighbour found for point {b}")))
}

/// Attaches `sb`, whose points must all become hull vertices, to the graph.
pub fn insert_hull_points(st: &mut InsertionState, sb: &[usize]) -> Result<HullStep> {
    let ps = st.points().clone();
    let sa = st.vertices().to_vec();
    if sb.is_empty() {
        return Ok(HullStep {
            vertices: Vec::new(),
            route: HullRoute::Chains,
            chains: Vec::new(),
            removed: Vec::new(),
        });
    }
    if let Some(&b) = sb.iter().find(|b| st.first.contains_vertex(**b)) {
        return Err(Error::pre(format!("point {b} is already present")));
    }
    let report = check_property_maxi(&ps, &sa, sb);
    if !report.passed() {
        return Err(Error::pre(format!("outer points cannot be attached: {}", report.violations.join("; "))));
    }
    let inner = ConvexPolygon::hull_of(&ps, &sa);
    let all: Vec<usize> = sa.iter().chain(sb).copied().collect();
    let outer = ConvexPolygon::hull_of(&ps, &all);
    let bset: BTreeSet<usize> = sb.iter().copied().collect();
    let mut wiring = Wiring::default();
    let mut route = HullRoute::Chains;
    let mut chains = Vec::new();
    let surrounded = outer.ids.iter().all(|v| bset.contains(v));
    let vis = edge_visibility(&inner, &outer);
    if surrounded && vis.iter().all(|v| !v.is_empty()) {
        let mut assign =
            match_all(&vis, inner.len()).ok_or_else(|| Error::internal("no matching of outer to inner hull edges"))?;
        uncross(&outer, &inner, &vis, &mut assign)?;
        wire_matching(&outer, &inner, &assign, &mut wiring);
        route = HullRoute::Matching;
        chains.push(outer.ids.clone());
    } else {
        for chain in treatable_chains(&ps, &inner, &outer, &bset) {
            wire_chain(&ps, &inner, &chain, &mut wiring)?;
            chains.push(chain);
        }
    }
    let mut req1: BTreeSet<Edge> = st.first.edges().clone();
    req1.extend(wiring.first.iter().copied());
    let mut req2: BTreeSet<Edge> = st.second.edges().clone();
    req2.extend(wiring.second.iter().copied());
    if !plane(&ps, &req1) || !plane(&ps, &req2) {
        return Err(Error::internal("new edges cross within a layer"));
    }
    let mut ids = all.clone();
    ids.sort_unstable();
    let mut t1 = Triangulation::complete(&ps, &ids, &req1)?;
    let mut t2 = Triangulation::complete_avoiding(&ps, &ids, &req2, t1.edges())?;
    let mut real = st.real.clone();
    real.extend(wiring.first.iter().copied());
    real.extend(wiring.second.iter().copied());
    let mut removed = Vec::new();
    for (b, visible) in &wiring.pending {
        removed.extend(fifth_neighbour(&mut t1, &mut t2, &mut real, *b, visible)?);
    }
    let g = SimpleGraph::induced(&ids, real.iter().copied());
    if !is_k_connected(&g, 5) {
        return Err(Error::internal("graph is not 5-connected after attaching the outer points"));
    }
    *st = InsertionState::from_parts(t1, t2, real)?;
    let mut vertices = sb.to_vec();
    vertices.sort_unstable();
    Ok(HullStep { vertices, route, chains, removed })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square_pair(inner: &[(i64, i64)], outer: &[(i64, i64)]) -> (PointSet, Vec<usize>, Vec<usize>) {
        let coords: Vec<(i64, i64)> = inner.iter().chain(outer).copied().collect();
        let ps = PointSet::from_coords(&coords).unwrap();
        let sa = (0..inner.len()).collect();
        let sb = (inner.len()..coords.len()).collect();
        (ps, sa, sb)
    }

    #[test]
    fn cyclic_runs() {
        let s: BTreeSet<usize> = [0, 1, 2].into_iter().collect();
        assert_eq!(longest_cyclic_run(&s, 5), 3);
        let s: BTreeSet<usize> = [0, 4].into_iter().collect();
        assert_eq!(longest_cyclic_run(&s, 5), 2);
        let s: BTreeSet<usize> = (0..5).collect();
        assert_eq!(longest_cyclic_run(&s, 5), 5);
    }

    #[test]
    fn property_with_no_outer_points_needs_only_four_hull_vertices() {
        let hex = crate::gen::regular_polygon(6).unwrap();
        let all: Vec<usize> = (0..6).collect();
        assert!(check_property_maxi(&hex, &all, &[]).passed());
        assert!(!check_property_maxi(&hex, &all[..3], &[]).passed());
    }

    #[test]
    fn far_point_seeing_two_edges_fails() {
        // a point beyond a corner of a square sees exactly two edges
        let (ps, sa, sb) = square_pair(&[(0, 0), (10, 0), (10, 10), (0, 10)], &[(30, 31)]);
        let r = check_property_maxi(&ps, &sa, &sb);
        assert!(!r.passed());
    }

    #[test]
    fn hall_on_concentric_squares() {
        let (ps, sa, sb) = square_pair(
            &[(-10, -11), (11, -10), (10, 11), (-11, 10)],
            &[(-100, -100), (100, -100), (100, 100), (-100, 100)],
        );
        assert_eq!(edge_visibility_hall_holds(&ps, &sa, &sb), Ok(true));
        // rotating the inner square by 45 degrees leaves outer edges that see nothing
        let (ps, sa, sb) =
            square_pair(&[(0, -10), (10, 0), (0, 10), (-10, 0)], &[(-100, -100), (100, -100), (100, 100), (-100, 100)]);
        assert!(edge_visibility_hall_holds(&ps, &sa, &sb).is_err());
    }

    #[test]
    fn matching_and_overlap_test() {
        let cands = vec![[0, 1].into_iter().collect(), [0].into_iter().collect(), [1, 2].into_iter().collect()];
        let m = match_all(&cands, 3).unwrap();
        assert_eq!(m[1], 0);
        assert_eq!(m[0], 1);
        let a = [Point::new(0, 0), Point::new(4, 0), Point::new(4, 4), Point::new(0, 4)];
        let b = [Point::new(2, 2), Point::new(6, 2), Point::new(6, 6), Point::new(2, 6)];
        let c = [Point::new(4, 0), Point::new(8, 0), Point::new(8, 4), Point::new(4, 4)];
        assert!(interiors_meet(&a, &b));
        assert!(!interiors_meet(&a, &c));
    }
}
