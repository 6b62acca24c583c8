//! Exact planar predicates over integer points.
//!
//! Every predicate reduces to the sign of a 2x2 determinant evaluated in
//! `i128`. With coordinates bounded by [`COORD_LIMIT`] the determinant of
//! any three points, and the doubled area of any polygon with fewer than
//! 2^60 vertices, is exactly representable.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest absolute coordinate accepted by [`PointSet::new`].
pub const COORD_LIMIT: i64 = 1 << 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    pub fn dist2(self, other: Point) -> i128 {
        let dx = (self.x - other.x) as i128;
        let dy = (self.y - other.y) as i128;
        dx * dx + dy * dy
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Ccw,
    Cw,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Ccw => Orientation::Cw,
            Orientation::Cw => Orientation::Ccw,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

/// Twice the signed area of triangle `o a b`; positive when counterclockwise.
#[inline]
pub fn cross(o: Point, a: Point, b: Point) -> i128 {
    let ax = (a.x - o.x) as i128;
    let ay = (a.y - o.y) as i128;
    let bx = (b.x - o.x) as i128;
    let by = (b.y - o.y) as i128;
    ax * by - ay * bx
}

#[inline]
pub fn orientation(p: Point, q: Point, r: Point) -> Orientation {
    match cross(p, q, r).cmp(&0) {
        Ordering::Greater => Orientation::Ccw,
        Ordering::Less => Orientation::Cw,
        Ordering::Equal => Orientation::Collinear,
    }
}

/// True iff the open segments `ab` and `cd` meet in exactly one point
/// interior to both. Segments sharing an endpoint never cross.
pub fn segments_properly_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
    if a == c || a == d || b == c || b == d {
        return false;
    }
    let o1 = cross(a, b, c).signum();
    let o2 = cross(a, b, d).signum();
    let o3 = cross(c, d, a).signum();
    let o4 = cross(c, d, b).signum();
    o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 && o1 != o2 && o3 != o4
}

/// True iff `p` lies strictly inside triangle `a b c` (either orientation).
pub fn in_triangle(a: Point, b: Point, c: Point, p: Point) -> bool {
    let s = cross(a, b, c).signum();
    s != 0 && cross(a, b, p).signum() == s && cross(b, c, p).signum() == s && cross(c, a, p).signum() == s
}

/// Doubled signed area of a polygon given in order.
pub fn doubled_area(poly: &[Point]) -> i128 {
    if poly.len() < 3 {
        return 0;
    }
    let o = poly[0];
    poly.windows(2).skip(1).map(|w| cross(o, w[0], w[1])).sum()
}

/// Winding test for a simple polygon; `p` must not lie on its boundary.
pub fn point_in_polygon(poly: &[Point], p: Point) -> bool {
    let mut winding = 0i32;
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        if a.y <= p.y {
            if b.y > p.y && cross(a, b, p) > 0 {
                winding += 1;
            }
        } else if b.y <= p.y && cross(a, b, p) < 0 {
            winding -= 1;
        }
    }
    winding != 0
}

/// Counterclockwise hull of `ids` (indices into `pts`), starting at the
/// lexicographically smallest point. Inputs of size < 3 are returned sorted.
pub fn hull_indices(pts: &[Point], ids: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = ids.to_vec();
    order.sort_by_key(|&i| (pts[i].x, pts[i].y));
    order.dedup();
    if order.len() < 3 {
        return order;
    }
    let mut lower: Vec<usize> = Vec::new();
    for &i in &order {
        while lower.len() >= 2 && cross(pts[lower[lower.len() - 2]], pts[lower[lower.len() - 1]], pts[i]) <= 0 {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in order.iter().rev() {
        while upper.len() >= 2 && cross(pts[upper[upper.len() - 2]], pts[upper[upper.len() - 1]], pts[i]) <= 0 {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// A convex polygon over vertices of a point set, stored counterclockwise.
/// Edge `i` runs from `ids[i]` to `ids[i + 1]` (cyclically).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexPolygon {
    pub ids: Vec<usize>,
    pub pts: Vec<Point>,
}

impl ConvexPolygon {
    pub fn hull_of(ps: &PointSet, ids: &[usize]) -> Self {
        let hull = hull_indices(ps.points(), ids);
        let pts = hull.iter().map(|&i| ps.point(i)).collect();
        ConvexPolygon { ids: hull, pts }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn edge(&self, i: usize) -> (usize, usize) {
        let k = self.ids.len();
        (self.ids[i % k], self.ids[(i + 1) % k])
    }

    pub fn position(&self, id: usize) -> Option<usize> {
        self.ids.iter().position(|&v| v == id)
    }

    /// Index of the edge joining `u` and `v` (in either order), if it is a hull edge.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let k = self.ids.len();
        let i = self.position(u)?;
        if self.ids[(i + 1) % k] == v {
            Some(i)
        } else if self.ids[(i + k - 1) % k] == v {
            Some((i + k - 1) % k)
        } else {
            None
        }
    }

    pub fn strictly_inside(&self, p: Point) -> bool {
        let k = self.pts.len();
        k >= 3 && (0..k).all(|i| cross(self.pts[i], self.pts[(i + 1) % k], p) > 0)
    }

    pub fn strictly_outside(&self, p: Point) -> bool {
        let k = self.pts.len();
        k >= 3 && (0..k).any(|i| cross(self.pts[i], self.pts[(i + 1) % k], p) < 0)
    }

    /// Whether exterior point `s` sees edge `i`: the triangle it spans with
    /// the edge lies outside the polygon.
    pub fn sees(&self, s: Point, i: usize) -> bool {
        let k = self.pts.len();
        cross(self.pts[i % k], self.pts[(i + 1) % k], s) < 0
    }

    /// Visible edges of `s` as a counterclockwise run `(first, count)`.
    /// Returns `None` when `s` sees no edge (it is not exterior).
    pub fn visible_run(&self, s: Point) -> Option<(usize, usize)> {
        let k = self.pts.len();
        let vis: Vec<bool> = (0..k).map(|i| self.sees(s, i)).collect();
        let count = vis.iter().filter(|&&b| b).count();
        if count == 0 {
            return None;
        }
        if count == k {
            return Some((0, k));
        }
        let first = (0..k).find(|&i| vis[i] && !vis[(i + k - 1) % k])?;
        Some((first, count))
    }

    pub fn doubled_area(&self) -> i128 {
        doubled_area(&self.pts)
    }
}

#[derive(Debug)]
struct PointSetInner {
    points: Vec<Point>,
    hull: Vec<usize>,
    on_hull: Vec<bool>,
}

/// Distinct points in general position. Cheap to clone.
#[derive(Clone, Debug)]
pub struct PointSet {
    inner: Arc<PointSetInner>,
}

impl PartialEq for PointSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.points == other.inner.points
    }
}

impl PointSet {
    /// Validates range, distinctness and general position.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        for p in &points {
            if p.x.abs() > COORD_LIMIT || p.y.abs() > COORD_LIMIT {
                return Err(Error::CoordinateRange { x: p.x, y: p.y, limit: COORD_LIMIT });
            }
        }
        let mut sorted = points.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint { x: w[0].x, y: w[0].y });
        }
        if let Some((a, b, c)) = find_collinear(&points) {
            return Err(Error::Collinear(a, b, c));
        }
        let all: Vec<usize> = (0..points.len()).collect();
        let hull = hull_indices(&points, &all);
        let mut on_hull = vec![false; points.len()];
        for &h in &hull {
            on_hull[h] = true;
        }
        Ok(PointSet { inner: Arc::new(PointSetInner { points, hull, on_hull }) })
    }

    pub fn from_coords(coords: &[(i64, i64)]) -> Result<Self> {
        Self::new(coords.iter().map(|&(x, y)| Point::new(x, y)).collect())
    }

    pub fn len(&self) -> usize {
        self.inner.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.points.is_empty()
    }

    pub fn point(&self, i: usize) -> Point {
        self.inner.points[i]
    }

    pub fn points(&self) -> &[Point] {
        &self.inner.points
    }

    /// Counterclockwise hull vertex ids.
    pub fn hull(&self) -> &[usize] {
        &self.inner.hull
    }

    pub fn on_hull(&self, i: usize) -> bool {
        self.inner.on_hull[i]
    }

    pub fn hull_polygon(&self) -> ConvexPolygon {
        ConvexPolygon { ids: self.inner.hull.clone(), pts: self.inner.hull.iter().map(|&i| self.point(i)).collect() }
    }

    /// Sub-point-set on the given ids (re-indexed in the given order).
    pub fn subset(&self, ids: &[usize]) -> PointSet {
        let pts = ids.iter().map(|&i| self.point(i)).collect();
        PointSet::new(pts).expect("subset of a valid point set is valid")
    }

    pub fn orientation(&self, a: usize, b: usize, c: usize) -> Orientation {
        orientation(self.point(a), self.point(b), self.point(c))
    }

    pub fn cross(&self, a: usize, b: usize, c: usize) -> i128 {
        cross(self.point(a), self.point(b), self.point(c))
    }

    pub fn segments_cross(&self, a: usize, b: usize, c: usize, d: usize) -> bool {
        segments_properly_cross(self.point(a), self.point(b), self.point(c), self.point(d))
    }

    /// `s` sees hull edge `(u, v)` of this set.
    pub fn point_sees_hull_edge(&self, s: Point, edge: (usize, usize)) -> Result<bool> {
        let poly = self.hull_polygon();
        let i = poly
            .edge_index(edge.0, edge.1)
            .ok_or_else(|| Error::pre(format!("({}, {}) is not a hull edge", edge.0, edge.1)))?;
        if !poly.strictly_outside(s) {
            return Err(Error::pre(format!("{s} is not exterior to the hull")));
        }
        Ok(poly.sees(s, i))
    }

    pub fn segment_sees_hull_edge(&self, s: Point, t: Point, edge: (usize, usize)) -> Result<bool> {
        Ok(self.point_sees_hull_edge(s, edge)? && self.point_sees_hull_edge(t, edge)?)
    }
}

/// Counterclockwise hull of the whole set.
pub fn convex_hull(ps: &PointSet) -> Result<Vec<usize>> {
    if ps.len() < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: ps.len() });
    }
    Ok(ps.hull().to_vec())
}

pub fn is_convex_position(ps: &PointSet) -> bool {
    ps.hull().len() == ps.len()
}

fn find_collinear(points: &[Point]) -> Option<(usize, usize, usize)> {
    let n = points.len();
    for i in 0..n {
        let o = points[i];
        let mut dirs: Vec<(i64, i64, usize)> = (0..n)
            .filter(|&j| j != i)
            .map(|j| {
                let (dx, dy) = (points[j].x - o.x, points[j].y - o.y);
                if dy < 0 || (dy == 0 && dx < 0) {
                    (-dx, -dy, j)
                } else {
                    (dx, dy, j)
                }
            })
            .collect();
        let origin = Point::new(0, 0);
        dirs.sort_by(|a, b| {
            let c = cross(origin, Point::new(a.0, a.1), Point::new(b.0, b.1));
            0.cmp(&c)
        });
        for w in dirs.windows(2) {
            if cross(origin, Point::new(w[0].0, w[0].1), Point::new(w[1].0, w[1].1)) == 0 {
                let mut t = [i, w[0].2, w[1].2];
                t.sort_unstable();
                return Some((t[0], t[1], t[2]));
            }
        }
    }
    None
}

/// (size, doubled area, predecessor) of a best convex chain.
type ChainEntry = (usize, i128, Option<usize>);

/// A maximum-cardinality subset in convex position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexSubset {
    /// Counterclockwise vertex ids.
    pub ids: Vec<usize>,
    pub doubled_area: i128,
}

/// Largest subset in convex position; among those, largest hull area.
///
/// Dynamic program over chains anchored at the lowest vertex, O(n^4) overall.
/// Remaining ties keep the candidate whose sorted id list is smallest among
/// those the program enumerates.
pub fn max_convex_subset(ps: &PointSet) -> ConvexSubset {
    let n = ps.len();
    let pts = ps.points();
    if n < 3 {
        let ids: Vec<usize> = (0..n).collect();
        return ConvexSubset { ids, doubled_area: 0 };
    }
    let mut best: Option<(usize, i128, Vec<usize>)> = None;
    let better = |cand: &(usize, i128, Vec<usize>), cur: &Option<(usize, i128, Vec<usize>)>| match cur {
        None => true,
        Some(c) => {
            (cand.0, cand.1).cmp(&(c.0, c.1)).then_with(|| {
                let mut a = cand.2.clone();
                let mut b = c.2.clone();
                a.sort_unstable();
                b.sort_unstable();
                b.cmp(&a)
            }) == Ordering::Greater
        }
    };
    for a in 0..n {
        let pa = pts[a];
        let mut others: Vec<usize> = (0..n).filter(|&j| (pts[j].y, pts[j].x) > (pa.y, pa.x)).collect();
        others.sort_by(|&p, &q| 0.cmp(&cross(pa, pts[p], pts[q])));
        let m = others.len();
        if m < 2 {
            continue;
        }
        // dp[i][j]: best chain anchor -> ... -> others[i] -> others[j]
        // (size, doubled area, predecessor of i or None for the anchor)
        let mut dp: Vec<Vec<Option<ChainEntry>>> = vec![vec![None; m]; m];
        for j in 0..m {
            let pj = pts[others[j]];
            for i in 0..j {
                let pi = pts[others[i]];
                let tri = cross(pa, pi, pj);
                let mut cell: Option<(usize, i128, Option<usize>)> = None;
                if cross(pa, pi, pj) > 0 {
                    cell = Some((3, tri, None));
                }
                for h in 0..i {
                    if let Some((sz, ar, _)) = dp[h][i] {
                        if cross(pts[others[h]], pi, pj) > 0 {
                            let cand = (sz + 1, ar + tri, Some(h));
                            if cell.is_none_or(|c| (cand.0, cand.1) > (c.0, c.1)) {
                                cell = Some(cand);
                            }
                        }
                    }
                }
                dp[i][j] = cell;
            }
        }
        for j in 0..m {
            for i in 0..j {
                let Some((sz, ar, _)) = dp[i][j] else { continue };
                if cross(pts[others[i]], pts[others[j]], pa) <= 0 {
                    continue;
                }
                if let Some(b) = &best {
                    if (sz, ar) < (b.0, b.1) {
                        continue;
                    }
                }
                let mut chain = vec![others[j], others[i]];
                let (mut ci, mut cj) = (i, j);
                while let Some((_, _, Some(h))) = dp[ci][cj] {
                    chain.push(others[h]);
                    cj = ci;
                    ci = h;
                }
                chain.push(a);
                chain.reverse();
                let cand = (sz, ar, chain);
                if better(&cand, &best) {
                    best = Some(cand);
                }
            }
        }
    }
    let (_, area, ids) = best.expect("three points in general position are convex");
    ConvexSubset { ids, doubled_area: area }
}

/// Reads the point-set text format: one `x y` pair per line, `#` comments.
pub fn parse_points(text: &str) -> Result<PointSet> {
    let mut pts = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let parse = |tok: Option<&str>| -> Result<i64> {
            tok.ok_or_else(|| Error::Parse { line: lineno + 1, msg: "expected two integers".into() })?
                .parse::<i64>()
                .map_err(|e| Error::Parse { line: lineno + 1, msg: e.to_string() })
        };
        let x = parse(it.next())?;
        let y = parse(it.next())?;
        if it.next().is_some() {
            return Err(Error::Parse { line: lineno + 1, msg: "trailing tokens".into() });
        }
        pts.push(Point::new(x, y));
    }
    PointSet::new(pts)
}

pub fn format_points(ps: &PointSet) -> String {
    let mut out = String::new();
    for p in ps.points() {
        out.push_str(&format!("{} {}\n", p.x, p.y));
    }
    out
}
