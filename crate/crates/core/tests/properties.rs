use std::collections::BTreeSet;

use biplane::augment::{augment_tree_2edge, generate_fan, generate_wheel, min_augment_3conn, RootedTreeIndex};
use biplane::connectivity::{
    check_4conn_augmentation, compute_layering, cut_structures, verify_layering, vertex_connectivity, Layering,
};
use biplane::convex::{build_4conn_convex, build_5conn_convex, five_conn_trees};
use biplane::gen::{
    core_with_extras, random_convex_position, random_general_position, random_plane_tree, random_triangulation,
};
use biplane::geom::{convex_hull, is_convex_position, max_convex_subset, orientation, ConvexPolygon, Orientation};
use biplane::insert::{build_5conn_general_traced, Phase};
use biplane::triangulation::{saturate_to_maximal_biplane, TriangulationClass};
use biplane::{Edge, Point, PointSet, SimpleGraph};
use proptest::prelude::*;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

fn point() -> impl Strategy<Value = Point> {
    (-1000i64..1000, -1000i64..1000).prop_map(|(x, y)| Point::new(x, y))
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn orientation_flips_with_swap(p in point(), q in point(), r in point()) {
        prop_assert_eq!(orientation(p, q, r), orientation(p, r, q).reversed());
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn hull_turns_left(n in 3usize..40, seed in any::<u64>()) {
        let ps = random_general_position(n, 10_000, seed).unwrap();
        let h = convex_hull(&ps).unwrap();
        for i in 0..h.len() {
            let (a, b, c) = (h[i], h[(i + 1) % h.len()], h[(i + 2) % h.len()]);
            prop_assert_eq!(ps.orientation(a, b, c), Orientation::Ccw);
        }
    }

    #[test]
    fn exterior_point_sees_some_but_not_all_edges(n in 3usize..20, seed in any::<u64>()) {
        let ps = random_general_position(n, 1000, seed).unwrap();
        let hull = ps.hull().to_vec();
        let s = Point::new(5000, 3001);
        let seen = (0..hull.len())
            .filter(|&i| ps.point_sees_hull_edge(s, (hull[i], hull[(i + 1) % hull.len()])).unwrap())
            .count();
        prop_assert!(seen >= 1 && seen < hull.len());
    }

    #[test]
    fn convex_subset_is_convex(n in 3usize..25, seed in any::<u64>()) {
        let ps = random_general_position(n, 1000, seed).unwrap();
        let c = max_convex_subset(&ps);
        prop_assert!(is_convex_position(&ps.subset(&c.ids)));
        prop_assert!(c.ids.len() >= ps.hull().len());
    }

    #[test]
    fn flips_keep_edge_count_and_change_one_edge(n in 4usize..30, seed in any::<u64>()) {
        let t = random_triangulation(n, 1000, seed).unwrap();
        let h = t.hull().len();
        prop_assert_eq!(t.edges().len(), 3 * n - 3 - h);
        for &e in t.edges() {
            if t.is_flippable(e) {
                let f = t.flip(e).unwrap();
                prop_assert_eq!(f.edges().len(), 3 * n - 3 - h);
                prop_assert_eq!(t.edges().difference(f.edges()).count(), 1);
                prop_assert_eq!(f.edges().difference(t.edges()).count(), 1);
            }
        }
    }

    #[test]
    fn saturation_holds_two_triangulations(n in 3usize..30, seed in any::<u64>()) {
        let ps = random_general_position(n, 1000, seed).unwrap();
        let g = saturate_to_maximal_biplane(&ps, None).unwrap();
        prop_assert!(verify_layering(&g));
        let full = 3 * n - 3 - ps.hull().len();
        prop_assert_eq!(g.layer_edges(1).len(), full);
        prop_assert_eq!(g.layer_edges(2).len(), full);
    }

    #[test]
    fn connectivity_matches_cut_structures(n in 5usize..14, seed in any::<u64>()) {
        let t = random_triangulation(n, 1000, seed).unwrap();
        let k = vertex_connectivity(&t.abstract_graph());
        let r = cut_structures(&t).unwrap();
        prop_assert_eq!(k >= 4, r.is_empty());
        prop_assert_eq!(k == 2, !r.chords.is_empty());
    }

    #[test]
    fn odd_cycles_are_genuine(n in 4usize..12, seed in any::<u64>(), keep in 0.2f64..1.0) {
        let ps = random_general_position(n, 1000, seed).unwrap();
        let all: Vec<Edge> = (0..n).flat_map(|a| (a + 1..n).map(move |b| Edge::new(a, b))).collect();
        let take = ((all.len() as f64) * keep) as usize;
        let edges: Vec<Edge> = all.into_iter().take(take).collect();
        if let Layering::OddCycle(c) = compute_layering(&ps, &edges) {
            prop_assert!(c.len() % 2 == 1);
            for i in 0..c.len() {
                prop_assert!(c[i].crosses(c[(i + 1) % c.len()], &ps));
            }
        }
    }

    #[test]
    fn passing_check_means_four_connected(n in 5usize..11, seed in any::<u64>(), picks in proptest::collection::vec(any::<u16>(), 0..6)) {
        let t = random_triangulation(n, 1000, seed).unwrap();
        let non: Vec<Edge> = (0..n).flat_map(|a| (a + 1..n).map(move |b| Edge::new(a, b))).filter(|e| !t.edges().contains(e)).collect();
        if non.is_empty() {
            return Ok(());
        }
        let mut added: Vec<Edge> = Vec::new();
        for p in picks {
            let e = non[p as usize % non.len()];
            if !added.contains(&e) && added.iter().all(|f| !f.crosses(e, t.points())) {
                added.push(e);
            }
        }
        if check_4conn_augmentation(&t, &added).unwrap().passed() {
            let g = SimpleGraph::from_edges(n, t.edges().iter().copied().chain(added.iter().copied()));
            prop_assert!(vertex_connectivity(&g) >= 4);
        }
    }

    #[test]
    fn convex_four_is_exactly_four_below_twelve(n in 6usize..20, seed in any::<u64>()) {
        let g = build_4conn_convex(&random_convex_position(n, seed).unwrap()).unwrap();
        let k = vertex_connectivity(&g.abstract_graph());
        prop_assert!(verify_layering(&g));
        prop_assert!(k >= 4);
        if n < 12 {
            prop_assert_eq!(k, 4);
        }
    }

    #[test]
    fn tree_edges_lie_on_cycles(n in 3usize..21, seed in any::<u64>()) {
        let tree = random_plane_tree(n, 10_000, seed).unwrap();
        let added = augment_tree_2edge(&tree).unwrap();
        for i in 0..added.len() {
            for j in i + 1..added.len() {
                prop_assert!(!added[i].crosses(added[j], tree.points()));
            }
        }
        let edges: Vec<Edge> = tree.edges().map(|(e, _)| e).collect();
        let g = SimpleGraph::from_edges(n, edges.iter().copied().chain(added.iter().copied()));
        for e in &edges {
            let mut h = g.clone();
            h.remove_edge(e.u(), e.v());
            prop_assert!(h.is_connected(), "{} is a bridge", e);
        }
    }

    #[test]
    fn every_chord_is_crossed(n in 5usize..16, seed in any::<u64>()) {
        let t = random_triangulation(n, 1000, seed).unwrap();
        let added = min_augment_3conn(&t).unwrap();
        for c in t.chords() {
            prop_assert!(added.iter().any(|e| e.crosses(c, t.points())), "chord {} uncrossed", c);
        }
    }

    #[test]
    fn lca_is_deepest_common_ancestor(n in 1usize..200, seed in any::<u64>()) {
        let mut adj = vec![Vec::new(); n];
        let mut x = seed | 1;
        for v in 1..n {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            let p = (x % v as u64) as usize;
            adj[v].push(p);
            adj[p].push(v);
        }
        let idx = RootedTreeIndex::new(&adj, 0).unwrap();
        let ancestors = |mut v: usize| {
            let mut s = vec![v];
            while let Some(p) = idx.parent(v) {
                s.push(p);
                v = p;
            }
            s
        };
        for a in (0..n).step_by(7) {
            let up: BTreeSet<usize> = ancestors(a).into_iter().collect();
            for b in (0..n).step_by(5) {
                let naive = ancestors(b).into_iter().find(|v| up.contains(v)).unwrap();
                prop_assert_eq!(idx.lca(a, b), naive);
            }
        }
    }
}

proptest! {
    #![proptest_config(config(40))]

    #[test]
    fn insertion_steps_keep_their_contracts(extra in 1usize..8, seed in any::<u64>()) {
        let ps = core_with_extras(14, extra, seed).unwrap();
        let mut graphs = Vec::new();
        let b = build_5conn_general_traced(&ps, &mut |c| graphs.push((c.phase, c.inserted.clone(), c.graph.edge_set()))).unwrap();
        let core_hull = ConvexPolygon::hull_of(&ps, &b.core);
        for w in graphs.windows(2) {
            let ((_, _, before), (phase, inserted, after)) = (&w[0], &w[1]);
            let removed = before.difference(after).count();
            let new: Vec<Edge> = after.difference(before).copied().collect();
            match phase {
                Phase::Interior | Phase::Exterior => {
                    let s = inserted[0];
                    prop_assert!(new.iter().filter(|e| e.contains(s)).count() >= 5);
                    prop_assert!(removed <= 1, "{} edges removed", removed);
                }
                Phase::Boundary => {
                    // only a point seeing three inner edges reaches inside, once
                    let mut inward = vec![0; ps.len()];
                    for e in &new {
                        let (a, b) = e.ends();
                        let (ia, ib) = (core_hull.strictly_inside(ps.point(a)), core_hull.strictly_inside(ps.point(b)));
                        prop_assert!(!(ia && ib), "{}", e);
                        if ia || ib {
                            let outer = if ia { b } else { a };
                            prop_assert!(inserted.contains(&outer), "{}", e);
                            inward[outer] += 1;
                        }
                    }
                    prop_assert!(inward.iter().all(|&c| c <= 1));
                }
                Phase::Core => {}
            }
        }
        // each interior point lies outside the hull of the interior points before it
        let mut sorted = b.interior.clone();
        sorted.sort_by_key(|&v| (ps.point(v).x, ps.point(v).y));
        prop_assert_eq!(&sorted, &b.interior);
        for i in 3..b.interior.len() {
            let before = ConvexPolygon::hull_of(&ps, &b.interior[..i]);
            prop_assert!(before.strictly_outside(ps.point(b.interior[i])));
        }
    }
}

#[test]
fn wheels_and_fans_classify() {
    for n in 5..=30 {
        assert_eq!(generate_wheel(n).unwrap().classify(), TriangulationClass::Wheel, "wheel {n}");
        assert_eq!(generate_fan(n).unwrap().classify(), TriangulationClass::Fan, "fan {n}");
    }
}

#[test]
fn convex_five_is_exact_and_planar() {
    for n in std::iter::once(12).chain(14..=40) {
        let ps = biplane::gen::regular_polygon(n).unwrap();
        let g = build_5conn_convex(&ps).unwrap();
        assert!(verify_layering(&g));
        assert_eq!(vertex_connectivity(&g.abstract_graph()), 5, "n = {n}");
        assert!(g.edge_count() <= 3 * n - 6);
    }
}

#[test]
fn construction_trees_share_two_edges() {
    for n in (12..=40).filter(|&n| n != 13) {
        let (t1, t2) = five_conn_trees(n).unwrap();
        for t in [&t1, &t2] {
            assert_eq!(t.len(), n - 1);
            assert!(SimpleGraph::from_edges(n, t.iter().copied()).is_connected());
            let ps = biplane::gen::regular_polygon(n).unwrap();
            for i in 0..t.len() {
                for j in i + 1..t.len() {
                    assert!(!t[i].crosses(t[j], &ps), "n = {n}");
                }
            }
        }
        if n % 2 == 0 {
            let a: BTreeSet<Edge> = t1.iter().copied().collect();
            let shared: Vec<Edge> = t2.iter().copied().filter(|e| a.contains(e)).collect();
            assert_eq!(shared.len(), 2, "n = {n}: {shared:?}");
            let d = |e: &Edge| (e.v() + n - e.u()) % n;
            assert!(shared.iter().all(|e| d(e) == 1 || d(e) == n - 1), "n = {n}: {shared:?}");
            let (x, y) = (shared[0].u().min(shared[0].v()), shared[1].u().min(shared[1].v()));
            assert_eq!((x + n / 2) % n, y % n, "n = {n}: {shared:?}");
        }
    }
}

#[test]
fn point_set_rejects_collinear_input() {
    assert!(PointSet::from_coords(&[(0, 0), (1, 1), (5, 5)]).is_err());
}
