use fga_core::embed::isomorphic;
use fga_core::order::{verify_strong, verify_weak};
use fga_core::{
    are_isomorphic, canonical_decomposition, canonical_key, is_oplus_irreducible, otimes, parse_fg, plus, rank,
    splitting_vertices, strong_leq, times, weak_leq, write_fg, FlowGraph, IrreducibilityMode,
};
use proptest::prelude::*;

/// Connected flow graphs: a random spanning tree on `n` vertices (each new
/// vertex hangs off an earlier one, in a random direction) plus extra
/// edges, loops and parallels allowed.
fn flow_graph(max_vertices: usize, max_extra: usize) -> impl Strategy<Value = FlowGraph> {
    (1..=max_vertices).prop_flat_map(move |n| {
        let tree = proptest::collection::vec((any::<prop::sample::Index>(), any::<bool>()), n - 1);
        let extra = proptest::collection::vec((0..n, 0..n), 0..=max_extra);
        (tree, extra, 0..n, 0..n).prop_map(move |(tree, extra, s, t)| {
            let mut edges = Vec::new();
            for (v, (parent, forward)) in (1..n).zip(tree) {
                let p = parent.index(v);
                edges.push(if forward { (p, v) } else { (v, p) });
            }
            edges.extend(extra);
            FlowGraph::new(n, edges, s, t).expect("spanning tree keeps it connected")
        })
    })
}

fn small() -> impl Strategy<Value = FlowGraph> {
    flow_graph(4, 2)
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn text_round_trip(a in flow_graph(6, 4)) {
        let text = write_fg(&a);
        let back = parse_fg(&text).unwrap();
        prop_assert_eq!(back.clone(), a.sorted());
        prop_assert_eq!(write_fg(&back), text);
    }

    #[test]
    fn key_ignores_labels((a, perm) in flow_graph(6, 4).prop_flat_map(|a| {
        let n = a.vertex_count();
        (Just(a), permutation(n))
    })) {
        let b = a.relabeled(&perm);
        prop_assert_eq!(canonical_key(&a).unwrap(), canonical_key(&b).unwrap());
        let iso = are_isomorphic(&a, &b).expect("relabelling is an isomorphism");
        prop_assert!(iso.is_isomorphism(&a, &b));
    }

    #[test]
    fn key_equality_is_isomorphism(a in small(), b in small()) {
        let same = canonical_key(&a).unwrap() == canonical_key(&b).unwrap();
        prop_assert_eq!(same, are_isomorphic(&a, &b).is_some());
    }

    #[test]
    fn sum_is_associative(a in small(), b in small(), c in small()) {
        prop_assert!(isomorphic(&plus(&plus(&a, &b), &c), &plus(&a, &plus(&b, &c))));
    }

    #[test]
    fn product_is_associative(a in flow_graph(3, 1), b in flow_graph(3, 1), c in flow_graph(3, 1)) {
        prop_assert!(isomorphic(&times(&times(&a, &b), &c), &times(&a, &times(&b, &c))));
    }

    #[test]
    fn product_distributes_from_the_right(a in small(), b in small(), c in flow_graph(3, 1)) {
        let lhs = times(&plus(&a, &b), &c);
        let rhs = plus(&times(&a, &c), &times(&b, &c));
        prop_assert!(isomorphic(&lhs, &rhs));
    }

    #[test]
    fn counts(a in small(), b in small()) {
        let s = plus(&a, &b);
        prop_assert_eq!(s.vertex_count(), a.vertex_count() + b.vertex_count() - 1);
        prop_assert_eq!(s.edge_count(), a.edge_count() + b.edge_count());
        let p = otimes(&a, &b);
        prop_assert_eq!(p.product.edge_count(), a.edge_count() * b.edge_count());
        let mut pairs = p.edge_bijection.clone();
        pairs.sort_unstable();
        pairs.dedup();
        prop_assert_eq!(pairs.len(), a.edge_count() * b.edge_count());
    }

    #[test]
    fn decomposition_recomposes_into_irreducibles(a in flow_graph(6, 3)) {
        let d = canonical_decomposition(&a);
        prop_assert!(isomorphic(&d.recompose(), &a));
        prop_assert_eq!(d.len(), splitting_vertices(&a).vertices().len() + 1);
        for term in &d.components {
            prop_assert!(is_oplus_irreducible(term, IrreducibilityMode::SplittingVertex).unwrap());
        }
    }

    #[test]
    fn ranks_are_a_bijection(a in flow_graph(6, 3)) {
        let chi = splitting_vertices(&a).vertices();
        let k = chi.len();
        let mut rs: Vec<usize> = Vec::new();
        for &w in &chi {
            let r = rank(&a, w).unwrap();
            prop_assert_eq!(r.r_s + r.r_t + 1, k);
            rs.push(r.r_s);
        }
        rs.sort_unstable();
        prop_assert_eq!(rs, (0..k).collect::<Vec<_>>());
    }

    #[test]
    fn orders_are_reflexive_and_strong_implies_weak(a in small(), b in small()) {
        let w = weak_leq(&a, &a).unwrap().expect("weak order is reflexive");
        prop_assert!(verify_weak(&a, &a, &w));
        let s = strong_leq(&a, &a).unwrap().expect("strong order is reflexive");
        prop_assert!(verify_strong(&a, &a, &s));
        if let Some(s) = strong_leq(&a, &b).unwrap() {
            prop_assert!(verify_strong(&a, &b, &s));
            let w = weak_leq(&a, &b).unwrap();
            prop_assert!(w.is_some_and(|w| verify_weak(&a, &b, &w)));
        }
    }

    #[test]
    fn summands_embed_weakly(a in flow_graph(3, 1), b in flow_graph(3, 1)) {
        let s = plus(&a, &b);
        prop_assert!(weak_leq(&a, &s).unwrap().is_some());
        prop_assert!(weak_leq(&b, &s).unwrap().is_some());
    }
}
