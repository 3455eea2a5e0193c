use ohba_core::bounds::{sandwich, transversal_threshold};
use ohba_core::format::{parse_graph, parse_lists, write_graph, write_lists, GraphSpec};
use ohba_core::{Color, GenericGraph, JoinGraph, ListAssignment};
use proptest::prelude::*;

proptest! {
    #[test]
    fn sandwich_is_consistent(s in 0u32..=3, a in 1u32..=8, b in 1u64..=1_000_000_000) {
        prop_assume!(a as u64 <= b);
        let w = sandwich(s, a, b).unwrap();
        prop_assert!(w.is_consistent(), "{:?}", w);
        for r in w.reports.iter().filter(|r| r.valid) {
            if let Some(lo) = r.lower() {
                prop_assert!(lo <= w.upper, "{} = {} above {}", r.name, lo, w.upper);
            }
            if let Some(hi) = r.upper() {
                prop_assert!(hi >= w.lower, "{} = {} below {}", r.name, hi, w.lower);
            }
        }
    }

    #[test]
    fn transversal_threshold_is_where_the_lower_bound_steps(s in 0u32..=2, l in 1u32..=4) {
        let t: u64 = (&transversal_threshold(s, l)).try_into().unwrap();
        prop_assume!(t >= s as u64 + 2);
        prop_assert!(sandwich(s, s + 2, t).unwrap().lower >= l as u64);
        if t > s as u64 + 2 && l >= 2 {
            prop_assert!(sandwich(s, s + 2, t - 1).unwrap().lower < l as u64);
        }
    }

    #[test]
    fn join_lists_round_trip(p in 0usize..=3, a in 1usize..=3, b in 1usize..=5,
                             lists in proptest::collection::vec(proptest::collection::btree_set(1 as Color..40, 1..5), 11)) {
        prop_assume!(a <= b);
        let g = GraphSpec::Join(JoinGraph::new(p, a, b).unwrap());
        let la = ListAssignment::new(lists[..g.order()].iter().map(|s| s.iter().copied().collect()).collect()).unwrap();
        let text = write_lists(&g, &la);
        prop_assert_eq!(parse_lists(&text, &g).unwrap(), la);
        prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn generic_graph_round_trip(n in 1usize..=10, edges in proptest::collection::vec((0usize..10, 0usize..10), 0..20)) {
        let edges: Vec<_> = edges.into_iter().filter(|&(u, v)| u < n && v < n && u != v).collect();
        let g = GraphSpec::Generic(GenericGraph::from_edges(n, &edges).unwrap());
        prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }
}
