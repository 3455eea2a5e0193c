use ohba_core::engine::{enumerate_core_ranges, find_proper_coloring, is_colorable_join_fast};
use ohba_core::{Color, JoinGraph, ListAssignment};
use proptest::prelude::*;

/// `(p, a, b, k)` with `p ≤ 2`, `1 ≤ a ≤ 3`, `a ≤ b ≤ 6`, `1 ≤ k ≤ 5`, and a
/// `k`-assignment over a small palette so that lists collide often.
fn join_instance() -> impl Strategy<Value = (JoinGraph, ListAssignment)> {
    (0usize..=2, 1usize..=3, 0usize..=5, 1usize..=5, 0usize..=3).prop_flat_map(|(p, a, db, k, extra)| {
        let b = (a + db).min(6);
        let n = p + a + b;
        let palette = k + extra;
        let list = proptest::sample::subsequence((1..=palette as Color).collect::<Vec<_>>(), k);
        proptest::collection::vec(list, n).prop_map(move |lists| {
            (JoinGraph::new(p, a, b).unwrap(), ListAssignment::new(lists).unwrap())
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn fast_path_agrees_with_backtracking((g, la) in join_instance()) {
        let fast = is_colorable_join_fast(&g, &la).unwrap();
        let slow = find_proper_coloring(&g, &la).unwrap();
        prop_assert_eq!(fast.colorable, slow.is_some());
        if let Some(c) = &fast.witness {
            prop_assert!(c.validate(&g, &la).is_ok());
        }
        if let Some(c) = &slow {
            prop_assert!(c.validate(&g, &la).is_ok());
        }
    }

    #[test]
    fn core_ranges_have_sizes_between_p_plus_one_and_p_plus_a((g, la) in join_instance()) {
        let ranges = enumerate_core_ranges(&g, &la).unwrap();
        let (p, a) = (g.p(), g.a());
        for r in ranges.iter() {
            prop_assert!(r.len() > p && r.len() <= p + a, "{:?}", r);
        }
    }
}

/// A `(p + a)`-assignment of `K_p ∨ K_{a,b}` whose `X`-lists are not pairwise disjoint.
fn overlapping_small_side() -> impl Strategy<Value = (JoinGraph, ListAssignment)> {
    (1usize..=2, 2usize..=3, 0usize..=4).prop_flat_map(|(p, a, db)| {
        let b = a + db;
        let k = p + a;
        let n = p + a + b;
        let palette: Vec<Color> = (1..=(2 * k) as Color).collect();
        let list = proptest::sample::subsequence(palette, k);
        (proptest::collection::vec(list, n), any::<proptest::sample::Index>()).prop_map(move |(mut lists, shared)| {
            // force x1 and x2 to share a color
            let c = lists[p][shared.index(k)];
            if !lists[p + 1].contains(&c) {
                lists[p + 1][0] = c;
                lists[p + 1].sort_unstable();
                lists[p + 1].dedup();
                let mut fill = 1;
                while lists[p + 1].len() < k {
                    if !lists[p + 1].contains(&fill) {
                        lists[p + 1].push(fill);
                        lists[p + 1].sort_unstable();
                    }
                    fill += 1;
                }
            }
            (JoinGraph::new(p, a, b).unwrap(), ListAssignment::new(lists).unwrap())
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn overlapping_small_side_lists_are_always_colorable((g, la) in overlapping_small_side()) {
        prop_assert_eq!(la.uniform_size(), Some(g.p() + g.a()));
        let v = is_colorable_join_fast(&g, &la).unwrap();
        prop_assert!(v.colorable);
        prop_assert!(v.witness.unwrap().validate(&g, &la).is_ok());
    }
}
