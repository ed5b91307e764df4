use std::collections::{BTreeSet, VecDeque};

use lcalab_core::graph::{Graph, GraphOracle};
use lcalab_core::ordering::RankingFunction;
use lcalab_core::vicinity::{
    containing_vicinity, levelhood, relevant_vicinity_with, Traversal, DEFAULT_BUDGET,
};
use proptest::prelude::*;

fn arb_instance() -> impl Strategy<Value = (Graph, RankingFunction, usize)> {
    (2usize..45, 1u32..9, 1usize..8, any::<u64>()).prop_flat_map(|(n, levels, k, seed)| {
        (prop::collection::vec((0..n, 0..n), 0..2 * n), 0..n).prop_map(move |(pairs, v)| {
            let edges: BTreeSet<(usize, usize)> =
                pairs.into_iter().filter(|(a, b)| a != b).map(|(a, b)| (a.min(b), a.max(b))).collect();
            let g = Graph::from_edges(n, &edges.into_iter().collect::<Vec<_>>()).unwrap();
            let rf = RankingFunction::sample(n, levels, k, &seed.to_le_bytes()).unwrap();
            (g, rf, v)
        })
    })
}

/// Vertices reachable from `v` along rank-decreasing edges, by plain search.
fn decreasing_reach(g: &Graph, rf: &RankingFunction, v: usize) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([v]);
    let mut queue = VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        for &w in g.adjacent(u) {
            if rf.precedes(w, u) && seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    seen
}

proptest! {
    #[test]
    fn closure_minimality_and_accounting((g, rf, v) in arb_instance()) {
        let vic = relevant_vicinity_with(&mut GraphOracle::new(&g), &rf, v, DEFAULT_BUDGET, Traversal::DepthFirst).unwrap();
        let members: BTreeSet<usize> = vic.members.iter().copied().collect();
        // closure
        for &u in &members {
            for &w in g.adjacent(u) {
                if rf.precedes(w, u) {
                    prop_assert!(members.contains(&w));
                }
            }
        }
        // minimality
        prop_assert_eq!(&members, &decreasing_reach(&g, &rf, v));
        prop_assert_eq!(vic.queries, vic.t_v as u64);
        let incident: BTreeSet<(usize, usize)> =
            g.edges().filter(|(a, b)| members.contains(a) || members.contains(b)).collect();
        prop_assert_eq!(vic.adjacent_edges.iter().copied().collect::<BTreeSet<_>>(), incident);
        prop_assert_eq!(vic.t_e, vic.adjacent_edges.len());
    }

    #[test]
    fn traversal_order_is_irrelevant((g, rf, v) in arb_instance()) {
        let dfs = relevant_vicinity_with(&mut GraphOracle::new(&g), &rf, v, DEFAULT_BUDGET, Traversal::DepthFirst).unwrap();
        let bfs = relevant_vicinity_with(&mut GraphOracle::new(&g), &rf, v, DEFAULT_BUDGET, Traversal::BreadthFirst).unwrap();
        prop_assert_eq!(dfs.members, bfs.members);
        prop_assert_eq!(dfs.adjacent_edges, bfs.adjacent_edges);
        prop_assert_eq!(dfs.queries, bfs.queries);
    }

    #[test]
    fn containing_sweep_is_monotone_and_covers((g, rf, v) in arb_instance()) {
        let cv = containing_vicinity(&mut GraphOracle::new(&g), &rf, v, DEFAULT_BUDGET).unwrap();
        prop_assert!(cv.level_sizes.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(cv.level_sizes.last().copied(), Some(cv.members.len()));
        let vic = relevant_vicinity_with(&mut GraphOracle::new(&g), &rf, v, DEFAULT_BUDGET, Traversal::DepthFirst).unwrap();
        prop_assert!(vic.members.iter().all(|u| cv.members.binary_search(u).is_ok()));
    }

    #[test]
    fn levelhood_adds_only_its_level((g, rf, v) in arb_instance(), level in 1u32..9) {
        let base = BTreeSet::from([v]);
        let hood = levelhood(&mut GraphOracle::new(&g), &rf, &base, level).unwrap();
        prop_assert!(hood.is_superset(&base));
        prop_assert!(hood.iter().all(|&u| u == v || rf.level(u) == level));
        let again = levelhood(&mut GraphOracle::new(&g), &rf, &hood, level).unwrap();
        prop_assert_eq!(again, hood);
    }
}
