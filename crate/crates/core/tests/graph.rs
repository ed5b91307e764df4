use std::collections::BTreeSet;

use lcalab_core::graph::{generate, parse_graph, write_graph, Adjacency, GeneratorSpec, Graph, GraphOracle, LineGraph};
use lcalab_core::Error;
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..3 * n).prop_map(move |pairs| {
            let edges: BTreeSet<(usize, usize)> =
                pairs.into_iter().filter(|(u, v)| u != v).map(|(u, v)| (u.min(v), u.max(v))).collect();
            Graph::from_edges(n, &edges.into_iter().collect::<Vec<_>>()).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn file_round_trip_is_identity(g in arb_graph(40)) {
        let mut first = Vec::new();
        write_graph(&g, &mut first).unwrap();
        let back = parse_graph(first.as_slice(), "mem").unwrap();
        prop_assert_eq!(&back, &g);
        let mut second = Vec::new();
        write_graph(&back, &mut second).unwrap();
        prop_assert_eq!(first, second);
    }

    #[test]
    fn oracle_is_pure(g in arb_graph(30), picks in prop::collection::vec(0usize..1000, 1..20)) {
        let mut oracle = GraphOracle::new(&g);
        for (i, p) in picks.iter().enumerate() {
            let x = p % g.num_vertices();
            let a = oracle.neighbors(x).unwrap().into_owned();
            let b = oracle.neighbors(x).unwrap().into_owned();
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(a.as_slice(), g.adjacent(x));
            prop_assert_eq!(oracle.queries(), 2 * (i as u64 + 1));
        }
    }

    #[test]
    fn regular_degrees_are_exact(n in 2usize..60, d in 0usize..5, rng_seed in any::<u64>()) {
        prop_assume!(d < n && (n * d) % 2 == 0);
        match generate(&GeneratorSpec::Regular { n, d, rng_seed }) {
            Ok(g) => prop_assert!((0..n).all(|v| g.degree(v) == d)),
            Err(e) => prop_assert!(matches!(e, Error::Generation(_)), "{}", e),
        }
    }

    #[test]
    fn bipartite_consumers_have_degree_d(n in 1usize..80, m in 1usize..20, d in 0usize..5, rng_seed in any::<u64>()) {
        prop_assume!(d <= m);
        let g = generate(&GeneratorSpec::Bipartite { n, m, d, rng_seed }).unwrap();
        prop_assert_eq!(g.num_vertices(), n + m);
        for c in 0..n {
            prop_assert_eq!(g.degree(c), d);
            prop_assert!(g.adjacent(c).iter().all(|&p| p >= n));
        }
        for p in n..n + m {
            prop_assert!(g.adjacent(p).iter().all(|&c| c < n));
        }
    }

    #[test]
    fn line_graph_links_edges_sharing_an_endpoint(g in arb_graph(25)) {
        let line = LineGraph::new(&g);
        prop_assert_eq!(line.len(), g.num_edges());
        let explicit = line.materialize();
        for e in 0..g.num_edges() {
            let (a, b) = g.edge_endpoints(e);
            let expected: Vec<usize> = (0..g.num_edges())
                .filter(|&f| f != e && {
                    let (c, d) = g.edge_endpoints(f);
                    a == c || a == d || b == c || b == d
                })
                .collect();
            prop_assert_eq!(line.neighbors(e).into_owned(), expected.clone());
            prop_assert_eq!(explicit.adjacent(e), expected.as_slice());
        }
    }
}
