use lcalab_core::engine::{
    global_online_run, lca_answer, lca_answer_method1, lca_answer_method2, lca_assignment,
    verify_coloring, verify_matching, verify_mis, Color, GreedyColoring, GreedyMatching,
    GreedyMis, MatchState, Membership, Method, OnlineAlgorithm,
};
use lcalab_core::graph::{generate, GeneratorSpec, Graph, GraphOracle, LineGraph, Oracle};
use lcalab_core::ordering::RankingFunction;
use lcalab_core::par::Execution;
use lcalab_core::vicinity::{relevant_vicinity, DEFAULT_BUDGET};
use proptest::prelude::*;

fn identity(n: usize, levels: u32) -> RankingFunction {
    RankingFunction::from_coefficients(n, levels, 31, vec![0, 1]).unwrap()
}

/// Plain greedy matching over edges in rank order, written against the edge
/// list rather than any adjacency structure.
fn direct_greedy_matching(g: &Graph, rf: &RankingFunction) -> Vec<MatchState> {
    let edges: Vec<_> = g.edges().collect();
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.sort_by_key(|&e| rf.rank(e));
    let mut used = vec![false; g.num_vertices()];
    let mut out = vec![MatchState::Unmatched; edges.len()];
    for e in order {
        let (u, v) = edges[e];
        if !used[u] && !used[v] {
            used[u] = true;
            used[v] = true;
            out[e] = MatchState::Matched;
        }
    }
    out
}

fn all_answers<A, Alg>(s: &A, rf: &RankingFunction, alg: &Alg, method: Method) -> Vec<Alg::Output>
where
    A: lcalab_core::graph::Adjacency + ?Sized,
    Alg: OnlineAlgorithm,
{
    lca_assignment(s, rf, alg, method, DEFAULT_BUDGET, Execution::default())
        .unwrap()
        .to_total()
        .unwrap()
}

#[test]
fn isolated_vertex_joins() {
    let g = Graph::empty(1);
    let rf = RankingFunction::sample(1, 4, 2, b"s").unwrap();
    let r = lca_answer_method1(&mut GraphOracle::new(&g), &rf, &GreedyMis, 0, 10).unwrap();
    assert_eq!((r.output, r.t_v, r.t_e, r.queries), (Membership::In, 1, 0, 1));
    let r2 = lca_answer_method2(&mut GraphOracle::new(&g), &rf, &GreedyMis, 0, 10).unwrap();
    assert_eq!((r2.output, r2.t_v, r2.t_e, r2.queries), (Membership::In, 1, 0, 1));
}

#[test]
fn triangle_by_hand() {
    let g = Graph::complete(3);
    let rf = identity(3, 8);
    let expect = [Membership::In, Membership::Out, Membership::Out];
    for method in [Method::One, Method::Two] {
        for (v, &want) in expect.iter().enumerate() {
            let r = lca_answer(method, &mut GraphOracle::new(&g), &rf, &GreedyMis, v, 10).unwrap();
            assert_eq!(r.output, want, "{method:?} vertex {v}");
        }
    }
}

#[test]
fn three_edge_path_matching() {
    // edges e0=(0,1), e1=(1,2), e2=(2,3), ranked in id order
    let g = Graph::path(4);
    let line = LineGraph::new(&g);
    let rf = identity(3, 8);
    let got = all_answers(&line, &rf, &GreedyMatching, Method::One);
    assert_eq!(got, vec![MatchState::Matched, MatchState::Unmatched, MatchState::Matched]);
}

#[test]
fn path_coloring_by_hand() {
    let g = Graph::path(4);
    let rf = identity(4, 8);
    for method in [Method::One, Method::Two] {
        assert_eq!(
            all_answers(&g, &rf, &GreedyColoring, method),
            vec![Color(1), Color(2), Color(1), Color(2)]
        );
    }
}

#[test]
fn center_preceded_by_everything() {
    // star with the center ranked last: the vicinity is the whole star
    let g = Graph::from_edges(5, &[(0, 4), (1, 4), (2, 4), (3, 4)]).unwrap();
    let rf = identity(5, 8);
    for method in [Method::One, Method::Two] {
        let r = lca_answer(method, &mut GraphOracle::new(&g), &rf, &GreedyMis, 4, 10).unwrap();
        assert_eq!((r.output, r.t_v, r.t_e, r.queries), (Membership::Out, 5, 4, 5));
    }
}

#[test]
fn budget_propagates() {
    let g = Graph::path(30);
    let rf = identity(30, 16);
    for method in [Method::One, Method::Two] {
        let err = lca_answer(method, &mut GraphOracle::new(&g), &rf, &GreedyMis, 15, 3).unwrap_err();
        assert!(matches!(err, lcalab_core::Error::BudgetExceeded { center: 15, budget: 3 }));
    }
}

#[test]
fn consistent_with_global_run_on_random_graphs() {
    for seed in 0..6u64 {
        let g = generate(&GeneratorSpec::Gnp { n: 400, d: 3.0, rng_seed: seed }).unwrap();
        let rf = RankingFunction::sample(400, 16, 12, &seed.to_le_bytes()).unwrap();

        let mis = global_online_run(&g, &rf, &GreedyMis);
        assert!(verify_mis(&g, &mis).is_empty());
        let col = global_online_run(&g, &rf, &GreedyColoring);
        assert!(verify_coloring(&g, &col).is_empty());
        for method in [Method::One, Method::Two] {
            assert_eq!(Some(all_answers(&g, &rf, &GreedyMis, method)), mis.to_total());
            assert_eq!(Some(all_answers(&g, &rf, &GreedyColoring, method)), col.to_total());
        }

        let line = LineGraph::new(&g);
        let erf = RankingFunction::sample(g.num_edges(), 16, 12, &seed.to_le_bytes()).unwrap();
        let mat = global_online_run(&line, &erf, &GreedyMatching);
        assert!(verify_matching(&g, &mat).is_empty());
        assert_eq!(mat.to_total().unwrap(), direct_greedy_matching(&g, &erf));
        for method in [Method::One, Method::Two] {
            assert_eq!(Some(all_answers(&line, &erf, &GreedyMatching, method)), mat.to_total());
        }
    }
}

#[test]
fn implicit_line_graph_matches_materialized() {
    for seed in 0..20u64 {
        let g = generate(&GeneratorSpec::Gnp { n: 50, d: 4.0, rng_seed: seed }).unwrap();
        let line = LineGraph::new(&g);
        let explicit = line.materialize();
        let erf = RankingFunction::sample(g.num_edges(), 8, 6, &seed.to_be_bytes()).unwrap();
        let implicit = all_answers(&line, &erf, &GreedyMatching, Method::One);
        let on_explicit = all_answers(&explicit, &erf, &GreedyMatching, Method::One);
        assert_eq!(implicit, on_explicit);
        assert_eq!(implicit, direct_greedy_matching(&g, &erf));
    }
}

#[test]
fn statistics_match_vicinity() {
    let g = generate(&GeneratorSpec::Regular { n: 300, d: 3, rng_seed: 5 }).unwrap();
    let rf = RankingFunction::sample(300, 8, 10, b"stats").unwrap();
    for v in 0..300 {
        let vic = relevant_vicinity(&mut GraphOracle::new(&g), &rf, v, DEFAULT_BUDGET).unwrap();
        for method in [Method::One, Method::Two] {
            let r = lca_answer(method, &mut GraphOracle::new(&g), &rf, &GreedyMis, v, DEFAULT_BUDGET).unwrap();
            assert_eq!((r.t_v, r.t_e, r.queries), (vic.t_v, vic.t_e, vic.queries));
            assert_eq!(r.queries, r.t_v as u64);
        }
    }
}

#[test]
fn repeated_inquiries_are_identical() {
    let g = generate(&GeneratorSpec::Gnp { n: 500, d: 3.0, rng_seed: 1 }).unwrap();
    let rf = RankingFunction::sample(500, 16, 8, &[0xbe, 0xef]).unwrap();
    let mut oracle = Oracle::new(&g);
    for v in (0..500).step_by(11) {
        let a = lca_answer_method2(&mut oracle, &rf, &GreedyColoring, v, DEFAULT_BUDGET).unwrap();
        let b = lca_answer_method2(&mut oracle, &rf, &GreedyColoring, v, DEFAULT_BUDGET).unwrap();
        assert_eq!((a.output, a.t_v, a.peak_words), (b.output, b.t_v, b.peak_words));
    }
}

#[test]
fn sequential_and_parallel_agree() {
    let g = generate(&GeneratorSpec::Gnp { n: 800, d: 3.0, rng_seed: 9 }).unwrap();
    let rf = RankingFunction::sample(800, 16, 8, b"par").unwrap();
    let a = lca_assignment(&g, &rf, &GreedyMis, Method::Two, DEFAULT_BUDGET, Execution::Sequential).unwrap();
    let b = lca_assignment(&g, &rf, &GreedyMis, Method::Two, DEFAULT_BUDGET, Execution::Parallel).unwrap();
    assert_eq!(a, b);
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..40).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..(3 * n)).prop_map(move |pairs| {
            let mut edges: Vec<(usize, usize)> = pairs
                .into_iter()
                .filter(|(u, v)| u != v)
                .map(|(u, v)| (u.min(v), u.max(v)))
                .collect();
            edges.sort_unstable();
            edges.dedup();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn every_answer_agrees_with_the_global_run(
        g in arb_graph(),
        seed in any::<u64>(),
        levels in 1u32..12,
        k in 1usize..6,
    ) {
        let n = g.num_vertices();
        let rf = RankingFunction::sample(n, levels, k, &seed.to_le_bytes()).unwrap();
        let mis = global_online_run(&g, &rf, &GreedyMis);
        prop_assert!(verify_mis(&g, &mis).is_empty());
        let col = global_online_run(&g, &rf, &GreedyColoring);
        prop_assert!(verify_coloring(&g, &col).is_empty());
        for v in 0..n {
            for method in [Method::One, Method::Two] {
                let r = lca_answer(method, &mut GraphOracle::new(&g), &rf, &GreedyMis, v, DEFAULT_BUDGET).unwrap();
                prop_assert_eq!(Some(r.output), mis.get(v));
                prop_assert_eq!(r.queries, r.t_v as u64);
                let c = lca_answer(method, &mut GraphOracle::new(&g), &rf, &GreedyColoring, v, DEFAULT_BUDGET).unwrap();
                prop_assert_eq!(Some(c.output), col.get(v));
            }
        }
    }

    #[test]
    fn matching_answers_agree(g in arb_graph(), seed in any::<u64>(), levels in 1u32..12) {
        let m = g.num_edges();
        prop_assume!(m > 0);
        let line = LineGraph::new(&g);
        let erf = RankingFunction::sample(m, levels, 4, &seed.to_le_bytes()).unwrap();
        let direct = direct_greedy_matching(&g, &erf);
        for method in [Method::One, Method::Two] {
            prop_assert_eq!(&all_answers(&line, &erf, &GreedyMatching, method), &direct);
        }
    }
}
