use std::collections::BTreeSet;

use lcalab_core::analysis::{binomial_cdf, check_stochastic_dominance, count_simple_paths, DistSpec, Pmf};
use lcalab_core::graph::Graph;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

fn arb_prob() -> impl Strategy<Value = BigRational> {
    (1i64..12).prop_flat_map(|den| (0..=den).prop_map(move |num| BigRational::new(num.into(), den.into())))
}

fn arb_dist() -> impl Strategy<Value = DistSpec> {
    (0u64..4, 0u64..14, arb_prob()).prop_map(|(offset, trials, p)| DistSpec::shifted(offset, trials, p).unwrap())
}

proptest! {
    #[test]
    fn cdf_reaches_one(spec in arb_dist()) {
        let pmf = spec.pmf();
        prop_assert!(pmf.total().is_one());
        prop_assert!(binomial_cdf(&spec, pmf.hi()).is_one());
        prop_assert!(binomial_cdf(&spec, pmf.hi() + 5).is_one());
    }

    #[test]
    fn dominance_is_reflexive(spec in arb_dist()) {
        prop_assert!(check_stochastic_dominance(&spec, &spec));
    }

    #[test]
    fn mutual_dominance_means_equal_laws(x in arb_dist(), y in arb_dist()) {
        if check_stochastic_dominance(&x, &y) && check_stochastic_dominance(&y, &x) {
            let (px, py) = (x.pmf(), y.pmf());
            let lo = px.lo().min(py.lo());
            let hi = px.hi().max(py.hi());
            for t in lo..=hi {
                prop_assert_eq!(px.prob_at(t), py.prob_at(t));
            }
        }
    }

    #[test]
    fn convolution_preserves_mass(x in arb_dist(), y in arb_dist()) {
        let z = x.pmf().convolve(&y.pmf());
        prop_assert!(z.total().is_one());
        prop_assert_eq!(z.lo(), x.pmf().lo() + y.pmf().lo());
    }

    #[test]
    fn paths_of_length_one_are_the_degree(
        n in 1usize..30,
        pairs in prop::collection::vec((0usize..30, 0usize..30), 0..80),
    ) {
        let edges: BTreeSet<(usize, usize)> = pairs
            .into_iter()
            .filter(|&(a, b)| a < n && b < n && a != b)
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        let g = Graph::from_edges(n, &edges.into_iter().collect::<Vec<_>>()).unwrap();
        for v in 0..n {
            prop_assert_eq!(count_simple_paths(&g, v, 1).unwrap(), BigUint::from(g.degree(v)));
        }
    }
}

#[test]
fn bernoulli_is_dominated_by_a_point_mass_above() {
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let b = Pmf::bernoulli(half);
    let one = Pmf::point(1);
    assert!(lcalab_core::analysis::dominance_violations(&b, &one).is_empty());
    assert!(!lcalab_core::analysis::dominance_violations(&one, &b).is_empty());
}
