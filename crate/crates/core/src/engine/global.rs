use super::{Assignment, OnlineAlgorithm};
use crate::graph::Adjacency;
use crate::ordering::RankingFunction;

/// Runs `alg` over every item of `structure` in rank order.
///
/// This is the reference solution: every LCA answer must equal it.
pub fn global_online_run<A, Alg>(
    structure: &A,
    rf: &RankingFunction,
    alg: &Alg,
) -> Assignment<Alg::Output>
where
    A: Adjacency + ?Sized,
    Alg: OnlineAlgorithm,
{
    let n = structure.len();
    let mut order: Vec<_> = (0..n).map(|v| rf.rank(v)).collect();
    order.sort_unstable();
    let mut out = Assignment::new(n);
    let mut earlier = Vec::new();
    for r in order {
        earlier.clear();
        for &w in structure.neighbors(r.id).iter() {
            if let Some(value) = out.get(w) {
                earlier.push((w, value));
            }
        }
        out.set(r.id, alg.decide(r.id, &earlier));
    }
    out
}
