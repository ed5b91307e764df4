use std::collections::HashMap;
use std::time::Instant;

use super::{seed_words, InquiryResult, OnlineAlgorithm};
use crate::error::Result;
use crate::graph::{Adjacency, Oracle};
use crate::ordering::RankingFunction;
use crate::vicinity::{explore, LevelCache, Traversal};

/// Answers the inquiry at `v` by exploring its relevant vicinity, sorting the
/// members by full rank and replaying `alg` over them.
///
/// Every earlier neighbor of a member is itself a member, so the replay sees
/// exactly what the global run sees at each member.
pub fn lca_answer_method1<A, Alg>(
    oracle: &mut Oracle<'_, A>,
    rf: &RankingFunction,
    alg: &Alg,
    v: usize,
    budget: usize,
) -> Result<InquiryResult<Alg::Output>>
where
    A: Adjacency + ?Sized,
    Alg: OnlineAlgorithm,
{
    let started = Instant::now();
    let mut cache = LevelCache::new(rf);
    let vic = explore(oracle, &mut cache, v, budget, Traversal::DepthFirst)?;

    let mut order: Vec<(crate::ordering::Rank, usize)> =
        vic.members.iter().map(|&u| (cache.rank(u), u)).collect();
    order.sort_unstable();
    let slot: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &(_, u))| (u, i)).collect();

    // induced adjacency among members, by slot
    let mut local: Vec<Vec<usize>> = vec![Vec::new(); order.len()];
    for &(a, b) in &vic.adjacent_edges {
        if let (Some(&i), Some(&j)) = (slot.get(&a), slot.get(&b)) {
            local[i].push(j);
            local[j].push(i);
        }
    }

    let mut decided: Vec<Option<Alg::Output>> = vec![None; order.len()];
    let mut output_words = 0;
    let mut earlier = Vec::new();
    for i in 0..order.len() {
        earlier.clear();
        for &j in &local[i] {
            if j < i {
                let out = decided[j].expect("earlier slots are decided");
                earlier.push((order[j].1, out));
            }
        }
        let out = alg.decide(order[i].1, &earlier);
        output_words += alg.output_words(&out);
        decided[i] = Some(out);
    }
    let output = decided[slot[&v]].expect("center is a member");

    // member ids and levels, both endpoints per adjacent edge, outputs, seed
    let peak_words = seed_words(rf) + 2 * vic.t_v + 2 * vic.t_e + output_words;
    Ok(InquiryResult {
        vertex: v,
        output,
        t_v: vic.t_v,
        t_e: vic.t_e,
        queries: vic.queries,
        time_ns: started.elapsed().as_nanos() as u64,
        peak_words,
    })
}
