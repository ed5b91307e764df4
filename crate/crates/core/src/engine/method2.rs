use std::borrow::Cow;
use std::collections::{BinaryHeap, HashMap};
use std::time::Instant;

use super::{seed_words, InquiryResult, OnlineAlgorithm};
use crate::error::{Error, Result};
use crate::graph::{Adjacency, Oracle};
use crate::ordering::{Rank, RankingFunction};
use crate::vicinity::LevelCache;

/// Short label: 1-based discovery index within one inquiry.
type Label = u32;

/// A discovered vertex. Its id is not stored: it is the `pos`-th entry of
/// the discoverer's input list.
#[derive(Clone, Copy, Debug)]
struct Member {
    level: u32,
    via: Option<(Label, u32)>,
}

/// An edge between two discovered vertices, stored once, from the endpoint
/// that was discovered first.
#[derive(Clone, Copy, Debug)]
struct LinkEdge {
    from: Label,
    to: Label,
    /// Position of the edge among the edges leaving `from`.
    pos: u32,
    /// Whether `to` precedes `from`, i.e. the edge was a closure step.
    descending: bool,
}

/// An undiscovered neighbor, known only by its level and where it occurs in
/// discovered vertices' lists.
#[derive(Clone, Debug)]
struct Frontier {
    level: u32,
    links: Vec<(Label, u32)>,
}

struct Discovery<'o, 'g, A: Adjacency + ?Sized> {
    center: usize,
    oracle: &'o mut Oracle<'g, A>,
    lists: Vec<Cow<'g, [usize]>>,
    members: Vec<Member>,
    /// D1: edges among discovered vertices.
    d1: Vec<LinkEdge>,
    /// D2: the frontier.
    d2: HashMap<usize, Frontier>,
    /// Discovered ids by label, for membership checks.
    label_of: HashMap<usize, Label>,
}

impl<A: Adjacency + ?Sized> Discovery<'_, '_, A> {
    fn id_of(&self, label: Label) -> usize {
        match self.members[label as usize - 1].via {
            None => self.center,
            Some((from, pos)) => self.lists[from as usize - 1][pos as usize],
        }
    }

    /// Appends `u` with the next label, turning its frontier links into D1
    /// edges and linking its undiscovered neighbors into the frontier.
    /// Returns the neighbors that became eligible through `u`.
    fn admit(
        &mut self,
        u: usize,
        via: Option<(Label, u32)>,
        cache: &mut LevelCache<'_>,
    ) -> Result<Vec<Rank>> {
        let list = self.oracle.neighbors(u)?;
        let label = self.members.len() as Label + 1;
        let rank_u = cache.rank(u);
        self.members.push(Member {
            level: rank_u.level,
            via,
        });
        self.label_of.insert(u, label);
        if let Some(entry) = self.d2.remove(&u) {
            for (from, pos) in entry.links {
                let descending = rank_u < cache.rank(self.id_of(from));
                self.d1.push(LinkEdge {
                    from,
                    to: label,
                    pos,
                    descending,
                });
            }
        }
        let mut eligible = Vec::new();
        for (pos, &w) in list.iter().enumerate() {
            // edges to discovered vertices arrived as frontier links
            if self.label_of.contains_key(&w) {
                continue;
            }
            let rank_w = cache.rank(w);
            let entry = self.d2.entry(w).or_insert_with(|| Frontier {
                level: rank_w.level,
                links: Vec::new(),
            });
            entry.links.push((label, pos as u32));
            if rank_w < rank_u {
                eligible.push(rank_w);
            }
        }
        self.lists.push(list);
        Ok(eligible)
    }
}

fn bits_for(max_value: usize) -> usize {
    (usize::BITS - max_value.leading_zeros()).max(1) as usize
}

/// Answers the inquiry at `v` with short labels.
///
/// Vertices are discovered one at a time, always taking the highest-ranked
/// frontier vertex that precedes one of its discovered neighbors, so labels
/// descend in rank and the replay runs in reverse label order.
pub fn lca_answer_method2<A, Alg>(
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
    let start_queries = oracle.queries();
    let mut cache = LevelCache::new(rf);
    let mut disc = Discovery {
        center: v,
        oracle,
        lists: Vec::new(),
        members: Vec::new(),
        d1: Vec::new(),
        d2: HashMap::new(),
        label_of: HashMap::new(),
    };

    let mut eligible: BinaryHeap<Rank> = disc.admit(v, None, &mut cache)?.into_iter().collect();
    while let Some(next) = eligible.pop() {
        let w = next.id;
        if disc.label_of.contains_key(&w) {
            continue;
        }
        if disc.members.len() + 1 > budget {
            return Err(Error::BudgetExceeded { center: v, budget });
        }
        let via = disc.d2[&w].links[0];
        eligible.extend(disc.admit(w, Some(via), &mut cache)?);
    }

    let t_v = disc.members.len();
    let frontier_links: usize = disc.d2.values().map(|f| f.links.len()).sum();
    let t_e = disc.d1.len() + frontier_links;

    let mut local: Vec<Vec<Label>> = vec![Vec::new(); t_v];
    for e in &disc.d1 {
        local[e.from as usize - 1].push(e.to);
        local[e.to as usize - 1].push(e.from);
    }
    let mut decided: Vec<Option<Alg::Output>> = vec![None; t_v];
    let mut output_words = 0;
    let mut earlier = Vec::new();
    for label in (1..=t_v as Label).rev() {
        earlier.clear();
        for &other in &local[label as usize - 1] {
            if other > label {
                let out = decided[other as usize - 1].expect("later labels are decided");
                earlier.push((disc.id_of(other), out));
            }
        }
        let id = disc.id_of(label);
        let out = alg.decide(id, &earlier);
        output_words += alg.output_words(&out);
        decided[label as usize - 1] = Some(out);
    }
    let output = decided[0].expect("center has label 1");

    let max_pos = disc.lists.iter().map(|l| l.len()).max().unwrap_or(0);
    let label_bits = bits_for(t_v);
    let pos_bits = bits_for(max_pos);
    let level_bits = bits_for(rf.levels() as usize);
    let member_bits = t_v * (level_bits + label_bits + pos_bits);
    let d1_bits = disc.d1.len() * (2 * label_bits + pos_bits + 1);
    let d2_bits = disc.d2.len() * level_bits + frontier_links * (label_bits + pos_bits);
    let packed_words = (member_bits + d1_bits + d2_bits).div_ceil(64);
    debug_assert!(disc.members.iter().all(|m| m.level >= 1));
    debug_assert!(disc.d1.iter().all(|e| e.from < e.to && e.pos as usize <= max_pos));
    debug_assert!(disc.d2.values().all(|f| f.level >= 1));
    debug_assert!(disc.d1.iter().filter(|e| e.descending).count() + 1 >= t_v);
    debug_assert!((2..=t_v as Label).all(|l| rf.rank(disc.id_of(l)) < rf.rank(disc.id_of(l - 1))));

    Ok(InquiryResult {
        vertex: v,
        output,
        t_v,
        t_e,
        queries: disc.oracle.queries() - start_queries,
        time_ns: started.elapsed().as_nanos() as u64,
        peak_words: seed_words(rf) + packed_words + output_words,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bit_widths() {
        assert_eq!(bits_for(0), 1);
        assert_eq!(bits_for(1), 1);
        assert_eq!(bits_for(2), 2);
        assert_eq!(bits_for(255), 8);
        assert_eq!(bits_for(256), 9);
    }
}
