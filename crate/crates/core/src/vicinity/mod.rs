//! Relevant-vicinity and containing-vicinity exploration.
//!
//! The relevant vicinity of `v` is the least set containing `v` and closed
//! under adding any neighbor `w` of a member `u` with `w` ranked before `u`.
//! It is exactly what an LCA must explore to replay an online algorithm at
//! `v`. Each member costs one neighbor query; ranks of neighbors come from
//! the hash, not from the graph.

mod containing;
mod stats;

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use serde::Serialize;

pub use containing::{containing_vicinity, levelhood, ContainingVicinity};
pub use stats::{trial_ranking_seed, vicinity_stats, VicinityRecord, VicinityStats};

use crate::error::{Error, Result};
use crate::graph::{Adjacency, Oracle};
use crate::ordering::{Rank, RankingFunction};

/// Default cap on the number of members an exploration may collect.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Evaluates and memoizes levels so each id is hashed at most once per
/// exploration. The memoized ids are the exploration's hash queries.
#[derive(Debug)]
pub struct LevelCache<'r> {
    rf: &'r RankingFunction,
    levels: HashMap<usize, u32>,
}

impl<'r> LevelCache<'r> {
    pub fn new(rf: &'r RankingFunction) -> Self {
        Self {
            rf,
            levels: HashMap::new(),
        }
    }

    pub fn level(&mut self, v: usize) -> u32 {
        let rf = self.rf;
        *self.levels.entry(v).or_insert_with(|| rf.level(v))
    }

    pub fn rank(&mut self, v: usize) -> Rank {
        Rank {
            level: self.level(v),
            id: v,
        }
    }

    /// Number of distinct ids hashed so far.
    pub fn evaluations(&self) -> usize {
        self.levels.len()
    }

    /// Distinct hashed ids, ascending.
    pub fn hashed_ids(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = self.levels.keys().copied().collect();
        ids.sort_unstable();
        ids
    }

    /// Levels of all hashed ids, as per-level counts (index `l - 1`).
    pub fn level_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.rf.levels() as usize];
        for &l in self.levels.values() {
            counts[l as usize - 1] += 1;
        }
        counts
    }
}

/// Worklist discipline for [`relevant_vicinity_with`]. The result does not
/// depend on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Traversal {
    DepthFirst,
    BreadthFirst,
}

/// Result of a relevant-vicinity exploration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Vicinity {
    pub center: usize,
    /// Members, ascending by id.
    pub members: Vec<usize>,
    /// Edges with at least one endpoint in `members`, as `(min, max)`, sorted.
    pub adjacent_edges: Vec<(usize, usize)>,
    pub t_v: usize,
    pub t_e: usize,
    pub queries: u64,
    /// Distinct ids whose level was evaluated (members and their neighbors).
    pub hash_evaluations: usize,
}

impl Vicinity {
    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }
}

/// Relevant vicinity of `v` by depth-first worklist search.
pub fn relevant_vicinity<A: Adjacency + ?Sized>(
    oracle: &mut Oracle<'_, A>,
    rf: &RankingFunction,
    v: usize,
    budget: usize,
) -> Result<Vicinity> {
    let mut cache = LevelCache::new(rf);
    explore(oracle, &mut cache, v, budget, Traversal::DepthFirst)
}

pub fn relevant_vicinity_with<A: Adjacency + ?Sized>(
    oracle: &mut Oracle<'_, A>,
    rf: &RankingFunction,
    v: usize,
    budget: usize,
    traversal: Traversal,
) -> Result<Vicinity> {
    let mut cache = LevelCache::new(rf);
    explore(oracle, &mut cache, v, budget, traversal)
}

/// Exploration with a caller-owned level cache, so callers can inspect the
/// hash queries afterwards.
pub fn explore<A: Adjacency + ?Sized>(
    oracle: &mut Oracle<'_, A>,
    cache: &mut LevelCache<'_>,
    v: usize,
    budget: usize,
    traversal: Traversal,
) -> Result<Vicinity> {
    let start_queries = oracle.queries();
    let mut members: HashSet<usize> = HashSet::from([v]);
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut work = VecDeque::from([v]);
    // validate v before touching the cache
    let first = oracle.neighbors(v)?;
    let mut pending = Some(first);

    while let Some(u) = match traversal {
        Traversal::DepthFirst => work.pop_back(),
        Traversal::BreadthFirst => work.pop_front(),
    } {
        let nbrs = match pending.take() {
            Some(list) => list,
            None => oracle.neighbors(u)?,
        };
        let rank_u = cache.rank(u);
        for &w in nbrs.iter() {
            edges.insert((u.min(w), u.max(w)));
            if cache.rank(w) < rank_u && members.insert(w) {
                if members.len() > budget {
                    return Err(Error::BudgetExceeded { center: v, budget });
                }
                work.push_back(w);
            }
        }
    }

    let mut members: Vec<usize> = members.into_iter().collect();
    members.sort_unstable();
    Ok(Vicinity {
        center: v,
        t_v: members.len(),
        t_e: edges.len(),
        members,
        adjacent_edges: edges.into_iter().collect(),
        queries: oracle.queries() - start_queries,
        hash_evaluations: cache.evaluations(),
    })
}
