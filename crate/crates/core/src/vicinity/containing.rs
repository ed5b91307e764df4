use std::borrow::Cow;
use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::LevelCache;
use crate::error::{Error, Result};
use crate::graph::{Adjacency, Oracle};
use crate::ordering::RankingFunction;

/// The iterated levelhood of `{v}`, sweeping from `l = level(v)` toward the
/// levels that precede `v` in the ranking:
/// `Psi_1(Psi_2(...Psi_{l-1}(Psi_l({v}))))`.
///
/// A relevant-vicinity member is reached from `v` by a path whose levels never
/// increase, and every such path stays inside this set, so it bounds the
/// relevant vicinity from above whatever the ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContainingVicinity {
    pub center: usize,
    /// Final set `S_1`, ascending.
    pub members: Vec<usize>,
    /// Sizes in sweep order: `|S_l|, |S_{l-1}|, ..., |S_1|`.
    pub level_sizes: Vec<usize>,
    pub queries: u64,
    /// Distinct ids hashed: the members and all their neighbors.
    pub hashed: Vec<usize>,
    /// Per-level counts of the hashed ids (index `l - 1`).
    pub hashed_level_counts: Vec<usize>,
}

/// Neighbor lists fetched once each and reused across levelhoods.
struct Fetched<'o, 'g, A: Adjacency + ?Sized> {
    oracle: &'o mut Oracle<'g, A>,
    lists: HashMap<usize, Cow<'g, [usize]>>,
}

impl<'g, A: Adjacency + ?Sized> Fetched<'_, 'g, A> {
    fn get(&mut self, u: usize) -> Result<&[usize]> {
        if !self.lists.contains_key(&u) {
            let list = self.oracle.neighbors(u)?;
            self.lists.insert(u, list);
        }
        Ok(&self.lists[&u])
    }
}

/// The `level`-th levelhood of `base`: `base` closed under adding neighbors
/// whose level is exactly `level`.
pub fn levelhood<A: Adjacency + ?Sized>(
    oracle: &mut Oracle<'_, A>,
    rf: &RankingFunction,
    base: &BTreeSet<usize>,
    level: u32,
) -> Result<BTreeSet<usize>> {
    let mut cache = LevelCache::new(rf);
    let mut fetched = Fetched {
        oracle,
        lists: HashMap::new(),
    };
    close_level(&mut fetched, &mut cache, base.clone(), level, usize::MAX, 0)
}

fn close_level<A: Adjacency + ?Sized>(
    fetched: &mut Fetched<'_, '_, A>,
    cache: &mut LevelCache<'_>,
    mut set: BTreeSet<usize>,
    level: u32,
    budget: usize,
    center: usize,
) -> Result<BTreeSet<usize>> {
    let mut work: Vec<usize> = set.iter().copied().collect();
    while let Some(u) = work.pop() {
        let nbrs = fetched.get(u)?.to_vec();
        for w in nbrs {
            if cache.level(w) == level && set.insert(w) {
                if set.len() > budget {
                    return Err(Error::BudgetExceeded { center, budget });
                }
                work.push(w);
            }
        }
    }
    Ok(set)
}

pub fn containing_vicinity<A: Adjacency + ?Sized>(
    oracle: &mut Oracle<'_, A>,
    rf: &RankingFunction,
    v: usize,
    budget: usize,
) -> Result<ContainingVicinity> {
    let start_queries = oracle.queries();
    let mut cache = LevelCache::new(rf);
    let mut fetched = Fetched {
        oracle,
        lists: HashMap::new(),
    };
    fetched.get(v)?;
    let start = cache.level(v);
    let mut set = BTreeSet::from([v]);
    let mut level_sizes = Vec::new();
    for level in (1..=start).rev() {
        set = close_level(&mut fetched, &mut cache, set, level, budget, v)?;
        level_sizes.push(set.len());
    }
    // the last closure never fetched the lists of vertices it did not add;
    // make sure every member's neighbors are hashed
    for &u in &set {
        for &w in fetched.get(u)?.to_vec().iter() {
            cache.level(w);
        }
    }
    Ok(ContainingVicinity {
        center: v,
        members: set.into_iter().collect(),
        level_sizes,
        queries: fetched.oracle.queries() - start_queries,
        hashed: cache.hashed_ids(),
        hashed_level_counts: cache.level_counts(),
    })
}
