use std::borrow::Cow;

use super::{Adjacency, Graph};
use crate::error::{param_err, Result};

/// Counted neighbor-query access to an immutable structure.
///
/// One call to [`Oracle::neighbors`] is one query. The counter is the only
/// mutable state; the structure itself is never touched. An oracle serves a
/// single inquiry session, so concurrent inquiries each get their own.
#[derive(Debug)]
pub struct Oracle<'g, A: ?Sized> {
    structure: &'g A,
    queries: u64,
}

/// Oracle over the vertices of a [`Graph`].
pub type GraphOracle<'g> = Oracle<'g, Graph>;

impl<'g, A: Adjacency + ?Sized> Oracle<'g, A> {
    pub fn new(structure: &'g A) -> Self {
        Self {
            structure,
            queries: 0,
        }
    }

    /// Fetches the neighbor list of `x` and counts one query.
    pub fn neighbors(&mut self, x: usize) -> Result<Cow<'g, [usize]>> {
        if x >= self.structure.len() {
            return param_err(format!(
                "id {x} out of range (structure has {} items)",
                self.structure.len()
            ));
        }
        self.queries += 1;
        let structure: &'g A = self.structure;
        Ok(structure.neighbors(x))
    }

    /// Queries made since construction or the last [`Oracle::reset`].
    pub fn queries(&self) -> u64 {
        self.queries
    }

    /// Starts a new session.
    pub fn reset(&mut self) {
        self.queries = 0;
    }

    pub fn len(&self) -> usize {
        self.structure.len()
    }

    pub fn is_empty(&self) -> bool {
        self.structure.len() == 0
    }

    pub fn structure(&self) -> &'g A {
        self.structure
    }
}
