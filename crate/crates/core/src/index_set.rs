//! Scopes: ordered sets of variable identifiers.
//!
//! A scope is the set of variables a valuation is defined on. Scopes keep
//! their elements sorted, so equality is set equality and iteration order is
//! canonical. Value vectors elsewhere (tuples, clause assignments, vertex
//! coordinates) are aligned positionally with this order.

use crate::vars::VarId;
use std::fmt;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct IndexSet {
    ids: Vec<VarId>, // sorted, no duplicates
}

impl IndexSet {
    pub fn empty() -> Self {
        Self { ids: Vec::new() }
    }

    pub fn singleton(v: VarId) -> Self {
        Self { ids: vec![v] }
    }

    /// Builds a scope from arbitrary ids, sorting and deduplicating.
    pub fn from_iter(iter: impl IntoIterator<Item = VarId>) -> Self {
        let mut ids: Vec<VarId> = iter.into_iter().collect();
        ids.sort_unstable();
        ids.dedup();
        Self { ids }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, v: VarId) -> bool {
        self.ids.binary_search(&v).is_ok()
    }

    /// Position of `v` in the canonical order, for indexing aligned vectors.
    pub fn position(&self, v: VarId) -> Option<usize> {
        self.ids.binary_search(&v).ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = VarId> + '_ {
        self.ids.iter().copied()
    }

    pub fn as_slice(&self) -> &[VarId] {
        &self.ids
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.ids.iter().all(|v| other.contains(*v))
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        let mut ids = Vec::with_capacity(self.ids.len() + other.ids.len());
        let (mut i, mut j) = (0, 0);
        while i < self.ids.len() && j < other.ids.len() {
            match self.ids[i].cmp(&other.ids[j]) {
                std::cmp::Ordering::Less => {
                    ids.push(self.ids[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    ids.push(other.ids[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    ids.push(self.ids[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        ids.extend_from_slice(&self.ids[i..]);
        ids.extend_from_slice(&other.ids[j..]);
        IndexSet { ids }
    }

    pub fn intersection(&self, other: &IndexSet) -> IndexSet {
        IndexSet {
            ids: self.ids.iter().copied().filter(|v| other.contains(*v)).collect(),
        }
    }

    pub fn difference(&self, other: &IndexSet) -> IndexSet {
        IndexSet {
            ids: self.ids.iter().copied().filter(|v| !other.contains(*v)).collect(),
        }
    }

    pub fn without(&self, v: VarId) -> IndexSet {
        IndexSet {
            ids: self.ids.iter().copied().filter(|w| *w != v).collect(),
        }
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.ids.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{:?}", v)?;
        }
        write!(f, "}}")
    }
}
