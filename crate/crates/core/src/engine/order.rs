//! Elimination-order heuristics over the interaction graph.
//!
//! Variables are adjacent when they co-occur in some basic valuation's
//! scope. Both heuristics simulate the elimination: removing a variable
//! connects its remaining neighbors. Ties break on the lower variable id,
//! so orders are deterministic.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::index_set::IndexSet;
use crate::vars::{VarId, VarTable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Heuristic {
    /// Fewest current neighbors first.
    MinDegree,
    /// Fewest fill edges first.
    MinFill,
    /// A caller-supplied order.
    Given(Vec<VarId>),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrderError {
    #[error("explicit order mentions `{0}` twice")]
    Duplicate(String),
    #[error("explicit order must not contain the query variable `{0}`")]
    ContainsQuery(String),
    #[error("explicit order is missing `{0}`")]
    Missing(String),
}

struct Graph {
    adj: Vec<BTreeSet<usize>>,
}

impl Graph {
    fn new(n: usize, scopes: impl Iterator<Item = IndexSet>) -> Self {
        let mut adj = vec![BTreeSet::new(); n];
        for scope in scopes {
            let vars: Vec<usize> = scope.iter().map(|v| v.index()).collect();
            for (i, a) in vars.iter().enumerate() {
                for b in &vars[i + 1..] {
                    adj[*a].insert(*b);
                    adj[*b].insert(*a);
                }
            }
        }
        Self { adj }
    }

    fn eliminate(&mut self, v: usize) {
        let neighbors: Vec<usize> = self.adj[v].iter().copied().collect();
        for (i, a) in neighbors.iter().enumerate() {
            for b in &neighbors[i + 1..] {
                self.adj[*a].insert(*b);
                self.adj[*b].insert(*a);
            }
        }
        for n in &neighbors {
            self.adj[*n].remove(&v);
        }
        self.adj[v].clear();
    }

    fn fill_count(&self, v: usize) -> usize {
        let neighbors: Vec<usize> = self.adj[v].iter().copied().collect();
        let mut fill = 0;
        for (i, a) in neighbors.iter().enumerate() {
            for b in &neighbors[i + 1..] {
                if !self.adj[*a].contains(b) {
                    fill += 1;
                }
            }
        }
        fill
    }
}

/// A deletion order covering every declared variable except the query.
pub fn choose_order(
    vars: &VarTable,
    scopes: impl Iterator<Item = IndexSet>,
    query: VarId,
    heuristic: &Heuristic,
) -> Result<Vec<VarId>, OrderError> {
    let n = vars.len();
    if let Heuristic::Given(order) = heuristic {
        let mut seen = BTreeSet::new();
        for v in order {
            if *v == query {
                return Err(OrderError::ContainsQuery(vars.name(query).to_owned()));
            }
            if !seen.insert(*v) {
                return Err(OrderError::Duplicate(vars.name(*v).to_owned()));
            }
        }
        for v in vars.ids() {
            if v != query && !seen.contains(&v) {
                return Err(OrderError::Missing(vars.name(v).to_owned()));
            }
        }
        return Ok(order.clone());
    }

    let mut graph = Graph::new(n, scopes);
    let mut pending: BTreeSet<usize> = (0..n).filter(|i| *i != query.index()).collect();
    let mut order = Vec::with_capacity(pending.len());
    while !pending.is_empty() {
        let best = pending
            .iter()
            .copied()
            .min_by_key(|v| match heuristic {
                Heuristic::MinDegree => (graph.adj[*v].len(), *v),
                Heuristic::MinFill => (graph.fill_count(*v), *v),
                Heuristic::Given(_) => unreachable!(),
            })
            .unwrap();
        graph.eliminate(best);
        pending.remove(&best);
        order.push(VarId(best as u32));
    }
    Ok(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(names: &[&str]) -> VarTable {
        let mut t = VarTable::new();
        for n in names {
            t.declare(n).unwrap();
        }
        t
    }

    fn scope(ids: &[u32]) -> IndexSet {
        IndexSet::from_iter(ids.iter().map(|i| VarId(*i)))
    }

    #[test]
    fn min_degree_peels_leaves_of_a_star() {
        // hub 0 connected to 1, 2, 3; query is 3.
        let vars = table(&["h", "a", "b", "q"]);
        let scopes = vec![scope(&[0, 1]), scope(&[0, 2]), scope(&[0, 3])];
        let order =
            choose_order(&vars, scopes.into_iter(), VarId(3), &Heuristic::MinDegree).unwrap();
        // Leaves (degree 1) come before the hub.
        assert_eq!(order, vec![VarId(1), VarId(2), VarId(0)]);
    }

    #[test]
    fn min_fill_and_min_degree_can_disagree() {
        // Clique {0,1,2,3} plus variable 4 adjacent to 0 and 1. Vertex 4
        // has the lowest degree but eliminating it is not fill-free for
        // ids below 2, while clique members 2 and 3 have zero fill.
        let vars = table(&["a", "b", "c", "d", "e", "q"]);
        let scopes = vec![scope(&[0, 1, 2, 3]), scope(&[0, 4]), scope(&[1, 4])];
        let fill =
            choose_order(&vars, scopes.clone().into_iter(), VarId(5), &Heuristic::MinFill)
                .unwrap();
        assert_eq!(fill[0], VarId(2));
        let degree =
            choose_order(&vars, scopes.into_iter(), VarId(5), &Heuristic::MinDegree).unwrap();
        assert_eq!(degree[0], VarId(4));
    }

    #[test]
    fn explicit_order_is_validated() {
        let vars = table(&["a", "b", "q"]);
        let q = VarId(2);
        let ok = Heuristic::Given(vec![VarId(1), VarId(0)]);
        assert_eq!(
            choose_order(&vars, std::iter::empty(), q, &ok).unwrap(),
            vec![VarId(1), VarId(0)]
        );
        let dup = Heuristic::Given(vec![VarId(0), VarId(0)]);
        assert!(matches!(
            choose_order(&vars, std::iter::empty(), q, &dup),
            Err(OrderError::Duplicate(_))
        ));
        let missing = Heuristic::Given(vec![VarId(0)]);
        assert!(matches!(
            choose_order(&vars, std::iter::empty(), q, &missing),
            Err(OrderError::Missing(_))
        ));
        let with_query = Heuristic::Given(vec![VarId(0), VarId(1), q]);
        assert!(matches!(
            choose_order(&vars, std::iter::empty(), q, &with_query),
            Err(OrderError::ContainsQuery(_))
        ));
    }
}
