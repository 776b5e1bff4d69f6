//! Undirected simple graphs and the brute-force dominating set oracle.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::error::{GraphError, SolveError};

/// Simple undirected graph on vertices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: BTreeSet::new(),
        }
    }

    /// Rejects loops, out-of-range endpoints and repeated edges.
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if !g.add_edge(u, v)? {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
        }
        Ok(g)
    }

    /// Adds `{u, v}`. Returns false if the edge was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        for x in [u, v] {
            if x == 0 || x > self.n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: x,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        Ok(self.edges.insert((u.min(v), u.max(v))))
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for (u, v) in (1..=n).tuple_combinations() {
            g.edges.insert((u, v));
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 1..n {
            g.edges.insert((u, u + 1));
        }
        g
    }

    /// Every labeled graph on `n` vertices, indexed by edge bitmask over the
    /// pairs in lexicographic order.
    pub fn all_labeled(n: usize) -> Vec<Graph> {
        let pairs: Vec<(usize, usize)> = (1..=n).tuple_combinations().collect();
        (0u64..1 << pairs.len())
            .map(|mask| Graph {
                n,
                edges: pairs
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect(),
            })
            .collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// Every vertex is in `set` or adjacent to a member of it.
    pub fn is_dominating(&self, set: &[usize]) -> bool {
        (1..=self.n).all(|v| set.iter().any(|&d| d == v || self.adjacent(d, v)))
    }
}

/// Smallest dominating set of size at most `k`, lexicographically least among
/// those of minimum size, found by exhaustive search in increasing size.
pub fn solve_dominating_set(h: &Graph, k: usize) -> Result<Option<Vec<usize>>, SolveError> {
    if k == 0 || k > h.n {
        return Err(SolveError::KOutOfRange { k, n: h.n });
    }
    for size in 1..=k {
        if let Some(set) = (1..=h.n).combinations(size).find(|c| h.is_dominating(c)) {
            return Ok(Some(set));
        }
    }
    Ok(None)
}
