//! Weighted digraphs with nonnegative integer weights.
//!
//! Vertices are 0-based here; the text format and CLI speak 1-based ids and
//! convert at the boundary.

mod brute;
mod scc;
mod zero;

pub use brute::{brute_force_mcm, BruteForceMcm, DEFAULT_BRUTE_FORCE_MAX_N};
pub use scc::{strongly_connected_components, tarjan_components, Condensation};
pub use zero::zero_mean_vertices;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("edge {index}: vertex id {vertex} out of range 1..={n}")]
    VertexOutOfRange { index: usize, vertex: i64, n: usize },
    #[error("edge {index}: negative weight {weight}")]
    NegativeWeight { index: usize, weight: i64 },
    #[error("vertex {} has no outgoing edge", .vertex + 1)]
    NoOutgoingEdge { vertex: usize },
    #[error("brute-force oracle limited to n <= {max}, got n = {n}")]
    GuardExceeded { n: usize, max: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub weight: u64,
}

/// A validated graph: every vertex has an outgoing edge and `max_weight` is
/// the exact maximum edge weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    max_weight: u64,
}

impl Graph {
    /// Validates a raw edge list given with 1-based vertex ids, as read from
    /// a file. Signed inputs let the caller report negative weights.
    pub fn from_one_based(n: usize, raw: &[(i64, i64, i64)]) -> Result<Graph, GraphError> {
        let mut edges = Vec::with_capacity(raw.len());
        for (index, &(u, v, w)) in raw.iter().enumerate() {
            for vertex in [u, v] {
                if vertex < 1 || vertex as u64 > n as u64 {
                    return Err(GraphError::VertexOutOfRange { index, vertex, n });
                }
            }
            if w < 0 {
                return Err(GraphError::NegativeWeight { index, weight: w });
            }
            edges.push(Edge {
                source: (u - 1) as usize,
                target: (v - 1) as usize,
                weight: w as u64,
            });
        }
        Graph::new(n, edges)
    }

    /// Validates a 0-based edge list.
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Graph, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut has_out = vec![false; n];
        for (index, e) in edges.iter().enumerate() {
            for vertex in [e.source, e.target] {
                if vertex >= n {
                    return Err(GraphError::VertexOutOfRange {
                        index,
                        vertex: vertex as i64 + 1,
                        n,
                    });
                }
            }
            has_out[e.source] = true;
        }
        if let Some(vertex) = has_out.iter().position(|&b| !b) {
            return Err(GraphError::NoOutgoingEdge { vertex });
        }
        let max_weight = edges.iter().map(|e| e.weight).max().unwrap_or(0);
        Ok(Graph {
            n,
            edges,
            max_weight,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// `W`, the largest edge weight.
    pub fn max_weight(&self) -> u64 {
        self.max_weight
    }

    pub fn successors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.source].push(e.target);
        }
        adj
    }

    pub fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.target].push(e.source);
        }
        adj
    }

    /// Reflexive-transitive reachability from `start`.
    pub fn reachable_from(&self, start: usize) -> VertexSet {
        let adj = self.successors();
        let mut seen = VertexSet::empty(self.n);
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if seen.insert(v) {
                    stack.push(v);
                }
            }
        }
        seen
    }
}

/// Membership bitmap over the vertices of one graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    members: Vec<bool>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            members: vec![false; n],
        }
    }

    pub fn from_members(n: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(n);
        for v in members {
            set.insert(v);
        }
        set
    }

    /// Returns true if `v` was newly inserted.
    pub fn insert(&mut self, v: usize) -> bool {
        !std::mem::replace(&mut self.members[v], true)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members[v]
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.members.iter().any(|&b| b)
    }

    pub fn universe(&self) -> usize {
        self.members.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter_map(|(v, &b)| b.then_some(v))
    }
}
