use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Edge, Graph, GraphError};

use super::format::emit_graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("need m >= n so every vertex gets an outgoing edge (n = {n}, m = {m})")]
    TooFewEdges { n: usize, m: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Random graph with exactly `m` edges: vertex `i` first gets one outgoing
/// edge, the remaining `m - n` edges have uniform endpoints. Self-loops and
/// parallel edges may occur. Weights are uniform on `[0, max_weight]`.
/// Deterministic for a fixed seed.
pub fn generate_graph(
    n: usize,
    m: usize,
    max_weight: u64,
    seed: u64,
) -> Result<Graph, GenerateError> {
    if n == 0 {
        return Err(GraphError::Empty.into());
    }
    if m < n {
        return Err(GenerateError::TooFewEdges { n, m });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(m);
    for source in 0..n {
        edges.push(Edge {
            source,
            target: rng.gen_range(0..n),
            weight: rng.gen_range(0..=max_weight),
        });
    }
    for _ in n..m {
        edges.push(Edge {
            source: rng.gen_range(0..n),
            target: rng.gen_range(0..n),
            weight: rng.gen_range(0..=max_weight),
        });
    }
    Ok(Graph::new(n, edges)?)
}

/// [`generate_graph`] rendered in the text format, with a provenance comment.
pub fn generate_graph_file(
    n: usize,
    m: usize,
    max_weight: u64,
    seed: u64,
) -> Result<String, GenerateError> {
    let g = generate_graph(n, m, max_weight, seed)?;
    Ok(emit_graph(
        &g,
        &[format!("random n={n} m={m} W={max_weight} seed={seed}")],
    ))
}
