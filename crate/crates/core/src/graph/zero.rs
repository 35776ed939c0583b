use super::{strongly_connected_components, tarjan_components, Graph, VertexSet};

/// All vertices `x` with `mu(x) = 0`, in `O(n + m)`.
///
/// With nonnegative weights a cycle has mean zero exactly when every edge on
/// it weighs zero. Each SCC is checked for a cycle in its zero-weight
/// subgraph (a zero self-loop or a zero-subgraph SCC with two or more
/// vertices); the answer is everything that can reach such a component.
pub fn zero_mean_vertices(g: &Graph) -> VertexSet {
    let n = g.n();
    let cond = strongly_connected_components(g);

    // Zero-weight edges that stay inside one SCC of g, in local numbering.
    let mut local = vec![0usize; n];
    for comp in cond.components() {
        for (i, &v) in comp.iter().enumerate() {
            local[v] = i;
        }
    }
    let mut zero_adj: Vec<Vec<Vec<usize>>> = cond
        .components()
        .iter()
        .map(|c| vec![Vec::new(); c.len()])
        .collect();
    let mut has_zero_cycle = vec![false; cond.len()];
    for e in g.edges().iter().filter(|e| e.weight == 0) {
        let c = cond.component_of(e.source);
        if c != cond.component_of(e.target) {
            continue;
        }
        if e.source == e.target {
            has_zero_cycle[c] = true;
        } else {
            zero_adj[c][local[e.source]].push(local[e.target]);
        }
    }
    for (c, adj) in zero_adj.iter().enumerate() {
        if !has_zero_cycle[c] && tarjan_components(adj).iter().any(|s| s.len() >= 2) {
            has_zero_cycle[c] = true;
        }
    }

    let mut result = VertexSet::empty(n);
    let mut stack = Vec::new();
    for (c, comp) in cond.components().iter().enumerate() {
        if has_zero_cycle[c] {
            for &v in comp {
                result.insert(v);
                stack.push(v);
            }
        }
    }
    let preds = g.predecessors();
    while let Some(v) = stack.pop() {
        for &u in &preds[v] {
            if result.insert(u) {
                stack.push(u);
            }
        }
    }
    result
}
