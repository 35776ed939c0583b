use std::cmp::Reverse;
use std::collections::BTreeSet;
use std::collections::BinaryHeap;

use super::Graph;

/// Strongly connected components of a graph together with the DAG obtained
/// by contracting them.
///
/// Components are numbered by their smallest vertex, so component `0` always
/// contains vertex `0` and the numbering does not depend on edge order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condensation {
    components: Vec<Vec<usize>>,
    component_of: Vec<usize>,
    successors: Vec<Vec<usize>>,
    topological: Vec<usize>,
}

impl Condensation {
    /// Vertex lists, each sorted ascending.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.component_of[v]
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Condensation edges out of component `c`, sorted, without self-edges.
    pub fn successors(&self, c: usize) -> &[usize] {
        &self.successors[c]
    }

    /// Components ordered so that every condensation edge goes forward.
    /// Ties are broken by component index.
    pub fn topological_order(&self) -> &[usize] {
        &self.topological
    }
}

/// Tarjan's algorithm, iterative. Components come out in reverse
/// topological order (sinks first); vertices inside a component are unsorted.
pub fn tarjan_components(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    const UNVISITED: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut next_index = 0;
    // (vertex, position in its adjacency list)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos < adj[v].len() {
                let w = adj[v][*pos];
                *pos += 1;
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                out.push(comp);
            }
        }
    }
    out
}

pub fn strongly_connected_components(g: &Graph) -> Condensation {
    let n = g.n();
    let mut components = tarjan_components(&g.successors());
    for comp in &mut components {
        comp.sort_unstable();
    }
    components.sort_unstable_by_key(|c| c[0]);

    let mut component_of = vec![0; n];
    for (c, comp) in components.iter().enumerate() {
        for &v in comp {
            component_of[v] = c;
        }
    }

    let k = components.len();
    let mut succ_sets = vec![BTreeSet::new(); k];
    for e in g.edges() {
        let (a, b) = (component_of[e.source], component_of[e.target]);
        if a != b {
            succ_sets[a].insert(b);
        }
    }
    let successors: Vec<Vec<usize>> = succ_sets
        .into_iter()
        .map(|s| s.into_iter().collect())
        .collect();

    // Kahn with a min-heap keeps the order independent of edge order.
    let mut indegree = vec![0usize; k];
    for succ in &successors {
        for &b in succ {
            indegree[b] += 1;
        }
    }
    let mut ready: BinaryHeap<Reverse<usize>> =
        (0..k).filter(|&c| indegree[c] == 0).map(Reverse).collect();
    let mut topological = Vec::with_capacity(k);
    while let Some(Reverse(c)) = ready.pop() {
        topological.push(c);
        for &b in &successors[c] {
            indegree[b] -= 1;
            if indegree[b] == 0 {
                ready.push(Reverse(b));
            }
        }
    }
    debug_assert_eq!(topological.len(), k, "condensation must be acyclic");

    Condensation {
        components,
        component_of,
        successors,
        topological,
    }
}
