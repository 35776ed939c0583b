use std::cmp::Ordering;

use crate::graph::{strongly_connected_components, Graph};
use crate::rational::Rational;

use super::{McmResult, Mode};

/// Signed fraction with positive denominator, for the Karp quotients
/// `(D_N(v) - D_k(v)) / (N - k)` which may be negative.
#[derive(Debug, Clone, Copy)]
struct Quotient {
    num: i128,
    den: i128,
}

impl Quotient {
    fn cmp(self, other: Quotient) -> Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

/// Karp's dynamic program on one strongly connected component.
///
/// `adj` holds the component's internal edges as `(source, target, weight)`
/// in local numbering. Returns `None` for a single vertex without a self-loop.
fn component_mean(size: usize, adj: &[(usize, usize, u64)]) -> Option<Rational> {
    if adj.is_empty() {
        return None;
    }
    // dist[k][v]: lightest k-edge walk from local vertex 0 to v
    let mut dist: Vec<Vec<Option<u64>>> = vec![vec![None; size]; size + 1];
    dist[0][0] = Some(0);
    for k in 1..=size {
        let (done, rest) = dist.split_at_mut(k);
        let prev = &done[k - 1];
        let cur = &mut rest[0];
        for &(u, v, w) in adj {
            if let Some(d) = prev[u] {
                let cand = d + w;
                if cur[v].is_none_or(|c| cand < c) {
                    cur[v] = Some(cand);
                }
            }
        }
    }

    let mut best: Option<Quotient> = None;
    for (v, &last) in dist[size].iter().enumerate() {
        let Some(dn) = last else { continue };
        let worst = (0..size)
            .filter_map(|k| {
                dist[k][v].map(|dk| Quotient {
                    num: dn as i128 - dk as i128,
                    den: (size - k) as i128,
                })
            })
            .max_by(|a, b| a.cmp(*b));
        if let Some(q) = worst {
            if best.is_none_or(|b| q.cmp(b) == Ordering::Less) {
                best = Some(q);
            }
        }
    }
    let q = best.expect("a strongly connected component with an edge has a cycle");
    assert!(
        q.num >= 0,
        "cycle mean with nonnegative weights is nonnegative"
    );
    Some(Rational::from_u128(q.num as u128, q.den as u128).expect("mean of u64 weights fits"))
}

/// Exact `mu(x)` for every vertex via Karp's algorithm on each SCC, then
/// minimum over SCCs reachable in the condensation.
pub fn karp_mcm(g: &Graph) -> McmResult {
    let cond = strongly_connected_components(g);
    let mut local = vec![0usize; g.n()];
    for comp in cond.components() {
        for (i, &v) in comp.iter().enumerate() {
            local[v] = i;
        }
    }
    let mut internal: Vec<Vec<(usize, usize, u64)>> = vec![Vec::new(); cond.len()];
    for e in g.edges() {
        let c = cond.component_of(e.source);
        if c == cond.component_of(e.target) {
            internal[c].push((local[e.source], local[e.target], e.weight));
        }
    }

    let own: Vec<Option<Rational>> = cond
        .components()
        .iter()
        .zip(&internal)
        .map(|(comp, adj)| component_mean(comp.len(), adj))
        .collect();

    // sinks first, so successors are final before their predecessors
    let mut reach: Vec<Option<Rational>> = own.clone();
    for &c in cond.topological_order().iter().rev() {
        for &s in cond.successors(c) {
            if let Some(ms) = reach[s] {
                if reach[c].is_none_or(|mc| ms < mc) {
                    reach[c] = Some(ms);
                }
            }
        }
    }

    let per_vertex = (0..g.n())
        .map(|v| {
            reach[cond.component_of(v)]
                .expect("every vertex reaches a cycle when outdegrees are positive")
        })
        .collect();
    McmResult::exact(Mode::Karp, per_vertex)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: u64, d: u64) -> Rational {
        Rational::new(p, d).unwrap()
    }

    fn karp(n: usize, edges: &[(i64, i64, i64)]) -> Vec<Rational> {
        karp_mcm(&Graph::from_one_based(n, edges).unwrap()).per_vertex
    }

    #[test]
    fn triangle() {
        assert_eq!(
            karp(3, &[(1, 2, 1), (2, 3, 2), (3, 1, 3)]),
            vec![q(2, 1); 3]
        );
    }

    #[test]
    fn zero_two_cycle() {
        assert_eq!(karp(2, &[(1, 2, 0), (2, 1, 0)]), vec![Rational::ZERO; 2]);
    }

    #[test]
    fn picks_cheaper_inner_cycle() {
        // SCC {1,2,3}: cycles 1-2-1 (mean 5/2) and 2-3-2 (mean 1)
        assert_eq!(
            karp(3, &[(1, 2, 4), (2, 1, 1), (2, 3, 1), (3, 2, 1)]),
            vec![q(1, 1); 3]
        );
    }

    #[test]
    fn propagates_through_condensation() {
        // 1 -> {2,3} (mean 3/2) -> 4 (self-loop 1); 5 self-loop 0 is isolated
        let r = karp(
            5,
            &[
                (1, 2, 9),
                (2, 3, 1),
                (3, 2, 2),
                (3, 4, 0),
                (4, 4, 1),
                (5, 5, 0),
            ],
        );
        assert_eq!(r, vec![q(1, 1), q(1, 1), q(1, 1), q(1, 1), Rational::ZERO]);
        let r = karp(4, &[(1, 2, 9), (2, 3, 1), (3, 2, 2), (4, 3, 0), (4, 4, 7)]);
        assert_eq!(r, vec![q(3, 2); 4]);
    }

    #[test]
    fn global_is_minimum() {
        let g = Graph::from_one_based(3, &[(1, 1, 4), (2, 2, 2), (3, 3, 3)]).unwrap();
        assert_eq!(karp_mcm(&g).global, q(2, 1));
    }
}
