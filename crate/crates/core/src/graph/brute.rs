use crate::rational::Rational;

use super::{Graph, GraphError};

pub const DEFAULT_BRUTE_FORCE_MAX_N: usize = 12;

/// Minimum cycle means obtained by enumerating every simple cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceMcm {
    pub per_vertex: Vec<Rational>,
    pub global: Rational,
    pub cycles_enumerated: usize,
}

/// Testing oracle: enumerates all simple cycles and takes, for each vertex,
/// the best mean among cycles it can reach.
///
/// Parallel edges are collapsed to their lightest copy first; a simple cycle
/// through a heavier copy can never be the minimum.
pub fn brute_force_mcm(g: &Graph, max_n: usize) -> Result<BruteForceMcm, GraphError> {
    let n = g.n();
    if n > max_n {
        return Err(GraphError::GuardExceeded { n, max: max_n });
    }

    let mut lightest: Vec<Vec<Option<u64>>> = vec![vec![None; n]; n];
    for e in g.edges() {
        let slot = &mut lightest[e.source][e.target];
        *slot = Some(slot.map_or(e.weight, |w| w.min(e.weight)));
    }
    let adj: Vec<Vec<(usize, u64)>> = lightest
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter_map(|(v, w)| w.map(|w| (v, w)))
                .collect()
        })
        .collect();

    // best[v] = smallest mean over simple cycles through v
    let mut best: Vec<Option<Rational>> = vec![None; n];
    let mut cycles = 0usize;
    let mut on_path = vec![false; n];
    let mut path = Vec::with_capacity(n);

    // Each cycle is enumerated once, from its smallest vertex.
    for start in 0..n {
        on_path[start] = true;
        path.push(start);
        let mut frames: Vec<(usize, usize, u64)> = vec![(start, 0, 0)];
        while let Some(frame) = frames.last_mut() {
            let (v, pos, weight) = *frame;
            if pos == adj[v].len() {
                frames.pop();
                on_path[v] = false;
                path.pop();
                continue;
            }
            frame.1 += 1;
            let (next, w) = adj[v][pos];
            if next < start {
                continue;
            }
            if next == start {
                cycles += 1;
                let mean =
                    Rational::new(weight + w, path.len() as u64).expect("path length is positive");
                for &u in &path {
                    if best[u].is_none_or(|b| mean < b) {
                        best[u] = Some(mean);
                    }
                }
            } else if !on_path[next] {
                on_path[next] = true;
                path.push(next);
                frames.push((next, 0, weight + w));
            }
        }
    }

    let per_vertex: Vec<Rational> = (0..n)
        .map(|x| {
            g.reachable_from(x)
                .iter()
                .filter_map(|y| best[y])
                .min()
                .expect("every vertex reaches a cycle when outdegrees are positive")
        })
        .collect();
    let global = *per_vertex.iter().min().expect("n >= 1");
    Ok(BruteForceMcm {
        per_vertex,
        global,
        cycles_enumerated: cycles,
    })
}
