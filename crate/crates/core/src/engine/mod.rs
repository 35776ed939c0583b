//! Minimum cycle mean engines.
//!
//! * [`karp_mcm`]: exact, `O(nm)`, per strongly connected component.
//! * [`exact_mcm_via_power`]: exact, from `W^t` with `t = 4 n^3 W` and
//!   rational recovery. Desk-scale only.
//! * [`approx_mcm`]: `(1 + eps)`-approximation through approximate powering.
//! * brute force over simple cycles, re-exported from [`crate::graph`].
//!
//! [`delta_oracle`] is plain value iteration and exists for cross-checking.

mod approx;
mod karp;
mod power;

pub use approx::{approx_mcm, approx_mcm_with, approx_t};
pub use karp::karp_mcm;
pub use power::{exact_mcm_via_power, power_horizon, rational_in_interval};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{brute_force_mcm, Graph, GraphError, DEFAULT_BRUTE_FORCE_MAX_N};
use crate::minplus::{ExtWeight, MatrixError, ScaledKernel, SquareMatrix};
use crate::rational::{Rational, RationalError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum McmError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Rational(#[from] RationalError),
    #[error("{engine} guard exceeded: {detail}")]
    GuardExceeded {
        engine: &'static str,
        detail: String,
    },
    #[error("path length t must be at least 1")]
    ZeroLength,
    #[error("overflow computing path weights of length {t}")]
    Overflow { t: u64 },
    #[error("internal error: rational recovery for vertex {} found {found} candidates", .vertex + 1)]
    Recovery { vertex: usize, found: usize },
    #[error("no rational with denominator <= {max_den} in ({lo}, {hi})")]
    NoCandidate {
        lo: String,
        hi: String,
        max_den: u64,
    },
    #[error("more than one rational with denominator <= {max_den} in ({lo}, {hi})")]
    AmbiguousCandidate {
        lo: String,
        hi: String,
        max_den: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Karp,
    ExactPower,
    Approx,
    Brute,
}

impl Mode {
    pub fn is_exact(self) -> bool {
        !matches!(self, Mode::Approx)
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Karp => "karp",
            Mode::ExactPower => "exact-power",
            Mode::Approx => "approx",
            Mode::Brute => "brute",
        })
    }
}

/// Size limits for the engines that are only meant for small inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guards {
    pub brute_max_n: usize,
    pub power_max_n: usize,
    pub power_max_weight: u64,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            brute_max_n: DEFAULT_BRUTE_FORCE_MAX_N,
            power_max_n: 8,
            power_max_weight: 8,
        }
    }
}

/// Parameters used by the approximation pipeline, echoed in results.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxDetails {
    pub epsilon: Rational,
    /// `epsilon / 7`, the accuracy requested from the powering loop.
    pub epsilon_inner: Rational,
    /// `None` when the pipeline short-circuits on `W = 0`.
    pub t: Option<u64>,
    pub precision: Option<u64>,
    /// Row minima of the approximate power; `None` for zero-mean vertices,
    /// which are answered exactly.
    pub delta_hat: Vec<Option<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McmResult {
    pub mode: Mode,
    /// `mu(x)` (exact modes) or `mu_hat(x)` (approximate mode), 0-based.
    pub per_vertex: Vec<Rational>,
    pub global: Rational,
    pub approx: Option<ApproxDetails>,
}

impl McmResult {
    pub(crate) fn exact(mode: Mode, per_vertex: Vec<Rational>) -> Self {
        let global = *per_vertex
            .iter()
            .min()
            .expect("graphs have at least one vertex");
        McmResult {
            mode,
            per_vertex,
            global,
            approx: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOptions {
    pub epsilon: Rational,
    pub guards: Guards,
    pub kernel: ScaledKernel,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            epsilon: Rational::new(1, 10).expect("constant"),
            guards: Guards::default(),
            kernel: ScaledKernel::default(),
        }
    }
}

/// Dispatches to the engine for `mode`.
pub fn solve(g: &Graph, mode: Mode, opts: &SolveOptions) -> Result<McmResult, McmError> {
    match mode {
        Mode::Karp => Ok(karp_mcm(g)),
        Mode::ExactPower => exact_mcm_via_power(g, &opts.guards),
        Mode::Approx => approx_mcm_with(g, opts.epsilon, opts.kernel),
        Mode::Brute => {
            let r = brute_force_mcm(g, opts.guards.brute_max_n)?;
            Ok(McmResult::exact(Mode::Brute, r.per_vertex))
        }
    }
}

/// `delta_t(x)`: minimum weight of a walk with exactly `t` edges starting at
/// `x`, by `t` rounds of relaxation in `O(mt)`.
pub fn delta_oracle(g: &Graph, t: u64) -> Result<Vec<u64>, McmError> {
    if t == 0 {
        return Err(McmError::ZeroLength);
    }
    let mut current = vec![0u64; g.n()];
    let mut next = vec![u64::MAX; g.n()];
    for _ in 0..t {
        next.fill(u64::MAX);
        for e in g.edges() {
            let cand = current[e.target]
                .checked_add(e.weight)
                .ok_or(McmError::Overflow { t })?;
            if cand < next[e.source] {
                next[e.source] = cand;
            }
        }
        std::mem::swap(&mut current, &mut next);
    }
    Ok(current)
}

/// Row minima of a (possibly approximate) power of the weight matrix.
pub fn delta_from_power(power: &SquareMatrix) -> Vec<ExtWeight> {
    power
        .rows()
        .map(|row| row.iter().copied().min().unwrap_or(ExtWeight::Infinite))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minplus::minplus_power;

    fn two_cycle() -> Graph {
        Graph::from_one_based(2, &[(1, 2, 1), (2, 1, 2)]).unwrap()
    }

    #[test]
    fn delta_of_two_cycle() {
        assert_eq!(delta_oracle(&two_cycle(), 4).unwrap()[0], 6);
        assert_eq!(delta_oracle(&two_cycle(), 0), Err(McmError::ZeroLength));
    }

    #[test]
    fn delta_one_is_min_outgoing_weight() {
        let g = Graph::from_one_based(2, &[(1, 2, 4), (1, 1, 3), (2, 1, 9)]).unwrap();
        assert_eq!(delta_oracle(&g, 1).unwrap(), vec![3, 9]);
    }

    #[test]
    fn row_minima() {
        let m = SquareMatrix::from_rows(vec![
            vec![ExtWeight::Finite(3), ExtWeight::Infinite],
            vec![ExtWeight::Infinite, ExtWeight::Infinite],
        ])
        .unwrap();
        assert_eq!(
            delta_from_power(&m),
            vec![ExtWeight::Finite(3), ExtWeight::Infinite]
        );
    }

    #[test]
    fn exact_power_row_minima_match_oracle() {
        let g = Graph::from_one_based(3, &[(1, 2, 5), (2, 3, 1), (3, 2, 2), (3, 1, 0)]).unwrap();
        for t in [1, 2, 5, 9] {
            let power = minplus_power(&SquareMatrix::weight_matrix(&g), t).unwrap();
            let rows: Vec<u64> = delta_from_power(&power)
                .into_iter()
                .map(|e| e.finite().unwrap())
                .collect();
            assert_eq!(rows, delta_oracle(&g, t).unwrap());
        }
    }

    #[test]
    fn solve_dispatch_agrees_on_two_cycle() {
        let opts = SolveOptions::default();
        let g = two_cycle();
        let three_halves = Rational::new(3, 2).unwrap();
        for mode in [Mode::Karp, Mode::ExactPower, Mode::Brute] {
            assert_eq!(solve(&g, mode, &opts).unwrap().global, three_halves);
        }
    }
}
