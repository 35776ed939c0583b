//! Minimum cycle mean of digraphs with nonnegative integer weights.
//!
//! Exact values come from Karp's algorithm, from min-plus powering of the
//! weight matrix with rational recovery, or from brute-force cycle
//! enumeration. The approximate engine powers the weight matrix with
//! approximate min-plus products and returns `mu_hat(x)` with
//! `mu(x) <= mu_hat(x) <= (1 + eps) mu(x)` for every vertex.
//!
//! ```
//! use mcm_core::{engine, graph::Graph, rational::Rational};
//!
//! let g = Graph::from_one_based(2, &[(1, 2, 1), (2, 1, 2)]).unwrap();
//! assert_eq!(engine::karp_mcm(&g).global, Rational::new(3, 2).unwrap());
//! ```

pub mod cli;
pub mod engine;
pub mod graph;
pub mod io;
pub mod minplus;
pub mod rational;

pub use engine::{McmError, McmResult, Mode};
pub use graph::Graph;
pub use rational::Rational;
