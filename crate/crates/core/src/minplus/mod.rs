//! Min-plus (tropical) matrix algebra over nonnegative integers extended with
//! infinity.

mod approx;
mod encoding;

pub use approx::{
    approx_minplus, approx_minplus_with, approx_power, approx_power_traced, approx_power_with,
    ApproxParams, ApproxPowerTrace, ScaledKernel,
};
pub use encoding::{small_entry_minplus, MAX_ENCODED_BITS};

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::Graph;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("finite entry overflow while adding {a} + {b}")]
    Overflow { a: u64, b: u64 },
    #[error("entry {value} at ({row}, {col}) exceeds bound {bound}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: u64,
        bound: u64,
    },
    #[error("R = {r} must be a power of two with R >= log2(n) for n = {n}")]
    InvalidR { r: u64, n: usize },
    #[error("power must be at least 1")]
    ZeroPower,
    #[error("t = {0} is not a power of two")]
    NotPowerOfTwo(u64),
    #[error("epsilon = {0} must lie in (0, 1]")]
    EpsilonOutOfRange(Rational),
    #[error("sizing: {0}")]
    Sizing(String),
}

/// A nonnegative integer or `+inf`, the additive identity of the min-plus
/// semiring. The derived order puts every finite value below `Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtWeight {
    Finite(u64),
    Infinite,
}

impl ExtWeight {
    pub const ZERO: ExtWeight = ExtWeight::Finite(0);

    pub fn is_finite(self) -> bool {
        matches!(self, ExtWeight::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            ExtWeight::Finite(v) => Some(v),
            ExtWeight::Infinite => None,
        }
    }

    /// Tropical multiplication. Finite overflow is an error, never a wrap.
    pub fn checked_add(self, other: ExtWeight) -> Result<ExtWeight, MatrixError> {
        match (self, other) {
            (ExtWeight::Finite(a), ExtWeight::Finite(b)) => a
                .checked_add(b)
                .map(ExtWeight::Finite)
                .ok_or(MatrixError::Overflow { a, b }),
            _ => Ok(ExtWeight::Infinite),
        }
    }
}

impl From<u64> for ExtWeight {
    fn from(v: u64) -> Self {
        ExtWeight::Finite(v)
    }
}

impl fmt::Display for ExtWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtWeight::Finite(v) => write!(f, "{v}"),
            ExtWeight::Infinite => f.write_str("inf"),
        }
    }
}

/// Dense row-major `n x n` matrix of [`ExtWeight`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SquareMatrix {
    n: usize,
    entries: Vec<ExtWeight>,
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SquareMatrix {}x{}", self.n, self.n)?;
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl SquareMatrix {
    pub fn filled(n: usize, value: ExtWeight) -> Self {
        SquareMatrix {
            n,
            entries: vec![value; n * n],
        }
    }

    /// Tropical identity: zeros on the diagonal, `inf` elsewhere.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::filled(n, ExtWeight::Infinite);
        for i in 0..n {
            m[(i, i)] = ExtWeight::ZERO;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ExtWeight>>) -> Result<Self, MatrixError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(MatrixError::DimensionMismatch {
                    left: n,
                    right: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(SquareMatrix { n, entries })
    }

    /// The weight matrix of `g`: lightest edge weight for each present pair,
    /// `inf` where there is no edge.
    pub fn weight_matrix(g: &Graph) -> Self {
        let mut m = Self::filled(g.n(), ExtWeight::Infinite);
        for e in g.edges() {
            let cell = &mut m[(e.source, e.target)];
            *cell = (*cell).min(ExtWeight::Finite(e.weight));
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[ExtWeight] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[ExtWeight]> {
        // chunks(0) panics, so special-case the empty matrix
        self.entries.chunks(self.n.max(1)).take(self.n)
    }

    pub fn entries(&self) -> &[ExtWeight] {
        &self.entries
    }

    pub fn max_finite(&self) -> Option<u64> {
        self.entries.iter().filter_map(|e| e.finite()).max()
    }

    /// Applies `f` to every finite entry; `inf` stays `inf`.
    pub fn map_finite(&self, mut f: impl FnMut(u64) -> ExtWeight) -> Self {
        SquareMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|&e| match e {
                    ExtWeight::Finite(v) => f(v),
                    ExtWeight::Infinite => ExtWeight::Infinite,
                })
                .collect(),
        }
    }

    /// Elementwise minimum.
    pub fn min_with(&mut self, other: &SquareMatrix) {
        debug_assert_eq!(self.n, other.n);
        for (a, &b) in self.entries.iter_mut().zip(&other.entries) {
            *a = (*a).min(b);
        }
    }

    /// Checks every finite entry is at most `bound`.
    pub fn check_bound(&self, bound: u64) -> Result<(), MatrixError> {
        for (idx, e) in self.entries.iter().enumerate() {
            if let ExtWeight::Finite(value) = *e {
                if value > bound {
                    return Err(MatrixError::EntryOutOfRange {
                        row: idx / self.n,
                        col: idx % self.n,
                        value,
                        bound,
                    });
                }
            }
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for SquareMatrix {
    type Output = ExtWeight;

    fn index(&self, (i, j): (usize, usize)) -> &ExtWeight {
        &self.entries[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for SquareMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ExtWeight {
        &mut self.entries[i * self.n + j]
    }
}

/// Products below this dimension run on the calling thread.
const PARALLEL_MIN_N: usize = 32;

fn check_same_dim(a: &SquareMatrix, b: &SquareMatrix) -> Result<(), MatrixError> {
    if a.n != b.n {
        return Err(MatrixError::DimensionMismatch {
            left: a.n,
            right: b.n,
        });
    }
    Ok(())
}

/// Exact min-plus product `C[i,j] = min_k A[i,k] + B[k,j]`, cubic time.
/// Rows are computed in parallel; the result does not depend on scheduling.
pub fn minplus_product(a: &SquareMatrix, b: &SquareMatrix) -> Result<SquareMatrix, MatrixError> {
    check_same_dim(a, b)?;
    let n = a.n;
    let row = |i: usize| -> Result<Vec<ExtWeight>, MatrixError> {
        let mut out = vec![ExtWeight::Infinite; n];
        for (k, &aik) in a.row(i).iter().enumerate() {
            let ExtWeight::Finite(x) = aik else { continue };
            for (c, &bkj) in out.iter_mut().zip(b.row(k)) {
                let ExtWeight::Finite(y) = bkj else { continue };
                let s = x
                    .checked_add(y)
                    .ok_or(MatrixError::Overflow { a: x, b: y })?;
                if ExtWeight::Finite(s) < *c {
                    *c = ExtWeight::Finite(s);
                }
            }
        }
        Ok(out)
    };
    let rows: Vec<Vec<ExtWeight>> = if n >= PARALLEL_MIN_N {
        (0..n).into_par_iter().map(row).collect::<Result<_, _>>()?
    } else {
        (0..n).map(row).collect::<Result<_, _>>()?
    };
    Ok(SquareMatrix {
        n,
        entries: rows.into_iter().flatten().collect(),
    })
}

/// `A^t` with `O(log t)` products: the powers `A^(2^i)` are built by repeated
/// squaring and multiplied together along the binary expansion of `t`.
pub fn minplus_power(a: &SquareMatrix, t: u64) -> Result<SquareMatrix, MatrixError> {
    if t == 0 {
        return Err(MatrixError::ZeroPower);
    }
    let mut acc: Option<SquareMatrix> = None;
    let mut square = a.clone();
    let mut rest = t;
    loop {
        if rest & 1 == 1 {
            acc = Some(match acc {
                None => square.clone(),
                Some(m) => minplus_product(&m, &square)?,
            });
        }
        rest >>= 1;
        if rest == 0 {
            break;
        }
        square = minplus_product(&square, &square)?;
    }
    Ok(acc.expect("t >= 1 has a set bit"))
}
