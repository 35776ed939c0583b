//! Exact min-plus product of small-entry matrices through one ordinary
//! integer matrix product.
//!
//! With base `x = n + 1` an entry `a` in `[0, R]` becomes `x^(R - a)` and
//! `inf` becomes `0`. Then
//!
//! ```text
//! P[i,j] = sum_k x^(2R - (A[i,k] + B[k,j]))
//! ```
//!
//! Every exponent appears at most `n < x` times, so the largest exponent
//! present is `floor(log_x P[i,j])` and the min-plus entry is `2R` minus it.

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;

use super::{check_same_dim, ExtWeight, MatrixError, SquareMatrix, PARALLEL_MIN_N};

/// Upper limit on the bit width of an encoded product entry.
pub const MAX_ENCODED_BITS: u64 = 1 << 16;

pub fn small_entry_minplus(
    a: &SquareMatrix,
    b: &SquareMatrix,
    r: u64,
) -> Result<SquareMatrix, MatrixError> {
    check_same_dim(a, b)?;
    a.check_bound(r)?;
    b.check_bound(r)?;
    let n = a.n();
    if n == 0 {
        return Ok(a.clone());
    }

    let base = n as u64 + 1;
    let base_bits = 64 - base.leading_zeros() as u64;
    let top = r
        .checked_mul(2)
        .filter(|&e| e.saturating_add(1).saturating_mul(base_bits) <= MAX_ENCODED_BITS)
        .ok_or_else(|| {
            MatrixError::Sizing(format!(
                "integer encoding with R = {r}, n = {n} needs more than {MAX_ENCODED_BITS} bits per entry"
            ))
        })?;

    let x = BigUint::from(base);
    let mut powers = Vec::with_capacity(top as usize + 1);
    powers.push(BigUint::from(1u32));
    for e in 1..=top as usize {
        let next = &powers[e - 1] * &x;
        powers.push(next);
    }

    let encode = |m: &SquareMatrix| -> Vec<BigUint> {
        m.entries()
            .iter()
            .map(|e| match *e {
                ExtWeight::Finite(v) => powers[(r - v) as usize].clone(),
                ExtWeight::Infinite => BigUint::zero(),
            })
            .collect()
    };
    let ea = encode(a);
    let eb = encode(b);

    let row = |i: usize| -> Vec<ExtWeight> {
        let mut row = vec![BigUint::zero(); n];
        for k in 0..n {
            let aik = &ea[i * n + k];
            if aik.is_zero() {
                continue;
            }
            for (acc, bkj) in row.iter_mut().zip(&eb[k * n..(k + 1) * n]) {
                if !bkj.is_zero() {
                    *acc += aik * bkj;
                }
            }
        }
        row.into_iter()
            .map(|p| {
                if p.is_zero() {
                    ExtWeight::Infinite
                } else {
                    // number of powers <= p, minus one, is floor(log_x p)
                    let e = powers.partition_point(|q| q <= &p) as u64 - 1;
                    ExtWeight::Finite(top - e)
                }
            })
            .collect::<Vec<_>>()
    };
    let entries: Vec<ExtWeight> = if n >= PARALLEL_MIN_N {
        (0..n).into_par_iter().flat_map_iter(row).collect()
    } else {
        (0..n).flat_map(row).collect()
    };

    Ok(
        SquareMatrix::from_rows(entries.chunks(n).map(|c| c.to_vec()).collect())
            .expect("square by construction"),
    )
}
