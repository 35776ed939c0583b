//! Approximate min-plus products and the approximate power `W^t`.

use crate::rational::Rational;

use super::{
    check_same_dim, minplus_product, small_entry_minplus, ExtWeight, MatrixError, SquareMatrix,
};

/// Exact kernel used for each scaled small-entry product inside
/// [`approx_minplus_with`]. Both produce bit-identical results.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum ScaledKernel {
    /// Cubic min/+ loop.
    #[default]
    Naive,
    /// Integer encoding plus one big-integer matrix product
    /// ([`small_entry_minplus`]). Bounded by
    /// [`MAX_ENCODED_BITS`](super::MAX_ENCODED_BITS), so only practical for small `R`.
    IntegerEncoding,
}

fn ceil_log2(v: u64) -> u32 {
    if v <= 1 {
        0
    } else {
        64 - (v - 1).leading_zeros()
    }
}

/// Smallest power of two that is at least `log2(n)`.
fn min_precision_for(n: usize) -> u64 {
    (ceil_log2(n as u64) as u64).max(1).next_power_of_two()
}

fn check_precision(r: u64, n: usize) -> Result<(), MatrixError> {
    if r == 0 || !r.is_power_of_two() || r < ceil_log2(n as u64) as u64 {
        return Err(MatrixError::InvalidR { r, n });
    }
    Ok(())
}

/// Approximate product with the default kernel. See [`approx_minplus_with`].
pub fn approx_minplus(
    a: &SquareMatrix,
    b: &SquareMatrix,
    max_entry: u64,
    r: u64,
) -> Result<SquareMatrix, MatrixError> {
    approx_minplus_with(a, b, max_entry, r, ScaledKernel::default())
}

/// Returns `Cbar` with `C <= Cbar <= (1 + 4/R) C` entrywise, `C = A (x) B`.
///
/// Inputs must have finite entries in `[0, max_entry]`; `r` is a power of two
/// with `r >= log2 n`. For thresholds `T = R, 2R, 4R, ...` both operands are
/// scaled to `ceil(v * R / T)` (entries above `T` become `inf`), multiplied
/// exactly, scaled back by `T / R`, and the entrywise minimum over levels is
/// kept. For a minimizing pair `(a, b)` the level with `T/2 < max(a, b) <= T`
/// loses at most `2T/R <= 4(a + b)/R`, and the level `T = R` is exact.
///
/// Levels stop once `T` covers every finite entry: beyond that each candidate
/// can only grow, so the minimum is the same as running up to `T >= 2M`.
pub fn approx_minplus_with(
    a: &SquareMatrix,
    b: &SquareMatrix,
    max_entry: u64,
    r: u64,
    kernel: ScaledKernel,
) -> Result<SquareMatrix, MatrixError> {
    check_same_dim(a, b)?;
    check_precision(r, a.n())?;
    a.check_bound(max_entry)?;
    b.check_bound(max_entry)?;

    let largest = a.max_finite().max(b.max_finite()).unwrap_or(0);
    let mut result = SquareMatrix::filled(a.n(), ExtWeight::Infinite);
    let mut threshold = r;
    loop {
        let scale = |v: u64| {
            if v > threshold {
                ExtWeight::Infinite
            } else {
                let scaled = (v as u128 * r as u128).div_ceil(threshold as u128);
                ExtWeight::Finite(scaled as u64)
            }
        };
        let sa = a.map_finite(scale);
        let sb = b.map_finite(scale);
        let product = match kernel {
            ScaledKernel::Naive => minplus_product(&sa, &sb)?,
            ScaledKernel::IntegerEncoding => small_entry_minplus(&sa, &sb, r)?,
        };
        let factor = threshold / r;
        let mut overflow = None;
        let rescaled = product.map_finite(|v| match v.checked_mul(factor) {
            Some(x) => ExtWeight::Finite(x),
            None => {
                overflow = Some(v);
                ExtWeight::Infinite
            }
        });
        if let Some(v) = overflow {
            return Err(MatrixError::Overflow { a: v, b: factor });
        }
        result.min_with(&rescaled);

        if threshold >= largest {
            break;
        }
        threshold = threshold.checked_mul(2).ok_or_else(|| {
            MatrixError::Sizing(format!("level threshold overflow above {threshold}"))
        })?;
    }
    Ok(result)
}

/// Scalar parameters of the approximate powering loop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxParams {
    pub epsilon: Rational,
    /// Target power, a power of two.
    pub t: u64,
    pub log_t: u32,
    /// `4 log2(t) / ln(1 + epsilon)`, evaluated in `f64`.
    pub precision_target: f64,
    /// `R`: the power of two `>= precision_target`, raised to at least `log2 n`.
    pub precision: u64,
    /// `2 t W`, the entry bound handed to every approximate product.
    pub entry_cap: u64,
}

impl ApproxParams {
    pub fn new(epsilon: Rational, t: u64, n: usize, max_weight: u64) -> Result<Self, MatrixError> {
        if epsilon.is_zero() || epsilon > Rational::ONE {
            return Err(MatrixError::EpsilonOutOfRange(epsilon));
        }
        if !t.is_power_of_two() {
            return Err(MatrixError::NotPowerOfTwo(t));
        }
        let log_t = t.trailing_zeros();
        let precision_target = 4.0 * log_t as f64 / epsilon.to_f64().ln_1p();

        let mut precision: u64 = 1;
        while (precision as f64) < precision_target {
            precision = precision.checked_mul(2).ok_or_else(|| {
                MatrixError::Sizing(format!("R for r = {precision_target} overflows"))
            })?;
        }
        precision = precision.max(min_precision_for(n));

        let entry_cap = t
            .checked_mul(max_weight)
            .and_then(|v| v.checked_mul(2))
            // rescaled candidates can reach 4 * max(entry_cap, R)
            .filter(|&v| v.max(precision).checked_mul(4).is_some())
            .ok_or_else(|| {
                MatrixError::Sizing(format!(
                    "entry bound 2 * t * W with t = {t}, W = {max_weight} exceeds 64-bit range"
                ))
            })?;

        Ok(ApproxParams {
            epsilon,
            t,
            log_t,
            precision_target,
            precision,
            entry_cap,
        })
    }
}

/// Every iterate of the approximate powering loop; `iterates[s]`
/// approximates `W^(2^s)`.
#[derive(Debug, Clone)]
pub struct ApproxPowerTrace {
    pub params: ApproxParams,
    pub iterates: Vec<SquareMatrix>,
}

/// `(1 + epsilon)`-approximation of `wbar^t` for `t` a power of two, with
/// `W` taken as the largest finite entry of `wbar`.
pub fn approx_power(
    wbar: &SquareMatrix,
    epsilon: Rational,
    t: u64,
) -> Result<SquareMatrix, MatrixError> {
    let params = ApproxParams::new(epsilon, t, wbar.n(), wbar.max_finite().unwrap_or(0))?;
    approx_power_with(wbar, &params, ScaledKernel::default())
}

pub fn approx_power_with(
    wbar: &SquareMatrix,
    params: &ApproxParams,
    kernel: ScaledKernel,
) -> Result<SquareMatrix, MatrixError> {
    run_power(wbar, params, kernel, |_| {})
}

pub fn approx_power_traced(
    wbar: &SquareMatrix,
    params: &ApproxParams,
    kernel: ScaledKernel,
) -> Result<ApproxPowerTrace, MatrixError> {
    let mut iterates = vec![wbar.clone()];
    run_power(wbar, params, kernel, |m| iterates.push(m.clone()))?;
    Ok(ApproxPowerTrace {
        params: *params,
        iterates,
    })
}

fn run_power(
    wbar: &SquareMatrix,
    params: &ApproxParams,
    kernel: ScaledKernel,
    mut observe: impl FnMut(&SquareMatrix),
) -> Result<SquareMatrix, MatrixError> {
    let mut current = wbar.clone();
    for _ in 0..params.log_t {
        // approx_minplus re-checks this, but the error is clearer here
        current.check_bound(params.entry_cap)?;
        current = approx_minplus_with(
            &current,
            &current,
            params.entry_cap,
            params.precision,
            kernel,
        )?;
        observe(&current);
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;

    const INF: ExtWeight = ExtWeight::Infinite;

    fn f(v: u64) -> ExtWeight {
        ExtWeight::Finite(v)
    }

    fn q(p: u64, d: u64) -> Rational {
        Rational::new(p, d).unwrap()
    }

    #[test]
    fn params_match_formula() {
        // r = 4 * 3 / ln 2 = 17.31..., R = 32
        let p = ApproxParams::new(Rational::ONE, 8, 2, 1).unwrap();
        assert!((p.precision_target - 12.0 / std::f64::consts::LN_2).abs() < 1e-12);
        assert_eq!(p.precision, 32);
        assert_eq!(p.log_t, 3);
        assert_eq!(p.entry_cap, 16);
    }

    #[test]
    fn params_respect_log_n_floor() {
        // t = 2, epsilon = 1: r = 5.77, R = 8; n = 2^20 needs R >= 20 -> 32
        assert_eq!(
            ApproxParams::new(Rational::ONE, 2, 4, 1).unwrap().precision,
            8
        );
        assert_eq!(
            ApproxParams::new(Rational::ONE, 2, 1 << 20, 1)
                .unwrap()
                .precision,
            32
        );
    }

    #[test]
    fn params_bound_error_growth() {
        for (eps, t) in [
            (q(1, 1), 1u64 << 10),
            (q(1, 2), 1 << 15),
            (q(1, 70), 1 << 18),
        ] {
            let p = ApproxParams::new(eps, t, 16, 8).unwrap();
            let growth = (1.0 + 4.0 / p.precision as f64).powi(p.log_t as i32);
            assert!(growth <= 1.0 + eps.to_f64(), "{eps} {t}");
        }
    }

    #[test]
    fn params_reject_bad_inputs() {
        assert!(ApproxParams::new(Rational::ZERO, 8, 2, 1).is_err());
        assert!(ApproxParams::new(q(3, 2), 8, 2, 1).is_err());
        assert_eq!(
            ApproxParams::new(Rational::ONE, 6, 2, 1),
            Err(MatrixError::NotPowerOfTwo(6))
        );
        assert!(matches!(
            ApproxParams::new(Rational::ONE, 1 << 62, 2, 1 << 10),
            Err(MatrixError::Sizing(_))
        ));
    }

    #[test]
    fn small_entries_are_exact() {
        let a = SquareMatrix::from_rows(vec![vec![f(3), INF], vec![f(7), f(1)]]).unwrap();
        let b = SquareMatrix::from_rows(vec![vec![f(0), f(8)], vec![INF, f(2)]]).unwrap();
        let exact = minplus_product(&a, &b).unwrap();
        assert_eq!(approx_minplus(&a, &b, 8, 8).unwrap(), exact);
    }

    #[test]
    fn invalid_precision_is_rejected() {
        let a = SquareMatrix::identity(2);
        assert!(matches!(
            approx_minplus(&a, &a, 1, 3),
            Err(MatrixError::InvalidR { .. })
        ));
        let big = SquareMatrix::identity(1024);
        assert!(matches!(
            approx_minplus(&big, &big, 1, 8),
            Err(MatrixError::InvalidR { r: 8, n: 1024 })
        ));
    }

    #[test]
    fn entry_above_bound_is_rejected() {
        let a = SquareMatrix::from_rows(vec![vec![f(9)]]).unwrap();
        assert!(matches!(
            approx_minplus(&a, &a, 8, 8),
            Err(MatrixError::EntryOutOfRange { value: 9, .. })
        ));
    }

    #[test]
    fn two_cycle_fourth_power_sandwich() {
        let w = SquareMatrix::from_rows(vec![vec![INF, f(1)], vec![f(2), INF]]).unwrap();
        let approx = approx_power(&w, q(1, 2), 4).unwrap();
        let v = approx[(0, 0)].finite().unwrap();
        assert!((6..=9).contains(&v));
        assert_eq!(approx[(0, 1)], INF);
    }

    #[test]
    fn trace_entries_stay_under_cap() {
        let w = SquareMatrix::from_rows(vec![
            vec![INF, f(5), f(1)],
            vec![f(3), INF, f(4)],
            vec![f(2), f(2), INF],
        ])
        .unwrap();
        let params = ApproxParams::new(q(1, 10), 64, 3, 5).unwrap();
        let trace = approx_power_traced(&w, &params, ScaledKernel::Naive).unwrap();
        assert_eq!(trace.iterates.len(), 7);
        for (s, m) in trace.iterates.iter().enumerate() {
            // (1 + eps) 2^s W <= 2^(s+1) W
            m.check_bound((2u64 << s) * 5).unwrap();
        }
    }
}
