use crate::graph::{zero_mean_vertices, Graph};
use crate::minplus::{approx_power_with, ApproxParams, MatrixError, ScaledKernel, SquareMatrix};
use crate::rational::Rational;

use super::{delta_from_power, ApproxDetails, McmError, McmResult, Mode};

/// Smallest power of two `t >= n^2 W / epsilon_inner`.
pub fn approx_t(n: usize, max_weight: u64, epsilon_inner: Rational) -> Result<u64, McmError> {
    let sizing = || {
        McmError::Matrix(MatrixError::Sizing(format!(
            "t = n^2 W / eps' is too large for n = {n}, W = {max_weight}, eps' = {epsilon_inner}"
        )))
    };
    let numer = (n as u128)
        .checked_mul(n as u128)
        .and_then(|v| v.checked_mul(max_weight as u128))
        .and_then(|v| v.checked_mul(epsilon_inner.den() as u128))
        .ok_or_else(sizing)?;
    let bound = numer.div_ceil(epsilon_inner.num() as u128).max(1);
    let t = bound.checked_next_power_of_two().ok_or_else(sizing)?;
    u64::try_from(t).map_err(|_| sizing())
}

/// `(1 + epsilon)`-approximate `mu(x)` for every vertex, using the default
/// scaled-product kernel.
pub fn approx_mcm(g: &Graph, epsilon: Rational) -> Result<McmResult, McmError> {
    approx_mcm_with(g, epsilon, ScaledKernel::default())
}

/// Vertices that reach a zero-weight cycle get exactly 0. For the rest,
/// with `eps' = eps / 7` and `t` the smallest power of two `>= n^2 W / eps'`,
/// `mu_hat(x) = delta_hat_t(x) / ((1 - eps') t)` where `delta_hat_t` are the
/// row minima of a `(1 + eps')`-approximation of `W^t`. Those vertices have
/// `mu(x) >= 1/n` since weights are integers, which the bound needs.
pub fn approx_mcm_with(
    g: &Graph,
    epsilon: Rational,
    kernel: ScaledKernel,
) -> Result<McmResult, McmError> {
    if epsilon.is_zero() || epsilon > Rational::ONE {
        return Err(MatrixError::EpsilonOutOfRange(epsilon).into());
    }
    let n = g.n();
    let w = g.max_weight();
    let zero = zero_mean_vertices(g);
    let epsilon_inner = Rational::from_u128(epsilon.num() as u128, 7 * epsilon.den() as u128)?;
    debug_assert!(epsilon_inner <= Rational::new(1, 2).expect("constant"));

    if w == 0 {
        debug_assert_eq!(zero.len(), n);
        return Ok(McmResult {
            mode: Mode::Approx,
            per_vertex: vec![Rational::ZERO; n],
            global: Rational::ZERO,
            approx: Some(ApproxDetails {
                epsilon,
                epsilon_inner,
                t: None,
                precision: None,
                delta_hat: vec![None; n],
            }),
        });
    }

    let t = approx_t(n, w, epsilon_inner)?;
    let params = ApproxParams::new(epsilon_inner, t, n, w)?;
    let approx = approx_power_with(&SquareMatrix::weight_matrix(g), &params, kernel)?;
    let rows = delta_from_power(&approx);

    // (1 - eps') t = (7q - p) t / (7q) for eps = p / q
    let p = epsilon.num() as u128;
    let q7 = 7 * epsilon.den() as u128;
    let mut per_vertex = Vec::with_capacity(n);
    let mut delta_hat = Vec::with_capacity(n);
    for (x, row_min) in rows.iter().enumerate() {
        if zero.contains(x) {
            per_vertex.push(Rational::ZERO);
            delta_hat.push(None);
            continue;
        }
        let d = row_min
            .finite()
            .expect("every vertex has walks of every length when outdegrees are positive");
        let num = (d as u128).checked_mul(q7);
        let den = (q7 - p).checked_mul(t as u128);
        let mu_hat = match (num, den) {
            (Some(num), Some(den)) => Rational::from_u128(num, den)?,
            _ => {
                return Err(MatrixError::Sizing(format!(
                    "mu_hat for vertex {} exceeds 128-bit intermediates",
                    x + 1
                ))
                .into())
            }
        };
        per_vertex.push(mu_hat);
        delta_hat.push(Some(d));
    }

    let global = *per_vertex.iter().min().expect("n >= 1");
    Ok(McmResult {
        mode: Mode::Approx,
        per_vertex,
        global,
        approx: Some(ApproxDetails {
            epsilon,
            epsilon_inner,
            t: Some(t),
            precision: Some(params.precision),
            delta_hat,
        }),
    })
}
