use num_rational::Ratio;

use crate::graph::Graph;
use crate::minplus::{minplus_power, SquareMatrix};
use crate::rational::Rational;

use super::{delta_from_power, Guards, McmError, McmResult, Mode};

/// `t = 4 n^3 W`, the walk length after which `delta_t(x) / t` pins down
/// `mu(x)`. At least 1, so `W = 0` still yields a valid power.
pub fn power_horizon(n: usize, max_weight: u64) -> Option<u64> {
    let n = n as u64;
    4u64.checked_mul(n)?
        .checked_mul(n)?
        .checked_mul(n)?
        .checked_mul(max_weight)
        .map(|t| t.max(1))
}

/// Exact `mu(x)` from the `t`-th min-plus power of the weight matrix.
///
/// Any two distinct rationals with denominators at most `n` differ by at
/// least `1 / (n (n - 1))`, so the open interval of radius
/// `1 / (2 n (n - 1))` around `delta_t(x) / t` holds at most one of them, and
/// for `t = 4 n^3 W` it holds `mu(x)`.
pub fn exact_mcm_via_power(g: &Graph, guards: &Guards) -> Result<McmResult, McmError> {
    let n = g.n();
    let w = g.max_weight();
    if n > guards.power_max_n || w > guards.power_max_weight {
        return Err(McmError::GuardExceeded {
            engine: "exact-power",
            detail: format!(
                "n = {n}, W = {w}; limits are n <= {}, W <= {}",
                guards.power_max_n, guards.power_max_weight
            ),
        });
    }
    let t = power_horizon(n, w).ok_or_else(|| McmError::GuardExceeded {
        engine: "exact-power",
        detail: format!("4 n^3 W overflows for n = {n}, W = {w}"),
    })?;

    let power = minplus_power(&SquareMatrix::weight_matrix(g), t)?;
    let deltas = delta_from_power(&power);

    // n = 1: only self-loops, delta_t / t is exact; any radius below 1/2 works
    let spread = ((n * n.saturating_sub(1)) as i128).max(1);
    let radius = Ratio::new(1, 2 * spread);

    let per_vertex = deltas
        .iter()
        .enumerate()
        .map(|(x, d)| {
            let d = d
                .finite()
                .expect("every vertex has walks of every length when outdegrees are positive");
            let center = Ratio::new(d as i128, t as i128);
            rational_in_interval(center - radius, center + radius, n as u64).map_err(|e| match e {
                McmError::NoCandidate { .. } => McmError::Recovery {
                    vertex: x,
                    found: 0,
                },
                McmError::AmbiguousCandidate { .. } => McmError::Recovery {
                    vertex: x,
                    found: 2,
                },
                other => other,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(McmResult::exact(Mode::ExactPower, per_vertex))
}

/// The unique nonnegative rational with denominator at most `max_den` in the
/// open interval `(lo, hi)`, found by enumerating denominators `1..=max_den`.
pub fn rational_in_interval(
    lo: Ratio<i128>,
    hi: Ratio<i128>,
    max_den: u64,
) -> Result<Rational, McmError> {
    let mut found: Option<Rational> = None;
    let ambiguous = || McmError::AmbiguousCandidate {
        lo: lo.to_string(),
        hi: hi.to_string(),
        max_den,
    };
    for q in 1..=max_den as i128 {
        let first = ((lo * q).floor().to_integer() + 1).max(0);
        let last = (hi * q).ceil().to_integer() - 1;
        for p in first..=last {
            let cand = Rational::from_u128(p as u128, q as u128)?;
            match found {
                None => found = Some(cand),
                Some(prev) if prev == cand => {}
                Some(_) => return Err(ambiguous()),
            }
        }
    }
    found.ok_or_else(|| McmError::NoCandidate {
        lo: lo.to_string(),
        hi: hi.to_string(),
        max_den,
    })
}
