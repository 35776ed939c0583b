use mcm_core::engine::{
    approx_mcm, delta_oracle, exact_mcm_via_power, karp_mcm, solve, Guards, Mode, SolveOptions,
};
use mcm_core::graph::{brute_force_mcm, strongly_connected_components, zero_mean_vertices, Graph};
use mcm_core::rational::Rational;
use proptest::prelude::*;

/// Random graph on `1..=max_n` vertices where every vertex has an out-edge.
fn graph(max_n: usize, max_w: i64) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(move |n| {
        let n64 = n as i64;
        let forced = prop::collection::vec((1..=n64, 0..=max_w), n);
        let extra = prop::collection::vec((1..=n64, 1..=n64, 0..=max_w), 0..=2 * n);
        (forced, extra).prop_map(move |(forced, extra)| {
            let mut raw: Vec<(i64, i64, i64)> = forced
                .into_iter()
                .enumerate()
                .map(|(v, (to, w))| (v as i64 + 1, to, w))
                .collect();
            raw.extend(extra);
            Graph::from_one_based(n, &raw).unwrap()
        })
    })
}

fn within(lower: Rational, value: Rational, eps: Rational) -> bool {
    lower <= value && value <= lower.scaled_by_one_plus(eps).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn karp_matches_brute_force(g in graph(9, 8)) {
        let brute = brute_force_mcm(&g, 12).unwrap();
        prop_assert_eq!(karp_mcm(&g).per_vertex, brute.per_vertex);
    }

    #[test]
    fn means_are_bounded_rationals(g in graph(9, 8)) {
        let n = g.n() as u64;
        let w = Rational::integer(g.max_weight());
        for mu in karp_mcm(&g).per_vertex {
            prop_assert!(mu <= w);
            prop_assert!(mu.den() <= n);
            if !mu.is_zero() {
                prop_assert!(mu >= Rational::new(1, n).unwrap());
            }
        }
    }

    #[test]
    fn zero_set_matches_exact_means(g in graph(10, 3)) {
        let zero = zero_mean_vertices(&g);
        for (v, mu) in karp_mcm(&g).per_vertex.iter().enumerate() {
            prop_assert_eq!(zero.contains(v), mu.is_zero(), "vertex {}", v);
        }
    }

    #[test]
    fn approx_is_within_factor(g in graph(8, 6), eps_den in 1u64..=5) {
        let eps = Rational::new(1, eps_den).unwrap();
        let exact = karp_mcm(&g).per_vertex;
        let approx = approx_mcm(&g, eps).unwrap();
        for (mu, hat) in exact.iter().zip(&approx.per_vertex) {
            prop_assert!(within(*mu, *hat, eps), "mu {} hat {} eps {}", mu, hat, eps);
        }
        prop_assert!(within(karp_mcm(&g).global, approx.global, eps));
    }

    /// Row minima of `W^t` sit within `n W` of `t mu`, on either side.
    #[test]
    fn delta_is_t_mu_plus_bounded_slack(g in graph(8, 6), log_t in 0u32..=8) {
        let t = 1u64 << log_t;
        let nw = g.n() as u128 * g.max_weight() as u128;
        let delta = delta_oracle(&g, t).unwrap();
        for (mu, d) in karp_mcm(&g).per_vertex.iter().zip(delta) {
            let tmu = t as u128 * mu.num() as u128;
            let d = d as u128 * mu.den() as u128;
            prop_assert!(d.abs_diff(tmu) <= nw * mu.den() as u128);
        }
    }

    #[test]
    fn components_ignore_edge_order(g in graph(12, 2), seed in any::<u64>()) {
        let mut edges = g.edges().to_vec();
        // deterministic shuffle keyed by seed
        let mut state = seed | 1;
        for i in (1..edges.len()).rev() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            edges.swap(i, (state % (i as u64 + 1)) as usize);
        }
        let h = Graph::new(g.n(), edges).unwrap();
        let a = strongly_connected_components(&g);
        let b = strongly_connected_components(&h);
        prop_assert_eq!(a.components(), b.components());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn exact_power_matches_karp(g in graph(5, 4)) {
        prop_assert_eq!(
            exact_mcm_via_power(&g, &Guards::default()).unwrap().per_vertex,
            karp_mcm(&g).per_vertex
        );
    }

    #[test]
    fn solve_is_deterministic(g in graph(6, 5)) {
        let opts = SolveOptions { epsilon: Rational::new(1, 2).unwrap(), ..Default::default() };
        for mode in [Mode::Karp, Mode::ExactPower, Mode::Approx, Mode::Brute] {
            prop_assert_eq!(solve(&g, mode, &opts).unwrap(), solve(&g, mode, &opts).unwrap());
        }
    }
}

#[test]
fn two_cycle_has_mean_three_halves() {
    let g = Graph::from_one_based(2, &[(1, 2, 1), (2, 1, 2)]).unwrap();
    let half3 = Rational::new(3, 2).unwrap();
    for mode in [Mode::Karp, Mode::ExactPower, Mode::Brute] {
        assert_eq!(
            solve(&g, mode, &SolveOptions::default()).unwrap().global,
            half3
        );
    }
}

#[test]
fn brute_force_guard_rejects_twenty_vertices() {
    let raw: Vec<_> = (1..=20).map(|v| (v, v % 20 + 1, 1)).collect();
    let g = Graph::from_one_based(20, &raw).unwrap();
    assert!(solve(&g, Mode::Brute, &SolveOptions::default()).is_err());
}
