use mcm_core::cli::run_cli;
use mcm_core::engine::{Mode, SolveOptions};
use mcm_core::graph::Graph;
use mcm_core::io::{
    emit_graph, generate_graph, parse_graph_str, run_benchmark, ResultDocument, SuiteConfig,
};
use mcm_core::rational::Rational;
use proptest::prelude::*;

fn run(args: &[&str], input: &str) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("mcm").chain(args.iter().copied());
    let code = run_cli(argv, &mut input.as_bytes(), &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

const TWO_CYCLE: &str = "p mcm 2 2\na 1 2 1\na 2 1 2\n";

proptest! {
    #[test]
    fn emit_then_parse_is_identity(n in 1usize..=20, extra in 0usize..=40, w in 0u64..=1000, seed in any::<u64>()) {
        let g = generate_graph(n, n + extra, w, seed).unwrap();
        let text = emit_graph(&g, &["generated".to_string()]);
        prop_assert_eq!(parse_graph_str(&text).unwrap(), g);
    }
}

#[test]
fn karp_two_cycle_json() {
    let (code, out, _) = run(&["solve", "--mode", "karp"], TWO_CYCLE);
    assert_eq!(code, 0);
    let doc = ResultDocument::from_json(&out).unwrap();
    assert_eq!(doc.global, Rational::new(3, 2).unwrap());
    assert_eq!(doc.per_vertex, vec![Rational::new(3, 2).unwrap(); 2]);
    assert_eq!(doc.global_decimal, "1.500000");
}

#[test]
fn approx_two_cycle_echoes_parameters() {
    let (code, out, _) = run(&["solve", "--mode", "approx", "--epsilon", "1"], TWO_CYCLE);
    assert_eq!(code, 0);
    let doc = ResultDocument::from_json(&out).unwrap();
    assert!(doc.global >= Rational::new(3, 2).unwrap());
    assert!(doc.global <= Rational::integer(3));
    assert_eq!(doc.epsilon, Some(Rational::ONE));
    assert!(doc.t.is_some() && doc.precision.is_some());
}

#[test]
fn brute_force_on_twenty_vertices_is_refused() {
    let g = generate_graph(20, 40, 5, 3).unwrap();
    let (code, out, err) = run(&["solve", "--mode", "brute"], &emit_graph(&g, &[]));
    assert_eq!(code, 1);
    assert!(out.is_empty());
    assert!(err.starts_with("error:"), "{err}");
}

#[test]
fn malformed_input_reports_line() {
    let (code, _, err) = run(&["solve"], "p mcm 2 2\na 1 2 1\na 2 1 -2\n");
    assert_eq!(code, 1);
    assert!(err.contains("negative weight at line 3"), "{err}");

    let (code, _, err) = run(&["solve"], "p mcm 2 2\na 1 2 1\n");
    assert_eq!(code, 1);
    assert!(err.contains("expected 2 edges, found 1"), "{err}");
}

#[test]
fn plain_output_lists_vertices() {
    let (code, out, _) = run(&["solve", "--output", "plain"], TWO_CYCLE);
    assert_eq!(code, 0);
    assert_eq!(
        out,
        "global 3/2 (1.500000)\nvertex 1 3/2 (1.500000)\nvertex 2 3/2 (1.500000)\n"
    );
}

#[test]
fn generate_is_seed_deterministic() {
    let args = [
        "generate", "--n", "12", "--m", "30", "-w", "9", "--seed", "7",
    ];
    let (_, first, _) = run(&args, "");
    let (code, second, _) = run(&args, "");
    assert_eq!(code, 0);
    assert_eq!(first, second);
    let g: Graph = parse_graph_str(&first).unwrap();
    assert_eq!((g.n(), g.m()), (12, 30));
}

#[test]
fn bench_reports_ratio_within_bound() {
    let config = SuiteConfig::from_toml(
        r#"
        [[case]]
        n = 64
        m = 256
        W = 16
        mode = "approx"
        epsilon = "0.5"
        seed = 1
        "#,
    )
    .unwrap();
    let rows = run_benchmark(&config, &SolveOptions::default());
    assert_eq!(rows.len(), 1);
    let row = &rows[0];
    assert!(row.error.is_none(), "{:?}", row.error);
    assert_eq!(row.case.mode, Mode::Approx);
    assert!(row.ratio.unwrap() <= Rational::new(3, 2).unwrap());
    assert!(row.median_ms.is_some());
}
