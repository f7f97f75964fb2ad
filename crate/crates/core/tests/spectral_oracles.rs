use graphon_core::graph::GrowingGraph;
use graphon_core::homomorphism::{h_density_graph, MotifGraph};
use graphon_core::rng;
use graphon_core::spectral::{
    adjacency_eigenvalues, adjacency_eigenvalues_with, c4_tail_bound, full_spectrum, Solver,
};
use proptest::prelude::*;
use rand::Rng;

fn random_graph(n: usize, p: f64, seed: u64) -> GrowingGraph {
    let mut gen = rng::stream(seed, 2000, n as u64);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if gen.random::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    GrowingGraph::from_edges(n, edges).unwrap()
}

fn nalgebra_spectrum(g: &GrowingGraph) -> Vec<f64> {
    let n = g.num_vertices();
    let m = nalgebra::DMatrix::from_row_slice(n, n, &g.dense_adjacency());
    let mut v: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

#[test]
fn dense_matches_nalgebra() {
    for seed in 0..10 {
        let n = 10 + 9 * seed as usize;
        let g = random_graph(n, 0.2, seed);
        let ours = full_spectrum(&g).unwrap();
        let oracle = nalgebra_spectrum(&g);
        for (a, b) in ours.iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-9, "n {n}: {a} vs {b}");
        }
    }
}

#[test]
fn dense_and_iterative_agree() {
    for (seed, n) in [(1u64, 100usize), (2, 230), (3, 500)] {
        let g = random_graph(n, 8.0 / n as f64, seed);
        let d = adjacency_eigenvalues_with(&g, 4, 4, Solver::Dense).unwrap();
        let i = adjacency_eigenvalues_with(&g, 4, 4, Solver::Iterative).unwrap();
        for (a, b) in d
            .positive_tail
            .iter()
            .chain(&d.negative_tail)
            .zip(i.positive_tail.iter().chain(&i.negative_tail))
        {
            assert!((a - b).abs() < 1e-6, "n {n}: {a} vs {b}");
        }
    }
}

#[test]
fn trace_identity() {
    for seed in 0..8 {
        let g = random_graph(60 + 20 * seed as usize, 0.15, seed);
        let sum_sq: f64 = full_spectrum(&g).unwrap().iter().map(|x| x * x).sum();
        let e = g.num_edges() as f64;
        assert!((sum_sq - 2.0 * e).abs() <= 1e-8 * e.max(1.0));
    }
}

#[test]
fn top_eigenvalue_bounded_by_max_degree() {
    for seed in 0..8 {
        let g = random_graph(80, 0.1, seed);
        let s = adjacency_eigenvalues(&g, 1, 1).unwrap();
        assert!(s.positive_tail[0] <= g.max_degree() as f64 + 1e-9);
        assert!(-s.negative_tail[0] <= s.positive_tail[0] + 1e-9);
    }
}

#[test]
fn c4_bound_holds_on_random_graphs() {
    let c4 = MotifGraph::cycle(4).unwrap();
    for seed in 0..15 {
        let n = 20 + 12 * seed as usize;
        let g = random_graph(n, 0.1, 50 + seed);
        if g.num_edges() == 0 {
            continue;
        }
        let h = h_density_graph(&c4, &g).unwrap();
        let k = 5.min(n / 2);
        let s = adjacency_eigenvalues(&g, k, k).unwrap();
        for j in s.indices() {
            let x = s.scaled(j).unwrap().abs();
            assert!(x <= c4_tail_bound(h, j) + 1e-9, "seed {seed}, j {j}");
        }
    }
}

#[test]
fn scaled_lists_match_tails() {
    let g = random_graph(40, 0.3, 9);
    let s = adjacency_eigenvalues(&g, 3, 3).unwrap();
    let norm = (2.0 * g.num_edges() as f64).sqrt();
    for j in s.indices() {
        assert_eq!(s.scaled(j).unwrap(), s.lambda(j).unwrap() / norm);
    }
}

#[test]
fn adding_one_edge_moves_top_by_at_most_one() {
    let mut gen = rng::stream(4, 2001, 0);
    for seed in 0..20 {
        let g = random_graph(50, 0.1, 300 + seed);
        let (u, v) = loop {
            let (u, v) = (gen.random_range(0..50usize), gen.random_range(0..50usize));
            if u != v && !g.has_edge(u, v) {
                break (u, v);
            }
        };
        let h = GrowingGraph::from_edges(50, g.edges().chain([(u, v)])).unwrap();
        let a = adjacency_eigenvalues(&g, 1, 0).unwrap().positive_tail[0];
        let b = adjacency_eigenvalues(&h, 1, 0).unwrap().positive_tail[0];
        assert!(b >= a - 1e-9 && b - a <= 1.0 + 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tails_are_ordered_and_signed(seed in 0u64..100_000, n in 2usize..40, p in 0.0f64..1.0) {
        let g = random_graph(n, p, seed);
        let k = n / 2;
        let s = adjacency_eigenvalues(&g, k, n - k).unwrap();
        prop_assert!(s.positive_tail.windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(s.negative_tail.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(s.positive_tail.iter().all(|&x| x >= 0.0));
        prop_assert!(s.negative_tail.iter().all(|&x| x <= 0.0));
    }
}
