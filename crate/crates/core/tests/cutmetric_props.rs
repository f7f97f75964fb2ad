use graphon_core::cutmetric::{
    cut_norm_approx, cut_norm_exact, example1_overlay_cut_norm, stretched_cut_distance_upper,
    unit_square_indicator, AlignStrategy, DistanceOptions, StepFunction,
};
use graphon_core::graph::GrowingGraph;
use graphon_core::graphon::{canonical_graphon, GeneralizedGraphon};
use graphon_core::rng;
use graphon_core::sampler::{example1_clique_size, example1_graph};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn random_graph(n: usize, p: f64, seed: u64) -> GrowingGraph {
    let mut gen = rng::stream(seed, 4000, n as u64);
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

fn random_signed(m: usize, seed: u64) -> StepFunction {
    let mut gen = rng::stream(seed, 4001, m as u64);
    let mut b: Vec<f64> = (0..m - 1).map(|_| gen.random::<f64>()).collect();
    b.push(0.0);
    b.push(1.0);
    b.sort_by(f64::total_cmp);
    b.dedup();
    let m = b.len() - 1;
    let mut v = vec![0.0; m * m];
    for i in 0..m {
        for j in 0..=i {
            let x = gen.random_range(-1.0..1.0);
            v[i * m + j] = x;
            v[j * m + i] = x;
        }
    }
    StepFunction::new(b, v).unwrap()
}

/// Maximum of `|Σ_{U×V}|` over all pairs of block subsets.
fn enumerate(f: &StepFunction) -> f64 {
    let m = f.num_blocks();
    let mut best = 0.0_f64;
    for um in 0..1u32 << m {
        let u: Vec<usize> = (0..m).filter(|&i| um >> i & 1 == 1).collect();
        for vm in 0..1u32 << m {
            let v: Vec<usize> = (0..m).filter(|&i| vm >> i & 1 == 1).collect();
            best = best.max(f.block_sum(&u, &v).abs());
        }
    }
    best
}

#[test]
fn exact_matches_enumeration() {
    for seed in 0..20 {
        let f = random_signed(1 + seed as usize % 7, seed);
        let e = cut_norm_exact(&f).unwrap();
        assert!((e.value - enumerate(&f)).abs() < 1e-12, "seed {seed}");
        assert!(e.exact);
    }
}

#[test]
fn approx_agrees_with_exact() {
    let mut agree = 0;
    for seed in 0..50 {
        let f = random_signed(2 + seed as usize % 11, 100 + seed);
        let e = cut_norm_exact(&f).unwrap();
        let a = cut_norm_approx(&f, 20, seed);
        assert!(a.value <= e.value + 1e-12);
        assert!(!a.exact);
        if (a.value - e.value).abs() <= 1e-12 * e.value.max(1.0) {
            agree += 1;
        }
    }
    assert!(agree >= 48, "{agree} of 50");
}

#[test]
fn witnesses_certify_values() {
    for seed in 0..30 {
        let f = random_signed(1 + seed as usize % 12, 200 + seed);
        for est in [cut_norm_exact(&f).unwrap(), cut_norm_approx(&f, 10, seed)] {
            let w = f.block_sum(&est.witness_u, &est.witness_v).abs();
            assert!((w - est.value).abs() <= 1e-12, "seed {seed}");
        }
    }
}

#[test]
fn canonical_cut_norm_is_edge_density() {
    let mut gen = rng::stream(3, 4002, 0);
    for seed in 0..30 {
        let n = gen.random_range(1..=20usize);
        let g = random_graph(n, gen.random::<f64>(), 300 + seed);
        let f = StepFunction::from_graphon(&canonical_graphon(&g).unwrap()).unwrap();
        let expect = 2.0 * g.num_edges() as f64 / (n * n) as f64;
        let e = cut_norm_exact(&f).unwrap();
        assert!(
            (e.value - expect).abs() <= 1e-14 * expect.max(1e-300),
            "n {n}"
        );
        let a = cut_norm_approx(&f, 3, seed);
        assert!((a.value - expect).abs() <= 1e-14 * expect.max(1e-300));
    }
}

#[test]
fn self_distance_and_symmetry() {
    for seed in 0..6 {
        let g1 = canonical_graphon(&random_graph(9, 0.4, 500 + seed)).unwrap();
        let g2 = canonical_graphon(&random_graph(7, 0.5, 600 + seed)).unwrap();
        if g1.l1_norm().unwrap() == 0.0 || g2.l1_norm().unwrap() == 0.0 {
            continue;
        }
        for s in [
            AlignStrategy::Identity,
            AlignStrategy::DegreeSorted,
            AlignStrategy::LocalSearch,
        ] {
            let d = stretched_cut_distance_upper(&g1, &g1, &DistanceOptions::new(s, seed)).unwrap();
            assert!(d.value < 1e-12, "{s:?}: {}", d.value);
        }
        let opts = DistanceOptions::new(AlignStrategy::Identity, seed);
        let d12 = stretched_cut_distance_upper(&g1, &g2, &opts).unwrap();
        let d21 = stretched_cut_distance_upper(&g2, &g1, &opts).unwrap();
        assert!((d12.value - d21.value).abs() < 1e-12);
        assert!(d12.lower <= d12.value + 1e-12);
    }
}

#[test]
fn coupling_marginals_match() {
    let g1 = canonical_graphon(&random_graph(6, 0.5, 1)).unwrap();
    let g2 = GeneralizedGraphon::step(vec![0.0, 0.3, 1.0], vec![0.9, 0.1, 0.1, 0.4]).unwrap();
    let d =
        stretched_cut_distance_upper(&g1, &g2, &DistanceOptions::new(AlignStrategy::Identity, 0))
            .unwrap();
    let c = &d.coupling;
    assert!(c.entries.iter().all(|e| e.2 >= 0.0));
    for (a, b) in c.row_sums().iter().zip(&c.row_measures) {
        assert!((a - b).abs() < 1e-12);
    }
    for (a, b) in c.col_sums().iter().zip(&c.col_measures) {
        assert!((a - b).abs() < 1e-12);
    }
}

#[test]
fn local_search_finds_isomorphisms() {
    let mut found = 0;
    let trials = 10;
    for seed in 0..trials {
        let n = 6 + seed as usize % 7;
        let g = random_graph(n, 0.4, 700 + seed);
        if g.num_edges() == 0 {
            found += 1;
            continue;
        }
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng::stream(seed, 4003, 0));
        let h = g.relabel(&perm).unwrap();
        let d = stretched_cut_distance_upper(
            &canonical_graphon(&g).unwrap(),
            &canonical_graphon(&h).unwrap(),
            &DistanceOptions::new(AlignStrategy::LocalSearch, seed),
        )
        .unwrap();
        if d.value < 1e-9 {
            found += 1;
        }
    }
    assert!(found * 2 > trials, "{found} of {trials}");
}

#[test]
fn example1_closed_form_matches_certified_bound() {
    for n in [6usize, 12, 20, 40, 70] {
        let m = example1_clique_size(n, 0.5).unwrap();
        let g = canonical_graphon(&example1_graph(n, 0.5).unwrap()).unwrap();
        let d = stretched_cut_distance_upper(
            &g,
            &unit_square_indicator(),
            &DistanceOptions::new(AlignStrategy::Identity, 0),
        )
        .unwrap();
        let closed = example1_overlay_cut_norm(m).unwrap();
        assert!(d.lower <= closed + 1e-12);
        if d.exact {
            assert!(
                (d.value - closed).abs() < 1e-12,
                "n {n}: {} vs {closed}",
                d.value
            );
        } else {
            assert!(d.value >= closed - 1e-12);
        }
    }
}

#[test]
fn example1_bound_decreases() {
    let values: Vec<f64> = [100usize, 1000, 10_000, 100_000]
        .iter()
        .map(|&n| example1_overlay_cut_norm(example1_clique_size(n, 0.5).unwrap()).unwrap())
        .collect();
    assert!(values.windows(2).all(|w| w[1] < w[0]), "{values:?}");
}

#[test]
fn degenerate_inputs() {
    let zero = GeneralizedGraphon::constant(0.0).unwrap();
    let one = unit_square_indicator();
    assert!(stretched_cut_distance_upper(
        &zero,
        &one,
        &DistanceOptions::new(AlignStrategy::Identity, 0)
    )
    .is_err());
    assert!(example1_overlay_cut_norm(1).is_err());
    let big = StepFunction::new((0..=23).map(|i| i as f64).collect(), vec![0.0; 23 * 23]).unwrap();
    assert!(cut_norm_exact(&big).is_err());
    assert_eq!(cut_norm_approx(&big, 4, 0).value, 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn approx_never_exceeds_exact(seed in 0u64..100_000, m in 1usize..10, restarts in 0usize..6) {
        let f = random_signed(m, seed);
        let e = cut_norm_exact(&f).unwrap();
        let a = cut_norm_approx(&f, restarts, seed);
        prop_assert!(a.value <= e.value + 1e-12);
        prop_assert!(e.value <= f.signed_mass().0.max(f.signed_mass().1) + 1e-12);
    }
}
