mod common;

use std::collections::BTreeSet;

use paramenum::generate::{random_graph, seeded};
use paramenum::vertex_cover::{buss_kernelize, buss_kernelize_with, enumerate_all_vcs, Graph};
use proptest::prelude::*;
use rand::Rng;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, any::<u64>(), 0.05f64..0.6).prop_map(|(n, seed, p)| random_graph(&mut seeded(seed), n, p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn covers_match_brute_force(g in graph_strategy(12), k in 0usize..=5) {
        let got: Vec<Vec<usize>> = enumerate_all_vcs(&g, k).map(Result::unwrap).collect();
        let set: BTreeSet<Vec<usize>> = got.iter().cloned().collect();
        prop_assert_eq!(set.len(), got.len(), "duplicate cover");
        prop_assert_eq!(set, common::brute_vcs(&g, k));
        for c in &got {
            prop_assert!(c.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn kernel_respects_size_bound(g in graph_strategy(16), k in 0usize..=5) {
        let red = buss_kernelize(&g, k);
        if !red.is_infeasible() {
            let kp = red.residual_budget();
            prop_assert!(red.kernel_edges().len() <= kp * kp);
            prop_assert!(red.kernel_vertices().len() <= 2 * kp * kp);
            prop_assert!(kp + red.high_degree_removed().len() == k);
            prop_assert!(red.kernel_size() <= 3 * k * k);
        }
    }

    #[test]
    fn kernel_is_order_independent(g in graph_strategy(14), k in 0usize..=5, seed in any::<u64>()) {
        let reference = buss_kernelize(&g, k);
        let mut rng = seeded(seed);
        let other = buss_kernelize_with(&g, k, |steps| rng.gen_range(0..steps.len()));
        prop_assert_eq!(reference, other);
    }

    #[test]
    fn every_cover_contains_forced_vertices(g in graph_strategy(14), k in 0usize..=5) {
        let red = buss_kernelize(&g, k);
        for cover in enumerate_all_vcs(&g, k) {
            let cover = cover.unwrap();
            for v in red.high_degree_removed() {
                prop_assert!(cover.contains(v));
            }
        }
    }

    #[test]
    fn expansions_are_disjoint_blocks(g in graph_strategy(12), k in 0usize..=4) {
        let mut seen = BTreeSet::new();
        let mut last_block = None;
        for item in enumerate_all_vcs(&g, k).tagged() {
            let (block, cover) = item.unwrap();
            prop_assert!(last_block.is_none_or(|b| b <= block), "blocks interleave");
            last_block = Some(block);
            prop_assert!(seen.insert(cover));
        }
    }
}

#[test]
fn covers_grow_with_budget() {
    let mut rng = seeded(99);
    for _ in 0..30 {
        let n = rng.gen_range(2..10);
        let g = random_graph(&mut rng, n, 0.4);
        let mut prev = BTreeSet::new();
        for k in 0..=4 {
            let now: BTreeSet<Vec<usize>> = enumerate_all_vcs(&g, k).map(Result::unwrap).collect();
            assert!(prev.is_subset(&now));
            prev = now;
        }
    }
}
