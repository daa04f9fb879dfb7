mod common;

use std::collections::BTreeSet;

use paramenum::csp::GammaFormula;
use paramenum::generate::{random_formula, seeded, RelationClass};
use paramenum::maxones::{enumerate_maxones, has_maxones, OracleKind, WeightOracle};
use proptest::prelude::*;

fn oracle_for(class: RelationClass) -> OracleKind {
    match class {
        RelationClass::DualHorn => OracleKind::DualHornPropagation,
        RelationClass::Affine => OracleKind::AffineGauss,
        _ => OracleKind::BranchAndBound,
    }
}

fn tractable() -> impl Strategy<Value = RelationClass> {
    prop_oneof![
        Just(RelationClass::DualHorn),
        Just(RelationClass::Affine),
        Just(RelationClass::Bijunctive),
    ]
}

fn formula(seed: u64, class: RelationClass, n: usize, m: usize) -> GammaFormula {
    random_formula(&mut seeded(seed), class, n, m, 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn oracles_agree_with_brute_force(seed in any::<u64>(), class in tractable(), n in 0usize..=10, m in 0usize..=12) {
        let phi = formula(seed, class, n, m);
        let best = common::max_weight(&phi);
        let brute = WeightOracle::new(OracleKind::BruteForce);
        let exact = WeightOracle::new(oracle_for(class));
        for w in 0..=n as i64 + 1 {
            let expected = best.is_some_and(|b| b as i64 >= w);
            prop_assert_eq!(has_maxones(&brute, &phi, w).unwrap(), expected);
            prop_assert_eq!(has_maxones(&exact, &phi, w).unwrap(), expected, "w = {}", w);
        }
    }

    #[test]
    fn enumeration_matches_brute_force(seed in any::<u64>(), class in tractable(), n in 0usize..=9, m in 0usize..=10) {
        let phi = formula(seed, class, n, m);
        let oracle = WeightOracle::new(oracle_for(class));
        let mut previous: Option<BTreeSet<Vec<usize>>> = None;
        for k in 0..=n {
            let mut stream = enumerate_maxones(oracle, &phi, k).unwrap();
            let got: Vec<Vec<usize>> = stream.by_ref().map(Result::unwrap).collect();
            prop_assert_eq!(stream.stats().dead_branches, 0);
            prop_assert_eq!(stream.stats().emitted, got.len());
            let set: BTreeSet<Vec<usize>> = got.iter().cloned().collect();
            prop_assert_eq!(set.len(), got.len());
            prop_assert_eq!(&set, &common::models_of_weight(&phi, k));
            if let Some(prev) = &previous {
                prop_assert!(set.is_subset(prev));
            }
            previous = Some(set);
        }
    }
}

#[test]
fn wrong_oracle_class_is_rejected() {
    let mut rng = seeded(4);
    let phi = loop {
        let phi = random_formula(&mut rng, RelationClass::Any, 5, 5, 3);
        if !phi.classify().dual_horn {
            break phi;
        }
    };
    assert!(enumerate_maxones(WeightOracle::new(OracleKind::DualHornPropagation), &phi, 0).is_err());
}
