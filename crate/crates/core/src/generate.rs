//! Seeded random instances for tests and profiling. The same seed always
//! yields the same instance.

use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::backdoor::{CnfFormula, Lit};
use crate::csp::{BooleanRelation, ConstraintLanguage, GammaFormula};
use crate::vertex_cover::Graph;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// G(n, p) random graph.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).expect("u < v < n");
            }
        }
    }
    g
}

/// Sparse graphs whose cover count grows linearly in `n` for fixed `k >= 2`:
/// a hub joined to `max(k + 1, n / 20)` random vertices plus one random edge
/// away from the hub.
pub fn sparse_vc_graph(n: usize, k: usize, seed: u64) -> Graph {
    assert!(n >= 4, "family needs at least 4 vertices");
    let mut rng = seeded(seed);
    let mut g = Graph::empty(n);
    let hub = rng.gen_range(0..n);
    let others: Vec<usize> = (0..n).filter(|&v| v != hub).collect();
    let degree = (k + 1).max(n / 20).min(others.len());
    for i in sample(&mut rng, others.len(), degree) {
        g.add_edge(hub, others[i]).expect("fresh hub edge");
    }
    let pair = sample(&mut rng, others.len(), 2);
    g.add_edge(others[pair.index(0)], others[pair.index(1)])
        .expect("not a hub edge");
    g
}

/// Relation classes the generators can sample from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationClass {
    Horn,
    DualHorn,
    Bijunctive,
    Affine,
    Any,
}

impl RelationClass {
    pub const TRACTABLE: [RelationClass; 3] = [
        RelationClass::DualHorn,
        RelationClass::Affine,
        RelationClass::Bijunctive,
    ];
}

fn close(tuples: &mut Vec<u32>, class: RelationClass) {
    loop {
        let before = tuples.len();
        let t = tuples.clone();
        let mut add = |x: u32| {
            if !tuples.contains(&x) {
                tuples.push(x);
            }
        };
        match class {
            RelationClass::Horn => t.iter().for_each(|&a| t.iter().for_each(|&b| add(a & b))),
            RelationClass::DualHorn => t.iter().for_each(|&a| t.iter().for_each(|&b| add(a | b))),
            RelationClass::Bijunctive | RelationClass::Affine => {
                for &a in &t {
                    for &b in &t {
                        for &c in &t {
                            add(if class == RelationClass::Affine {
                                a ^ b ^ c
                            } else {
                                (a & b) | (a & c) | (b & c)
                            });
                        }
                    }
                }
            }
            RelationClass::Any => {}
        }
        if tuples.len() == before {
            return;
        }
    }
}

/// A nonempty random relation of the given class: a few random tuples closed
/// under the class polymorphism.
pub fn random_relation<R: Rng>(rng: &mut R, arity: usize, class: RelationClass) -> BooleanRelation {
    let space = 1u32 << arity;
    let seeds = rng.gen_range(1..=(space as usize).min(4));
    let mut tuples: Vec<u32> = (0..seeds).map(|_| rng.gen_range(0..space)).collect();
    tuples.dedup();
    close(&mut tuples, class);
    BooleanRelation::new(arity, tuples).expect("tuples fit the arity")
}

/// A uniformly random subset of `{0,1}^arity`, possibly empty.
pub fn uniform_relation<R: Rng>(rng: &mut R, arity: usize) -> BooleanRelation {
    let space = 1u32 << arity;
    BooleanRelation::new(arity, (0..space).filter(|_| rng.gen_bool(0.5))).expect("tuples fit")
}

/// A formula with `m` constraints over `n` variables, drawn from a language
/// of up to four random relations of `class` with arity at most
/// `max_arity`. Constraint scopes use distinct variables.
pub fn random_formula<R: Rng>(
    rng: &mut R,
    class: RelationClass,
    n: usize,
    m: usize,
    max_arity: usize,
) -> GammaFormula {
    let max_arity = max_arity.min(n).max(1);
    let mut language = ConstraintLanguage::new();
    for i in 0..rng.gen_range(1..=4) {
        let arity = rng.gen_range(1..=max_arity);
        language
            .add(&format!("R{i}"), random_relation(rng, arity, class))
            .expect("names are fresh");
    }
    let mut phi = GammaFormula::new(language, n);
    if n == 0 {
        return phi;
    }
    for _ in 0..m {
        let r = rng.gen_range(0..phi.language().len());
        let arity = phi.language().relation(r).arity();
        let vars = sample(rng, n, arity).into_vec();
        phi.add_constraint_by_index(r, vars).expect("arity and range checked");
    }
    phi
}

/// Random CNF with `m` clauses of 1 to `max_len` literals on distinct variables.
pub fn random_cnf<R: Rng>(rng: &mut R, n: usize, m: usize, max_len: usize) -> CnfFormula {
    let clauses = (0..m)
        .map(|_| {
            let len = rng.gen_range(1..=max_len.min(n).max(1));
            sample(rng, n, len)
                .into_iter()
                .map(|v| if rng.gen_bool(0.5) { Lit::pos(v) } else { Lit::neg(v) })
                .collect()
        })
        .collect();
    CnfFormula::new(n, clauses).expect("distinct variables cannot clash")
}

/// Implication chain `x0 → x1 → … → x(n-1)`. Its models are the `n + 1`
/// suffixes of ones, so `n - k + 1` of them have weight at least `k`.
pub fn implication_chain(n: usize) -> GammaFormula {
    let mut language = ConstraintLanguage::new();
    language
        .add("IMP", BooleanRelation::from_bitstrings(2, &["00", "01", "11"]).unwrap())
        .unwrap();
    let mut phi = GammaFormula::new(language, n);
    for i in 1..n {
        phi.add_constraint("IMP", vec![i - 1, i]).unwrap();
    }
    phi
}

/// CNF whose strong Horn-backdoor sets of size `k` grow with `n`: `k - 1`
/// disjoint positive pairs plus random Horn clauses on the other variables.
pub fn backdoor_cnf(n: usize, k: usize, seed: u64) -> CnfFormula {
    let pairs = k.saturating_sub(1);
    assert!(n >= 2 * pairs + 2, "too few variables for the family");
    let mut rng = seeded(seed);
    let mut clauses: Vec<Vec<Lit>> = (0..pairs)
        .map(|i| vec![Lit::pos(2 * i), Lit::pos(2 * i + 1)])
        .collect();
    let rest = n - 2 * pairs;
    for v in 2 * pairs..n {
        let w = 2 * pairs + rng.gen_range(0..rest);
        if w == v {
            clauses.push(vec![Lit::neg(v)]);
        } else {
            clauses.push(vec![Lit::neg(v), Lit::pos(w)]);
        }
    }
    CnfFormula::new(n, clauses).expect("horn clauses on distinct variables")
}
