//! Independent brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use paramenum::backdoor::CnfFormula;
use paramenum::csp::{BooleanRelation, GammaFormula};
use paramenum::vertex_cover::Graph;

pub fn bits(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// Every vertex cover with at most `k` vertices, by scanning all subsets.
pub fn brute_vcs(g: &Graph, k: usize) -> BTreeSet<Vec<usize>> {
    let n = g.vertex_count();
    assert!(n <= 24);
    (0u64..1 << n)
        .filter(|m| m.count_ones() as usize <= k)
        .filter(|&m| g.edges().iter().all(|&(u, v)| m >> u & 1 == 1 || m >> v & 1 == 1))
        .map(bits)
        .collect()
}

/// Models of `phi` as masks, evaluated constraint by constraint.
pub fn models(phi: &GammaFormula) -> BTreeSet<u64> {
    let n = phi.var_count();
    assert!(n <= 20);
    if phi.is_unsatisfiable() {
        return BTreeSet::new();
    }
    (0u64..1 << n)
        .filter(|&m| {
            phi.constraints().iter().all(|c| {
                let t = c
                    .vars()
                    .iter()
                    .enumerate()
                    .fold(0u32, |t, (i, &v)| t | ((m >> v & 1) as u32) << i);
                phi.relation_of(c).contains(t)
            })
        })
        .collect()
}

pub fn max_weight(phi: &GammaFormula) -> Option<usize> {
    models(phi).iter().map(|m| m.count_ones() as usize).max()
}

pub fn models_of_weight(phi: &GammaFormula, k: usize) -> BTreeSet<Vec<usize>> {
    models(phi)
        .into_iter()
        .filter(|m| m.count_ones() as usize >= k)
        .map(bits)
        .collect()
}

/// `phi(tau)` from the definition: drop satisfied clauses, drop false literals.
fn horn_under(phi: &CnfFormula, set: &[usize], tau: u64) -> bool {
    phi.clauses().iter().all(|clause| {
        let mut positives = 0;
        for l in clause {
            match set.iter().position(|&v| v == l.var()) {
                Some(i) => {
                    if (tau >> i & 1 == 1) == l.is_positive() {
                        return true;
                    }
                }
                None => positives += usize::from(l.is_positive()),
            }
        }
        positives <= 1
    })
}

/// Every strong Horn-backdoor set of size exactly `k` among the variables
/// occurring in `phi`, in lexicographic order.
pub fn brute_sbds(phi: &CnfFormula, k: usize) -> Vec<Vec<usize>> {
    let n = phi.var_count();
    assert!(n <= 20);
    let occurring: u64 = phi
        .clauses()
        .iter()
        .flatten()
        .fold(0, |m, l| m | 1 << l.var());
    let mut out: Vec<Vec<usize>> = (0u64..1 << n)
        .filter(|m| m.count_ones() as usize == k && m & !occurring == 0)
        .map(bits)
        .filter(|set| (0u64..1 << set.len()).all(|tau| horn_under(phi, set, tau)))
        .collect();
    out.sort();
    out
}

/// A clause over coordinates: bit masks of positive and negative literals.
#[derive(Clone, Copy)]
pub struct Clause {
    pub pos: u32,
    pub neg: u32,
}

impl Clause {
    fn holds(self, t: u32, mask: u32) -> bool {
        t & self.pos != 0 || !t & mask & self.neg != 0
    }
}

pub fn all_clauses(arity: usize) -> Vec<Clause> {
    let mut out = Vec::new();
    for code in 0..3u32.pow(arity as u32) {
        let (mut c, mut pos, mut neg) = (code, 0, 0);
        for i in 0..arity {
            match c % 3 {
                1 => pos |= 1 << i,
                2 => neg |= 1 << i,
                _ => {}
            }
            c /= 3;
        }
        out.push(Clause { pos, neg });
    }
    out
}

/// Parity constraint `xor of coordinates in vars = rhs`.
#[derive(Clone, Copy)]
pub struct Equation {
    pub vars: u32,
    pub rhs: bool,
}

pub fn all_equations(arity: usize) -> Vec<Equation> {
    (0..1u32 << arity)
        .flat_map(|vars| [false, true].map(|rhs| Equation { vars, rhs }))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Class {
    Horn,
    DualHorn,
    Bijunctive,
    Affine,
}

pub const CLASSES: [Class; 4] = [Class::Horn, Class::DualHorn, Class::Bijunctive, Class::Affine];

/// The defining constraints a class may use, as predicates on tuples.
pub fn class_constraints(class: Class, arity: usize) -> Vec<Box<dyn Fn(u32) -> bool>> {
    let mask = (1u32 << arity) - 1;
    if class == Class::Affine {
        return all_equations(arity)
            .into_iter()
            .map(|e| Box::new(move |t: u32| ((t & e.vars).count_ones() % 2 == 1) == e.rhs) as Box<dyn Fn(u32) -> bool>)
            .collect();
    }
    all_clauses(arity)
        .into_iter()
        .filter(|c| match class {
            Class::Horn => c.pos.count_ones() <= 1,
            Class::DualHorn => c.neg.count_ones() <= 1,
            Class::Bijunctive => (c.pos | c.neg).count_ones() <= 2,
            Class::Affine => unreachable!(),
        })
        .map(|c| Box::new(move |t: u32| c.holds(t, mask)) as Box<dyn Fn(u32) -> bool>)
        .collect()
}

/// Whether some conjunction of the class constraints has exactly the tuples
/// of `r` as models. The conjunction of every constraint `r` satisfies is the
/// strongest candidate, so it suffices to test that one.
pub fn definable(r: &BooleanRelation, class: Class) -> bool {
    let implied: Vec<_> = class_constraints(class, r.arity())
        .into_iter()
        .filter(|c| r.tuples().iter().all(|&t| c(t)))
        .collect();
    (0..1u32 << r.arity()).all(|t| implied.iter().all(|c| c(t)) == r.contains(t))
}

/// Literal search over every subset of the class constraints. Only feasible
/// for arity at most 2.
pub fn definable_by_subset_search(r: &BooleanRelation, class: Class) -> bool {
    let cs = class_constraints(class, r.arity());
    assert!(cs.len() <= 20);
    (0u32..1 << cs.len()).any(|subset| {
        (0..1u32 << r.arity()).all(|t| {
            let sat = (0..cs.len()).filter(|i| subset >> i & 1 == 1).all(|i| cs[i](t));
            sat == r.contains(t)
        })
    })
}
