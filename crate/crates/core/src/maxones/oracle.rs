use crate::csp::{brute_models, classify_relation, GammaFormula};
use crate::{EnumError, Result};

use super::affine::max_weight_affine;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OracleKind {
    BruteForce,
    DualHornPropagation,
    AffineGauss,
    BranchAndBound,
}

/// Exact decision procedure for "does `phi` have a model of weight at least
/// `w`". Negative `w` is treated as 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightOracle {
    kind: OracleKind,
}

impl WeightOracle {
    pub fn new(kind: OracleKind) -> Self {
        Self { kind }
    }

    pub fn kind(&self) -> OracleKind {
        self.kind
    }

    /// First applicable of dual-Horn propagation, affine elimination and
    /// branch and bound.
    pub fn auto(phi: &GammaFormula) -> Self {
        let flags = phi.classify();
        let kind = if flags.dual_horn {
            OracleKind::DualHornPropagation
        } else if flags.affine {
            OracleKind::AffineGauss
        } else {
            OracleKind::BranchAndBound
        };
        Self::new(kind)
    }

    /// Fails if some relation of `phi` is outside the class this oracle
    /// requires.
    pub fn check_applicable(&self, phi: &GammaFormula) -> Result<()> {
        let (name, holds): (&str, fn(&crate::csp::ClassFlags) -> bool) = match self.kind {
            OracleKind::DualHornPropagation => ("dual-Horn", |f| f.dual_horn),
            OracleKind::AffineGauss => ("affine", |f| f.affine),
            OracleKind::BruteForce | OracleKind::BranchAndBound => return Ok(()),
        };
        for c in phi.constraints() {
            let r = phi.relation_of(c);
            if !holds(&classify_relation(r)) {
                return Err(EnumError::Precondition(format!(
                    "relation {} is not {name}",
                    phi.language().name(c.relation())
                )));
            }
        }
        Ok(())
    }

    /// Decides without re-checking the class precondition.
    pub(crate) fn decide_unchecked(&self, phi: &GammaFormula, w: i64) -> Result<bool> {
        if phi.is_unsatisfiable() {
            return Ok(false);
        }
        let w = w.max(0) as usize;
        if w > phi.var_count() {
            return Ok(false);
        }
        Ok(match self.kind {
            OracleKind::BruteForce => brute_models(phi)?
                .iter()
                .any(|m| m.count_ones() as usize >= w),
            OracleKind::DualHornPropagation => max_weight_dual_horn_unchecked(phi)
                .is_some_and(|best| best >= w),
            OracleKind::AffineGauss => max_weight_affine(phi)?.is_some_and(|best| best >= w),
            OracleKind::BranchAndBound => branch_and_bound(phi, w),
        })
    }

    pub fn decide(&self, phi: &GammaFormula, w: i64) -> Result<bool> {
        self.check_applicable(phi)?;
        self.decide_unchecked(phi, w)
    }
}

/// Whether `phi` has a model of weight at least `max(w, 0)`.
pub fn has_maxones(oracle: &WeightOracle, phi: &GammaFormula, w: i64) -> Result<bool> {
    oracle.decide(phi, w)
}

/// Maximum model weight of a dual-Horn formula, or `None` if unsatisfiable.
///
/// Complementing every relation gives a Horn formula, whose least model is
/// found by raising a lower bound: for each constraint, the AND of all its
/// tuples above the current bound is itself a tuple of the (∧-closed)
/// relation and the least candidate. The maximum original weight is `n`
/// minus the weight of that least model.
pub fn max_weight_dual_horn(phi: &GammaFormula) -> Result<Option<usize>> {
    WeightOracle::new(OracleKind::DualHornPropagation).check_applicable(phi)?;
    Ok(max_weight_dual_horn_unchecked(phi))
}

fn max_weight_dual_horn_unchecked(phi: &GammaFormula) -> Option<usize> {
    if phi.is_unsatisfiable() {
        return None;
    }
    let n = phi.var_count();
    let complemented: Vec<_> = phi
        .constraints()
        .iter()
        .map(|c| (phi.relation_of(c).complement(), c.vars()))
        .collect();
    let mut bound = vec![false; n];
    loop {
        let mut changed = false;
        for (rel, vars) in &complemented {
            let mut meet: Option<u32> = None;
            for &t in rel.tuples() {
                let bit = |j: usize| (t >> j) & 1 == 1;
                let consistent = (0..vars.len())
                    .all(|j| (0..j).all(|i| vars[i] != vars[j] || bit(i) == bit(j)));
                let dominates = vars.iter().enumerate().all(|(j, &v)| !bound[v] || bit(j));
                if consistent && dominates {
                    meet = Some(meet.map_or(t, |m| m & t));
                }
            }
            let meet = meet?;
            for (j, &v) in vars.iter().enumerate() {
                if (meet >> j) & 1 == 1 && !bound[v] {
                    bound[v] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    Some(n - bound.iter().filter(|&&b| b).count())
}

/// Depth-first search over variables in index order, value 1 first, pruning
/// when the current weight plus the unassigned count cannot reach `w`. Each
/// constraint is checked once its highest variable is assigned.
fn branch_and_bound(phi: &GammaFormula, w: usize) -> bool {
    let n = phi.var_count();
    let mut by_last: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, c) in phi.constraints().iter().enumerate() {
        match c.vars().iter().max() {
            Some(&last) => by_last[last].push(i),
            None => {
                if phi.relation_of(c).is_empty() {
                    return false;
                }
            }
        }
    }
    let mut assignment = vec![false; n];
    bb_search(phi, &by_last, &mut assignment, 0, 0, w)
}

fn bb_search(
    phi: &GammaFormula,
    by_last: &[Vec<usize>],
    assignment: &mut [bool],
    i: usize,
    weight: usize,
    w: usize,
) -> bool {
    let n = assignment.len();
    if weight + (n - i) < w {
        return false;
    }
    if i == n {
        return true;
    }
    for val in [true, false] {
        assignment[i] = val;
        let ok = by_last[i].iter().all(|&ci| {
            let c = &phi.constraints()[ci];
            let t = c
                .vars()
                .iter()
                .enumerate()
                .fold(0u32, |acc, (j, &v)| acc | (u32::from(assignment[v]) << j));
            phi.relation_of(c).contains(t)
        });
        if ok && bb_search(phi, by_last, assignment, i + 1, weight + usize::from(val), w) {
            return true;
        }
    }
    false
}
