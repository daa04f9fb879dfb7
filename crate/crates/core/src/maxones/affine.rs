//! Maximum model weight of affine formulas by elimination over GF(2).

use crate::csp::{BooleanRelation, GammaFormula};
use crate::{EnumError, Result};

pub const MAX_FREE_VARS: usize = 22;

/// Linear equations `a · x = b` over GF(2), one bit per variable.
#[derive(Debug, Clone)]
struct System {
    words: usize,
    rows: Vec<(Vec<u64>, bool)>,
}

impl System {
    fn new(ncols: usize) -> Self {
        Self {
            words: ncols.div_ceil(64).max(1),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, cols: impl IntoIterator<Item = usize>, rhs: bool) {
        let mut row = vec![0u64; self.words];
        for c in cols {
            row[c / 64] ^= 1 << (c % 64);
        }
        self.rows.push((row, rhs));
    }

    /// Reduced row echelon form. Returns the pivot column of each remaining
    /// row, or `None` if the system is inconsistent.
    fn reduce(&mut self, ncols: usize) -> Option<Vec<usize>> {
        let bit = |row: &[u64], c: usize| (row[c / 64] >> (c % 64)) & 1 == 1;
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..ncols {
            let Some(sel) = (rank..self.rows.len()).find(|&r| bit(&self.rows[r].0, col)) else {
                continue;
            };
            self.rows.swap(rank, sel);
            let (prow, prhs) = self.rows[rank].clone();
            for r in 0..self.rows.len() {
                if r != rank && bit(&self.rows[r].0, col) {
                    let (row, rhs) = &mut self.rows[r];
                    for (a, b) in row.iter_mut().zip(&prow) {
                        *a ^= b;
                    }
                    *rhs ^= prhs;
                }
            }
            pivots.push(col);
            rank += 1;
        }
        if self.rows[rank..].iter().any(|(_, rhs)| *rhs) {
            return None;
        }
        self.rows.truncate(rank);
        Some(pivots)
    }
}

/// Equations `(a, b)` over the coordinates whose solution set is exactly `r`.
/// `r` must be non-empty and affine.
fn relation_equations(r: &BooleanRelation) -> Vec<(u32, bool)> {
    let arity = r.arity();
    let t0 = r.tuples()[0];
    // basis of the direction space {t ⊕ t0}
    let mut basis: Vec<u32> = Vec::new();
    for &t in r.tuples() {
        let mut v = t ^ t0;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    // fully reduce so each basis vector owns its leading bit
    let mut rows = basis;
    let lead = |v: u32| 31 - v.leading_zeros() as usize;
    for i in 0..rows.len() {
        for j in 0..rows.len() {
            if i != j && (rows[j] >> lead(rows[i])) & 1 == 1 {
                rows[j] ^= rows[i];
            }
        }
    }
    let pivots: Vec<usize> = rows.iter().map(|&v| lead(v)).collect();
    // orthogonal complement: one vector per non-pivot coordinate
    (0..arity)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut a = 1u32 << free;
            for (row, &p) in rows.iter().zip(&pivots) {
                if (row >> free) & 1 == 1 {
                    a |= 1 << p;
                }
            }
            (a, (a & t0).count_ones() % 2 == 1)
        })
        .collect()
}

/// Maximum weight over all models, or `None` if unsatisfiable. Every used
/// relation must be affine.
pub fn max_weight_affine(phi: &GammaFormula) -> Result<Option<usize>> {
    if phi.is_unsatisfiable() {
        return Ok(None);
    }
    let n = phi.var_count();
    let mut system = System::new(n);
    for c in phi.constraints() {
        let r = phi.relation_of(c);
        if r.is_empty() {
            return Ok(None);
        }
        for (a, b) in relation_equations(r) {
            let cols = (0..r.arity())
                .filter(|j| (a >> j) & 1 == 1)
                .map(|j| c.vars()[j]);
            system.push(cols, b);
        }
    }
    let Some(pivots) = system.reduce(n) else {
        return Ok(None);
    };
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    if free.len() > MAX_FREE_VARS {
        return Err(EnumError::GuardExceeded {
            what: "affine free variables",
            limit: MAX_FREE_VARS,
            actual: free.len(),
        });
    }
    let bit = |row: &[u64], c: usize| (row[c / 64] >> (c % 64)) & 1 == 1;
    // for each pivot row, the free columns it depends on, as a mask over `free`
    let deps: Vec<(u32, bool)> = system
        .rows
        .iter()
        .map(|(row, rhs)| {
            let mask = free
                .iter()
                .enumerate()
                .filter(|(_, &f)| bit(row, f))
                .fold(0u32, |m, (i, _)| m | (1 << i));
            (mask, *rhs)
        })
        .collect();
    let best = (0..(1u32 << free.len()))
        .map(|assign| {
            let pivot_ones = deps
                .iter()
                .filter(|(mask, rhs)| ((mask & assign).count_ones() % 2 == 1) ^ rhs)
                .count();
            assign.count_ones() as usize + pivot_ones
        })
        .max()
        .expect("at least one assignment of the free variables");
    Ok(Some(best))
}
