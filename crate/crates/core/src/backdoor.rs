//! Strong Horn-backdoor sets of size exactly `k`.
//!
//! `S` is a strong Horn-backdoor set of `φ` iff deleting every occurrence of
//! the variables of `S` leaves a Horn formula. Sets are enumerated in
//! lexicographic order by deciding, for the smallest still-eligible variable,
//! whether a completion exists with it and then without it. The decision only
//! ever looks at variables above the current one, which is what keeps sets
//! already passed over from being reconsidered.

use std::fmt;

use thiserror::Error;

use crate::enumcore::SearchStats;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit {
    var: usize,
    positive: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Self {
        Self { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Self {
            var,
            positive: false,
        }
    }

    pub fn var(self) -> usize {
        self.var
    }

    pub fn is_positive(self) -> bool {
        self.positive
    }

    /// DIMACS literal: 1-based, negative for negated variables.
    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.positive {
            v
        } else {
            -v
        }
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CnfError {
    #[error("literal {lit} out of range for {n} variables")]
    LiteralOutOfRange { lit: i64, n: usize },
    #[error("tautological clause on variable {}", .0 + 1)]
    Tautology(usize),
}

/// CNF formula over variables `0..var_count`. Clause literals are sorted by
/// variable and duplicate-free; no clause mentions a variable twice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    var_count: usize,
    clauses: Vec<Vec<Lit>>,
}

impl CnfFormula {
    /// Collapses duplicate literals, rejects tautologies and out-of-range
    /// variables.
    pub fn new(var_count: usize, clauses: Vec<Vec<Lit>>) -> Result<Self, CnfError> {
        let clauses = clauses
            .into_iter()
            .map(|c| normalize_clause(var_count, c))
            .collect::<Result<_, _>>()?;
        Ok(Self { var_count, clauses })
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn clauses(&self) -> &[Vec<Lit>] {
        &self.clauses
    }

    /// Variables with at least one occurrence, ascending.
    pub fn occurring_vars(&self) -> Vec<usize> {
        let mut seen = vec![false; self.var_count];
        for l in self.clauses.iter().flatten() {
            seen[l.var] = true;
        }
        (0..self.var_count).filter(|&v| seen[v]).collect()
    }
}

pub(crate) fn normalize_clause(var_count: usize, mut clause: Vec<Lit>) -> Result<Vec<Lit>, CnfError> {
    if let Some(l) = clause.iter().find(|l| l.var >= var_count) {
        return Err(CnfError::LiteralOutOfRange {
            lit: l.to_dimacs(),
            n: var_count,
        });
    }
    clause.sort_unstable();
    clause.dedup();
    if let Some(w) = clause.windows(2).find(|w| w[0].var == w[1].var) {
        return Err(CnfError::Tautology(w[0].var));
    }
    Ok(clause)
}

/// Every clause has at most one positive literal. Empty clauses are Horn.
pub fn is_horn(phi: &CnfFormula) -> bool {
    phi.clauses.iter().all(|c| c.iter().filter(|l| l.positive).count() <= 1)
}

/// `φ|_V`: deletes every literal over a variable in `vars`. Emptied clauses
/// are kept.
pub fn restrict(phi: &CnfFormula, vars: &[usize]) -> CnfFormula {
    let mut gone = vec![false; phi.var_count];
    for &v in vars {
        gone[v] = true;
    }
    CnfFormula {
        var_count: phi.var_count,
        clauses: phi
            .clauses
            .iter()
            .map(|c| c.iter().copied().filter(|l| !gone[l.var]).collect())
            .collect(),
    }
}

/// Lowest-indexed clause with two positive literals, and its two
/// lowest-indexed positive variables.
fn non_horn_pair(phi: &CnfFormula) -> Option<(usize, usize)> {
    phi.clauses.iter().find_map(|c| {
        let mut pos = c.iter().filter(|l| l.positive).map(|l| l.var);
        match (pos.next(), pos.next()) {
            (Some(a), Some(b)) => Some((a, b)),
            _ => None,
        }
    })
}

/// Whether some `S ⊆ pool` with `|S| = k` makes `restrict(phi, S)` Horn.
///
/// `pool` must be ascending. A Horn formula stays Horn under further
/// deletions, so it only needs `k` variables available to pad with.
/// Otherwise any valid `S` contains one of two positive literals of a
/// non-Horn clause, which gives a branching of depth at most `k`.
pub fn exists_sbds(phi: &CnfFormula, k: usize, pool: &[usize]) -> bool {
    if is_horn(phi) {
        return pool.len() >= k;
    }
    if k == 0 || pool.len() < k {
        return false;
    }
    let (p1, p2) = non_horn_pair(phi).expect("a non-Horn formula has a non-Horn clause");
    [p1, p2]
        .into_iter()
        .filter(|p| pool.binary_search(p).is_ok())
        .any(|p| {
            let rest: Vec<usize> = pool.iter().copied().filter(|&v| v != p).collect();
            exists_sbds(&restrict(phi, &[p]), k - 1, &rest)
        })
}

enum Frame {
    Visit {
        chosen: Vec<usize>,
        k: usize,
        next: usize,
    },
    TryExclude {
        chosen: Vec<usize>,
        k: usize,
        next: usize,
    },
    Exit {
        emitted_at_entry: usize,
    },
}

/// Pull-based enumeration of strong Horn-backdoor sets, ascending
/// 0-based variable lists in lexicographic order.
pub struct BackdoorStream<'a> {
    phi: &'a CnfFormula,
    pool: Vec<usize>,
    stack: Vec<Frame>,
    stats: SearchStats,
}

impl BackdoorStream<'_> {
    pub fn stats(&self) -> SearchStats {
        self.stats
    }

    fn exists(&mut self, restricted_by: &[usize], k: usize, from: usize) -> bool {
        self.stats.oracle_calls += 1;
        exists_sbds(&restrict(self.phi, restricted_by), k, &self.pool[from..])
    }
}

impl Iterator for BackdoorStream<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        while let Some(frame) = self.stack.pop() {
            match frame {
                Frame::Exit { emitted_at_entry } => {
                    if self.stats.emitted == emitted_at_entry {
                        self.stats.dead_branches += 1;
                    }
                }
                Frame::Visit { chosen, k, next } => {
                    self.stats.branches_entered += 1;
                    self.stack.push(Frame::Exit {
                        emitted_at_entry: self.stats.emitted,
                    });
                    if k == 0 {
                        self.stats.emitted += 1;
                        return Some(chosen);
                    }
                    if next == self.pool.len() {
                        continue;
                    }
                    let mut with = chosen.clone();
                    with.push(self.pool[next]);
                    self.stack.push(Frame::TryExclude { chosen, k, next });
                    if self.exists(&with, k - 1, next + 1) {
                        self.stack.push(Frame::Visit {
                            chosen: with,
                            k: k - 1,
                            next: next + 1,
                        });
                    }
                }
                Frame::TryExclude { chosen, k, next } => {
                    if self.exists(&chosen, k, next + 1) {
                        self.stack.push(Frame::Visit {
                            chosen,
                            k,
                            next: next + 1,
                        });
                    }
                }
            }
        }
        None
    }
}

/// Every strong Horn-backdoor set of size exactly `k` drawn from the
/// variables occurring in `phi`.
pub fn generate_sbds(phi: &CnfFormula, k: usize) -> BackdoorStream<'_> {
    let mut stream = BackdoorStream {
        phi,
        pool: phi.occurring_vars(),
        stack: Vec::new(),
        stats: SearchStats::default(),
    };
    if stream.exists(&[], k, 0) {
        stream.stack.push(Frame::Visit {
            chosen: Vec::new(),
            k,
            next: 0,
        });
    }
    stream
}
