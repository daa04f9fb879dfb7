//! All models of weight at least `k` by self-reduction.
//!
//! Variables are fixed from the highest index down, value 1 before value 0.
//! A branch is only entered if the decision oracle confirms that the
//! substituted formula still has a model of sufficient weight, so every
//! entered branch ends in at least one emitted model and the delay between
//! two models is at most `2n` oracle calls.
//!
//! Models are emitted only once every variable is fixed. Once the remaining
//! weight budget reaches 0 it stays at 0, so heavier extensions of a model
//! that already meets the bound are still enumerated.

mod affine;
mod oracle;

pub use affine::{max_weight_affine, MAX_FREE_VARS};
pub use oracle::{has_maxones, max_weight_dual_horn, OracleKind, WeightOracle};

use crate::csp::{substitute, GammaFormula};
pub use crate::enumcore::SearchStats;
use crate::Result;

enum Frame {
    Visit {
        phi: GammaFormula,
        chosen: Vec<usize>,
        budget: i64,
        p: usize,
    },
    TryZero {
        phi: GammaFormula,
        chosen: Vec<usize>,
        budget: i64,
        p: usize,
    },
    Exit {
        emitted_at_entry: usize,
    },
}

/// Pull-based enumeration of the models of weight at least `k`, each given
/// as the ascending list of variables set to true.
pub struct MaxOnesStream {
    oracle: WeightOracle,
    stack: Vec<Frame>,
    stats: SearchStats,
}

impl MaxOnesStream {
    pub fn stats(&self) -> SearchStats {
        self.stats
    }

    fn ask(&mut self, phi: &GammaFormula, budget: i64) -> Result<bool> {
        self.stats.oracle_calls += 1;
        self.oracle.decide_unchecked(phi, budget)
    }

    fn step(&mut self) -> Result<Option<Vec<usize>>> {
        while let Some(frame) = self.stack.pop() {
            match frame {
                Frame::Exit { emitted_at_entry } => {
                    if self.stats.emitted == emitted_at_entry {
                        self.stats.dead_branches += 1;
                    }
                }
                Frame::Visit {
                    phi,
                    mut chosen,
                    budget,
                    p,
                } => {
                    self.stats.branches_entered += 1;
                    self.stack.push(Frame::Exit {
                        emitted_at_entry: self.stats.emitted,
                    });
                    if p == 0 {
                        self.stats.emitted += 1;
                        chosen.reverse();
                        return Ok(Some(chosen));
                    }
                    let var = p - 1;
                    let one = substitute(&phi, var, true);
                    let one_budget = (budget - 1).max(0);
                    let enter = self.ask(&one, one_budget)?;
                    self.stack.push(Frame::TryZero {
                        phi,
                        chosen: chosen.clone(),
                        budget,
                        p,
                    });
                    if enter {
                        chosen.push(var);
                        self.stack.push(Frame::Visit {
                            phi: one,
                            chosen,
                            budget: one_budget,
                            p: var,
                        });
                    }
                }
                Frame::TryZero {
                    phi,
                    chosen,
                    budget,
                    p,
                } => {
                    let var = p - 1;
                    let zero = substitute(&phi, var, false);
                    if self.ask(&zero, budget)? {
                        self.stack.push(Frame::Visit {
                            phi: zero,
                            chosen,
                            budget,
                            p: var,
                        });
                    }
                }
            }
        }
        Ok(None)
    }
}

impl Iterator for MaxOnesStream {
    type Item = Result<Vec<usize>>;

    fn next(&mut self) -> Option<Self::Item> {
        match self.step() {
            Ok(Some(m)) => Some(Ok(m)),
            Ok(None) => None,
            Err(e) => {
                self.stack.clear();
                Some(Err(e))
            }
        }
    }
}

/// Starts the enumeration of all models of `phi` of weight at least `k`.
///
/// Fails if the oracle's class precondition does not hold for `phi`.
/// Substitution keeps every supported class, so the check is done once.
pub fn enumerate_maxones(oracle: WeightOracle, phi: &GammaFormula, k: usize) -> Result<MaxOnesStream> {
    oracle.check_applicable(phi)?;
    let mut stream = MaxOnesStream {
        oracle,
        stack: Vec::new(),
        stats: SearchStats::default(),
    };
    let budget = i64::try_from(k).unwrap_or(i64::MAX);
    if stream.ask(phi, budget)? {
        stream.stack.push(Frame::Visit {
            phi: phi.clone(),
            chosen: Vec::new(),
            budget,
            p: phi.var_count(),
        });
    }
    Ok(stream)
}
