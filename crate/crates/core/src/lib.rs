//! Parameterized enumeration with bounded delay.
//!
//! Three enumeration problems are covered, each with an algorithm whose delay
//! between consecutive solutions is bounded by `t(k) * poly(n)`:
//!
//! * all vertex covers of size at most `k` ([`vertex_cover`]), obtained by
//!   expanding the solutions of a Buss kernel ([`enumcore::kernel_enumerate`]);
//! * all models of weight at least `k` of a constraint formula ([`maxones`]),
//!   obtained by self-reduction against an exact decision oracle;
//! * all strong Horn-backdoor sets of size exactly `k` of a CNF formula
//!   ([`backdoor`]), obtained by ordered branching.
//!
//! Every enumerator is a pull-based iterator, so [`enumcore::run_with_profile`]
//! can time the gap between consecutive solutions.

pub mod backdoor;
pub mod csp;
pub mod enumcore;
mod error;
pub mod generate;
pub mod io;
pub mod maxones;
pub mod report;
pub mod vertex_cover;

pub use error::{EnumError, Result};
