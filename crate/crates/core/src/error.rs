use thiserror::Error;

pub type Result<T, E = EnumError> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumError {
    /// The kernelizer produced a kernel larger than its own size bound.
    #[error("kernel solver nonterminating budget exceeded: kernel size {size} > bound {bound}")]
    KernelBoundExceeded { size: usize, bound: usize },

    #[error("invalid kernel solution: {0}")]
    InvalidKernelSolution(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{what}: {actual} exceeds the limit of {limit}")]
    GuardExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
}
