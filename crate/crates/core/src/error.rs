//! Error type shared by all toolkit operations.
//!
//! Variants are grouped by how a caller should react: bad input data,
//! a configured limit being hit, a numerical procedure failing to settle,
//! a constraint system with no solution, or an internal invariant breaking.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent input (shape mismatches, non-permutation
    /// dual, out-of-range indices, unreadable files, inadmissible forms).
    #[error("input error: {0}")]
    Input(String),

    /// A configured cap was exceeded (rank, group order, node budget, ...).
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// A numerical procedure failed (no convergence, no finite order found,
    /// orthogonality residual too large).
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// A constraint system admits no solution (search contradiction,
    /// twisted product violating the ring axioms).
    #[error("unsatisfiable: {0}")]
    Unsatisfiable(String),

    /// Fusion coefficients recovered from spectral data were not
    /// nonnegative integers within the residual bound; reports the worst
    /// offending triple.
    #[error(
        "fusion coefficient N[{i}][{j}][{k}] = {value} is not a nonnegative integer \
         (residual {residual:.3e})"
    )]
    NonIntegralFusion {
        i: usize,
        j: usize,
        k: usize,
        value: f64,
        residual: f64,
    },

    /// An invariant that valid inputs cannot break was violated; indicates a
    /// bug or corrupted data.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Coarse classification used by callers that map errors to process
    /// exit codes: input problems, capacity/numerical problems, and
    /// determinations that a check simply failed.
    pub fn is_input(&self) -> bool {
        matches!(self, Error::Input(_))
    }

    pub fn is_capacity_or_numerical(&self) -> bool {
        matches!(
            self,
            Error::Capacity(_) | Error::Numerical(_) | Error::Internal(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
