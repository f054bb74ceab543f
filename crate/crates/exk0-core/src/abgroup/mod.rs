//! Exact integer linear algebra over arbitrary-precision integers.
//!
//! Everything here is deterministic and exact: Smith normal form with full
//! transform tracking, column Hermite normal form, cokernels presented as
//! finitely generated abelian groups, and canonical subgroup lattices with
//! enumeration of the intermediate subgroups of a finite quotient.

mod group;
mod hnf;
mod matrix;
mod snf;
mod subgroup;

use alloc::string::String;
use core::fmt;

pub use group::{cokernel, FinGenAbGroup};
pub use hnf::hnf_columns;
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SmithDecomposition};
pub use subgroup::{enumerate_subgroups_containing, Subgroup, DEFAULT_SUBGROUP_CAP};

/// Errors from the abelian-group layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AbGroupError {
    /// A vector or matrix did not match the ambient dimension.
    DimensionMismatch { expected: usize, got: usize },
    /// Subgroup enumeration was requested but the quotient has positive
    /// free rank.
    InfiniteQuotient,
    /// The quotient is finite but its order exceeds the configured cap.
    QuotientTooLarge { order: String, cap: u64 },
}

impl fmt::Display for AbGroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbGroupError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            AbGroupError::InfiniteQuotient => {
                write!(f, "quotient group is infinite (lattice is not of full rank)")
            }
            AbGroupError::QuotientTooLarge { order, cap } => {
                write!(f, "quotient order {order} exceeds the cap {cap}")
            }
        }
    }
}

impl core::error::Error for AbGroupError {}
