//! Filtered complexes over the integers and their homology.

mod complex;
mod homology;
mod snf;

pub use complex::{
    assoc_graded, filtration_sub, hat_complex, normalize_gradings, verify_d_squared, CfkGenerator, DSquaredWitness,
    FilteredComplex, GradedComplex, Term,
};
pub use homology::{bigraded_homology, graded_homology, hat_homology, tau, BigradedHomology, Group};
pub use snf::{snf, Matrix, Snf};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("GradingInconsistent: the differential from {from} to {to} disagrees with the transported gradings")]
    GradingInconsistent { from: String, to: String },
    #[error("GradingInconsistent: no grading reaches {0} (differential graph disconnected)")]
    GradingUndetermined(String),
    #[error("hat homology is {0}, expected a single free summand")]
    HatHomologyNotZ(String),
    #[error("no Alexander shift makes the homology symmetric")]
    NoSymmetricShift,
    #[error("gradings must be assigned before this operation")]
    Ungraded,
    #[error("integer overflow in exact arithmetic")]
    Overflow,
}
