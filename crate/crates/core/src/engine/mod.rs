//! Minimal data (dimensions, pairings, a functional on basic cobordisms),
//! its dual elements, and the extension to arbitrary cobordisms through the
//! flattening m ↦ m̂ and contraction with dual elements.

mod cobordism;
mod data;
pub mod generate;
mod harness;
mod matrix;

use thiserror::Error;

use crate::presentation::PresentationError;
use crate::scalar::ScalarError;
use crate::theory::TheoryError;

pub use cobordism::{extend, swap_matrix, Cobordism, CobordismMap};
pub use data::{minimal_data, minimal_data_with, AbelianOracle, DualElement, FunctionalOracle, MinimalData};
pub use harness::{
    axiom_check, extend_column, functoriality_check, HarnessConfig, Report, ReportEntry, COMPOSITION, IDENTITY,
    MENDING, NONDEGENERACY, PERMUTATION, SEWING, SYMMETRY, UNION, ZIGZAG_LEFT, ZIGZAG_RIGHT,
};
pub use matrix::ScalarMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("pairing at genus {0} is singular (nondegeneracy fails)")]
    Singular(usize),
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Oracle(#[from] TheoryError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("{0}")]
    Shape(String),
}
