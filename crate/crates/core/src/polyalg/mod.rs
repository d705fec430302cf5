//! Exact polynomials in the averaging variables `u_1..u_d` with coefficients
//! in an integer polynomial ring over formal shift variables.
//!
//! Substituting `u -> u + v` for a formal shift `v` keeps everything exact, so
//! statements that hold "for almost every shift" can be checked once on the
//! generic polynomial and then specialized to any concrete integer shift.

mod coeff;
mod context;
mod monomial;
pub mod text;
mod upoly;

use std::collections::BTreeSet;

use thiserror::Error;

pub use coeff::{is_generically_nonzero, CoeffPoly};
pub use context::{ShiftContext, ShiftKind, ShiftVar};
pub use monomial::Monomial;
pub use upoly::{Degree, ShiftAssignment, ShiftEntry, UPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("context mismatch: dimension {left} vs {right}")]
    ContextMismatch { left: usize, right: usize },
    #[error("expected {expected} coordinates, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("shift variable {0} is not allocated in this context")]
    UnknownShift(ShiftVar),
    #[error("assignment is missing values for {}", fmt_vars(missing))]
    IncompleteAssignment { missing: Vec<ShiftVar> },
    #[error("polynomial still depends on shift variables {}", fmt_vars(.0.iter()))]
    Unspecialized(BTreeSet<ShiftVar>),
    #[error("malformed shift variable name `{0}`")]
    BadShiftName(String),
    #[error("{0}")]
    Format(String),
}

fn fmt_vars<'a>(vars: impl IntoIterator<Item = &'a ShiftVar>) -> String {
    vars.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
}
