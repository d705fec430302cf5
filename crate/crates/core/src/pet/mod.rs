//! The van der Corput reduction step and the PET-induction driver.
//!
//! Each step picks a distinguished row `i0`, forms the doubled family
//! `P̄_{v,w}` and subtracts its last row from the others. By default the
//! shift pair `(v, w)` is formal, so the checks hold for almost every
//! concrete choice at once.

mod bar;
mod case;
mod oracle;
mod reduce;
mod standardize;
pub mod trace;

use thiserror::Error;

use crate::family::FamilyError;
use crate::polyalg::{Degree, PolyError};

pub use bar::{build_bar_family, build_reduced_family, BarFamily, BarRow, Shifts, Variant};
pub use case::{classify_case, z_assignment, CaseSelection, ZAssignment};
pub use oracle::{specialization_oracle, OracleOutcome};
pub use reduce::{
    initial_provenance, k_bound, kbound_start, leading_permutation, reduce_partial, reduce_step, reduce_to_linear,
    verify_step, KBound, ReduceOptions, ReductionStep, ReductionTrace, RowForm, RowOrigin, ShiftMode, StepChecks,
    StepMeasures, DEFAULT_STEP_BUDGET,
};
pub use standardize::standardize_family;

#[derive(Debug, Error)]
pub enum PetError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("family is not standard: {}", .0.join("; "))]
    NotStandard(Vec<String>),
    #[error("family is not an ED-set: {}", .0.join("; "))]
    NotEd(Vec<String>),
    #[error("reduction needs degree at least 2, family has degree {0}")]
    DegreeTooLow(Degree),
    #[error("entry (1, 1) does not attain the family degree; permute columns first")]
    LeadingEntry,
    #[error("concrete shifts need {expected} coordinates")]
    ShiftArity { expected: usize },
    #[error("{stage} is not an ED-set: {}", .violations.join("; "))]
    Degenerate { stage: &'static str, violations: Vec<String> },
    #[error("cannot standardize: {0}")]
    Standardize(String),
    #[error("the specialization oracle needs a step with formal shifts")]
    NotFormal,
    #[error("step budget of {0} exhausted")]
    StepBudget(usize),
    #[error("step {steps} produced {rows} rows, above the cap of {cap}")]
    RowCap { steps: usize, rows: usize, cap: usize },
    #[error("step {step} failed its checks: {}", failed_names(.checks))]
    CheckFailed { step: usize, checks: StepChecks, dump: Box<ReductionStep> },
}

fn failed_names(c: &StepChecks) -> String {
    c.named().iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect::<Vec<_>>().join(", ")
}
