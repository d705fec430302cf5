//! Numerical lab: Gowers-Host-Kra seminorms on finite cyclic systems,
//! multiple polynomial averages along Følner boxes on cyclic and torus
//! rotation systems, the van der Corput inequality and the linear-case
//! seminorm bound.
//!
//! Every sum runs in ascending index order. Parallel sums split the index
//! range into fixed chunks and add the chunk totals in chunk order, so the
//! result does not depend on the thread count.

mod average;
pub mod config;
mod folner;
mod gowers;
mod linear;
mod observable;
pub mod report;
mod system;
mod vdc;

use thiserror::Error;

use crate::family::FamilyError;

pub use average::{
    cauchy_probe, multi_average, multi_average_fourier, AverageResult, CauchyRow, IntFamily, ProductFunction,
};
pub use folner::{FolnerBoxes, FolnerShape};
pub use gowers::{autocorrelation, dft, gowers_norm, seminorm_shift_independence};
pub use linear::{linear_bound_check, CompositeShift, LinearBoundReport};
pub use observable::Observable;
pub use system::{CyclicSystem, System, TorusSystem};
pub use vdc::{vdc_check, VdcReport, VdcRow};

pub use num_complex::Complex64;

/// Cap on the number of Fourier coefficients a torus product may carry.
pub const MAX_FREQUENCY_SUPPORT: usize = 1 << 20;

#[derive(Debug, Error)]
pub enum ErgodicError {
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("translation by {shift} is not ergodic mod {n}")]
    NonErgodicShift { shift: i64, n: u64 },
    #[error("seminorm order must be at least 1")]
    BadOrder,
    #[error("{what}: expected {expected}, got {got}")]
    Dimension { what: &'static str, expected: usize, got: usize },
    #[error("{0}")]
    Unsupported(String),
    #[error("entry ({row}, {col}) still depends on shift variables")]
    NotSpecialized { row: usize, col: usize },
    #[error("polynomial value overflows at u = {0:?}")]
    Overflow(Vec<i64>),
    #[error("product support of {size} frequencies exceeds the limit of {limit}")]
    FrequencyOverflow { size: usize, limit: usize },
    #[error("empty index list")]
    NoIndices,
    #[error(transparent)]
    Family(#[from] FamilyError),
}
