//! Polynomial families viewed as `r × l` matrices, and the bookkeeping that
//! drives PET induction: ED-set conditions, the zero-pattern sets `H_j`,
//! subfamilies, column degrees and weights.
//!
//! Rows and columns are 0-based throughout the Rust API. Text output and the
//! JSON trace use 1-based labels.

mod ed;
pub mod io;
mod weight;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::polyalg::{Degree, PolyError, ShiftAssignment, ShiftContext, UPoly};

pub use ed::{normalize_to_ed, EdViolation, NormalizationReport};
pub use weight::{
    column_weight, equivalence_classes, equivalent, vector_less, weight_cmp, weight_less, ColumnDegree,
    SubweightMatrix, Weight, WeightWitness,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("row {row} has {got} entries, expected {expected}")]
    Ragged { row: usize, got: usize, expected: usize },
    #[error("a family needs at least one column")]
    NoColumns,
    #[error("equivalence is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("family degree {degree} exceeds the weight cap D = {cap}")]
    DegreeAboveCap { degree: u32, cap: usize },
    #[error("vectors of length {0} and {1} cannot be compared")]
    LengthMismatch(usize, usize),
    #[error("weights of shape (l = {0}, D = {1}) and (l = {2}, D = {3}) cannot be compared")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("rows {rows:?} vanish in every column, so j0 is undefined")]
    Malformed { rows: Vec<usize> },
    #[error("normalization needs integer coefficients; entry ({row}, {col}) depends on shift variables")]
    NotIntegral { row: usize, col: usize },
}

/// Rows of `I_0`, `I_1` and `I_2`: all-zero rows, nonzero rows of degree at
/// most one, and everything else.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IPartition {
    pub zero: Vec<usize>,
    pub linear: Vec<usize>,
    pub higher: Vec<usize>,
}

/// `H_0 ⊇ H_1 ⊇ ... ⊇ H_{l-1}` together with `j0`, the first `j ≥ 1` with
/// `H_j` empty. Column `j0 - 1` (0-based) is the first column in which every
/// row of `H_{j0-1}` is nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HSets {
    pub sets: Vec<BTreeSet<usize>>,
    pub j0: usize,
}

/// An `r × l` matrix of polynomials sharing one shift context, plus the degree
/// cap `D` used to size weight vectors.
#[derive(Clone, Debug)]
pub struct PolyFamily {
    ctx: ShiftContext,
    cols: usize,
    rows: Vec<Vec<UPoly>>,
    degree_cap: usize,
}

/// Families compare by their entries; the degree cap is bookkeeping.
impl PartialEq for PolyFamily {
    fn eq(&self, other: &Self) -> bool {
        self.cols == other.cols && self.rows == other.rows
    }
}

impl Eq for PolyFamily {}

impl PolyFamily {
    /// Builds a family from rows. The degree cap defaults to `max(1, deg P)`.
    pub fn new(ctx: ShiftContext, cols: usize, rows: Vec<Vec<UPoly>>) -> Result<Self, FamilyError> {
        if cols == 0 {
            return Err(FamilyError::NoColumns);
        }
        let mut ctx = ctx;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(FamilyError::Ragged { row: i, got: row.len(), expected: cols });
            }
            for p in row {
                ctx = ctx.join(&p.context())?;
            }
        }
        let rows = rows
            .into_iter()
            .map(|row| row.into_iter().map(|p| p.with_context(ctx)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let mut fam = PolyFamily { ctx, cols, rows, degree_cap: 1 };
        fam.degree_cap = fam.degree().or_zero().max(1) as usize;
        Ok(fam)
    }

    /// Univariate integer family from coefficient lists (`[c0, c1, c2]` is
    /// `c0 + c1 u + c2 u^2`).
    pub fn univariate(rows: &[&[&[i64]]]) -> Self {
        let ctx = ShiftContext::new(1);
        let cols = rows.first().map_or(1, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|c| UPoly::univariate(ctx, c)).collect()).collect();
        PolyFamily::new(ctx, cols, rows).expect("well-formed literal family")
    }

    pub fn with_degree_cap(mut self, cap: usize) -> Self {
        self.degree_cap = cap;
        self
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    pub fn context(&self) -> ShiftContext {
        self.ctx
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<UPoly>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[UPoly] {
        &self.rows[i]
    }

    pub fn entry(&self, i: usize, j: usize) -> &UPoly {
        &self.rows[i][j]
    }

    pub fn column(&self, j: usize) -> Vec<&UPoly> {
        self.rows.iter().map(|r| &r[j]).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &UPoly)> {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().enumerate().map(move |(j, p)| ((i, j), p)))
    }

    /// Maximum u-degree over all entries.
    pub fn degree(&self) -> Degree {
        self.entries().map(|(_, p)| p.u_degree()).max().unwrap_or(Degree::ZeroPoly)
    }

    pub fn row_degree(&self, i: usize) -> Degree {
        self.rows[i].iter().map(UPoly::u_degree).max().unwrap_or(Degree::ZeroPoly)
    }

    pub fn column_max_degree(&self, j: usize) -> Degree {
        self.rows.iter().map(|r| r[j].u_degree()).max().unwrap_or(Degree::ZeroPoly)
    }

    pub fn is_integral(&self) -> bool {
        self.entries().all(|(_, p)| p.is_integral())
    }

    pub fn specialize(&self, assignment: &ShiftAssignment) -> Result<PolyFamily, FamilyError> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|p| p.specialize(assignment)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PolyFamily { ctx: self.ctx, cols: self.cols, rows, degree_cap: self.degree_cap })
    }

    /// Reorders columns so that new column `j` is old column `perm[j]`.
    pub fn permute_columns(&self, perm: &[usize]) -> PolyFamily {
        assert_eq!(perm.len(), self.cols, "permutation length");
        let rows = self.rows.iter().map(|r| perm.iter().map(|&j| r[j].clone()).collect()).collect();
        PolyFamily { ctx: self.ctx, cols: self.cols, rows, degree_cap: self.degree_cap }
    }

    pub(crate) fn from_parts(ctx: ShiftContext, cols: usize, rows: Vec<Vec<UPoly>>, degree_cap: usize) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == cols));
        PolyFamily { ctx, cols, rows, degree_cap }
    }

    /// Violated ED-set conditions; empty means the family is an ED-set.
    pub fn ed_violations(&self) -> Vec<EdViolation> {
        ed::violations(self)
    }

    pub fn is_ed_set(&self) -> bool {
        self.ed_violations().is_empty()
    }

    /// ED-set whose first row attains the family degree.
    pub fn is_standard(&self) -> bool {
        !self.rows.is_empty() && self.is_ed_set() && self.row_degree(0) == self.degree()
    }

    pub fn i_partition(&self) -> IPartition {
        let mut part = IPartition::default();
        for i in 0..self.rows.len() {
            match self.row_degree(i) {
                Degree::ZeroPoly => part.zero.push(i),
                Degree::Of(d) if d <= 1 => part.linear.push(i),
                Degree::Of(_) => part.higher.push(i),
            }
        }
        part
    }

    /// `H_0..H_{upto}`, where `H_0` is the set of nonzero rows.
    fn h_chain(&self, upto: usize) -> Vec<BTreeSet<usize>> {
        let mut sets = Vec::with_capacity(upto + 1);
        let h0: BTreeSet<usize> = (0..self.rows.len()).filter(|&i| self.row_degree(i) != Degree::ZeroPoly).collect();
        sets.push(h0);
        for j in 1..=upto {
            let next = sets[j - 1].iter().copied().filter(|&i| self.rows[i][j - 1].is_zero()).collect();
            sets.push(next);
        }
        sets
    }

    /// `H_0..H_{l-1}` and `j0`. For an ED-set `j0 ≤ l` always exists; rows
    /// that are zero in every column make it undefined.
    pub fn h_sets(&self) -> Result<HSets, FamilyError> {
        let mut sets = self.h_chain(self.cols);
        let j0 = (1..=self.cols).find(|&j| sets[j].is_empty());
        sets.truncate(self.cols);
        match j0 {
            Some(j0) => Ok(HSets { sets, j0 }),
            None => {
                let all = self.h_chain(self.cols);
                Err(FamilyError::Malformed { rows: all[self.cols].iter().copied().collect() })
            }
        }
    }

    /// The subfamily `P^{start+1}`: rows of `H_start` restricted to columns
    /// `start..l`. May have no rows.
    pub fn subfamily(&self, start: usize) -> PolyFamily {
        assert!(start < self.cols, "subfamily start beyond last column");
        let h = self.h_chain(start).pop().unwrap_or_default();
        let rows = h.iter().map(|&i| self.rows[i][start..].to_vec()).collect();
        PolyFamily { ctx: self.ctx, cols: self.cols - start, rows, degree_cap: self.degree_cap }
    }

    /// Column degree `C(P)`: how many columns have maximal degree `i`, for
    /// `i = 1..D`.
    pub fn column_degree(&self) -> Result<ColumnDegree, FamilyError> {
        self.check_cap()?;
        Ok(weight::column_degree(self))
    }

    /// Subweight `w(P)`: one column-weight vector per family column.
    pub fn subweight(&self) -> Result<SubweightMatrix, FamilyError> {
        self.check_cap()?;
        Ok(weight::subweight(self))
    }

    /// Weight `W(P) = [w(P^1), .., w(P^l)]`.
    pub fn weight(&self) -> Result<Weight, FamilyError> {
        self.check_cap()?;
        Ok(Weight::new(self.degree_cap, (0..self.cols).map(|a| weight::subweight(&self.subfamily(a))).collect()))
    }

    fn check_cap(&self) -> Result<(), FamilyError> {
        let deg = self.degree().or_zero();
        if deg as usize > self.degree_cap {
            return Err(FamilyError::DegreeAboveCap { degree: deg, cap: self.degree_cap });
        }
        Ok(())
    }
}

impl fmt::Display for PolyFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return writeln!(f, "(empty family, {} columns)", self.cols);
        }
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect();
        let widths: Vec<usize> =
            (0..self.cols).map(|j| cells.iter().map(|r| r[j].chars().count()).max().unwrap_or(0)).collect();
        for row in &cells {
            write!(f, "[")?;
            for (j, c) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " | ")?;
                }
                write!(f, "{:<w$}", c, w = widths[j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// The two families of the worked example, used by tests, examples and the
/// `paper-example` command.
pub mod worked {
    use super::PolyFamily;

    /// `P = [[u², 2u, u], [0, u², 0], [0, 2u², 3u]]`
    pub fn family_p() -> PolyFamily {
        PolyFamily::univariate(&[&[&[0, 0, 1], &[0, 2], &[0, 1]], &[&[], &[0, 0, 1], &[]], &[&[], &[0, 0, 2], &[0, 3]]])
            .with_degree_cap(2)
    }

    /// `Q`, the reduction of `P` at `(v, w) = (-1, 1)`.
    pub fn family_q() -> PolyFamily {
        PolyFamily::univariate(&[
            &[&[1, -2, 1], &[1, 0, -1], &[1, 1]],
            &[&[1, 2, 1], &[1, 0, -1], &[1, 1]],
            &[&[], &[0, -4], &[]],
            &[&[], &[1, -6, 1], &[3, 3]],
            &[&[], &[1, 2, 1], &[3, 3]],
        ])
        .with_degree_cap(2)
    }
}
