use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{FamilyError, PolyFamily};
use crate::polyalg::{CoeffPoly, Degree, UPoly};

/// One violated ED-set condition. Positions are 0-based `(row, col)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdViolation {
    /// Condition 1: an entry is a nonzero constant.
    NonzeroConstant { at: (usize, usize) },
    /// Condition 2: two entries of the same column differ by a nonzero
    /// constant.
    ConstantDifference { a: (usize, usize), b: (usize, usize) },
    /// Condition 3: a row vanishes identically.
    ZeroRow { row: usize },
    /// Condition 4: two rows coincide.
    DuplicateRows { first: usize, second: usize },
}

impl EdViolation {
    pub fn condition(&self) -> u8 {
        match self {
            EdViolation::NonzeroConstant { .. } => 1,
            EdViolation::ConstantDifference { .. } => 2,
            EdViolation::ZeroRow { .. } => 3,
            EdViolation::DuplicateRows { .. } => 4,
        }
    }
}

impl fmt::Display for EdViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            EdViolation::NonzeroConstant { at: (i, j) } => {
                write!(f, "(1) entry ({}, {}) is a nonzero constant", i + 1, j + 1)
            }
            EdViolation::ConstantDifference { a: (i, j), b: (k, m) } => {
                write!(f, "(2) entries ({}, {}) and ({}, {}) differ by a nonzero constant", i + 1, j + 1, k + 1, m + 1)
            }
            EdViolation::ZeroRow { row } => write!(f, "(3) row {} is identically zero", row + 1),
            EdViolation::DuplicateRows { first, second } => {
                write!(f, "(4) rows {} and {} are identical", first + 1, second + 1)
            }
        }
    }
}

/// An entry position and its constant term.
type Member = ((usize, usize), CoeffPoly);

pub(super) fn violations(fam: &PolyFamily) -> Vec<EdViolation> {
    let mut out = Vec::new();

    for (at, p) in fam.entries() {
        if p.u_degree() == Degree::Of(0) {
            out.push(EdViolation::NonzeroConstant { at });
        }
    }

    // Two entries of one column differ by a u-constant exactly when their
    // non-constant parts agree, so grouping by that part finds every
    // offending pair. Entries of different columns act through different
    // transformations and are not compared.
    let mut order: Vec<(usize, UPoly)> = Vec::new();
    let mut groups: HashMap<(usize, UPoly), Vec<Member>> = HashMap::new();
    for (at, p) in fam.entries() {
        let key = (at.1, p.without_constant_term());
        let slot = groups.entry(key.clone()).or_insert_with(|| {
            order.push(key);
            Vec::new()
        });
        slot.push((at, p.constant_term()));
    }
    for key in &order {
        let members = &groups[key];
        let (first, _) = &members[0];
        let mut seen: Vec<&CoeffPoly> = vec![&members[0].1];
        for (at, c) in &members[1..] {
            if !seen.contains(&c) {
                seen.push(c);
                out.push(EdViolation::ConstantDifference { a: *first, b: *at });
            }
        }
    }

    for i in 0..fam.num_rows() {
        if fam.row(i).iter().all(UPoly::is_zero) {
            out.push(EdViolation::ZeroRow { row: i });
        }
    }

    let mut first_of: HashMap<&[UPoly], usize> = HashMap::new();
    for i in 0..fam.num_rows() {
        match first_of.get(fam.row(i)) {
            Some(&first) => out.push(EdViolation::DuplicateRows { first, second: i }),
            None => {
                first_of.insert(fam.row(i), i);
            }
        }
    }
    out
}

/// What [`normalize_to_ed`] did, in terms of the original row indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizationReport {
    /// Constant term removed from each entry, per original row.
    pub constant_shifts: Vec<Vec<BigInt>>,
    /// Rows that vanished once constants were removed.
    pub dropped_rows: Vec<usize>,
    /// Surviving rows grouped by equality, in order of first appearance.
    /// The first member of each group is the row that is kept.
    pub merged_groups: Vec<Vec<usize>>,
}

impl NormalizationReport {
    /// True when normalization changed nothing.
    pub fn is_trivial(&self) -> bool {
        self.constant_shifts.iter().flatten().all(Zero::is_zero)
            && self.dropped_rows.is_empty()
            && self.merged_groups.iter().all(|g| g.len() == 1)
    }

    /// Replays the recorded steps on `original`.
    pub fn apply(&self, original: &PolyFamily) -> PolyFamily {
        let ctx = original.context();
        let rows = self
            .merged_groups
            .iter()
            .map(|g| {
                let i = g[0];
                original
                    .row(i)
                    .iter()
                    .zip(&self.constant_shifts[i])
                    .map(|(p, c)| p - &UPoly::constant(ctx, c.clone()))
                    .collect()
            })
            .collect();
        PolyFamily::from_parts(ctx, original.num_cols(), rows, original.degree_cap())
    }
}

/// Strips constant terms, drops zero rows and merges identical rows. The
/// result is an ED-set, or has no rows at all.
pub fn normalize_to_ed(fam: &PolyFamily) -> Result<(PolyFamily, NormalizationReport), FamilyError> {
    if let Some(((row, col), _)) = fam.entries().find(|(_, p)| !p.is_integral()) {
        return Err(FamilyError::NotIntegral { row, col });
    }
    let mut constant_shifts = Vec::with_capacity(fam.num_rows());
    let mut stripped = Vec::with_capacity(fam.num_rows());
    for row in fam.rows() {
        constant_shifts
            .push(row.iter().map(|p| p.constant_term().as_integer().unwrap_or_default()).collect::<Vec<_>>());
        stripped.push(row.iter().map(UPoly::without_constant_term).collect::<Vec<_>>());
    }

    let mut dropped_rows = Vec::new();
    let mut merged_groups: Vec<Vec<usize>> = Vec::new();
    let mut group_of: HashMap<&[UPoly], usize> = HashMap::new();
    for (i, row) in stripped.iter().enumerate() {
        if row.iter().all(UPoly::is_zero) {
            dropped_rows.push(i);
            continue;
        }
        match group_of.get(row.as_slice()) {
            Some(&g) => merged_groups[g].push(i),
            None => {
                group_of.insert(row.as_slice(), merged_groups.len());
                merged_groups.push(vec![i]);
            }
        }
    }

    let rows = merged_groups.iter().map(|g| stripped[g[0]].clone()).collect();
    let out = PolyFamily::from_parts(fam.context(), fam.num_cols(), rows, fam.degree_cap());
    Ok((out, NormalizationReport { constant_shifts, dropped_rows, merged_groups }))
}
