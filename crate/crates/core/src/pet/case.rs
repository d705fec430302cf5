use std::fmt;

use super::PetError;
use crate::family::PolyFamily;
use crate::polyalg::{Degree, ShiftKind, UPoly};

/// Which of the five cases applies and the distinguished row `i0` (0-based).
/// `j0` is the first `j ≥ 1` with `H_j` empty, so `j0 = 1` in cases 1 to 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseSelection {
    pub case_id: u8,
    pub i0: usize,
    pub j0: usize,
    pub rationale: String,
}

impl fmt::Display for CaseSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "case {}, i0 = {}, j0 = {}: {}", self.case_id, self.i0 + 1, self.j0, self.rationale)
    }
}

/// Equivalence extended to zero: two zeros match, zero never matches a
/// nonzero polynomial.
pub(crate) fn equiv(p: &UPoly, q: &UPoly) -> bool {
    match (p.is_zero(), q.is_zero()) {
        (true, true) => true,
        (false, false) => p.leading_form() == q.leading_form(),
        _ => false,
    }
}

/// Smallest index among `candidates` whose entry has minimal degree.
fn min_degree_row(fam: &PolyFamily, col: usize, candidates: impl IntoIterator<Item = usize>) -> Option<usize> {
    candidates.into_iter().min_by_key(|&i| (fam.entry(i, col).u_degree(), i))
}

pub(crate) fn check_reducible(fam: &PolyFamily) -> Result<u32, PetError> {
    if !fam.is_standard() {
        return Err(PetError::NotStandard(fam.ed_violations().iter().map(|v| v.to_string()).collect()));
    }
    let deg = match fam.degree() {
        Degree::Of(d) if d >= 2 => d,
        other => return Err(PetError::DegreeTooLow(other)),
    };
    if fam.entry(0, 0).u_degree() != Degree::Of(deg) {
        return Err(PetError::LeadingEntry);
    }
    Ok(deg)
}

/// Selects the case and `i0` for a standard family of degree at least two
/// whose `(1,1)` entry attains the family degree.
pub fn classify_case(fam: &PolyFamily) -> Result<CaseSelection, PetError> {
    let deg = Degree::Of(check_reducible(fam)?);
    let h = fam.h_sets()?;
    let r = fam.num_rows();

    if h.j0 == 1 {
        let p11 = fam.entry(0, 0);
        let off: Vec<usize> = (0..r).filter(|&i| !equiv(fam.entry(i, 0), p11)).collect();
        if !off.is_empty() {
            let i0 = min_degree_row(fam, 0, off).expect("nonempty");
            return Ok(CaseSelection {
                case_id: 1,
                i0,
                j0: 1,
                rationale: "H_1 is empty and column 1 has entries not equivalent to p_11".into(),
            });
        }
        let witness = (0..r).find_map(|i| {
            (0..fam.num_cols())
                .find(|&j| {
                    let (p, q) = (fam.entry(i, j), fam.entry(0, j));
                    !equiv(p, q) && (p.u_degree() == deg || q.u_degree() == deg)
                })
                .map(|j| (i, j))
        });
        if let Some((i0, j)) = witness {
            return Ok(CaseSelection {
                case_id: 2,
                i0,
                j0: 1,
                rationale: format!(
                    "column 1 is one class; p_{},{} is not equivalent to p_1,{} at top degree",
                    i0 + 1,
                    j + 1,
                    j + 1
                ),
            });
        }
        return Ok(CaseSelection {
            case_id: 3,
            i0: 0,
            j0: 1,
            rationale: "every column is one class or below top degree".into(),
        });
    }

    let col = h.j0 - 1;
    let rows: Vec<usize> = h.sets[h.j0 - 1].iter().copied().collect();
    let first = fam.entry(rows[0], col);
    let split = rows.iter().any(|&i| !equiv(fam.entry(i, col), first));
    let i0 = min_degree_row(fam, col, rows.iter().copied()).expect("H_{j0-1} is nonempty");
    if split {
        Ok(CaseSelection {
            case_id: 4,
            i0,
            j0: h.j0,
            rationale: format!("column {} splits into several classes over H_{}", h.j0, h.j0 - 1),
        })
    } else {
        Ok(CaseSelection {
            case_id: 5,
            i0: rows[0],
            j0: h.j0,
            rationale: format!("column {} is a single class over H_{}", h.j0, h.j0 - 1),
        })
    }
}

/// `z_ij`: the `w` shift for entries of degree exactly one, `v` otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZAssignment(pub Vec<Vec<ShiftKind>>);

impl ZAssignment {
    pub fn get(&self, i: usize, j: usize) -> ShiftKind {
        self.0[i][j]
    }
}

pub fn z_assignment(fam: &PolyFamily) -> ZAssignment {
    ZAssignment(
        fam.rows()
            .iter()
            .map(|row| {
                row.iter().map(|p| if p.u_degree() == Degree::Of(1) { ShiftKind::W } else { ShiftKind::V }).collect()
            })
            .collect(),
    )
}
