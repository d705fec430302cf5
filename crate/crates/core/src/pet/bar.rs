use num_bigint::BigInt;

use super::case::{z_assignment, CaseSelection, ZAssignment};
use super::PetError;
use crate::family::PolyFamily;
use crate::polyalg::{ShiftContext, ShiftEntry, ShiftKind, ShiftVar, UPoly};

/// The shift pair `(v, w)` used by one reduction step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shifts {
    /// Formal variables `v{pair}_k`, `w{pair}_k`.
    Formal(u32),
    /// Integer vectors of length `d`.
    Concrete { v: Vec<BigInt>, w: Vec<BigInt> },
}

impl Shifts {
    /// The same integer in every coordinate.
    pub fn broadcast(d: usize, v: i64, w: i64) -> Self {
        Shifts::Concrete { v: vec![BigInt::from(v); d], w: vec![BigInt::from(w); d] }
    }

    fn entries(&self, kind: ShiftKind, d: usize) -> Vec<ShiftEntry> {
        match self {
            Shifts::Formal(pair) => (0..d as u32)
                .map(|k| {
                    ShiftEntry::Formal(match kind {
                        ShiftKind::V => ShiftVar::v(*pair, k),
                        ShiftKind::W => ShiftVar::w(*pair, k),
                    })
                })
                .collect(),
            Shifts::Concrete { v, w } => {
                let src = match kind {
                    ShiftKind::V => v,
                    ShiftKind::W => w,
                };
                src.iter().cloned().map(ShiftEntry::Int).collect()
            }
        }
    }

    /// `v_k` or `w_k` as a u-constant polynomial.
    pub(crate) fn as_poly(&self, kind: ShiftKind, k: usize, ctx: ShiftContext) -> UPoly {
        match &self.entries(kind, ctx.dim())[k] {
            ShiftEntry::Int(x) => UPoly::constant(ctx, x.clone()),
            ShiftEntry::Formal(var) => UPoly::shift_var(ctx, *var).expect("pair allocated in ctx"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// `p_ij(u + z_ij)`
    Z,
    /// `p_ij(u + w)`
    W,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BarRow {
    pub source: usize,
    pub variant: Variant,
}

/// `P̄_{v,w}` with the row labels. Row 0 is the z-variant of row 0 and the
/// last row is the w-variant of `i0`; the rest follow in ascending source
/// row, z-variant first. Rows of degree at most one appear once, as their
/// two variants coincide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarFamily {
    pub family: PolyFamily,
    pub rows: Vec<BarRow>,
    pub i0: usize,
    pub shifts: Shifts,
    pub z: ZAssignment,
}

impl BarFamily {
    pub fn s(&self) -> usize {
        self.rows.len()
    }
}

fn bar_order(fam: &PolyFamily, i0: usize) -> Vec<BarRow> {
    let part = fam.i_partition();
    let mut middle = Vec::new();
    for i in 0..fam.num_rows() {
        if part.higher.contains(&i) {
            if i != 0 {
                middle.push(BarRow { source: i, variant: Variant::Z });
            }
            if i != i0 {
                middle.push(BarRow { source: i, variant: Variant::W });
            }
        } else if part.linear.contains(&i) && i != i0 {
            middle.push(BarRow { source: i, variant: Variant::W });
        }
    }
    let mut rows = Vec::with_capacity(middle.len() + 2);
    rows.push(BarRow { source: 0, variant: Variant::Z });
    rows.extend(middle);
    rows.push(BarRow { source: i0, variant: Variant::W });
    rows
}

/// Builds `P̄_{v,w}`. With formal shifts the pair must be one the family's
/// context has not used yet; the context grows to include it.
pub fn build_bar_family(fam: &PolyFamily, sel: &CaseSelection, shifts: &Shifts) -> Result<BarFamily, PetError> {
    let d = fam.context().dim();
    let ctx = match shifts {
        Shifts::Formal(pair) => fam.context().join(&ShiftContext::with_pairs(d, pair + 1))?,
        Shifts::Concrete { v, w } => {
            if v.len() != d || w.len() != d {
                return Err(PetError::ShiftArity { expected: d });
            }
            fam.context()
        }
    };
    let z = z_assignment(fam);
    let order = bar_order(fam, sel.i0);
    assemble(fam, ctx, order, z, sel.i0, shifts)
}

/// Builds the bar family from a given row order and z-assignment, checking
/// that the result is an ED-set.
pub(crate) fn assemble(
    fam: &PolyFamily,
    ctx: ShiftContext,
    order: Vec<BarRow>,
    z: ZAssignment,
    i0: usize,
    shifts: &Shifts,
) -> Result<BarFamily, PetError> {
    let d = ctx.dim();
    let v_entries = shifts.entries(ShiftKind::V, d);
    let w_entries = shifts.entries(ShiftKind::W, d);
    let mut rows = Vec::with_capacity(order.len());
    for br in &order {
        let mut row = Vec::with_capacity(fam.num_cols());
        for (j, p) in fam.row(br.source).iter().enumerate() {
            let kind = match br.variant {
                Variant::Z => z.get(br.source, j),
                Variant::W => ShiftKind::W,
            };
            let entries = if kind == ShiftKind::V { &v_entries } else { &w_entries };
            row.push(p.clone().with_context(ctx)?.shift_substitute(entries)?);
        }
        rows.push(row);
    }
    let family = PolyFamily::from_parts(ctx, fam.num_cols(), rows, fam.degree_cap());
    let violations = family.ed_violations();
    if !violations.is_empty() {
        return Err(PetError::Degenerate {
            stage: "bar family",
            violations: violations.iter().map(|v| v.to_string()).collect(),
        });
    }
    Ok(BarFamily { family, rows: order, i0, shifts: shifts.clone(), z })
}

/// `P_{v,w}`: every row but the last minus the last.
pub fn build_reduced_family(bar: &BarFamily) -> PolyFamily {
    let fam = &bar.family;
    let s = fam.num_rows();
    let last = fam.row(s - 1);
    let rows = (0..s - 1).map(|h| fam.row(h).iter().zip(last).map(|(q, qs)| q - qs).collect()).collect();
    PolyFamily::from_parts(fam.context(), fam.num_cols(), rows, fam.degree_cap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::worked::{family_p, family_q};
    use crate::pet::classify_case;
    use crate::polyalg::ShiftAssignment;

    #[test]
    fn concrete_shifts_reproduce_q() {
        let p = family_p();
        let sel = classify_case(&p).unwrap();
        let bar = build_bar_family(&p, &sel, &Shifts::broadcast(1, -1, 1)).unwrap();
        assert_eq!(bar.s(), 6);
        assert_eq!(build_reduced_family(&bar), family_q());
    }

    #[test]
    fn generic_bar_rows() {
        let p = family_p();
        let sel = classify_case(&p).unwrap();
        let bar = build_bar_family(&p, &sel, &Shifts::Formal(0)).unwrap();
        let ctx = bar.family.context();
        let u = UPoly::var(ctx, 0);
        let v = UPoly::shift_var(ctx, ShiftVar::v(0, 0)).unwrap();
        let w = UPoly::shift_var(ctx, ShiftVar::w(0, 0)).unwrap();
        let uv = &u + &v;
        let uw = &u + &w;
        assert_eq!(bar.family.row(0), &[uv.pow(2), uw.scale(2), uw.clone()]);
        let zero = UPoly::zero(ctx);
        assert_eq!(bar.family.row(5), &[zero.clone(), uw.pow(2), zero]);
        assert_eq!(bar.rows[0], BarRow { source: 0, variant: Variant::Z });
    }

    #[test]
    fn generic_then_specialize_matches() {
        let p = family_p();
        let sel = classify_case(&p).unwrap();
        let generic = build_reduced_family(&build_bar_family(&p, &sel, &Shifts::Formal(0)).unwrap());
        let a = ShiftAssignment::new().with_pair(0, &[-1], &[1]);
        assert_eq!(generic.specialize(&a).unwrap(), family_q());
    }

    #[test]
    fn linear_rows_appear_once() {
        let f = PolyFamily::univariate(&[&[&[0, 0, 1], &[]], &[&[0, 1], &[0, 2]]]);
        let sel = classify_case(&f).unwrap();
        let bar = build_bar_family(&f, &sel, &Shifts::Formal(0)).unwrap();
        assert_eq!(bar.s(), 3);
    }

    #[test]
    fn degenerate_shift_is_reported() {
        let p = family_p();
        let sel = classify_case(&p).unwrap();
        assert!(matches!(build_bar_family(&p, &sel, &Shifts::broadcast(1, 2, 2)), Err(PetError::Degenerate { .. })));
    }
}
