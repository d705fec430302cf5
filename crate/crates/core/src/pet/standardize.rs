use super::case::z_assignment;
use super::PetError;
use crate::family::PolyFamily;
use crate::polyalg::{ShiftContext, ShiftKind, UPoly};

/// Lifts an ED-set of degree below `b` in `u ∈ ℤ^d` to a standard family of
/// degree `b` in `(u, v, w) ∈ ℤ^{3d}`. Each row `i` gives the rows
/// `p_ij(u + z_ij)` and `p_ij(u + w)`, with `u_1^b` added in column 1; the
/// two coincide for rows of degree one and are then kept once.
pub fn standardize_family(fam: &PolyFamily, b: u32) -> Result<PolyFamily, PetError> {
    if !fam.is_ed_set() {
        return Err(PetError::NotEd(fam.ed_violations().iter().map(|v| v.to_string()).collect()));
    }
    if fam.degree().or_zero() >= b {
        return Err(PetError::Standardize(format!("family degree {} is not below b = {}", fam.degree(), b)));
    }
    if let Some(((i, j), _)) = fam.entries().find(|(_, p)| !p.is_integral()) {
        return Err(PetError::Standardize(format!(
            "entry ({}, {}) depends on shift variables; standardize integer families only",
            i + 1,
            j + 1
        )));
    }
    if let Some(((i, j), _)) = fam.entries().find(|(_, p)| !p.constant_term().is_zero()) {
        return Err(PetError::Standardize(format!("entry ({}, {}) has a nonzero constant term", i + 1, j + 1)));
    }

    let d = fam.context().dim();
    let ctx = ShiftContext::new(3 * d);
    let u = |k: usize| UPoly::var(ctx, k);
    let with_v: Vec<UPoly> = (0..d).map(|k| &u(k) + &u(d + k)).collect();
    let with_w: Vec<UPoly> = (0..d).map(|k| &u(k) + &u(2 * d + k)).collect();
    let q = u(0).pow(b);
    let z = z_assignment(fam);

    let mut rows: Vec<Vec<UPoly>> = Vec::new();
    for i in 0..fam.num_rows() {
        let mut zrow = Vec::with_capacity(fam.num_cols());
        let mut wrow = Vec::with_capacity(fam.num_cols());
        for (j, p) in fam.row(i).iter().enumerate() {
            let zi = if z.get(i, j) == ShiftKind::V { &with_v } else { &with_w };
            let mut a = p.compose(zi)?;
            let mut c = p.compose(&with_w)?;
            if j == 0 {
                a = &a + &q;
                c = &c + &q;
            }
            zrow.push(a);
            wrow.push(c);
        }
        let same = zrow == wrow;
        rows.push(zrow);
        if !same {
            rows.push(wrow);
        }
    }
    let out = PolyFamily::new(ctx, fam.num_cols(), rows)?.with_degree_cap(b as usize);
    if !out.is_standard() {
        return Err(PetError::Degenerate {
            stage: "standardized family",
            violations: out.ed_violations().iter().map(|v| v.to_string()).collect(),
        });
    }
    Ok(out)
}
