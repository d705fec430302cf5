use std::cmp::Ordering;

use super::bar::{build_bar_family, build_reduced_family, BarFamily, Shifts, Variant};
use super::case::{check_reducible, classify_case, CaseSelection};
use super::standardize::standardize_family;
use super::PetError;
use crate::family::{weight_cmp, ColumnDegree, PolyFamily, Weight};
use crate::polyalg::{Degree, ShiftKind, UPoly};

pub const DEFAULT_STEP_BUDGET: usize = 1_000_000;

/// How each step picks its shift pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShiftMode {
    /// A fresh formal pair per step: the "almost every shift" reading.
    Formal,
    /// The same integers `v`, `w` in every coordinate at every step.
    Concrete { v: i64, w: i64 },
}

#[derive(Clone, Debug)]
pub struct ReduceOptions {
    pub shifts: ShiftMode,
    pub step_budget: usize,
    /// Abort once a step outputs more rows than this. Row counts can grow
    /// very fast, so bulk runs use this as a resource guard.
    pub row_cap: Option<usize>,
}

impl Default for ReduceOptions {
    fn default() -> Self {
        ReduceOptions { shifts: ShiftMode::Formal, step_budget: DEFAULT_STEP_BUDGET, row_cap: None }
    }
}

/// Outcome of the per-step checks. All must hold for a valid step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StepChecks {
    pub standard_after: bool,
    pub col_deg_nonincrease: bool,
    pub deg_drop_ok: bool,
    pub weight_decreased: bool,
    pub measure_decreased: bool,
    pub row_one_pure_shift: bool,
}

impl StepChecks {
    pub fn all(&self) -> bool {
        self.standard_after
            && self.col_deg_nonincrease
            && self.deg_drop_ok
            && self.weight_decreased
            && self.measure_decreased
            && self.row_one_pure_shift
    }

    pub fn named(&self) -> [(&'static str, bool); 6] {
        [
            ("standard_after", self.standard_after),
            ("col_deg_nonincrease", self.col_deg_nonincrease),
            ("deg_drop_ok", self.deg_drop_ok),
            ("weight_decreased", self.weight_decreased),
            ("measure_decreased", self.measure_decreased),
            ("row_one_pure_shift", self.row_one_pure_shift),
        ]
    }
}

/// Function attached to one row, relative to the original `f_1..f_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowForm {
    Original,
    /// `T^{by} b` for the previous function `b` of the source row.
    Shifted(Vec<UPoly>),
    /// The previous function, unchanged.
    Unshifted,
    /// `b · T^{by} b`.
    Product(Vec<UPoly>),
}

/// Which original function a row descends from, how many copies of it are
/// multiplied together, and the last transformation applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowOrigin {
    pub source: usize,
    pub factors: u64,
    pub last: RowForm,
}

impl RowOrigin {
    pub fn is_pure_shift_of(&self, row: usize) -> bool {
        self.source == row && self.factors == 1
    }
}

#[derive(Clone, Debug)]
pub struct ReductionStep {
    /// Column permutation applied to the previous output (`perm[new] = old`).
    pub permutation: Option<Vec<usize>>,
    pub input: PolyFamily,
    pub selection: CaseSelection,
    pub bar: BarFamily,
    pub output: PolyFamily,
    pub c_before: ColumnDegree,
    pub c_after: ColumnDegree,
    pub w_before: Weight,
    pub w_after: Weight,
    pub provenance: Vec<RowOrigin>,
    pub checks: StepChecks,
}

impl ReductionStep {
    /// The formal pair this step introduced, if any.
    pub fn pair(&self) -> Option<u32> {
        match self.bar.shifts {
            Shifts::Formal(p) => Some(p),
            Shifts::Concrete { .. } => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReductionTrace {
    pub initial: PolyFamily,
    pub steps: Vec<ReductionStep>,
    pub terminal: PolyFamily,
    pub provenance: Vec<RowOrigin>,
    pub k: usize,
}

/// Column swap putting a top-degree entry of row 1 into column 1, or `None`
/// when it is already there.
pub fn leading_permutation(fam: &PolyFamily) -> Option<Vec<usize>> {
    let deg = fam.degree();
    if fam.is_empty() || fam.entry(0, 0).u_degree() == deg {
        return None;
    }
    let j = (0..fam.num_cols()).find(|&j| fam.entry(0, j).u_degree() == deg)?;
    let mut perm: Vec<usize> = (0..fam.num_cols()).collect();
    perm.swap(0, j);
    Some(perm)
}

fn column_degrees(fam: &PolyFamily) -> Vec<Degree> {
    (0..fam.num_cols()).map(|j| fam.column_max_degree(j)).collect()
}

/// `p(v - w) - p(0)` for a linear `p`, the offset between its two shifts.
fn linear_offset(p: &UPoly, shifts: &Shifts, ctx: crate::polyalg::ShiftContext) -> UPoly {
    let images: Vec<UPoly> =
        (0..ctx.dim()).map(|k| &shifts.as_poly(ShiftKind::V, k, ctx) - &shifts.as_poly(ShiftKind::W, k, ctx)).collect();
    let p = p.clone().with_context(ctx).expect("same dimension");
    &p.compose(&images).expect("arity d") - &UPoly::from_coeff(ctx, p.constant_term())
}

fn step_provenance(input: &PolyFamily, bar: &BarFamily, prev: &[RowOrigin]) -> Vec<RowOrigin> {
    let ctx = bar.family.context();
    let linear = input.i_partition().linear;
    let offsets = |i: usize| -> Vec<UPoly> {
        input
            .row(i)
            .iter()
            .enumerate()
            .map(|(j, p)| match bar.z.get(i, j) {
                ShiftKind::W => linear_offset(p, &bar.shifts, ctx),
                ShiftKind::V => UPoly::zero(ctx),
            })
            .collect()
    };
    bar.rows[..bar.s() - 1]
        .iter()
        .map(|br| {
            let before = &prev[br.source];
            if linear.contains(&br.source) {
                RowOrigin {
                    source: before.source,
                    factors: before.factors.saturating_mul(2),
                    last: RowForm::Product(offsets(br.source)),
                }
            } else {
                let last = match br.variant {
                    Variant::Z => RowForm::Shifted(offsets(br.source)),
                    Variant::W => RowForm::Unshifted,
                };
                RowOrigin { source: before.source, factors: before.factors, last }
            }
        })
        .collect()
}

/// `C` and `W` on both sides of a step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepMeasures {
    pub c_before: ColumnDegree,
    pub c_after: ColumnDegree,
    pub w_before: Weight,
    pub w_after: Weight,
}

impl StepMeasures {
    pub fn of(input: &PolyFamily, output: &PolyFamily) -> Result<Self, PetError> {
        Ok(StepMeasures {
            c_before: input.column_degree()?,
            c_after: output.column_degree()?,
            w_before: input.weight()?,
            w_after: output.weight()?,
        })
    }
}

/// Recomputes every check for one step from its input, selection and output.
pub fn verify_step(step: &ReductionStep) -> Result<StepChecks, PetError> {
    let m = StepMeasures::of(&step.input, &step.output)?;
    check_step(&step.input, &step.selection, &step.output, &step.provenance, &m)
}

fn check_step(
    input: &PolyFamily,
    sel: &CaseSelection,
    output: &PolyFamily,
    provenance: &[RowOrigin],
    m: &StepMeasures,
) -> Result<StepChecks, PetError> {
    let c_order = m.c_after.cmp_vec(&m.c_before)?;
    let w_order = weight_cmp(&m.w_after, &m.w_before)?;
    let cols_ok = column_degrees(output).iter().zip(column_degrees(input)).all(|(after, before)| *after <= before);
    let drop = input.degree().or_zero() as i64 - output.degree().or_zero() as i64;
    let deg_drop_ok = if sel.case_id == 3 { drop == 1 } else { drop == 0 };
    Ok(StepChecks {
        standard_after: output.is_standard(),
        col_deg_nonincrease: cols_ok && c_order != Ordering::Greater,
        deg_drop_ok,
        weight_decreased: w_order == Ordering::Less,
        measure_decreased: c_order == Ordering::Less || (c_order == Ordering::Equal && w_order == Ordering::Less),
        row_one_pure_shift: provenance.first().is_some_and(|o| o.is_pure_shift_of(0)),
    })
}

/// One reduction step on a family ready for it: standard, degree at least
/// two, top degree at position `(1,1)`.
pub fn reduce_step(
    input: &PolyFamily,
    shifts: &Shifts,
    prev: &[RowOrigin],
    permutation: Option<Vec<usize>>,
) -> Result<ReductionStep, PetError> {
    let selection = classify_case(input)?;
    let bar = build_bar_family(input, &selection, shifts)?;
    let output = build_reduced_family(&bar);
    let provenance = step_provenance(input, &bar, prev);
    let m = StepMeasures::of(input, &output)?;
    let checks = check_step(input, &selection, &output, &provenance, &m)?;
    Ok(ReductionStep {
        permutation,
        input: input.clone(),
        selection,
        bar,
        output,
        c_before: m.c_before,
        c_after: m.c_after,
        w_before: m.w_before,
        w_after: m.w_after,
        provenance,
        checks,
    })
}

pub fn initial_provenance(r: usize) -> Vec<RowOrigin> {
    (0..r).map(|i| RowOrigin { source: i, factors: 1, last: RowForm::Original }).collect()
}

/// Iterates the reduction until the family is linear. Every step is checked
/// and the first failing step aborts the run.
pub fn reduce_to_linear(fam: &PolyFamily, opts: &ReduceOptions) -> Result<ReductionTrace, PetError> {
    match reduce_partial(fam, opts)? {
        (trace, None) => Ok(trace),
        (_, Some(e)) => Err(e),
    }
}

/// Like [`reduce_to_linear`], but a failing step ends the run instead of
/// discarding it: the steps completed so far come back together with the
/// error. The trace's `terminal` is then the last family reached and `k`
/// is not meaningful. Errors in the input itself are still returned as `Err`.
pub fn reduce_partial(fam: &PolyFamily, opts: &ReduceOptions) -> Result<(ReductionTrace, Option<PetError>), PetError> {
    if !fam.is_standard() {
        return Err(PetError::NotStandard(fam.ed_violations().iter().map(|v| v.to_string()).collect()));
    }
    let d = fam.context().dim();
    let mut current = fam.clone();
    let mut provenance = initial_provenance(fam.num_rows());
    let mut steps = Vec::new();
    let mut stopped = None;
    while current.degree() > Degree::Of(1) {
        if steps.len() >= opts.step_budget {
            stopped = Some(PetError::StepBudget(opts.step_budget));
            break;
        }
        match next_step(&current, d, opts, &provenance, steps.len() + 1) {
            Ok(step) => {
                current = step.output.clone();
                provenance = step.provenance.clone();
                steps.push(step);
            }
            Err(e) => {
                stopped = Some(e);
                break;
            }
        }
    }
    let k = current.num_rows() + 1;
    Ok((ReductionTrace { initial: fam.clone(), steps, terminal: current, provenance, k }, stopped))
}

fn next_step(
    current: &PolyFamily,
    d: usize,
    opts: &ReduceOptions,
    provenance: &[RowOrigin],
    index: usize,
) -> Result<ReductionStep, PetError> {
    let permutation = leading_permutation(current);
    let current = match &permutation {
        Some(perm) => current.permute_columns(perm),
        None => current.clone(),
    };
    check_reducible(&current)?;
    let shifts = match opts.shifts {
        ShiftMode::Formal => Shifts::Formal(current.context().pairs()),
        ShiftMode::Concrete { v, w } => Shifts::broadcast(d, v, w),
    };
    let step = reduce_step(&current, &shifts, provenance, permutation)?;
    if !step.checks.all() {
        return Err(PetError::CheckFailed { step: index, checks: step.checks, dump: Box::new(step) });
    }
    if let Some(cap) = opts.row_cap {
        if step.output.num_rows() > cap {
            return Err(PetError::RowCap { steps: index, rows: step.output.num_rows(), cap });
        }
    }
    Ok(step)
}

/// How `k` was obtained for a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KBound {
    pub k: usize,
    pub standardized: bool,
    pub steps: usize,
    pub terminal_rows: usize,
}

/// The standard family whose reduction yields `k` for an ED-set, and whether
/// it had to be standardized. Constant terms are dropped first; a family
/// whose first row misses the top degree is standardized with `b = deg + 1`.
pub fn kbound_start(fam: &PolyFamily) -> Result<(PolyFamily, bool), PetError> {
    if !fam.is_ed_set() {
        return Err(PetError::NotEd(fam.ed_violations().iter().map(|v| v.to_string()).collect()));
    }
    let stripped = PolyFamily::from_parts(
        fam.context(),
        fam.num_cols(),
        fam.rows().iter().map(|r| r.iter().map(UPoly::without_constant_term).collect()).collect(),
        fam.degree_cap(),
    );
    if stripped.degree() <= Degree::Of(1) || stripped.is_standard() {
        return Ok((stripped, false));
    }
    let b = stripped.degree().or_zero() + 1;
    Ok((standardize_family(&stripped, b)?, true))
}

/// Seminorm index `k` controlling the averages of an ED-set: one more than
/// the row count of the linear family at the end of the reduction.
pub fn k_bound(fam: &PolyFamily, opts: &ReduceOptions) -> Result<KBound, PetError> {
    let (start, standardized) = kbound_start(fam)?;
    if start.degree() <= Degree::Of(1) {
        let r = start.num_rows();
        return Ok(KBound { k: r + 1, standardized, steps: 0, terminal_rows: r });
    }
    let trace = reduce_to_linear(&start, opts)?;
    Ok(KBound { k: trace.k, standardized, steps: trace.steps.len(), terminal_rows: trace.terminal.num_rows() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::worked::{family_p, family_q};

    #[test]
    fn worked_family_first_step() {
        let p = family_p();
        let step = reduce_step(&p, &Shifts::Formal(0), &initial_provenance(3), None).unwrap();
        assert_eq!(step.selection.case_id, 4);
        assert_eq!(step.output.num_rows(), 5);
        assert!(step.checks.all());
    }

    #[test]
    fn row_cap_stops_growing_chains() {
        let opts = ReduceOptions { row_cap: Some(20), ..Default::default() };
        match reduce_to_linear(&family_p(), &opts) {
            Err(PetError::RowCap { steps, rows, cap }) => {
                assert_eq!(cap, 20);
                assert!(rows > 20);
                assert!(steps >= 2);
            }
            other => panic!("expected a row cap error, got {other:?}"),
        }
    }

    #[test]
    fn concrete_first_step_is_q() {
        let opts = ReduceOptions { shifts: ShiftMode::Concrete { v: -1, w: 1 }, ..Default::default() };
        let p = family_p();
        let step = reduce_step(&p, &Shifts::broadcast(1, -1, 1), &initial_provenance(3), None).unwrap();
        assert_eq!(step.output, family_q());
        assert!(step.checks.all());
        assert_eq!(verify_step(&step).unwrap(), step.checks);
        // later steps may or may not degenerate at fixed shifts; either way
        // the first output is Q
        if let Ok(trace) = reduce_to_linear(&p, &opts) {
            assert_eq!(trace.steps[0].output, family_q());
        }
    }

    #[test]
    fn linear_family_has_empty_trace() {
        let f = PolyFamily::univariate(&[&[&[0, 1], &[]], &[&[], &[0, 2]]]);
        let trace = reduce_to_linear(&f, &ReduceOptions::default()).unwrap();
        assert!(trace.steps.is_empty());
        assert_eq!(trace.k, 3);
    }

    #[test]
    fn single_square_drops_degree() {
        let f = PolyFamily::univariate(&[&[&[0, 0, 1]]]);
        let trace = reduce_to_linear(&f, &ReduceOptions::default()).unwrap();
        assert_eq!(trace.steps.len(), 1);
        assert_eq!(trace.steps[0].selection.case_id, 3);
        assert_eq!(trace.k, 2);
    }

    #[test]
    fn cube_chain() {
        let f = PolyFamily::univariate(&[&[&[0, 0, 0, 1]]]);
        let trace = reduce_to_linear(&f, &ReduceOptions::default()).unwrap();
        assert!(trace.steps.iter().all(|s| s.checks.all()));
        assert!(trace.provenance[0].is_pure_shift_of(0));
    }

    #[test]
    fn k_bound_of_linear_family() {
        let f = PolyFamily::univariate(&[&[&[0, 1], &[]], &[&[], &[0, 1]], &[&[0, 1], &[0, 1]]]);
        assert_eq!(k_bound(&f, &ReduceOptions::default()).unwrap().k, 4);
    }

    #[test]
    fn k_bound_standardizes_when_needed() {
        // row 1 is linear while the family is quadratic
        let f = PolyFamily::univariate(&[&[&[0, 1]], &[&[0, 0, 1]]]);
        let (start, standardized) = kbound_start(&f).unwrap();
        assert!(standardized);
        assert!(start.is_standard());
        assert_eq!(start.degree(), Degree::Of(3));
        // the lifted chain grows quickly; a capped run still checks each step
        let opts = ReduceOptions { row_cap: Some(40), ..Default::default() };
        assert!(matches!(k_bound(&f, &opts), Err(PetError::RowCap { .. })));
    }
}
