//! JSON form of a reduction trace. Keys are emitted in a fixed order and
//! rows, columns and pairs are numbered from 1, matching the shift variable
//! names (`v1_1` belongs to pair 1).

use serde_json::{json, Value};

use super::{PetError, ReductionStep, ReductionTrace, RowForm, RowOrigin, Shifts, Variant};
use crate::family::{io, ColumnDegree, Weight};
use crate::polyalg::text::{self, integer_to_json};

fn column_degree_json(c: &ColumnDegree) -> Value {
    json!(c.0)
}

pub fn weight_json(w: &Weight) -> Value {
    Value::Array(w.matrices().iter().map(|m| json!(m.rows())).collect())
}

fn origin_json(row: usize, o: &RowOrigin) -> Value {
    let last = match &o.last {
        RowForm::Original => json!({"form": "original"}),
        RowForm::Unshifted => json!({"form": "unshifted"}),
        RowForm::Shifted(by) => {
            json!({"form": "shifted", "by": by.iter().map(text::to_json).collect::<Vec<_>>()})
        }
        RowForm::Product(by) => {
            json!({"form": "product", "by": by.iter().map(text::to_json).collect::<Vec<_>>()})
        }
    };
    json!({"row": row + 1, "source": o.source + 1, "factors": o.factors, "last": last})
}

pub fn step_json(index: usize, step: &ReductionStep, full: bool) -> Value {
    let shifts = match &step.bar.shifts {
        Shifts::Formal(_) => Value::Null,
        Shifts::Concrete { v, w } => json!({
            "v": v.iter().map(integer_to_json).collect::<Vec<_>>(),
            "w": w.iter().map(integer_to_json).collect::<Vec<_>>(),
        }),
    };
    let bar_rows: Vec<Value> = step
        .bar
        .rows
        .iter()
        .map(|r| {
            json!({
                "source": r.source + 1,
                "variant": match r.variant { Variant::Z => "z", Variant::W => "w" },
            })
        })
        .collect();
    let checks: serde_json::Map<String, Value> =
        step.checks.named().iter().map(|(k, v)| (k.to_string(), Value::Bool(*v))).collect();
    json!({
        "step": index + 1,
        "permutation": step.permutation.as_ref().map(|p| p.iter().map(|j| j + 1).collect::<Vec<_>>()),
        "case": step.selection.case_id,
        "i0": step.selection.i0 + 1,
        "j0": step.selection.j0,
        "rationale": step.selection.rationale,
        "pair": step.pair().map(|p| p + 1),
        "shifts": shifts,
        "s": step.bar.s(),
        "bar_rows": bar_rows,
        "bar": if full { io::to_json(&step.bar.family) } else { Value::Null },
        "out": if full { io::to_json(&step.output) } else { Value::Null },
        "rows_out": step.output.num_rows(),
        "degree_out": step.output.degree().or_zero(),
        "C_before": column_degree_json(&step.c_before),
        "C_after": column_degree_json(&step.c_after),
        "W_before": weight_json(&step.w_before),
        "W_after": weight_json(&step.w_after),
        "checks": Value::Object(checks),
    })
}

/// The whole trace. Without `full`, per-step families are replaced by
/// `null`; the initial and terminal families are always present.
pub fn to_json(trace: &ReductionTrace, full: bool) -> Value {
    partial_to_json(trace, full, None)
}

/// A trace that may have stopped early. When `stopped` is given it is
/// recorded as the reason, `terminal` is the last family reached and `k`
/// is `null`.
pub fn partial_to_json(trace: &ReductionTrace, full: bool, stopped: Option<&PetError>) -> Value {
    let k = if stopped.is_some() { Value::Null } else { json!(trace.k) };
    json!({
        "initial": io::to_json(&trace.initial),
        "steps": trace.steps.iter().enumerate().map(|(i, s)| step_json(i, s, full)).collect::<Vec<_>>(),
        "terminal": io::to_json(&trace.terminal),
        "provenance": trace.provenance.iter().enumerate().map(|(i, o)| origin_json(i, o)).collect::<Vec<_>>(),
        "stopped": stopped.map(|e| e.to_string()),
        "k": k,
    })
}
