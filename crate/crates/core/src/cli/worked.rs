//! The worked example run end to end, with its expected values embedded.

use std::io::Write;

use crate::family::weight_less;
use crate::family::worked::{family_p, family_q};
use crate::family::{PolyFamily, SubweightMatrix};
use crate::pet::{build_bar_family, build_reduced_family, classify_case, Shifts};
use crate::polyalg::ShiftAssignment;

/// One checked value: what was computed and what the example states.
pub struct GoldenLine {
    pub label: &'static str,
    pub got: String,
    pub want: String,
}

impl GoldenLine {
    pub fn matches(&self) -> bool {
        self.got == self.want
    }
}

fn set_1based(set: &std::collections::BTreeSet<usize>) -> String {
    format!("{{{}}}", set.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(","))
}

fn matrix(m: &SubweightMatrix) -> String {
    if m.columns().iter().flatten().all(|&x| x == 0) {
        "zero".into()
    } else {
        m.to_string()
    }
}

fn line(label: &'static str, got: impl Into<String>, want: &str) -> GoldenLine {
    GoldenLine { label, got: got.into(), want: want.into() }
}

/// Computes every value the example states.
pub fn golden_lines() -> Result<Vec<GoldenLine>, String> {
    let p = family_p();
    let q = family_q();
    let err = |e: &dyn std::fmt::Display| e.to_string();
    let hp = p.h_sets().map_err(|e| err(&e))?;
    let hq = q.h_sets().map_err(|e| err(&e))?;
    let wp = p.weight().map_err(|e| err(&e))?;
    let wq = q.weight().map_err(|e| err(&e))?;
    let p2 = p.subfamily(1);
    let p2_expected = PolyFamily::univariate(&[&[&[0, 0, 1], &[]], &[&[0, 0, 2], &[0, 3]]]).with_degree_cap(2);
    let sel = classify_case(&p).map_err(|e| err(&e))?;
    let bar = build_bar_family(&p, &sel, &Shifts::Formal(0)).map_err(|e| err(&e))?;
    let reduced = build_reduced_family(&bar)
        .specialize(&ShiftAssignment::new().with_pair(0, &[-1], &[1]))
        .map_err(|e| err(&e))?;

    Ok(vec![
        line("ED-set(P)", p.is_ed_set().to_string(), "true"),
        line("H_1(P)", set_1based(&hp.sets[1]), "{2,3}"),
        line("P^2", if p2 == p2_expected { "as printed" } else { "differs" }, "as printed"),
        line("w(P^1)", matrix(&wp.matrices()[0]), "[[0,1,2],[1,2,0]]"),
        line("w(P^2)", matrix(&wp.matrices()[1]), "[[0,1],[2,0]]"),
        line("w(P^3)", matrix(&wp.matrices()[2]), "zero"),
        line("ED-set(Q)", q.is_ed_set().to_string(), "true"),
        line("H_1(Q)", set_1based(&hq.sets[1]), "{3,4,5}"),
        line("w(Q^2)", matrix(&wq.matrices()[1]), "[[1,1],[1,0]]"),
        line("W(Q)<W(P)", weight_less(&wq, &wp).map_err(|e| err(&e))?.to_string(), "true"),
        line("case(P)", format!("case {}, i0={}", sel.case_id, sel.i0 + 1), "case 4, i0=2"),
        line("P_{-1,1}=Q", if reduced == q { "MATCH" } else { "DIFFER" }, "MATCH"),
    ])
}

/// Prints each value next to its expected value. Returns whether all match.
pub fn run(out: &mut dyn Write) -> std::io::Result<Result<bool, String>> {
    let lines = match golden_lines() {
        Ok(l) => l,
        Err(e) => return Ok(Err(e)),
    };
    writeln!(out, "P =")?;
    write!(out, "{}", family_p())?;
    writeln!(out, "Q =")?;
    write!(out, "{}", family_q())?;
    for l in &lines {
        if l.matches() {
            writeln!(out, "{:<12} {:<22} ok", l.label, l.got)?;
        } else {
            writeln!(out, "{:<12} {:<22} MISMATCH, expected {}", l.label, l.got, l.want)?;
        }
    }
    let good = lines.iter().filter(|l| l.matches()).count();
    writeln!(out, "{good}/{} values match", lines.len())?;
    Ok(Ok(good == lines.len()))
}
