//! CSV output. Floats are written in scientific notation with 12
//! significant digits so that files diff cleanly across platforms.

use std::fmt::Write;

use super::{CauchyRow, VdcReport};

pub fn fmt_float(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{:.11e}", x)
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt_float).unwrap_or_default()
}

/// `N,norm,cauchy_diff,seminorm`, one row per index. The seminorm column
/// holds the same value on every row, or is empty when not computed.
pub fn average_csv(rows: &[CauchyRow], seminorm: Option<f64>) -> String {
    let mut out = String::from("N,norm,cauchy_diff,seminorm\n");
    for r in rows {
        writeln!(out, "{},{},{},{}", r.index, fmt_float(r.norm), opt(r.diff), opt(seminorm)).unwrap();
    }
    out
}

/// `N,lhs,rhs`, one row per index.
pub fn vdc_csv(report: &VdcReport) -> String {
    let mut out = String::from("N,lhs,rhs\n");
    for r in &report.rows {
        writeln!(out, "{},{},{}", r.index, fmt_float(r.lhs), fmt_float(r.rhs)).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt_float(1.0 / 3.0), "3.33333333333e-1");
        assert_eq!(fmt_float(0.0), "0.00000000000e0");
        assert_eq!(fmt_float(f64::INFINITY), "inf");
    }

    #[test]
    fn average_table() {
        let rows =
            [CauchyRow { index: 10, norm: 0.5, diff: None }, CauchyRow { index: 20, norm: 0.25, diff: Some(0.25) }];
        let csv = average_csv(&rows, None);
        assert_eq!(csv, "N,norm,cauchy_diff,seminorm\n10,5.00000000000e-1,,\n20,2.50000000000e-1,2.50000000000e-1,\n");
    }
}
