//! Both sides of the van der Corput inequality for the Hilbert-space
//! sequence g_u = e(√2 u²) on a one-point space.

use petlab::ergodic::{vdc_check, Complex64, FolnerBoxes};
use std::f64::consts::PI;

fn main() {
    let g = |u: &[i64]| {
        let t = 2f64.sqrt() * (u[0] as f64).powi(2);
        vec![Complex64::from_polar(1.0, 2.0 * PI * t.fract())]
    };
    let window: Vec<Vec<i64>> = (0..5).map(|v| vec![v]).collect();
    let report = vdc_check(g, &window, &FolnerBoxes::boxes(1), &[100, 1000, 10000]).unwrap();
    for r in &report.rows {
        println!("N = {:>5}: lhs {:.3e}  rhs {:.3e}", r.index, r.lhs, r.rhs);
    }
    println!("inequality holds: {}", report.holds(1e-9));
}
