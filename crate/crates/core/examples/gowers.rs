//! Gowers norms on Z/N: a linear phase is structured at every order, a
//! quadratic phase only from order three on.

use petlab::ergodic::{gowers_norm, seminorm_shift_independence, Complex64};
use std::f64::consts::PI;

fn phase(n: usize, q: impl Fn(f64) -> f64) -> Vec<Complex64> {
    (0..n).map(|x| Complex64::from_polar(1.0, 2.0 * PI * q(x as f64) / n as f64)).collect()
}

fn main() {
    let n = 31;
    let linear = phase(n, |x| 3.0 * x);
    let quadratic = phase(n, |x| x * x);
    for k in 1..=4 {
        println!(
            "k = {k}: linear {:.6}, quadratic {:.6}",
            gowers_norm(&linear, 1, k).unwrap(),
            gowers_norm(&quadratic, 1, k).unwrap()
        );
    }
    println!("N^(-1/4) = {:.6}", (n as f64).powf(-0.25));
    let gap = seminorm_shift_independence(&quadratic, 1, 7, 3).unwrap();
    println!("|U3 with shift 1 - U3 with shift 7| = {gap:.2e}");
}
