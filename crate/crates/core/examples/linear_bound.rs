//! A linear family on Z/N with ergodic composite shifts: the average is
//! small once one of the functions has small U^{r+1} norm.

use petlab::ergodic::{linear_bound_check, CyclicSystem, FolnerBoxes, Observable};
use petlab::family::PolyFamily;
use std::f64::consts::PI;

fn main() {
    let n = 503;
    let sys = CyclicSystem::new(n as u64, &[1, 2]).expect("valid system");
    let fam = PolyFamily::univariate(&[&[&[0, 1], &[]], &[&[], &[0, 1]]]);
    let spike: Vec<f64> = (0..n).map(|x| if x == 0 { 1.0 } else { 0.0 } - 1.0 / n as f64).collect();
    let quad: Vec<f64> = (0..n).map(|x| (2.0 * PI * (x * x) as f64 / n as f64).cos()).collect();
    let fs = [Observable::real(&spike), Observable::real(&quad)];
    let report = linear_bound_check(&sys, &fam, &fs, &FolnerBoxes::boxes(1), n).unwrap();
    for c in &report.composites {
        println!("composite shift {} on rows {:?}: ergodic {}", c.shift, c.rows, c.ergodic);
    }
    println!("U^{} norms: {:?}", report.order, report.seminorms);
    println!("|A_N| = {:.3e}, ratio {:.3}", report.average_norm, report.ratio);
    println!("shadow holds: {:?}", report.shadow_holds(0.05, 0.25));
}
