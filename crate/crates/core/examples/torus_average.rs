//! Multiple ergodic averages of two irrational rotations of the 2-torus,
//! computed in Fourier form, with the Cauchy differences along N.

use petlab::ergodic::{cauchy_probe, FolnerBoxes, Observable, System, TorusSystem};
use petlab::family::PolyFamily;

fn main() {
    let sys = System::Torus(
        TorusSystem::new(2, vec![vec![2f64.sqrt(), 0.0], vec![0.0, 3f64.sqrt()]]).expect("valid rotations"),
    );
    // p1 = (u, 0), p2 = (0, u)
    let fam = PolyFamily::univariate(&[&[&[0, 1], &[]], &[&[], &[0, 1]]]);
    let fs = [Observable::torus_character(vec![1, 0]), Observable::torus_character(vec![0, 1])];
    let rows = cauchy_probe(&sys, &fam, &fs, &FolnerBoxes::boxes(1), &[10, 100, 1000, 10000, 100000]).unwrap();
    for r in rows {
        let diff = r.diff.map(|d| format!("{d:.3e}")).unwrap_or_default();
        println!("N = {:>6}: |A_N| = {:.3e}  diff {diff}", r.index, r.norm);
    }
}
