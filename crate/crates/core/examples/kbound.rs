//! The number k of functions the reduction needs, for a few families.

use petlab::family::PolyFamily;
use petlab::pet::{k_bound, ReduceOptions};

fn main() {
    let families = [
        ("(n, 2n)", PolyFamily::univariate(&[&[&[0, 1]], &[&[0, 2]]])),
        ("(n²)", PolyFamily::univariate(&[&[&[0, 0, 1]]])),
        ("(n², n)", PolyFamily::univariate(&[&[&[0, 0, 1]], &[&[0, 1]]])),
        ("(n³)", PolyFamily::univariate(&[&[&[0, 0, 0, 1]]])),
    ];
    for (name, f) in families {
        let kb = k_bound(&f, &ReduceOptions::default()).expect("chain terminates");
        println!("{name:<8} k = {:<4} steps {}", kb.k, kb.steps);
    }
}
