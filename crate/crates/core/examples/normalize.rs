//! Turning an arbitrary integer family into an ED-set.

use petlab::family::{normalize_to_ed, PolyFamily};

fn main() {
    // (u+1, 2u), (u, 2u), (3, 0), (u²+u, u)
    let f = PolyFamily::univariate(&[&[&[1, 1], &[0, 2]], &[&[0, 1], &[0, 2]], &[&[3], &[]], &[&[0, 1, 1], &[0, 1]]]);
    println!("input =\n{f}");
    for v in f.ed_violations() {
        println!("  violates {v}");
    }
    let (g, report) = normalize_to_ed(&f).expect("integer family");
    println!("normalized =\n{g}");
    println!("constants removed: {:?}", report.constant_shifts);
    println!("dropped rows: {:?}", report.dropped_rows);
    println!("merged groups: {:?}", report.merged_groups);
    println!("ED-set: {}", g.is_ed_set());
}
