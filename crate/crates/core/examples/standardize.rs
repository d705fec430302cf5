//! Lifting a family whose first row misses the top degree to a standard
//! family of a chosen degree.

use petlab::family::PolyFamily;
use petlab::pet::{kbound_start, standardize_family};

fn main() {
    let f = PolyFamily::univariate(&[&[&[0, 1]], &[&[0, 0, 1]]]);
    println!("input =\n{f}standard: {}", f.is_standard());
    let s = standardize_family(&f, 3).expect("standardizable");
    println!("lifted to degree 3 =\n{s}standard: {}, ED-set: {}", s.is_standard(), s.is_ed_set());
    let (start, lifted) = kbound_start(&f).expect("ED-set");
    println!("k_bound starts from a family with {} rows (lifted: {lifted})", start.num_rows());
}
