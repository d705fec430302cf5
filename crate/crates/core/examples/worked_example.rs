//! The worked family P: its weight, the first reduction step and the check
//! that the shifts (v, w) = (-1, 1) turn it into Q.

use petlab::cli::worked::golden_lines;
use petlab::family::worked::{family_p, family_q};

fn main() {
    let p = family_p();
    println!("P =\n{p}");
    println!("W(P) = {}", p.weight().expect("P has a weight"));
    println!("Q =\n{}", family_q());
    let lines = golden_lines().expect("the worked example evaluates");
    for l in &lines {
        println!("{:<12} {:<22} {}", l.label, l.got, if l.matches() { "ok" } else { "MISMATCH" });
    }
    let good = lines.iter().filter(|l| l.matches()).count();
    println!("{good}/{} values match", lines.len());
}
