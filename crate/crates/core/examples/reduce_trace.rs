//! A full formal reduction of {(n³)} to a linear family, with the
//! measures at each step, the resulting k and a sampled specialization
//! check of every step.

use petlab::family::PolyFamily;
use petlab::pet::{reduce_to_linear, specialization_oracle, ReduceOptions};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let f = PolyFamily::univariate(&[&[&[0, 0, 0, 1]]]);
    let trace = reduce_to_linear(&f, &ReduceOptions::default()).expect("the chain terminates");
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (i, s) in trace.steps.iter().enumerate() {
        let o = specialization_oracle(s, 10, 50, &mut rng).expect("formal step");
        println!(
            "step {:>2}: {}, rows {:>3}, degree {}, C {} -> {}, oracle {}/{}",
            i + 1,
            s.selection,
            s.output.num_rows(),
            s.output.degree(),
            s.c_before,
            s.c_after,
            o.matched,
            o.compared
        );
    }
    println!("terminal rows: {}, k = {}", trace.terminal.num_rows(), trace.k);
}
