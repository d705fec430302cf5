//! Sampled check that a formal step specializes correctly: substituting
//! integers into the generic output must give the same family as building
//! the step with those integers from the start.

use num_bigint::BigInt;
use rand::Rng;

use super::bar::{assemble, build_reduced_family, Shifts};
use super::{PetError, ReductionStep};
use crate::polyalg::{ShiftAssignment, ShiftVar};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleOutcome {
    /// Non-degenerate samples compared.
    pub compared: usize,
    pub matched: usize,
    /// Samples where the integer bar family is not an ED-set. These lie on
    /// the exceptional set the generic step excludes and are not compared.
    pub degenerate: usize,
    pub mismatches: Vec<ShiftAssignment>,
}

impl OracleOutcome {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.matched == self.compared
    }
}

/// Draws integer values in `[-range, range]` for every shift pair of the
/// step, with `v ≠ w` coordinatewise for the step's own pair, until
/// `samples` non-degenerate draws have been compared. Gives up after
/// `10 * samples` draws.
pub fn specialization_oracle<R: Rng>(
    step: &ReductionStep,
    samples: usize,
    range: i64,
    rng: &mut R,
) -> Result<OracleOutcome, PetError> {
    let Shifts::Formal(pair) = step.bar.shifts else {
        return Err(PetError::NotFormal);
    };
    let d = step.input.context().dim();
    let mut out = OracleOutcome::default();
    let mut draws = 0;
    while out.compared < samples && draws < 10 * samples.max(1) {
        draws += 1;
        let mut assignment = ShiftAssignment::new();
        for p in 0..=pair {
            for k in 0..d as u32 {
                let v = rng.gen_range(-range..=range);
                let mut w = rng.gen_range(-range..=range);
                while p == pair && w == v {
                    w = rng.gen_range(-range..=range);
                }
                assignment.set(ShiftVar::v(p, k), v);
                assignment.set(ShiftVar::w(p, k), w);
            }
        }
        let value = |var: ShiftVar| assignment.get(&var).cloned().unwrap_or_else(|| BigInt::from(0));
        let concrete = Shifts::Concrete {
            v: (0..d as u32).map(|k| value(ShiftVar::v(pair, k))).collect(),
            w: (0..d as u32).map(|k| value(ShiftVar::w(pair, k))).collect(),
        };
        let input = step.input.specialize(&assignment)?;
        let bar = match assemble(
            &input,
            input.context(),
            step.bar.rows.clone(),
            step.bar.z.clone(),
            step.bar.i0,
            &concrete,
        ) {
            Ok(bar) => bar,
            Err(PetError::Degenerate { .. }) => {
                out.degenerate += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        out.compared += 1;
        if step.output.specialize(&assignment)? == build_reduced_family(&bar) {
            out.matched += 1;
        } else {
            out.mismatches.push(assignment);
        }
    }
    Ok(out)
}
