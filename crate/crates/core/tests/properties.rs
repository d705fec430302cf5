//! Property tests for the algebraic orders, normalization, polynomial
//! arithmetic and the numerical kernels.

mod common;

use common::{brute_gowers, naive_dft, random_standard_family};
use num_bigint::BigInt;
use num_complex::Complex64;
use petlab::ergodic::{
    gowers_norm, multi_average, multi_average_fourier, CyclicSystem, FolnerBoxes, Observable, System,
};
use petlab::family::{normalize_to_ed, vector_less, weight_less, PolyFamily, SubweightMatrix, Weight};
use petlab::pet::{reduce_partial, ReduceOptions};
use petlab::polyalg::{ShiftAssignment, ShiftContext, ShiftEntry, ShiftVar, UPoly};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn weight_strategy() -> impl Strategy<Value = Weight> {
    // l = 3 columns, degree cap 2; subfamily a has 3 - a columns.
    let col = || prop::collection::vec(0usize..3, 2);
    (prop::collection::vec(col(), 3), prop::collection::vec(col(), 2), prop::collection::vec(col(), 1)).prop_map(
        |(a, b, c)| {
            Weight::new(
                2,
                vec![
                    SubweightMatrix::from_columns(2, a),
                    SubweightMatrix::from_columns(2, b),
                    SubweightMatrix::from_columns(2, c),
                ],
            )
        },
    )
}

fn upoly_strategy(d: usize) -> impl Strategy<Value = UPoly> {
    prop::collection::vec((-5i64..=5, prop::collection::vec(0u32..3, d)), 0..5).prop_map(move |terms| {
        let ctx = ShiftContext::new(d);
        let mut p = UPoly::zero(ctx);
        for (c, e) in terms {
            p = &p + &UPoly::from_int_terms(ctx, &[(c, &e)]);
        }
        p
    })
}

fn dense_strategy(n: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((0.0f64..=1.0, 0.0f64..std::f64::consts::TAU), n)
        .prop_map(|v| v.into_iter().map(|(r, t)| Complex64::from_polar(r, t)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn weight_order_is_a_strict_partial_order(a in weight_strategy(), b in weight_strategy(), c in weight_strategy()) {
        prop_assert!(!weight_less(&a, &a).unwrap());
        if weight_less(&a, &b).unwrap() {
            prop_assert!(!weight_less(&b, &a).unwrap());
            if weight_less(&b, &c).unwrap() {
                prop_assert!(weight_less(&a, &c).unwrap());
            }
        }
    }

    #[test]
    fn vector_order_is_trichotomous(a in prop::collection::vec(0usize..4, 4), b in prop::collection::vec(0usize..4, 4)) {
        let lt = vector_less(&a, &b).unwrap();
        let gt = vector_less(&b, &a).unwrap();
        let eq = a == b;
        prop_assert_eq!(u8::from(lt) + u8::from(gt) + u8::from(eq), 1);
    }

    #[test]
    fn normalization_is_idempotent_and_yields_ed_sets(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ctx = ShiftContext::new(1);
        let rows: Vec<Vec<UPoly>> = (0..4)
            .map(|_| (0..2).map(|_| UPoly::univariate(ctx, &[
                rand::Rng::gen_range(&mut rng, -2..=2),
                rand::Rng::gen_range(&mut rng, -1..=1),
                rand::Rng::gen_range(&mut rng, -1..=1),
            ])).collect())
            .collect();
        let f = PolyFamily::new(ctx, 2, rows).unwrap();
        let (g, rep) = normalize_to_ed(&f).unwrap();
        prop_assert!(g.is_empty() || g.is_ed_set());
        prop_assert_eq!(rep.apply(&f), g.clone());
        let (h, again) = normalize_to_ed(&g).unwrap();
        prop_assert_eq!(h, g);
        prop_assert!(again.is_trivial());
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(p in upoly_strategy(2), q in upoly_strategy(2), u in prop::collection::vec(-20i64..=20, 2)) {
        let pu = p.evaluate(&u).unwrap();
        let qu = q.evaluate(&u).unwrap();
        prop_assert_eq!((&p + &q).evaluate(&u).unwrap(), &pu + &qu);
        prop_assert_eq!(p.try_mul(&q).unwrap().evaluate(&u).unwrap(), &pu * &qu);
        prop_assert_eq!(p.try_sub(&q).unwrap().evaluate(&u).unwrap(), &pu - &qu);
    }

    #[test]
    fn specializing_a_formal_shift_equals_shifting_by_integers(p in upoly_strategy(2), v in prop::collection::vec(-9i64..=9, 2)) {
        let ctx = ShiftContext::with_pairs(2, 1);
        let p = p.with_context(ctx).unwrap();
        let formal: Vec<ShiftEntry> = (0..2).map(|k| ShiftEntry::Formal(ShiftVar::v(0, k))).collect();
        let ints: Vec<ShiftEntry> = v.iter().map(|&x| ShiftEntry::Int(BigInt::from(x))).collect();
        let a = ShiftAssignment::new().with_pair(0, &v, &[0, 0]);
        prop_assert_eq!(p.shift_substitute(&formal).unwrap().specialize(&a).unwrap(), p.shift_substitute(&ints).unwrap());
    }

    #[test]
    fn gowers_norms_increase_with_order(f in dense_strategy(9), a in prop::sample::select(vec![1i64, 2, 4, 5, 7, 8])) {
        let mut prev = 0.0;
        for k in 1..=4 {
            let x = gowers_norm(&f, a, k).unwrap();
            prop_assert!(x + 1e-9 >= prev, "U^{} = {} below U^{} = {}", k, x, k - 1, prev);
            prop_assert!(x <= 1.0 + 1e-9);
            prev = x;
        }
    }

    #[test]
    fn u2_norm_is_the_l4_norm_of_the_fourier_transform(f in dense_strategy(13)) {
        let n = f.len() as f64;
        let fourth: f64 = naive_dft(&f).iter().map(|c| (c.norm() / n).powi(4)).sum();
        prop_assert!((gowers_norm(&f, 1, 2).unwrap() - fourth.powf(0.25)).abs() < 1e-10);
    }

    #[test]
    fn fast_gowers_matches_the_definition(f in dense_strategy(7), a in 1i64..7, k in 1u32..=3) {
        let fast = gowers_norm(&f, a, k).unwrap();
        prop_assert!((fast - brute_gowers(&f, a, k)).abs() < 1e-10);
    }

    #[test]
    fn cyclic_average_paths_agree(seed in any::<u64>(), n in 5usize..20, shift in 1i64..20, size in 1usize..60) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fam = random_standard_family(&mut rng, 3, 1, 1, 2);
        let sys = CyclicSystem::new(n as u64, &[shift]).unwrap();
        let fs: Vec<Observable> = (0..fam.num_rows())
            .map(|_| Observable::Dense(common::random_unit_vector(&mut rng, n)))
            .collect();
        let boxes = FolnerBoxes::boxes(1);
        let direct = multi_average(&System::Cyclic(sys.clone()), &fam, &fs, &boxes, size).unwrap();
        let fourier = multi_average_fourier(&sys, &fam, &fs, &boxes, size).unwrap();
        let diff = direct.average.try_sub(&fourier.average).unwrap().l2_norm();
        prop_assert!(diff < 1e-10, "paths differ by {}", diff);
    }

    #[test]
    fn column_weights_never_exceed_nonzero_entries(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fam = random_standard_family(&mut rng, 4, 3, 2, 3);
        let w = fam.subweight().unwrap();
        for (j, col) in w.columns().iter().enumerate() {
            let nonzero = fam.column(j).iter().filter(|p| !p.is_zero()).count();
            prop_assert!(col.iter().sum::<usize>() <= nonzero);
        }
    }

    #[test]
    fn reduction_steps_keep_their_invariants(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fam = random_standard_family(&mut rng, 3, 2, 1, 3);
        let opts = ReduceOptions { row_cap: Some(40), ..Default::default() };
        let (trace, stopped) = reduce_partial(&fam, &opts).unwrap();
        if let Some(e) = &stopped {
            prop_assert!(matches!(e, petlab::pet::PetError::RowCap { .. }), "{}", e);
        } else {
            prop_assert!(trace.terminal.degree() <= petlab::polyalg::Degree::Of(1));
            prop_assert_eq!(trace.k, trace.terminal.num_rows() + 1);
        }
        for pair in trace.steps.windows(2) {
            let next = match &pair[1].permutation {
                Some(perm) => pair[0].output.permute_columns(perm),
                None => pair[0].output.clone(),
            };
            prop_assert_eq!(&next, &pair[1].input);
        }
        for step in &trace.steps {
            prop_assert!(step.checks.all());
            prop_assert!(step.provenance[0].is_pure_shift_of(0));
        }
    }
}
