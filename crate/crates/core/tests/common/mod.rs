//! Shared corpus generators and independent numerical oracles.
#![allow(dead_code)]

use num_complex::Complex64;
use petlab::family::{normalize_to_ed, PolyFamily};
use petlab::polyalg::{CoeffPoly, Monomial, ShiftContext, UPoly};
use rand::Rng;
use std::f64::consts::PI;

fn monomials(d: usize, deg: u32) -> Vec<Vec<u32>> {
    if d == 1 {
        return vec![vec![deg]];
    }
    (0..=deg).map(|a| vec![a, deg - a]).collect()
}

fn nonzero_coeff<R: Rng>(rng: &mut R) -> i64 {
    loop {
        let c = rng.gen_range(-2i64..=2);
        if c != 0 {
            return c;
        }
    }
}

/// A polynomial without constant term whose top homogeneous part is full.
fn random_poly<R: Rng>(rng: &mut R, ctx: ShiftContext, e: u32) -> UPoly {
    let mut p = UPoly::zero(ctx);
    for k in 1..=e {
        for m in monomials(ctx.dim(), k) {
            if k == e || rng.gen_bool(0.5) {
                p.add_term(Monomial::from_exponents(m), CoeffPoly::constant(nonzero_coeff(rng)));
            }
        }
    }
    p
}

/// A random standard ED-set with at most `max_r` rows, `max_l` columns,
/// dimension `max_d` and degree `max_deg`. Entries are zero with
/// probability 0.35. The raw draw is normalized and a top-degree row moved
/// to the front; draws that normalize to nothing are redrawn.
pub fn random_standard_family<R: Rng>(
    rng: &mut R,
    max_r: usize,
    max_l: usize,
    max_d: usize,
    max_deg: u32,
) -> PolyFamily {
    loop {
        let r = rng.gen_range(1..=max_r);
        let l = rng.gen_range(1..=max_l);
        let d = rng.gen_range(1..=max_d);
        let deg = rng.gen_range(1..=max_deg);
        let ctx = ShiftContext::new(d);
        let rows: Vec<Vec<UPoly>> = (0..r)
            .map(|_| {
                (0..l)
                    .map(|_| {
                        if rng.gen_bool(0.35) {
                            UPoly::zero(ctx)
                        } else {
                            let e = rng.gen_range(1..=deg);
                            random_poly(rng, ctx, e)
                        }
                    })
                    .collect()
            })
            .collect();
        let raw = PolyFamily::new(ctx, l, rows).expect("rectangular");
        let (g, _) = normalize_to_ed(&raw).expect("integer family");
        if g.is_empty() {
            continue;
        }
        let top = (0..g.num_rows()).find(|&i| g.row_degree(i) == g.degree()).expect("some row has top degree");
        if top == 0 {
            return g;
        }
        let mut rows = g.rows().to_vec();
        rows.swap(0, top);
        return PolyFamily::new(ctx, l, rows).expect("rectangular");
    }
}

pub fn random_unit_vector<R: Rng>(rng: &mut R, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| Complex64::from_polar(rng.gen_range(0.0..=1.0), rng.gen_range(0.0..2.0 * PI))).collect()
}

/// `‖f‖_{U^k}` from the definition: the average over `x, h_1..h_k` of the
/// product over the cube `ω ∈ {0,1}^k` of `C^{|ω|} f(x + a ω·h)`.
pub fn brute_gowers(f: &[Complex64], a: i64, k: u32) -> f64 {
    let n = f.len();
    let k = k as usize;
    let total_h = n.pow(k as u32);
    let mut sum = Complex64::new(0.0, 0.0);
    for x in 0..n {
        for hi in 0..total_h {
            let mut h = vec![0usize; k];
            let mut t = hi;
            for slot in h.iter_mut() {
                *slot = t % n;
                t /= n;
            }
            let mut prod = Complex64::new(1.0, 0.0);
            for omega in 0..(1usize << k) {
                let mut off: i64 = 0;
                for (bit, hb) in h.iter().enumerate() {
                    if omega >> bit & 1 == 1 {
                        off += *hb as i64;
                    }
                }
                let idx = (x as i64 + a * off).rem_euclid(n as i64) as usize;
                let v = f[idx];
                prod *= if omega.count_ones() % 2 == 1 { v.conj() } else { v };
            }
            sum += prod;
        }
    }
    let mean = sum.re / (n * total_h) as f64;
    mean.max(0.0).powf(1.0 / (1u32 << k) as f64)
}

/// Unnormalized DFT by direct summation.
pub fn naive_dft(f: &[Complex64]) -> Vec<Complex64> {
    let n = f.len();
    (0..n)
        .map(|xi| (0..n).map(|x| f[x] * Complex64::from_polar(1.0, -2.0 * PI * ((xi * x) % n) as f64 / n as f64)).sum())
        .collect()
}
