use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;
use rustfft::FftPlanner;

use super::ErgodicError;

/// `f̂(ξ) = (1/N) Σ_x f(x) e(-xξ/N)`, so that `f(x) = Σ_ξ f̂(ξ) e(xξ/N)`.
pub fn dft(f: &[Complex64]) -> Vec<Complex64> {
    let mut buf = f.to_vec();
    FftPlanner::new().plan_fft_forward(buf.len()).process(&mut buf);
    let n = f.len() as f64;
    buf.iter_mut().for_each(|z| *z /= n);
    buf
}

/// `c(t) = (1/N) Σ_x g(x) conj g(x + t)`, computed as `Σ_ξ |ĝ(ξ)|² e(-tξ/N)`.
pub fn autocorrelation(g: &[Complex64]) -> Vec<Complex64> {
    let mut power: Vec<Complex64> = dft(g).iter().map(|z| Complex64::new(z.norm_sqr(), 0.0)).collect();
    FftPlanner::new().plan_fft_forward(power.len()).process(&mut power);
    power
}

fn check_shift(n: usize, a: i64) -> Result<(), ErgodicError> {
    if n < 2 {
        return Err(ErgodicError::BadModulus(n as u64));
    }
    if a.rem_euclid(n as i64).gcd(&(n as i64)) != 1 {
        return Err(ErgodicError::NonErgodicShift { shift: a, n: n as u64 });
    }
    Ok(())
}

/// `‖f‖_k^{2^k}` by the inductive average.
fn power(f: &[Complex64], a: i64, k: u32) -> f64 {
    let n = f.len();
    let step = |h: usize| (a.rem_euclid(n as i64) as usize * h) % n;
    match k {
        1 => (f.iter().sum::<Complex64>() / n as f64).norm_sqr(),
        2 => {
            let c = autocorrelation(f);
            (0..n).map(|h| c[step(h)].norm_sqr()).sum::<f64>() / n as f64
        }
        _ => {
            let terms: Vec<f64> = (0..n)
                .into_par_iter()
                .map(|h| {
                    let t = step(h);
                    let g: Vec<Complex64> = (0..n).map(|x| f[x] * f[(x + t) % n].conj()).collect();
                    power(&g, a, k - 1)
                })
                .collect();
            terms.iter().sum::<f64>() / n as f64
        }
    }
}

/// The seminorm `‖f‖_{k,T}` for `T x = x + a` on `ℤ/N`, from
/// `‖f‖_1 = |∫ f|` and `‖f‖_{k+1}^{2^{k+1}} = avg_h ‖f · conj(f ∘ T^h)‖_k^{2^k}`.
/// The innermost pair of averages is evaluated through the autocorrelation.
pub fn gowers_norm(f: &[Complex64], a: i64, k: u32) -> Result<f64, ErgodicError> {
    check_shift(f.len(), a)?;
    if k == 0 {
        return Err(ErgodicError::BadOrder);
    }
    Ok(power(f, a, k).max(0.0).powf(1.0 / (1u64 << k) as f64))
}

/// `|‖f‖_{k,a} - ‖f‖_{k,a'}|`, which vanishes for ergodic shifts.
pub fn seminorm_shift_independence(f: &[Complex64], a: i64, a2: i64, k: u32) -> Result<f64, ErgodicError> {
    let x = gowers_norm(f, a, k)?;
    if a.rem_euclid(f.len() as i64) == a2.rem_euclid(f.len() as i64) {
        return Ok(0.0);
    }
    Ok((x - gowers_norm(f, a2, k)?).abs())
}
