use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

use super::gowers::dft;
use super::observable::e;
use super::{CyclicSystem, ErgodicError, FolnerBoxes, Observable, System, TorusSystem, MAX_FREQUENCY_SUPPORT};
use crate::family::PolyFamily;

/// Box points per parallel chunk. Chunk sums are combined in chunk order.
const CHUNK: usize = 256;

/// Largest `|p(u)|` accepted on a torus, where `θ · p(u)` is formed in
/// double precision before reduction mod 1.
const TORUS_EXPONENT_LIMIT: i128 = 1 << 40;

/// `(coefficient, exponents)` pairs of one entry.
type Terms = Vec<(i128, Vec<u32>)>;

/// An integer family prepared for fast evaluation.
#[derive(Clone, Debug)]
pub struct IntFamily {
    dim: usize,
    cols: usize,
    rows: Vec<Vec<Terms>>,
}

impl IntFamily {
    pub fn new(fam: &PolyFamily) -> Result<Self, ErgodicError> {
        let mut rows = Vec::with_capacity(fam.num_rows());
        for (i, row) in fam.rows().iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (j, p) in row.iter().enumerate() {
                let terms = p.integer_terms().ok_or(ErgodicError::NotSpecialized { row: i, col: j })?;
                let terms = terms
                    .into_iter()
                    .map(|(c, m)| {
                        c.to_i128()
                            .map(|c| (c, m))
                            .ok_or_else(|| ErgodicError::Unsupported(format!("coefficient {c} is too large")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                out.push(terms);
            }
            rows.push(out);
        }
        Ok(IntFamily { dim: fam.context().dim(), cols: fam.num_cols(), rows })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    /// `p_ij(u)`, or `None` on overflow.
    pub fn value(&self, i: usize, j: usize, u: &[i64]) -> Option<i128> {
        let mut total: i128 = 0;
        for (c, m) in &self.rows[i][j] {
            let mut t = *c;
            for (k, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t = t.checked_mul(u[k] as i128)?;
                }
            }
            total = total.checked_add(t)?;
        }
        Some(total)
    }

    /// All `p_ij(u)`.
    pub fn values(&self, u: &[i64]) -> Result<Vec<Vec<i128>>, ErgodicError> {
        (0..self.num_rows())
            .map(|i| {
                (0..self.cols).map(|j| self.value(i, j, u).ok_or_else(|| ErgodicError::Overflow(u.to_vec()))).collect()
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AverageResult {
    pub average: Observable,
    pub norm: f64,
    /// `|Φ_N|`
    pub size: usize,
}

fn check_inputs(sys: &System, fam: &IntFamily, fs: &[Observable], boxes: &FolnerBoxes) -> Result<(), ErgodicError> {
    let dim = |what, expected, got| {
        if expected == got {
            Ok(())
        } else {
            Err(ErgodicError::Dimension { what, expected, got })
        }
    };
    dim("family columns vs transformations", sys.num_transformations(), fam.num_cols())?;
    dim("observables vs family rows", fam.num_rows(), fs.len())?;
    dim("box dimension", fam.dim(), boxes.dim)?;
    for f in fs {
        match (sys, f) {
            (System::Cyclic(c), Observable::Dense(v)) => dim("observable length", c.modulus() as usize, v.len())?,
            (System::Torus(t), Observable::Fourier(map)) => {
                for k in map.keys() {
                    dim("frequency length", t.dim(), k.len())?;
                }
            }
            _ => return Err(ErgodicError::Unsupported("observable form does not match the system".into())),
        }
    }
    Ok(())
}

/// Runs `per_point` over every point of `Φ_N` in chunks and adds the chunk
/// results in order.
pub(super) fn chunked<T: Send>(
    boxes: &FolnerBoxes,
    n: usize,
    zero: impl Fn() -> T + Sync,
    per_point: impl Fn(&mut T, &[i64]) -> Result<(), ErgodicError> + Sync,
    combine: impl Fn(&mut T, T),
) -> Result<T, ErgodicError> {
    let size = boxes.size(n);
    let chunks: Vec<T> = (0..size.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut acc = zero();
            for i in c * CHUNK..((c + 1) * CHUNK).min(size) {
                per_point(&mut acc, &boxes.point(n, i))?;
            }
            Ok(acc)
        })
        .collect::<Result<_, ErgodicError>>()?;
    let mut total = zero();
    for c in chunks {
        combine(&mut total, c);
    }
    Ok(total)
}

fn translations(sys: &CyclicSystem, values: &[Vec<i128>]) -> Vec<usize> {
    let n = sys.modulus() as i128;
    values
        .iter()
        .map(|row| {
            row.iter().zip(sys.shifts()).fold(0i128, |acc, (&p, &a)| (acc + p.rem_euclid(n) * a as i128).rem_euclid(n))
                as usize
        })
        .collect()
}

fn cyclic_direct(
    sys: &CyclicSystem,
    fam: &IntFamily,
    fs: &[&[Complex64]],
    boxes: &FolnerBoxes,
    n: usize,
) -> Result<Vec<Complex64>, ErgodicError> {
    let m = sys.modulus() as usize;
    chunked(
        boxes,
        n,
        || vec![Complex64::default(); m],
        |acc, u| {
            let t = translations(sys, &fam.values(u)?);
            for (x, slot) in acc.iter_mut().enumerate() {
                *slot += fs.iter().zip(&t).map(|(f, &ti)| f[(x + ti) % m]).product::<Complex64>();
            }
            Ok(())
        },
        |a, b| a.iter_mut().zip(b).for_each(|(x, y)| *x += y),
    )
}

/// The same average through the Fourier side: each translate is formed by
/// multiplying `f̂(ξ)` with `e(ξ t / N)` and transforming back.
fn cyclic_fourier(
    sys: &CyclicSystem,
    fam: &IntFamily,
    fs: &[&[Complex64]],
    boxes: &FolnerBoxes,
    n: usize,
) -> Result<Vec<Complex64>, ErgodicError> {
    let m = sys.modulus() as usize;
    let hats: Vec<Vec<Complex64>> = fs.iter().map(|f| dft(f)).collect();
    let inverse: Arc<dyn Fft<f64>> = FftPlanner::new().plan_fft_inverse(m);
    chunked(
        boxes,
        n,
        || vec![Complex64::default(); m],
        |acc, u| {
            let t = translations(sys, &fam.values(u)?);
            let mut prod = vec![Complex64::new(1.0, 0.0); m];
            for (hat, &ti) in hats.iter().zip(&t) {
                let mut g: Vec<Complex64> =
                    hat.iter().enumerate().map(|(xi, c)| c * e(((xi * ti) % m) as f64 / m as f64)).collect();
                inverse.process(&mut g);
                prod.iter_mut().zip(&g).for_each(|(p, x)| *p *= x);
            }
            acc.iter_mut().zip(&prod).for_each(|(a, p)| *a += p);
            Ok(())
        },
        |a, b| a.iter_mut().zip(b).for_each(|(x, y)| *x += y),
    )
}

type Series = BTreeMap<Vec<i64>, Complex64>;

/// `(k, c, k·α_j mod 1)` for every coefficient of every observable.
type Prepared<'a> = Vec<Vec<(&'a Vec<i64>, Complex64, Vec<f64>)>>;

fn prepare<'a>(sys: &TorusSystem, fs: &[&'a Series]) -> Result<Prepared<'a>, ErgodicError> {
    let support: usize = fs.iter().map(|f| f.len()).product();
    if support > MAX_FREQUENCY_SUPPORT {
        return Err(ErgodicError::FrequencyOverflow { size: support, limit: MAX_FREQUENCY_SUPPORT });
    }
    Ok(fs.iter().map(|f| f.iter().map(|(k, c)| (k, *c, sys.frequencies(k))).collect()).collect())
}

/// Fourier coefficients of `Π_i f_i(T^{p_i(u)} x)` at one point `u`.
fn torus_product(prepared: &Prepared, m: usize, fam: &IntFamily, u: &[i64]) -> Result<Series, ErgodicError> {
    let values = fam.values(u)?;
    if values.iter().flatten().any(|p| p.abs() > TORUS_EXPONENT_LIMIT) {
        return Err(ErgodicError::Overflow(u.to_vec()));
    }
    let mut prod: Series = BTreeMap::from([(vec![0; m], Complex64::new(1.0, 0.0))]);
    for (coeffs, row) in prepared.iter().zip(&values) {
        let mut next = Series::new();
        for (k0, c0) in &prod {
            for (k, c, theta) in coeffs {
                let turn: f64 = theta.iter().zip(row).map(|(th, &p)| (th * p as f64).rem_euclid(1.0)).sum();
                let key: Vec<i64> = k0.iter().zip(k.iter()).map(|(a, b)| a + b).collect();
                *next.entry(key).or_default() += c0 * c * e(turn);
            }
        }
        prod = next;
    }
    Ok(prod)
}

fn torus_sum(
    sys: &TorusSystem,
    fam: &IntFamily,
    fs: &[&Series],
    boxes: &FolnerBoxes,
    n: usize,
) -> Result<Series, ErgodicError> {
    let prepared = prepare(sys, fs)?;
    chunked(
        boxes,
        n,
        Series::new,
        |acc, u| {
            for (k, c) in torus_product(&prepared, sys.dim(), fam, u)? {
                *acc.entry(k).or_default() += c;
            }
            Ok(())
        },
        |a, b| {
            for (k, c) in b {
                *a.entry(k).or_default() += c;
            }
        },
    )
}

/// The functions `g_u = Π_i f_i(T_1^{p_i1(u)} ⋯ T_l^{p_il(u)} ·)` as vectors
/// whose Euclidean inner product is the `L²(μ)` one: cyclic samples scaled
/// by `N^{-1/2}`, or torus Fourier coefficients in frequency order. The
/// frequency set does not depend on `u`.
pub struct ProductFunction<'a> {
    sys: &'a System,
    int: IntFamily,
    dense: Vec<&'a [Complex64]>,
    prepared: Prepared<'a>,
}

impl<'a> ProductFunction<'a> {
    pub fn new(sys: &'a System, fam: &PolyFamily, fs: &'a [Observable]) -> Result<Self, ErgodicError> {
        let int = IntFamily::new(fam)?;
        check_inputs(sys, &int, fs, &FolnerBoxes::boxes(int.dim()))?;
        let dense = fs.iter().filter_map(Observable::as_dense).collect();
        let prepared = match sys {
            System::Torus(t) => prepare(t, &fs.iter().filter_map(Observable::as_fourier).collect::<Vec<_>>())?,
            System::Cyclic(_) => Vec::new(),
        };
        Ok(ProductFunction { sys, int, dense, prepared })
    }

    pub fn dim(&self) -> usize {
        self.int.dim()
    }

    pub fn at(&self, u: &[i64]) -> Result<Vec<Complex64>, ErgodicError> {
        match self.sys {
            System::Cyclic(c) => {
                let m = c.modulus() as usize;
                let t = translations(c, &self.int.values(u)?);
                let scale = 1.0 / (m as f64).sqrt();
                Ok((0..m)
                    .map(|x| self.dense.iter().zip(&t).map(|(f, &ti)| f[(x + ti) % m]).product::<Complex64>() * scale)
                    .collect())
            }
            System::Torus(t) => Ok(torus_product(&self.prepared, t.dim(), &self.int, u)?.into_values().collect()),
        }
    }
}

fn average_with(
    sys: &System,
    fam: &PolyFamily,
    fs: &[Observable],
    boxes: &FolnerBoxes,
    n: usize,
    fourier: bool,
) -> Result<AverageResult, ErgodicError> {
    let int = IntFamily::new(fam)?;
    check_inputs(sys, &int, fs, boxes)?;
    let size = boxes.size(n);
    let scale = 1.0 / size as f64;
    let average = match sys {
        System::Cyclic(c) => {
            let dense: Vec<&[Complex64]> = fs.iter().filter_map(Observable::as_dense).collect();
            let sum = if fourier {
                cyclic_fourier(c, &int, &dense, boxes, n)?
            } else {
                cyclic_direct(c, &int, &dense, boxes, n)?
            };
            Observable::Dense(sum.into_iter().map(|z| z * scale).collect())
        }
        System::Torus(t) => {
            let series: Vec<&Series> = fs.iter().filter_map(Observable::as_fourier).collect();
            let sum = torus_sum(t, &int, &series, boxes, n)?;
            Observable::Fourier(sum.into_iter().map(|(k, z)| (k, z * scale)).collect())
        }
    };
    let norm = average.l2_norm();
    Ok(AverageResult { average, norm, size })
}

/// `A_N(x) = (1/|Φ_N|) Σ_{u∈Φ_N} Π_i f_i(T_1^{p_i1(u)} ⋯ T_l^{p_il(u)} x)`
/// and its `L²` norm. Cyclic systems are summed directly; torus systems in
/// Fourier form, where the rotation multiplies the coefficient of `k` by
/// `e(k · Σ_j α_j p_ij(u))` and products convolve coefficients.
pub fn multi_average(
    sys: &System,
    fam: &PolyFamily,
    fs: &[Observable],
    boxes: &FolnerBoxes,
    n: usize,
) -> Result<AverageResult, ErgodicError> {
    average_with(sys, fam, fs, boxes, n, false)
}

/// The cyclic average evaluated through the discrete Fourier transform, an
/// independent second path for [`multi_average`].
pub fn multi_average_fourier(
    sys: &CyclicSystem,
    fam: &PolyFamily,
    fs: &[Observable],
    boxes: &FolnerBoxes,
    n: usize,
) -> Result<AverageResult, ErgodicError> {
    average_with(&System::Cyclic(sys.clone()), fam, fs, boxes, n, true)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CauchyRow {
    pub index: usize,
    pub norm: f64,
    /// `‖A_N - A_{N'}‖` for the previous index `N'`.
    pub diff: Option<f64>,
}

/// Norms of `A_N` along increasing indices and the `L²` distance between
/// consecutive averages.
pub fn cauchy_probe(
    sys: &System,
    fam: &PolyFamily,
    fs: &[Observable],
    boxes: &FolnerBoxes,
    indices: &[usize],
) -> Result<Vec<CauchyRow>, ErgodicError> {
    if indices.is_empty() {
        return Err(ErgodicError::NoIndices);
    }
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ErgodicError::Unsupported("indices must increase".into()));
    }
    let mut rows = Vec::with_capacity(indices.len());
    let mut prev: Option<Observable> = None;
    for &n in indices {
        let a = multi_average(sys, fam, fs, boxes, n)?;
        let diff = match &prev {
            Some(p) => Some(a.average.try_sub(p)?.l2_norm()),
            None => None,
        };
        rows.push(CauchyRow { index: n, norm: a.norm, diff });
        prev = Some(a.average);
    }
    Ok(rows)
}
